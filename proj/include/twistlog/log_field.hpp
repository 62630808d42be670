#pragma once

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "twistlog/fock.hpp"
#include "twistlog/scalar.hpp"
#include "twistlog/sparse.hpp"

namespace twistlog {

// f(z) = sum over (m, k) of C_{m,k} z^{-m-1} zeta^k. With weight Delta the
// component C_{m,k} shifts energy by -m-1+Delta. A missing component is the
// zero operator.
template <class T>
class LogField {
public:
    using Key = std::pair<Rational, int>;

    LogField() = default;
    LogField(std::shared_ptr<const FockBasis> basis, Rational weight)
        : basis_(std::move(basis)), weight_(std::move(weight)) {}

    const std::shared_ptr<const FockBasis>& basis() const { return basis_; }
    const Rational& weight() const { return weight_; }
    void set_weight(const Rational& w) {
        weight_ = w;
        for (auto& [k, op] : comps_) op = retag(op, shift_of(k.first));
    }
    Rational shift_of(const Rational& m) const { return -m - Rational(1) + weight_; }

    const std::map<Key, SparseOperator<T>>& components() const { return comps_; }
    bool empty() const { return comps_.empty(); }
    const SparseOperator<T>* find(const Rational& m, int k) const {
        auto it = comps_.find({m, k});
        return it == comps_.end() ? nullptr : &it->second;
    }
    SparseOperator<T>& slot(const Rational& m, int k) {
        auto it = comps_.find({m, k});
        if (it == comps_.end()) it = comps_.emplace(Key{m, k}, SparseOperator<T>(basis_, shift_of(m))).first;
        return it->second;
    }
    void add(const Rational& m, int k, const SparseOperator<T>& op, const T& c = T(1)) {
        if (is_zero(c)) return;
        slot(m, k).add_scaled(op, c);
    }
    void erase(const Rational& m, int k) { comps_.erase({m, k}); }
    int zeta_degree() const {
        int d = -1;
        for (const auto& [k, op] : comps_) d = std::max(d, k.second);
        return d;
    }

    LogField& operator+=(const LogField& o) {
        for (const auto& [k, op] : o.comps_) add(k.first, k.second, op, T(1));
        return *this;
    }
    LogField& operator-=(const LogField& o) {
        for (const auto& [k, op] : o.comps_) add(k.first, k.second, op, T(-1));
        return *this;
    }
    LogField& operator*=(const T& c) {
        for (auto& [k, op] : comps_) op *= c;
        return *this;
    }
    friend LogField operator+(LogField a, const LogField& b) { return a += b; }
    friend LogField operator-(LogField a, const LogField& b) { return a -= b; }

    template <class U>
    LogField<U> cast() const {
        LogField<U> r(basis_, weight_);
        for (const auto& [k, op] : comps_) r.slot(k.first, k.second) = op.template cast<U>();
        return r;
    }

private:
    static SparseOperator<T> retag(const SparseOperator<T>& op, const Rational& shift) {
        SparseOperator<T> r(op.basis(), shift);
        for (int i = 0; i < op.size(); ++i) r.set_column(i, op.column(i), op.exact(i));
        return r;
    }

    std::shared_ptr<const FockBasis> basis_;
    Rational weight_;
    std::map<Key, SparseOperator<T>> comps_;
};

using Field = LogField<Rational>;

// I = identity operator times z^0.
Field identity_field(const std::shared_ptr<const FockBasis>& basis);

// Y(a, z) = sum_m z^{-m-1} (e^{-zeta N} a) t^m, with every m whose mode
// shifts energy by at most `reach` in absolute value (default D + 1).
Field field_of(const FockModule& M, const Vec<Rational>& a, std::optional<Rational> reach = std::nullopt);

// ---- calculus on components ----

template <class T>
LogField<T> restrict_zeta_zero(const LogField<T>& f) {
    LogField<T> r(f.basis(), f.weight());
    for (const auto& [k, op] : f.components())
        if (k.second == 0) r.slot(k.first, 0) = op;
    return r;
}

// (plus, minus): minus keeps the components z^gamma with gamma < 0.
template <class T>
std::pair<LogField<T>, LogField<T>> annihilation_split(const LogField<T>& f) {
    LogField<T> plus(f.basis(), f.weight()), minus(f.basis(), f.weight());
    for (const auto& [k, op] : f.components()) {
        Rational gamma = -k.first - Rational(1);
        (gamma.sign() < 0 ? minus : plus).slot(k.first, k.second) = op;
    }
    return {plus, minus};
}

// D_z = d/dz + z^{-1} d/dzeta; raises the weight by one.
template <class T>
LogField<T> d_z(const LogField<T>& f) {
    LogField<T> r(f.basis(), f.weight() + Rational(1));
    for (const auto& [key, op] : f.components()) {
        const auto& [m, k] = key;
        r.add(m + Rational(1), k, op, T(-m - Rational(1)));
        if (k > 0) r.add(m + Rational(1), k - 1, op, T(Rational(k)));
    }
    return r;
}

template <class T>
LogField<T> partial_zeta(const LogField<T>& f) {
    LogField<T> r(f.basis(), f.weight());
    for (const auto& [key, op] : f.components())
        if (key.second > 0) r.add(key.first, key.second - 1, op, T(Rational(key.second)));
    return r;
}

// D_zeta = z d/dz + d/dzeta
template <class T>
LogField<T> d_zeta(const LogField<T>& f) {
    LogField<T> r = partial_zeta(f);
    for (const auto& [key, op] : f.components()) r.add(key.first, key.second, op, T(-key.first - Rational(1)));
    return r;
}

// z^p f(z)
template <class T>
LogField<T> z_power(const LogField<T>& f, const Rational& p) {
    LogField<T> r(f.basis(), f.weight() - p);
    for (const auto& [key, op] : f.components()) r.slot(key.first - p, key.second) = op;
    return r;
}

struct FieldDiff {
    int components = 0;   // components compared
    int columns = 0;      // (component, column) pairs compared
    int mismatched = 0;
    std::optional<std::pair<Rational, int>> first_key;
    int first_column = -1;

    bool ok() const { return mismatched == 0; }
};

// Compares f and g component by component on columns exact in both, for
// components whose energy shift is at most `bound` in absolute value.
template <class T>
FieldDiff compare_fields(const LogField<T>& f, const LogField<T>& g, const Rational& bound) {
    if (!(f.weight() == g.weight())) throw std::invalid_argument("fields of different weight");
    FieldDiff d;
    std::map<std::pair<Rational, int>, int> keys;
    for (const auto& [k, op] : f.components()) keys[k] |= 1;
    for (const auto& [k, op] : g.components()) keys[k] |= 2;
    for (const auto& [key, mask] : keys) {
        Rational s = -key.first - Rational(1) + f.weight();
        if (abs(s) > bound) continue;
        const SparseOperator<T>* a = f.find(key.first, key.second);
        const SparseOperator<T>* b = g.find(key.first, key.second);
        ++d.components;
        const int n = f.basis()->size();
        for (int v = 0; v < n; ++v) {
            if ((a && !a->exact(v)) || (b && !b->exact(v))) continue;
            ++d.columns;
            static const SparseVector<T> empty;
            const SparseVector<T>& ca = a ? a->column(v) : empty;
            const SparseVector<T>& cb = b ? b->column(v) : empty;
            if (ca == cb) continue;
            if (d.mismatched++ == 0) {
                d.first_key = key;
                d.first_column = v;
            }
        }
    }
    return d;
}

// f(z) evaluated on Scalar coefficients: each component picks up
// e^{2 pi i gamma} for z^gamma and zeta is replaced by zeta + 2 pi i.
LogField<Scalar> monodromy(const LogField<Scalar>& f, int conductor);

}  // namespace twistlog
