#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twistlog/basis.hpp"
#include "twistlog/rational.hpp"
#include "twistlog/scalar.hpp"

namespace twistlog {

// Raised when a computation needs a column outside the exactness window.
struct WindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
class SparseVector {
public:
    using Entry = std::pair<int, T>;

    SparseVector() = default;
    static SparseVector unit(int i, const T& c = T(1)) {
        SparseVector v;
        if (!is_zero(c)) v.e_.emplace_back(i, c);
        return v;
    }
    // entries need not be sorted or unique
    static SparseVector from_entries(std::vector<Entry> es) {
        std::sort(es.begin(), es.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
        SparseVector v;
        for (auto& [i, c] : es) {
            if (!v.e_.empty() && v.e_.back().first == i)
                v.e_.back().second += c;
            else
                v.e_.emplace_back(i, std::move(c));
            if (is_zero(v.e_.back().second)) v.e_.pop_back();
        }
        return v;
    }

    const std::vector<Entry>& entries() const { return e_; }
    bool empty() const { return e_.empty(); }
    std::size_t nnz() const { return e_.size(); }
    T at(int i) const {
        auto it = std::lower_bound(e_.begin(), e_.end(), i, [](const Entry& a, int k) { return a.first < k; });
        return (it != e_.end() && it->first == i) ? it->second : T(0);
    }

    // this += c * o
    void add_scaled(const SparseVector& o, const T& c) {
        if (is_zero(c) || o.e_.empty()) return;
        std::vector<Entry> r;
        r.reserve(e_.size() + o.e_.size());
        std::size_t a = 0, b = 0;
        while (a < e_.size() || b < o.e_.size()) {
            if (b == o.e_.size() || (a < e_.size() && e_[a].first < o.e_[b].first)) {
                r.push_back(std::move(e_[a++]));
            } else if (a == e_.size() || o.e_[b].first < e_[a].first) {
                r.emplace_back(o.e_[b].first, o.e_[b].second * c);
                ++b;
            } else {
                T s = e_[a].second + o.e_[b].second * c;
                if (!is_zero(s)) r.emplace_back(e_[a].first, std::move(s));
                ++a;
                ++b;
            }
        }
        e_ = std::move(r);
    }
    SparseVector& operator+=(const SparseVector& o) {
        add_scaled(o, T(1));
        return *this;
    }
    SparseVector& operator-=(const SparseVector& o) {
        add_scaled(o, T(-1));
        return *this;
    }
    SparseVector& operator*=(const T& c) {
        if (is_zero(c)) {
            e_.clear();
            return *this;
        }
        for (auto& en : e_) en.second *= c;
        return *this;
    }
    friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
    friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
    friend SparseVector operator*(SparseVector a, const T& c) { return a *= c; }
    friend bool operator==(const SparseVector& a, const SparseVector& b) { return a.e_ == b.e_; }

    template <class U>
    SparseVector<U> cast() const {
        std::vector<std::pair<int, U>> es;
        for (const auto& [i, c] : e_) es.emplace_back(i, U(c));
        return SparseVector<U>::from_entries(std::move(es));
    }

private:
    std::vector<Entry> e_;
};

// Column-stored operator on a FockBasis with a fixed energy shift. Each
// column carries an exactness flag: false means the true image of that basis
// vector is not representable in the truncated space.
template <class T>
class SparseOperator {
public:
    SparseOperator() = default;
    SparseOperator(std::shared_ptr<const FockBasis> basis, Rational shift)
        : basis_(std::move(basis)), shift_(std::move(shift)),
          cols_(static_cast<std::size_t>(basis_->size())),
          exact_(static_cast<std::size_t>(basis_->size()), true) {}

    static SparseOperator zero(std::shared_ptr<const FockBasis> basis, Rational shift) {
        return SparseOperator(std::move(basis), std::move(shift));
    }
    static SparseOperator identity(std::shared_ptr<const FockBasis> basis, const T& c = T(1)) {
        SparseOperator op(basis, Rational(0));
        for (int i = 0; i < basis->size(); ++i) op.cols_[static_cast<std::size_t>(i)] = SparseVector<T>::unit(i, c);
        return op;
    }

    const std::shared_ptr<const FockBasis>& basis() const { return basis_; }
    const Rational& shift() const { return shift_; }
    int size() const { return static_cast<int>(cols_.size()); }
    bool valid() const { return basis_ != nullptr; }

    const SparseVector<T>& column(int i) const { return cols_[static_cast<std::size_t>(i)]; }
    bool exact(int i) const { return exact_[static_cast<std::size_t>(i)]; }
    void set_column(int i, SparseVector<T> c, bool exact = true) {
        cols_[static_cast<std::size_t>(i)] = std::move(c);
        exact_[static_cast<std::size_t>(i)] = exact;
    }
    void mark_inexact(int i) {
        cols_[static_cast<std::size_t>(i)] = SparseVector<T>();
        exact_[static_cast<std::size_t>(i)] = false;
    }
    int exact_count() const { return static_cast<int>(std::count(exact_.begin(), exact_.end(), true)); }
    bool fully_exact() const { return exact_count() == size(); }
    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& c : cols_) n += c.nnz();
        return n;
    }
    bool is_zero_on_exact() const {
        for (int i = 0; i < size(); ++i)
            if (exact(i) && !column(i).empty()) return false;
        return true;
    }

    std::optional<SparseVector<T>> try_apply(const SparseVector<T>& v) const {
        SparseVector<T> r;
        for (const auto& [i, c] : v.entries()) {
            if (!exact(i)) return std::nullopt;
            r.add_scaled(column(i), c);
        }
        return r;
    }
    SparseVector<T> apply(const SparseVector<T>& v) const {
        auto r = try_apply(v);
        if (!r) throw WindowError("operator applied outside its exactness window");
        return *r;
    }

    // Largest E such that every column of energy <= E is exact; -1 if the
    // vacuum column is already inexact.
    Rational window() const {
        Rational best(-1);
        for (int i = 0; i < size(); ++i) {
            if (!exact(i)) return best;
            best = basis_->energy(i);
        }
        return best;
    }

    SparseOperator& operator+=(const SparseOperator& o) { return combine(o, T(1)); }
    SparseOperator& operator-=(const SparseOperator& o) { return combine(o, T(-1)); }
    SparseOperator& operator*=(const T& c) {
        for (auto& col : cols_) col *= c;
        return *this;
    }
    friend SparseOperator operator+(SparseOperator a, const SparseOperator& b) { return a += b; }
    friend SparseOperator operator-(SparseOperator a, const SparseOperator& b) { return a -= b; }
    friend SparseOperator operator*(SparseOperator a, const T& c) { return a *= c; }

    SparseOperator& add_scaled(const SparseOperator& o, const T& c) { return combine(o, c); }

    template <class U>
    SparseOperator<U> cast() const {
        SparseOperator<U> r(basis_, shift_);
        for (int i = 0; i < size(); ++i) r.set_column(i, column(i).template cast<U>(), exact(i));
        return r;
    }

private:
    SparseOperator& combine(const SparseOperator& o, const T& c) {
        check_compatible(o);
        for (std::size_t i = 0; i < cols_.size(); ++i) {
            if (!exact_[i] || !o.exact_[i]) {
                cols_[i] = SparseVector<T>();
                exact_[i] = false;
                continue;
            }
            cols_[i].add_scaled(o.cols_[i], c);
        }
        return *this;
    }
    void check_compatible(const SparseOperator& o) const {
        if (basis_ != o.basis_) throw std::invalid_argument("operators on different bases");
        if (!(shift_ == o.shift_))
            throw std::invalid_argument("operators with different energy shifts: " + shift_.str() + " vs " +
                                        o.shift_.str());
    }

    std::shared_ptr<const FockBasis> basis_;
    Rational shift_;
    std::vector<SparseVector<T>> cols_;
    std::vector<bool> exact_;
};

// A after B. Column v is exact iff B v is exact and A is exact on its support.
template <class T>
SparseOperator<T> compose(const SparseOperator<T>& a, const SparseOperator<T>& b) {
    if (a.basis() != b.basis()) throw std::invalid_argument("operators on different bases");
    SparseOperator<T> r(a.basis(), a.shift() + b.shift());
    for (int v = 0; v < b.size(); ++v) {
        if (!b.exact(v)) {
            r.mark_inexact(v);
            continue;
        }
        auto out = a.try_apply(b.column(v));
        if (!out)
            r.mark_inexact(v);
        else
            r.set_column(v, std::move(*out));
    }
    return r;
}

template <class T>
SparseOperator<T> commutator(const SparseOperator<T>& a, const SparseOperator<T>& b) {
    SparseOperator<T> r = compose(a, b);
    r -= compose(b, a);
    return r;
}

// Compares two operators on the columns where both are exact.
template <class T>
struct OperatorDiff {
    int compared = 0;
    int mismatched = 0;
    int first_column = -1;
    int first_row = -1;
    T lhs{}, rhs{};
};

template <class T>
OperatorDiff<T> compare_on_exact(const SparseOperator<T>& a, const SparseOperator<T>& b) {
    OperatorDiff<T> d;
    if (a.basis() != b.basis()) throw std::invalid_argument("operators on different bases");
    for (int v = 0; v < a.size(); ++v) {
        if (!a.exact(v) || !b.exact(v)) continue;
        ++d.compared;
        if (a.column(v) == b.column(v)) continue;
        if (d.mismatched++ == 0) {
            SparseVector<T> diff = a.column(v) - b.column(v);
            d.first_column = v;
            d.first_row = diff.entries().front().first;
            d.lhs = a.column(v).at(d.first_row);
            d.rhs = b.column(v).at(d.first_row);
        }
    }
    return d;
}

}  // namespace twistlog
