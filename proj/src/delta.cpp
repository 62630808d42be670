#include "twistlog/delta.hpp"

#include <stdexcept>

namespace twistlog {

void TwoVarSeries::add(const Key& k, const Mat<Rational>& c) {
    if (is_zero_matrix(c)) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second = it->second + c;
    if (is_zero_matrix(it->second)) terms_.erase(it);
}

TwoVarSeries& TwoVarSeries::operator+=(const TwoVarSeries& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

TwoVarSeries& TwoVarSeries::operator-=(const TwoVarSeries& o) {
    for (const auto& [k, c] : o.terms_) add(k, c * Rational(-1));
    return *this;
}

TwoVarSeries TwoVarSeries::shifted(const Rational& a1, const Rational& a2) const {
    TwoVarSeries r(dim_);
    for (const auto& [k, c] : terms_) {
        const auto& [e1, k1, e2, k2] = k;
        r.add({e1 + a1, k1, e2 + a2, k2}, c);
    }
    return r;
}

TwoVarSeries TwoVarSeries::times_z12() const {
    TwoVarSeries r = shifted(Rational(1), Rational(0));
    r -= shifted(Rational(0), Rational(1));
    return r;
}

TwoVarSeries TwoVarSeries::times_exp(const Mat<Rational>& nil) const {
    // e^{(zeta2 - zeta1) N} = sum_{a,b} zeta2^a (-zeta1)^b N^{a+b} / (a! b!)
    const int idx = nilpotency_index(nil);
    std::vector<Mat<Rational>> pw{identity<Rational>(nil.rows())};
    for (int p = 1; p < idx; ++p) pw.push_back(mul(pw.back(), nil));
    TwoVarSeries r(dim_);
    for (const auto& [k, c] : terms_) {
        const auto& [e1, k1, e2, k2] = k;
        for (int a = 0; a < idx; ++a)
            for (int b = 0; a + b < idx; ++b) {
                Rational coef = Rational(1) / (factorial(a) * factorial(b));
                if (b % 2) coef = -coef;
                r.add({e1, k1 + b, e2, k2 + a}, mul(c, pw[static_cast<std::size_t>(a + b)]) * coef);
            }
    }
    return r;
}

TwoVarSeries TwoVarSeries::window(const Rational& lo, const Rational& hi) const {
    TwoVarSeries r(dim_);
    for (const auto& [k, c] : terms_) {
        const Rational& e2 = std::get<2>(k);
        if (e2 >= lo && e2 <= hi) r.terms_.emplace(k, c);
    }
    return r;
}

bool operator==(const TwoVarSeries& a, const TwoVarSeries& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib)
        if (ia->first != ib->first || !equal(ia->second, ib->second)) return false;
    return true;
}

TwoVarSeries shifted_delta(const Rational& alpha, const TwistPair& tp, const Rational& lo, const Rational& hi) {
    TwoVarSeries base(tp.dim());
    Rational start = alpha + ceil(lo - alpha);
    for (Rational m = start; m <= hi; m += Rational(1))
        base.add({-m - Rational(1), 0, m, 0}, identity<Rational>(tp.dim()));
    return base.times_exp(tp.nil);
}

TwoVarSeries ordinary_delta(int dim, int lo, int hi) {
    TwoVarSeries r(dim);
    for (int n = lo; n <= hi; ++n) r.add({Rational(-n - 1), 0, Rational(n), 0}, identity<Rational>(dim));
    return r;
}

}  // namespace twistlog
