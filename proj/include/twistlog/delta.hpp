#pragma once

#include <map>
#include <tuple>

#include "twistlog/twist.hpp"

namespace twistlog {

// Finite piece of a series in z1, z2, zeta1, zeta2 with End(h) coefficients,
// keyed by (z1 exponent, zeta1 degree, z2 exponent, zeta2 degree).
class TwoVarSeries {
public:
    using Key = std::tuple<Rational, int, Rational, int>;

    explicit TwoVarSeries(int dim = 0) : dim_(dim) {}

    int dim() const { return dim_; }
    const std::map<Key, Mat<Rational>>& terms() const { return terms_; }
    void add(const Key& k, const Mat<Rational>& c);

    TwoVarSeries& operator+=(const TwoVarSeries& o);
    TwoVarSeries& operator-=(const TwoVarSeries& o);

    // z1^{a1} z2^{a2} times this
    TwoVarSeries shifted(const Rational& a1, const Rational& a2) const;
    // (z1 - z2) times this
    TwoVarSeries times_z12() const;
    // this times e^{(zeta2 - zeta1) N}
    TwoVarSeries times_exp(const Mat<Rational>& nil) const;

    // terms whose z2 exponent lies in [lo, hi]
    TwoVarSeries window(const Rational& lo, const Rational& hi) const;
    bool is_zero() const { return terms_.empty(); }
    friend bool operator==(const TwoVarSeries& a, const TwoVarSeries& b);

private:
    int dim_;
    std::map<Key, Mat<Rational>> terms_;
};

// sum over m in alpha + Z with lo <= m <= hi of z1^{-m-1} z2^m e^{(zeta2-zeta1) N}
TwoVarSeries shifted_delta(const Rational& alpha, const TwistPair& tp, const Rational& lo, const Rational& hi);
// sum over integers n in [lo, hi] of z1^{-n-1} z2^n, times the identity
TwoVarSeries ordinary_delta(int dim, int lo, int hi);

}  // namespace twistlog
