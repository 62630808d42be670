#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "twistlog/cyclotomic.hpp"
#include "twistlog/rational.hpp"

namespace twistlog {

// Element of Q(w_M)[tau], tau a formal symbol standing for 2*pi*i.
class Scalar {
public:
    Scalar() = default;
    Scalar(const Rational& r) : Scalar(Cyclotomic(r)) {}
    Scalar(const Cyclotomic& c);
    template <std::integral I>
    Scalar(I n) : Scalar(Rational(n)) {}

    static Scalar tau();
    static Scalar tau_power(int k);

    bool is_zero() const { return c_.empty(); }
    int tau_degree() const { return static_cast<int>(c_.size()) - 1; }
    // coefficient of tau^k
    Cyclotomic coeff(int k) const;
    const std::vector<Cyclotomic>& coeffs() const { return c_; }
    bool is_rational() const { return c_.empty() || (c_.size() == 1 && c_[0].is_rational()); }
    Rational to_rational() const;  // throws unless is_rational()

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    // Division only by tau-free nonzero scalars.
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.c_ == b.c_; }

    std::string str() const;

private:
    void trim();
    std::vector<Cyclotomic> c_;
};

inline bool is_zero(const Scalar& x) { return x.is_zero(); }
Scalar inverse(const Scalar& x);
std::ostream& operator<<(std::ostream& os, const Scalar& x);

// e^{2 pi i m} in Q(w_M); the denominator of m must divide M.
Scalar root_of_unity(const Rational& m, int conductor);

// lcm(4, denominators)
int conductor_for(const std::vector<Rational>& exponents);

}  // namespace twistlog
