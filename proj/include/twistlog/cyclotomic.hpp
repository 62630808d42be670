#pragma once

#include <memory>
#include <string>
#include <vector>

#include "twistlog/rational.hpp"

namespace twistlog {

// Arithmetic context for Q(w_M): coefficients reduced modulo the M-th
// cyclotomic polynomial Phi_M.
struct CyclotomicContext {
    int conductor = 1;
    int degree = 1;                      // phi(M)
    std::vector<Rational> phi;           // monic, phi.size() == degree + 1
    std::vector<std::vector<Rational>> powers;  // w^k reduced, k in [0, M)

    static std::shared_ptr<const CyclotomicContext> get(int conductor);
};

// Integer coefficients of Phi_n, lowest degree first.
std::vector<long long> cyclotomic_polynomial(int n);

class Cyclotomic {
public:
    Cyclotomic() = default;
    Cyclotomic(const Rational& r);
    template <std::integral I>
    Cyclotomic(I n) : Cyclotomic(Rational(n)) {}
    Cyclotomic(std::shared_ptr<const CyclotomicContext> ctx, std::vector<Rational> coeffs);

    // w_M^k
    static Cyclotomic root(int conductor, long long k);

    const CyclotomicContext* context() const { return ctx_.get(); }
    int conductor() const { return ctx_ ? ctx_->conductor : 1; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return c_.size() <= 1; }
    Rational rational_part() const { return c_.empty() ? Rational(0) : c_[0]; }

    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }
    Cyclotomic inverse() const;

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.c_ == b.c_; }

    // "1/2 - 3*w^2", w the primitive root e^{2 pi i / M}
    std::string str() const;

private:
    void trim();
    void adopt(const Cyclotomic& o);

    std::shared_ptr<const CyclotomicContext> ctx_;
    std::vector<Rational> c_;  // trimmed; empty means zero
};

inline bool is_zero(const Cyclotomic& x) { return x.is_zero(); }

}  // namespace twistlog
