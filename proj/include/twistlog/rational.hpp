#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <type_traits>

#include <gmpxx.h>

namespace twistlog {

// Exact rational. Values whose reduced numerator and denominator fit in
// int64 are kept inline; anything larger lives in an mpq_class.
class Rational {
public:
    Rational() noexcept : num_(0), den_(1) {}
    template <std::integral I>
    Rational(I n) : num_(0), den_(1) { assign_integer(n); }
    Rational(std::int64_t n, std::int64_t d);
    explicit Rational(const mpq_class& q) { assign(q); }

    Rational(const Rational& o)
        : num_(o.num_), den_(o.den_),
          big_(o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr) {}
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& o) {
        if (this != &o) {
            num_ = o.num_;
            den_ = o.den_;
            big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Rational& operator=(Rational&&) noexcept = default;

    // Accepts "p", "-p", "p/q" with optional surrounding whitespace.
    static Rational parse(std::string_view s);

    bool is_small() const noexcept { return !big_; }
    bool is_zero() const noexcept { return !big_ && num_ == 0; }
    bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
    bool is_integer() const;
    int sign() const;

    mpq_class to_mpq() const;
    mpz_class numerator() const;
    mpz_class denominator() const;
    // Throws std::overflow_error if the denominator does not fit.
    std::int64_t den_int() const;
    std::int64_t to_int() const;  // requires is_integer() and int64 range

    std::string str() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    std::size_t hash() const;

private:
    template <std::integral I>
    void assign_integer(I n) {
        if constexpr (std::is_signed_v<I> || sizeof(I) < sizeof(std::int64_t)) {
            num_ = static_cast<std::int64_t>(n);
        } else {
            if (n > static_cast<I>(INT64_MAX)) {
                big_ = std::make_unique<mpq_class>(mpz_class(std::to_string(n)));
                return;
            }
            num_ = static_cast<std::int64_t>(n);
        }
    }
    void assign(const mpq_class& q);
    void set_from_i128(__int128 n, __int128 d);

    std::int64_t num_;
    std::int64_t den_;
    std::unique_ptr<mpq_class> big_;
};

Rational abs(const Rational& x);
Rational floor(const Rational& x);
Rational ceil(const Rational& x);
// x - floor(x), in [0, 1)
Rational frac(const Rational& x);
Rational inverse(const Rational& x);
Rational pow(const Rational& x, int e);
inline bool is_zero(const Rational& x) { return x.is_zero(); }

std::ostream& operator<<(std::ostream& os, const Rational& x);

// Generalized binomial m(m-1)...(m-j+1)/j!
Rational binom_rational(const Rational& m, int j);
Rational factorial(int n);

}  // namespace twistlog

template <>
struct std::hash<twistlog::Rational> {
    std::size_t operator()(const twistlog::Rational& r) const { return r.hash(); }
};
