#include "twistlog/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace twistlog {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

u128 uabs(i128 x) { return x < 0 ? static_cast<u128>(-x) : static_cast<u128>(x); }

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        if (a <= UINT64_MAX && b <= UINT64_MAX) {
            std::uint64_t x = static_cast<std::uint64_t>(a), y = static_cast<std::uint64_t>(b);
            while (y != 0) {
                std::uint64_t t = x % y;
                x = y;
                y = t;
            }
            return x;
        }
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::uint64_t uabs64(std::int64_t x) {
    return x < 0 ? static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(x)
                 : static_cast<std::uint64_t>(x);
}

bool fits(i128 x) { return x >= INT64_MIN && x <= INT64_MAX; }

mpz_class mpz_from_i128(i128 x) {
    bool neg = x < 0;
    u128 u = uabs(x);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num_(0), den_(1) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    set_from_i128(n, d);
}

void Rational::set_from_i128(i128 n, i128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    u128 g = gcd128(uabs(n), static_cast<u128>(d));
    if (g > 1) {
        n /= static_cast<i128>(g);
        d /= static_cast<i128>(g);
    }
    if (fits(n) && d <= INT64_MAX) {
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
        big_.reset();
    } else {
        mpq_class q(mpz_from_i128(n), mpz_from_i128(d));
        big_ = std::make_unique<mpq_class>(q);
    }
}

void Rational::assign(const mpq_class& q0) {
    mpq_class q(q0);
    q.canonicalize();
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
        num_ = q.get_num().get_si();
        den_ = q.get_den().get_si();
        big_.reset();
    } else {
        num_ = 0;
        den_ = 1;
        big_ = std::make_unique<mpq_class>(std::move(q));
    }
}

Rational Rational::parse(std::string_view s) {
    auto trim = [](std::string_view x) {
        while (!x.empty() && (x.front() == ' ' || x.front() == '\t')) x.remove_prefix(1);
        while (!x.empty() && (x.back() == ' ' || x.back() == '\t')) x.remove_suffix(1);
        return x;
    };
    auto valid_int = [](std::string_view x) {
        if (!x.empty() && (x.front() == '-' || x.front() == '+')) x.remove_prefix(1);
        if (x.empty()) return false;
        for (char c : x)
            if (c < '0' || c > '9') return false;
        return true;
    };
    s = trim(s);
    auto slash = s.find('/');
    std::string_view ns = trim(s.substr(0, slash));
    std::string_view ds = slash == std::string_view::npos ? std::string_view("1")
                                                           : trim(s.substr(slash + 1));
    if (!valid_int(ns) || !valid_int(ds) || ds.front() == '-' || ds.front() == '+')
        throw std::invalid_argument("malformed rational \"" + std::string(s) + "\"");
    auto strip_plus = [](std::string_view x) {
        if (!x.empty() && x.front() == '+') x.remove_prefix(1);
        return std::string(x);
    };
    mpz_class n(strip_plus(ns), 10), d(strip_plus(ds), 10);
    if (d == 0)
        throw std::invalid_argument("zero denominator in rational \"" + std::string(s) + "\"");
    return Rational(mpq_class(n, d));
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

mpz_class Rational::numerator() const {
    return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_));
}

mpz_class Rational::denominator() const {
    return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_));
}

std::int64_t Rational::den_int() const {
    if (!big_) return den_;
    if (!big_->get_den().fits_slong_p()) throw std::overflow_error("denominator too large");
    return big_->get_den().get_si();
}

std::int64_t Rational::to_int() const {
    if (!is_integer()) throw std::domain_error("rational " + str() + " is not an integer");
    if (!big_) return num_;
    if (!big_->get_num().fits_slong_p()) throw std::overflow_error("integer too large");
    return big_->get_num().get_si();
}

std::string Rational::str() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
    if (!big_ && num_ != INT64_MIN) {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    return Rational(mpq_class(-to_mpq()));
}

Rational& Rational::operator+=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            std::int64_t r;
            if (!__builtin_add_overflow(num_, o.num_, &r)) {
                num_ = r;
                return *this;
            }
        }
        set_from_i128(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
                      static_cast<i128>(den_) * o.den_);
        return *this;
    }
    assign(to_mpq() + o.to_mpq());
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            std::int64_t r;
            if (!__builtin_sub_overflow(num_, o.num_, &r)) {
                num_ = r;
                return *this;
            }
        }
        set_from_i128(static_cast<i128>(num_) * o.den_ - static_cast<i128>(o.num_) * den_,
                      static_cast<i128>(den_) * o.den_);
        return *this;
    }
    assign(to_mpq() - o.to_mpq());
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (num_ == 0 || o.num_ == 0) {
            num_ = 0;
            den_ = 1;
            return *this;
        }
        std::uint64_t g1 = gcd64(uabs64(num_), static_cast<std::uint64_t>(o.den_));
        std::uint64_t g2 = gcd64(uabs64(o.num_), static_cast<std::uint64_t>(den_));
        std::int64_t a = num_ / static_cast<std::int64_t>(g1);
        std::int64_t b = o.num_ / static_cast<std::int64_t>(g2);
        std::int64_t c = den_ / static_cast<std::int64_t>(g2);
        std::int64_t d = o.den_ / static_cast<std::int64_t>(g1);
        std::int64_t n, m;
        if (!__builtin_mul_overflow(a, b, &n) && !__builtin_mul_overflow(c, d, &m)) {
            num_ = n;
            den_ = m;
            return *this;
        }
        set_from_i128(static_cast<i128>(a) * b, static_cast<i128>(c) * d);
        return *this;
    }
    assign(to_mpq() * o.to_mpq());
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational");
    return *this *= inverse(o);
}

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical forms differ in storage class
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        i128 l = static_cast<i128>(a.num_) * b.den_;
        i128 r = static_cast<i128>(b.num_) * a.den_;
        return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::size_t Rational::hash() const {
    if (big_) return std::hash<std::string>{}(big_->get_str());
    std::uint64_t h = static_cast<std::uint64_t>(num_) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(den_) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational floor(const Rational& x) {
    if (x.is_small()) {
        std::int64_t n = x.numerator().get_si(), d = x.den_int();
        std::int64_t q = n / d;
        if ((n % d != 0) && (n < 0)) --q;
        return Rational(q);
    }
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.numerator().get_mpz_t(), x.denominator().get_mpz_t());
    return Rational(mpq_class(q));
}

Rational ceil(const Rational& x) { return -floor(-x); }

Rational frac(const Rational& x) { return x - floor(x); }

Rational inverse(const Rational& x) {
    if (x.is_zero()) throw std::domain_error("inverse of zero rational");
    if (x.is_small()) {
        std::int64_t n = x.numerator().get_si(), d = x.den_int();
        return Rational(d, n);
    }
    mpq_class q = x.to_mpq();
    return Rational(mpq_class(q.get_den(), q.get_num()));
}

Rational pow(const Rational& x, int e) {
    if (e < 0) return pow(inverse(x), -e);
    Rational r(1), b(x);
    while (e > 0) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

Rational binom_rational(const Rational& m, int j) {
    if (j < 0) throw std::invalid_argument("binom_rational: negative j");
    Rational r(1);
    for (int i = 0; i < j; ++i) r *= (m - Rational(i)) / Rational(i + 1);
    return r;
}

Rational factorial(int n) {
    Rational r(1);
    for (int i = 2; i <= n; ++i) r *= Rational(i);
    return r;
}

}  // namespace twistlog
