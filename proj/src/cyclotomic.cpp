#include "twistlog/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace twistlog {

namespace {

using Poly = std::vector<Rational>;

void trim_poly(Poly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// Remainder of a modulo the monic polynomial m.
void reduce_monic(Poly& a, const Poly& m) {
    const std::size_t d = m.size() - 1;
    for (std::size_t k = a.size(); k-- > d;) {
        if (a[k].is_zero()) continue;
        Rational c = a[k];
        for (std::size_t i = 0; i <= d; ++i) a[k - d + i] -= c * m[i];
    }
    if (a.size() > d) a.resize(d);
    trim_poly(a);
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim_poly(r);
    return r;
}

Poly poly_sub(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim_poly(a);
    return a;
}

// Quotient and remainder of a by nonzero b.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
    trim_poly(a);
    if (a.size() < b.size()) return {{}, a};
    Poly q(a.size() - b.size() + 1);
    Rational lead = inverse(b.back());
    for (std::size_t k = a.size(); k-- >= b.size();) {
        if (a[k].is_zero()) continue;
        Rational c = a[k] * lead;
        std::size_t shift = k - (b.size() - 1);
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    }
    trim_poly(q);
    trim_poly(a);
    return {q, a};
}

std::vector<long long> int_poly_div_exact(std::vector<long long> a, const std::vector<long long>& b) {
    // b monic with integer coefficients
    std::vector<long long> q(a.size() - b.size() + 1, 0);
    for (std::size_t k = a.size(); k-- >= b.size();) {
        long long c = a[k];
        if (c == 0) continue;
        std::size_t shift = k - (b.size() - 1);
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    }
    return q;
}

int euler_phi(int n) {
    int r = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

}  // namespace

std::vector<long long> cyclotomic_polynomial(int n) {
    if (n < 1) throw std::invalid_argument("cyclotomic polynomial index must be positive");
    std::vector<long long> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = int_poly_div_exact(p, cyclotomic_polynomial(d));
    return p;
}

std::shared_ptr<const CyclotomicContext> CyclotomicContext::get(int conductor) {
    if (conductor < 1) throw std::invalid_argument("conductor must be positive");
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const CyclotomicContext>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(conductor);
    if (it != cache.end()) return it->second;

    auto ctx = std::make_shared<CyclotomicContext>();
    ctx->conductor = conductor;
    ctx->degree = euler_phi(conductor);
    for (long long c : cyclotomic_polynomial(conductor)) ctx->phi.emplace_back(c);
    Poly cur{Rational(1)};
    for (int k = 0; k < conductor; ++k) {
        ctx->powers.push_back(cur);
        Poly next(cur.size() + 1);
        for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] = cur[i];
        reduce_monic(next, ctx->phi);
        cur = next;
    }
    cache.emplace(conductor, ctx);
    return ctx;
}

Cyclotomic::Cyclotomic(const Rational& r) {
    if (!r.is_zero()) c_.push_back(r);
}

Cyclotomic::Cyclotomic(std::shared_ptr<const CyclotomicContext> ctx, std::vector<Rational> coeffs)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    if (ctx_ && c_.size() > static_cast<std::size_t>(ctx_->degree)) reduce_monic(c_, ctx_->phi);
    trim();
}

Cyclotomic Cyclotomic::root(int conductor, long long k) {
    auto ctx = CyclotomicContext::get(conductor);
    long long r = ((k % conductor) + conductor) % conductor;
    return Cyclotomic(ctx, ctx->powers[static_cast<std::size_t>(r)]);
}

void Cyclotomic::trim() { trim_poly(c_); }

void Cyclotomic::adopt(const Cyclotomic& o) {
    if (!o.ctx_ || o.ctx_ == ctx_) return;
    if (!ctx_) {
        ctx_ = o.ctx_;
        return;
    }
    if (ctx_->conductor != o.ctx_->conductor)
        throw std::domain_error("cyclotomic conductor mismatch: " + std::to_string(ctx_->conductor) +
                                " vs " + std::to_string(o.ctx_->conductor));
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    adopt(o);
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
    adopt(o);
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    adopt(o);
    if (c_.empty() || o.c_.empty()) {
        c_.clear();
        return *this;
    }
    if (o.c_.size() == 1) {
        for (auto& c : c_) c *= o.c_[0];
        return *this;
    }
    if (c_.size() == 1) {
        Rational s = c_[0];
        c_ = o.c_;
        for (auto& c : c_) c *= s;
        return *this;
    }
    c_ = poly_mul(c_, o.c_);
    reduce_monic(c_, ctx_->phi);
    return *this;
}

Cyclotomic Cyclotomic::inverse() const {
    if (c_.empty()) throw std::domain_error("inverse of zero cyclotomic number");
    if (c_.size() == 1) {
        Cyclotomic r(twistlog::inverse(c_[0]));
        r.ctx_ = ctx_;
        return r;
    }
    // Extended Euclid: find u with u*a = 1 mod Phi.
    Poly r0 = ctx_->phi, r1 = c_;
    Poly s0{}, s1{Rational(1)};
    while (!(r1.size() == 1)) {
        if (r1.empty()) throw std::domain_error("cyclotomic element not invertible");
        auto [q, r] = poly_divmod(r0, r1);
        Poly s = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    Rational k = twistlog::inverse(r1[0]);
    for (auto& c : s1) c *= k;
    return Cyclotomic(ctx_, s1);
}

std::string Cyclotomic::str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        Rational c = c_[i];
        bool neg = c.sign() < 0;
        if (neg) c = -c;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (i == 0) {
            out += c.str();
        } else {
            if (!c.is_one()) out += c.str() + "*";
            out += "w";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace twistlog
