#pragma once

#include <string>
#include <vector>

#include "twistlog/rational.hpp"

namespace twistlog {

// Polynomial in the log variable zeta; coefficients lowest degree first.
template <class T>
class ZetaPoly {
public:
    ZetaPoly() = default;
    ZetaPoly(const T& c) {
        if (!is_zero(c)) c_.push_back(c);
    }
    explicit ZetaPoly(std::vector<T> c) : c_(std::move(c)) { trim(); }

    static ZetaPoly monomial(int k, const T& c) {
        std::vector<T> v(static_cast<std::size_t>(k) + 1, T(0));
        v.back() = c;
        return ZetaPoly(std::move(v));
    }
    static ZetaPoly zeta() { return monomial(1, T(1)); }

    bool is_zero_poly() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    T coeff(int k) const {
        return (k < 0 || k >= static_cast<int>(c_.size())) ? T(0) : c_[static_cast<std::size_t>(k)];
    }
    const std::vector<T>& coeffs() const { return c_; }

    ZetaPoly& operator+=(const ZetaPoly& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    ZetaPoly& operator-=(const ZetaPoly& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    ZetaPoly operator-() const {
        ZetaPoly r(*this);
        for (auto& c : r.c_) c = -c;
        return r;
    }
    friend ZetaPoly operator+(ZetaPoly a, const ZetaPoly& b) { return a += b; }
    friend ZetaPoly operator-(ZetaPoly a, const ZetaPoly& b) { return a -= b; }
    friend ZetaPoly operator*(const ZetaPoly& a, const ZetaPoly& b) {
        if (a.c_.empty() || b.c_.empty()) return {};
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return ZetaPoly(std::move(r));
    }
    friend bool operator==(const ZetaPoly& a, const ZetaPoly& b) { return a.c_ == b.c_; }

    ZetaPoly derivative() const {
        std::vector<T> r;
        for (std::size_t k = 1; k < c_.size(); ++k) r.push_back(c_[k] * T(static_cast<long long>(k)));
        return ZetaPoly(std::move(r));
    }

    T evaluate(const T& z) const {
        T r(0);
        for (std::size_t k = c_.size(); k-- > 0;) r = r * z + c_[k];
        return r;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (is_zero(c_[k])) continue;
            if (!out.empty()) out += " + ";
            out += "(" + c_[k].str() + ")";
            if (k > 0) out += "*zeta" + (k > 1 ? "^" + std::to_string(k) : std::string());
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    }
    std::vector<T> c_;
};

// p(zeta + amount)
template <class T>
ZetaPoly<T> shift_zeta(const ZetaPoly<T>& p, const T& amount) {
    ZetaPoly<T> r;
    ZetaPoly<T> lin(std::vector<T>{amount, T(1)});
    for (int k = p.degree(); k >= 0; --k) r = r * lin + ZetaPoly<T>(p.coeff(k));
    return r;
}

}  // namespace twistlog
