#include "twistlog/scalar.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>

namespace twistlog {

Scalar::Scalar(const Cyclotomic& c) {
    if (!c.is_zero()) c_.push_back(c);
}

Scalar Scalar::tau() { return tau_power(1); }

Scalar Scalar::tau_power(int k) {
    Scalar s;
    s.c_.assign(static_cast<std::size_t>(k) + 1, Cyclotomic());
    s.c_.back() = Cyclotomic(Rational(1));
    return s;
}

Cyclotomic Scalar::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Cyclotomic();
    return c_[static_cast<std::size_t>(k)];
}

Rational Scalar::to_rational() const {
    if (!is_rational()) throw std::domain_error("scalar " + str() + " is not rational");
    return c_.empty() ? Rational(0) : c_[0].rational_part();
}

void Scalar::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar Scalar::operator-() const {
    Scalar r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (c_.empty() || o.c_.empty()) {
        c_.clear();
        return *this;
    }
    if (o.c_.size() == 1) {
        for (auto& c : c_) c *= o.c_[0];
        trim();
        return *this;
    }
    std::vector<Cyclotomic> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    c_ = std::move(r);
    trim();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.c_.empty()) throw std::domain_error("division by zero scalar");
    if (o.c_.size() != 1) throw std::domain_error("division by a tau-dependent scalar");
    Cyclotomic inv = o.c_[0].inverse();
    for (auto& c : c_) c *= inv;
    return *this;
}

Scalar inverse(const Scalar& x) { return Scalar(1) / x; }

std::string Scalar::str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) continue;
        std::string term = c_[k].str();
        if (k > 0) {
            bool simple = c_[k].is_rational();
            if (term == "1")
                term.clear();
            else if (term == "-1")
                term = "-";
            else if (!simple)
                term = "(" + term + ")*";
            else
                term += "*";
            term += "tau";
            if (k > 1) term += "^" + std::to_string(k);
        } else if (c_.size() > 1 && !c_[0].is_rational()) {
            term = "(" + term + ")";
        }
        if (!out.empty()) out += " + ";
        out += term;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.str(); }

Scalar root_of_unity(const Rational& m, int conductor) {
    std::int64_t d = m.den_int();
    if (conductor % d != 0)
        throw std::domain_error("denominator of " + m.str() + " does not divide conductor " +
                                std::to_string(conductor));
    Rational k = frac(m) * Rational(conductor);
    return Scalar(Cyclotomic::root(conductor, k.to_int()));
}

int conductor_for(const std::vector<Rational>& exponents) {
    long long m = 4;
    for (const auto& e : exponents) m = std::lcm(m, e.den_int());
    if (m > (1 << 20)) throw std::domain_error("conductor too large");
    return static_cast<int>(m);
}

}  // namespace twistlog
