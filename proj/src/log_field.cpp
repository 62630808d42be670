#include "twistlog/log_field.hpp"

#include <map>

namespace twistlog {

Field identity_field(const std::shared_ptr<const FockBasis>& basis) {
    Field f(basis, Rational(0));
    f.slot(Rational(-1), 0) = Operator::identity(basis);
    return f;
}

Field field_of(const FockModule& M, const Vec<Rational>& a, std::optional<Rational> reach) {
    const Rational R = reach.value_or(M.spec().cutoff + Rational(1));
    const TwistPair& tp = M.twist();
    Field f(M.basis(), Rational(1));
    std::map<Rational, Vec<Rational>> by_coset;
    for (int g = 0; g < tp.dim(); ++g) {
        if (a(g).is_zero()) continue;
        const Rational& c = tp.coset[static_cast<std::size_t>(g)];
        auto it = by_coset.find(c);
        if (it == by_coset.end()) it = by_coset.emplace(c, zeros<Rational>(tp.dim(), 1)).first;
        it->second(g) = a(g);
    }
    for (const auto& [c, ac] : by_coset) {
        std::vector<std::pair<int, Vec<Rational>>> powers;  // (k, (-1)^k/k! N^k a)
        Vec<Rational> cur = ac;
        Rational coef(1);
        for (int k = 0; !is_zero_matrix(cur); ++k) {
            powers.emplace_back(k, cur * coef);
            cur = mul(tp.nil, cur);
            coef = coef * Rational(-1) / Rational(k + 1);
        }
        // m in c + Z with |m| <= R
        for (Rational m = c - floor(R); m <= R; m += Rational(1)) {
            if (abs(m) > R) continue;
            for (const auto& [k, vec] : powers) f.add(m, k, M.mode_of(vec, m));
        }
    }
    return f;
}

LogField<Scalar> monodromy(const LogField<Scalar>& f, int conductor) {
    LogField<Scalar> r(f.basis(), f.weight());
    for (const auto& [key, op] : f.components()) {
        const auto& [m, k] = key;
        Scalar phase = root_of_unity(-m - Rational(1), conductor);
        for (int j = 0; j <= k; ++j) {
            Scalar c = phase * Scalar(binom_rational(Rational(k), j)) * Scalar::tau_power(k - j);
            r.add(m, j, op, c);
        }
    }
    return r;
}

}  // namespace twistlog
