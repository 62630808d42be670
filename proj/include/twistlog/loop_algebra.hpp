#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "twistlog/twist.hpp"

namespace twistlog {

// Lie algebra g with invariant form and twist. ad[i](k, j) is the v_k
// coefficient of [v_i, v_j]; empty ad means abelian.
struct LieStructure {
    TwistPair twist;
    std::vector<Mat<Rational>> ad;
    Rational level = Rational(1);
    Rational dual_coxeter = Rational(0);

    bool abelian() const { return ad.empty(); }
    Vec<Rational> bracket(const Vec<Rational>& a, const Vec<Rational>& b) const;
};

LieStructure heisenberg(const TwistPair& tp);
// sl2 in the basis (e, h, f), (e|f) = 1, (h|h) = 2, sigma = id, N = ad e.
LieStructure sl2_with_ad_e();
std::vector<std::string> lie_violations(const LieStructure& ls);

// Sum of coefficient * v_index t^exponent, plus central * K.
class LoopElement {
public:
    using Key = std::pair<int, Rational>;

    LoopElement() = default;
    static LoopElement term(int index, const Rational& exponent, const Rational& coeff = Rational(1));
    static LoopElement central_element(const Rational& coeff = Rational(1));

    const std::map<Key, Rational>& terms() const { return terms_; }
    const Rational& central() const { return central_; }
    bool is_zero() const { return terms_.empty() && central_.is_zero(); }

    void add_term(int index, const Rational& exponent, const Rational& coeff);
    LoopElement& operator+=(const LoopElement& o);
    LoopElement& operator-=(const LoopElement& o);
    LoopElement operator*(const Rational& c) const;
    friend LoopElement operator+(LoopElement a, const LoopElement& b) { return a += b; }
    friend LoopElement operator-(LoopElement a, const LoopElement& b) { return a -= b; }
    friend bool operator==(const LoopElement& a, const LoopElement& b) {
        return a.terms_ == b.terms_ && a.central_ == b.central_;
    }

    std::string str() const;

private:
    std::map<Key, Rational> terms_;
    Rational central_;
};

// Throws std::invalid_argument if an exponent is outside its basis coset.
void check_cosets(const LoopElement& x, const TwistPair& tp);

// [a t^m, b t^n] = [a,b] t^{m+n} + delta_{m,-n} ((m+N)a|b) K
LoopElement bracket(const LoopElement& x, const LoopElement& y, const LieStructure& ls);

// gamma_N(a t^m, b t^n) = delta_{m,-n} ((m+N)a|b)
Rational cocycle(const LoopElement& x, const LoopElement& y, const TwistPair& tp);

enum class Triangular { Plus, Zero, Minus };
Triangular triangular_part(const LoopElement& x, const TwistPair& tp);

// omega_bar = sum_i [(S+N) v^i, v_i] and tr binom(S, 2).
struct SugawaraConstants {
    Vec<Rational> omega_bar;
    Rational trace_binom_s;
};
SugawaraConstants sugawara_constants(const LieStructure& ls);

}  // namespace twistlog
