#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twistlog/fock.hpp"
#include "twistlog/identities.hpp"
#include "twistlog/log_field.hpp"
#include "twistlog/weyl.hpp"

namespace twistlog {

// Placement of the pair (v^i t^m)(v_i t^{k-m}). Normal puts the factor with
// m <= -1 on the left; Reversed swaps every pair.
enum class Ordering { Normal, Reversed };

// tr binom(S, 2)
Rational trace_binom_s(const TwistPair& tp);

// 2 L_k = sum_i sum_m :(v^i t^m)(v_i t^{k-m}): - delta_{k,0} tr binom(S, 2),
// summed over every m whose modes can act nontrivially below the cutoff.
Weyl sugawara_weyl(const FockModule& M, int k, Ordering ord = Ordering::Normal);
Operator sugawara_mode(const FockModule& M, int k, Ordering ord = Ordering::Normal);
// L_0 from the closed form
Operator l0_mode(const FockModule& M);
// L_0 with the nilpotent part removed: energy plus vacuum weight on the diagonal.
Operator l0_diagonal(const FockModule& M);

struct VirasoroFamily {
    std::map<int, Operator> modes;
    std::optional<Rational> central_charge;  // as read off the vacuum
};
// L_k for |k| <= range.
VirasoroFamily virasoro_family(const FockModule& M, int range);

// ([L_2, L_{-2}] - 4 L_0) vac = (c/2) vac; nullopt when the vacuum column is
// not exact or the image is not a multiple of the vacuum.
std::optional<Rational> extract_central_charge(const FockModule& M);

struct RelationCheck {
    Outcome outcome = Outcome::Inconclusive;
    int compared = 0;  // exact columns of the residual
    int mismatched = 0;
    int first_column = -1;
};

// [L_m, L_n] - (m-n) L_{m+n} - delta_{m,-n} (m^3-m) c/12 on every exact column.
// The family must contain L_m, L_n and L_{m+n}.
RelationCheck virasoro_relation_check(const VirasoroFamily& F, int m, int n, const Rational& c);
RelationCheck virasoro_relation_check(const FockModule& M, int m, int n, const Rational& c);

// [L_0, Y(a,z)] = (D_zeta + 1) Y(a,z) and [L_{-1}, Y(a,z)] = D_z Y(a,z).
struct LActionCheck {
    FieldCheck l0, lm1;
    Outcome outcome() const;
};
LActionCheck l_action_check(const FockModule& M, const Vec<Rational>& a, const Operator& l0, const Operator& lm1);
LActionCheck l_action_check(const FockModule& M, const Vec<Rational>& a);

// Jordan block sizes of L_0 on the span of basis vectors of one energy.
struct JordanData {
    Rational level;
    Rational eigenvalue;
    int dim = 0;
    std::vector<int> partition;  // descending
    bool exact = true;           // false if a column of L_0 at this level was inexact
};
JordanData jordan_structure(const FockModule& M, const Rational& level);
JordanData jordan_structure(const FockModule& M, const Operator& l0, const Rational& level);

// e^{tau L_0} Y(a,z) e^{-tau L_0} = e^{tau Delta} e^{tau D_zeta} Y(a,z), tau = 2 pi i.
// The constant part of L_0 cancels and is left out of the conjugation.
FieldCheck exp_l0_conjugation_check(const FockModule& M, const Vec<Rational>& a, const Rational& delta = Rational(1));

}  // namespace twistlog
