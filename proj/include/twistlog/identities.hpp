#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "twistlog/log_field.hpp"
#include "twistlog/nproduct.hpp"

namespace twistlog {

enum class Outcome { Pass, Fail, Inconclusive };
const char* outcome_name(Outcome o);

struct BorcherdsInput {
    int a = 0, b = 0;  // generators v_{a+1}, v_{b+1}
    Rational m, k;
    int n = 0;
    int v = 0;  // basis vector
};

struct BorcherdsResult {
    Outcome outcome = Outcome::Inconclusive;
    Vector lhs, rhs;
    std::string reason;
};

// Twisted Borcherds identity for generators a, b of the Heisenberg algebra:
//   sum_i (-1)^i C(n,i) a_(m+n-i) b_(k+i) v - sum_i (-1)^(n+i) C(n,i) b_(k+n-i) a_(m+i) v
//     = sum_j ((binom(m+N, j) a)_(n+j) b)_(m+k-j) v.
// Products a_(q) b with q < 0 are evaluated through the n-th product of the
// fields Y(v_l) and Y(b); their results are cached per basis vector.
class BorcherdsChecker {
public:
    explicit BorcherdsChecker(const FockModule& M, int locality_order = 2);

    BorcherdsResult check(const BorcherdsInput& in);
    // drops cached products for vectors other than v
    void focus(int v);

    // Replace the mode operator used for the left-hand side (fault injection).
    void override_mode(int g, const Rational& m, Operator op);

private:
    const Operator& lhs_mode(int g, const Rational& m) const;
    const VectorSeries& product(int l, int b, int q, int v);
    const Field& field(int l);

    const FockModule& M_;
    int N_;
    std::map<int, Field> fields_;
    std::map<std::pair<int, Rational>, Operator> overrides_;
    int focus_ = -1;
    std::map<std::pair<int, int>, std::unique_ptr<ProductEngine>> engines_;
    std::map<std::tuple<int, int, int>, VectorSeries> products_;
};

// [a_(m), b_(k)] = ((m+N)a|b) delta_{m+k,0} on every exact column.
struct OperatorCheck {
    Outcome outcome = Outcome::Inconclusive;
    int compared = 0;
    int first_column = -1;
};
OperatorCheck commutator_formula_check(const FockModule& M, int a, const Rational& m, int b, const Rational& k);

// Y(phi a, z) against e^{2 pi i D_zeta} Y(a, z), as tau-polynomials.
struct FieldCheck {
    Outcome outcome = Outcome::Inconclusive;
    FieldDiff diff;
};
FieldCheck phi_equivariance_check(const FockModule& M, const Vec<Rational>& a);
LogField<Scalar> phi_field(const FockModule& M, const Vec<Rational>& a);

// a_(-2) I as a field against D_z Y(a, z).
FieldCheck translation_check(const FockModule& M, const Vec<Rational>& a, int locality_order = 2);

// Heisenberg generators have a_(j) b = 0 for j >= 2.
constexpr int kHeisenbergLocality = 2;

}  // namespace twistlog
