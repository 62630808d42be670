#pragma once

#include <string>
#include <vector>

#include "twistlog/linalg.hpp"
#include "twistlog/rational.hpp"
#include "twistlog/scalar.hpp"
#include "twistlog/zeta_poly.hpp"

namespace twistlog {

enum class BlockKind { Even, Odd };

struct BlockDecl {
    BlockKind kind = BlockKind::Even;
    int ell = 1;
    Rational alpha0;
    int offset = 0;  // first basis index of the block in the full space

    int dim() const { return kind == BlockKind::Even ? 2 * ell : 2 * ell - 1; }
    bool operator==(const BlockDecl&) const = default;
};

std::string block_name(const BlockDecl& b);

// (h, (.|.), sigma, N). Column j of `nil` is N v_j. The semisimple part is
// stored as a coset representative s_j in (-1, 0] per basis vector, so that
// sigma v_j = e^{-2 pi i s_j} v_j and S v_j = s_j v_j.
struct TwistPair {
    Mat<Rational> gram;
    Mat<Rational> nil;
    std::vector<Rational> coset;
    std::vector<BlockDecl> blocks;

    int dim() const { return static_cast<int>(gram.rows()); }
    int conductor() const;
    Mat<Rational> semisimple() const;  // S
};

TwistPair build_even_block(int ell, const Rational& alpha0);
TwistPair build_odd_block(int ell, const Rational& alpha0);
TwistPair direct_sum(const TwistPair& a, const TwistPair& b);
TwistPair build_twist(const std::vector<BlockDecl>& blocks);

// Empty when all structural constraints hold.
std::vector<std::string> invariant_violations(const TwistPair& tp);
bool check_canonical_blocks(const TwistPair& tp);

// Representative of the coset of m in (-1, 0].
Rational coset_rep(const Rational& m);
bool same_coset(const Rational& a, const Rational& b);

// Sum_k zeta^k N^k a / k!, coordinatewise.
std::vector<ZetaPoly<Rational>> exp_zeta_N(const TwistPair& tp, const Vec<Rational>& a);
// e^{sign * zeta N} applied to a vector with polynomial coordinates.
std::vector<ZetaPoly<Rational>> apply_exp_zeta_N(const TwistPair& tp,
                                                 const std::vector<ZetaPoly<Rational>>& a,
                                                 int sign);

// prod_{i<j} (mI + N - iI) / j!
Mat<Rational> operator_binom(const TwistPair& tp, const Rational& m, int j);
Mat<Rational> operator_binom(const Mat<Rational>& base, int j);

Mat<Scalar> sigma_matrix(const TwistPair& tp, int conductor);
// phi = sigma e^{-tau N}
Mat<Scalar> phi_matrix(const TwistPair& tp, int conductor);

// (a|b)
Rational form(const TwistPair& tp, const Vec<Rational>& a, const Vec<Rational>& b);
Vec<Rational> basis_vector(int dim, int i);
// Dual basis v^i with (v^i|v_j) = delta_ij; column i is v^i.
Mat<Rational> dual_basis(const TwistPair& tp);

}  // namespace twistlog
