#include "twistlog/twist.hpp"

#include <stdexcept>

namespace twistlog {

std::string block_name(const BlockDecl& b) {
    return std::string(b.kind == BlockKind::Even ? "even" : "odd") + "(ell=" + std::to_string(b.ell) +
           ", alpha0=" + b.alpha0.str() + ")";
}

Rational coset_rep(const Rational& m) {
    Rational f = frac(m);
    return f.is_zero() ? f : f - Rational(1);
}

bool same_coset(const Rational& a, const Rational& b) { return (a - b).is_integer(); }

int TwistPair::conductor() const { return conductor_for(coset); }

Mat<Rational> TwistPair::semisimple() const {
    Mat<Rational> s = zeros<Rational>(dim(), dim());
    for (int i = 0; i < dim(); ++i) s(i, i) = coset[static_cast<std::size_t>(i)];
    return s;
}

TwistPair build_even_block(int ell, const Rational& alpha0) {
    if (ell < 1) throw std::invalid_argument("even block needs ell >= 1");
    if (!(alpha0 > Rational(-1) && alpha0 <= Rational(0)))
        throw std::invalid_argument("even block alpha0 " + alpha0.str() + " outside (-1, 0]");
    const int d = 2 * ell;
    TwistPair tp;
    tp.gram = zeros<Rational>(d, d);
    tp.nil = zeros<Rational>(d, d);
    for (int i = 1; i <= d; ++i) tp.gram(i - 1, d - i) = Rational(1);
    for (int i = 1; i <= ell - 1; ++i) {
        tp.nil(i, i - 1) = Rational(1);                 // N v_i = v_{i+1}
        tp.nil(ell + i, ell + i - 1) = Rational(-1);    // N v_{l+i} = -v_{l+i+1}
    }
    Rational dual = coset_rep(-alpha0);
    for (int i = 0; i < ell; ++i) tp.coset.push_back(alpha0);
    for (int i = 0; i < ell; ++i) tp.coset.push_back(dual);
    tp.blocks.push_back({BlockKind::Even, ell, alpha0, 0});
    return tp;
}

TwistPair build_odd_block(int ell, const Rational& alpha0) {
    if (ell < 1) throw std::invalid_argument("odd block needs ell >= 1");
    if (!(alpha0 == Rational(0) || alpha0 == Rational(-1, 2)))
        throw std::invalid_argument("odd block alpha0 must be 0 or -1/2, got " + alpha0.str());
    const int d = 2 * ell - 1;
    TwistPair tp;
    tp.gram = zeros<Rational>(d, d);
    tp.nil = zeros<Rational>(d, d);
    for (int i = 1; i <= d; ++i) tp.gram(i - 1, d - i) = Rational(1);
    for (int i = 1; i <= d - 1; ++i) tp.nil(i, i - 1) = Rational(i % 2 == 1 ? 1 : -1);
    tp.coset.assign(static_cast<std::size_t>(d), alpha0);
    tp.blocks.push_back({BlockKind::Odd, ell, alpha0, 0});
    return tp;
}

TwistPair direct_sum(const TwistPair& a, const TwistPair& b) {
    const int da = a.dim(), db = b.dim();
    TwistPair r;
    r.gram = zeros<Rational>(da + db, da + db);
    r.nil = zeros<Rational>(da + db, da + db);
    r.gram.topLeftCorner(da, da) = a.gram;
    r.gram.bottomRightCorner(db, db) = b.gram;
    r.nil.topLeftCorner(da, da) = a.nil;
    r.nil.bottomRightCorner(db, db) = b.nil;
    r.coset = a.coset;
    r.coset.insert(r.coset.end(), b.coset.begin(), b.coset.end());
    r.blocks = a.blocks;
    for (BlockDecl bd : b.blocks) {
        bd.offset += da;
        r.blocks.push_back(bd);
    }
    return r;
}

TwistPair build_twist(const std::vector<BlockDecl>& blocks) {
    if (blocks.empty()) throw std::invalid_argument("no blocks declared");
    TwistPair r;
    bool first = true;
    for (const auto& b : blocks) {
        TwistPair t = b.kind == BlockKind::Even ? build_even_block(b.ell, b.alpha0)
                                                : build_odd_block(b.ell, b.alpha0);
        r = first ? t : direct_sum(r, t);
        first = false;
    }
    return r;
}

std::vector<std::string> invariant_violations(const TwistPair& tp) {
    std::vector<std::string> out;
    const int d = tp.dim();
    if (tp.nil.rows() != d || tp.nil.cols() != d || static_cast<int>(tp.coset.size()) != d) {
        out.push_back("shape mismatch");
        return out;
    }
    for (int i = 0; i < d; ++i) {
        const Rational& s = tp.coset[static_cast<std::size_t>(i)];
        if (!(s > Rational(-1) && s <= Rational(0)))
            out.push_back("coset representative of v" + std::to_string(i + 1) + " outside (-1, 0]");
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (!(tp.gram(i, j) == tp.gram(j, i))) out.push_back("Gram matrix not symmetric");
            // (sigma a|sigma b) = (a|b)
            if (!tp.gram(i, j).is_zero() &&
                !(tp.coset[static_cast<std::size_t>(i)] + tp.coset[static_cast<std::size_t>(j)]).is_integer())
                out.push_back("form not sigma-invariant at (" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + ")");
            // sigma N = N sigma
            if (!tp.nil(i, j).is_zero() && !(tp.coset[static_cast<std::size_t>(i)] == tp.coset[static_cast<std::size_t>(j)]))
                out.push_back("N does not preserve sigma-eigenspaces");
        }
    if (exact_determinant(tp.gram).is_zero()) out.push_back("Gram matrix singular");
    Mat<Rational> skew = mul(Mat<Rational>(tp.nil.transpose()), tp.gram) + mul(tp.gram, tp.nil);
    if (!is_zero_matrix(skew)) out.push_back("(Na|b) + (a|Nb) != 0");
    if (nilpotency_index(tp.nil) < 0) out.push_back("N not nilpotent");
    return out;
}

bool check_canonical_blocks(const TwistPair& tp) {
    if (!invariant_violations(tp).empty()) return false;
    int total = 0;
    for (const auto& b : tp.blocks) total += b.dim();
    if (total != tp.dim()) return false;
    TwistPair ref;
    try {
        ref = build_twist(tp.blocks);
    } catch (const std::exception&) {
        return false;
    }
    int off = 0;
    for (std::size_t k = 0; k < tp.blocks.size(); ++k) {
        if (tp.blocks[k].offset != off) return false;
        off += tp.blocks[k].dim();
    }
    return equal(ref.gram, tp.gram) && equal(ref.nil, tp.nil) && ref.coset == tp.coset;
}

std::vector<ZetaPoly<Rational>> exp_zeta_N(const TwistPair& tp, const Vec<Rational>& a) {
    std::vector<ZetaPoly<Rational>> r(static_cast<std::size_t>(tp.dim()));
    Vec<Rational> cur = a;
    for (int k = 0; k <= tp.dim(); ++k) {
        if (is_zero_matrix(cur)) break;
        Rational inv = inverse(factorial(k));
        for (int i = 0; i < tp.dim(); ++i)
            if (!cur(i).is_zero()) r[static_cast<std::size_t>(i)] += ZetaPoly<Rational>::monomial(k, cur(i) * inv);
        cur = mul(tp.nil, cur);
    }
    return r;
}

std::vector<ZetaPoly<Rational>> apply_exp_zeta_N(const TwistPair& tp,
                                                 const std::vector<ZetaPoly<Rational>>& a,
                                                 int sign) {
    const int d = tp.dim();
    std::vector<ZetaPoly<Rational>> r(static_cast<std::size_t>(d));
    std::vector<ZetaPoly<Rational>> cur = a;
    ZetaPoly<Rational> zpow(Rational(1));
    ZetaPoly<Rational> z = ZetaPoly<Rational>::monomial(1, Rational(sign));
    for (int k = 0; k <= d; ++k) {
        bool any = false;
        ZetaPoly<Rational> f = zpow * ZetaPoly<Rational>(inverse(factorial(k)));
        for (int i = 0; i < d; ++i) {
            if (cur[static_cast<std::size_t>(i)].is_zero_poly()) continue;
            any = true;
            r[static_cast<std::size_t>(i)] += f * cur[static_cast<std::size_t>(i)];
        }
        if (!any) break;
        std::vector<ZetaPoly<Rational>> next(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (!tp.nil(i, j).is_zero())
                    next[static_cast<std::size_t>(i)] +=
                        ZetaPoly<Rational>(tp.nil(i, j)) * cur[static_cast<std::size_t>(j)];
        cur = std::move(next);
        zpow = zpow * z;
    }
    return r;
}

Mat<Rational> operator_binom(const Mat<Rational>& base, int j) {
    if (j < 0) throw std::invalid_argument("operator_binom: negative j");
    const auto n = base.rows();
    Mat<Rational> r = identity<Rational>(n);
    for (int i = 0; i < j; ++i) r = mul(r, Mat<Rational>(base - Rational(i) * identity<Rational>(n)));
    Rational inv = inverse(factorial(j));
    return r * inv;
}

Mat<Rational> operator_binom(const TwistPair& tp, const Rational& m, int j) {
    return operator_binom(Mat<Rational>(m * identity<Rational>(tp.dim()) + tp.nil), j);
}

Mat<Scalar> sigma_matrix(const TwistPair& tp, int conductor) {
    Mat<Scalar> s = zeros<Scalar>(tp.dim(), tp.dim());
    for (int i = 0; i < tp.dim(); ++i) s(i, i) = root_of_unity(-tp.coset[static_cast<std::size_t>(i)], conductor);
    return s;
}

Mat<Scalar> phi_matrix(const TwistPair& tp, int conductor) {
    Mat<Scalar> n = mat_cast<Scalar>(tp.nil);
    Scalar mt = -Scalar::tau();
    for (Eigen::Index i = 0; i < n.rows(); ++i)
        for (Eigen::Index j = 0; j < n.cols(); ++j) n(i, j) *= mt;
    return mul(sigma_matrix(tp, conductor), exp_nilpotent(n));
}

Rational form(const TwistPair& tp, const Vec<Rational>& a, const Vec<Rational>& b) {
    Rational r;
    for (int i = 0; i < tp.dim(); ++i) {
        if (a(i).is_zero()) continue;
        for (int j = 0; j < tp.dim(); ++j)
            if (!b(j).is_zero() && !tp.gram(i, j).is_zero()) r += a(i) * tp.gram(i, j) * b(j);
    }
    return r;
}

Vec<Rational> basis_vector(int dim, int i) {
    Vec<Rational> v = Vec<Rational>::Constant(dim, Rational(0));
    v(i) = Rational(1);
    return v;
}

Mat<Rational> dual_basis(const TwistPair& tp) {
    // (v^i|v_j) = delta_ij  =>  v^i = sum_k (G^{-1})_{ki} v_k
    return exact_inverse(tp.gram);
}

}  // namespace twistlog
