#include "twistlog/loop_algebra.hpp"

#include <stdexcept>

namespace twistlog {

Vec<Rational> LieStructure::bracket(const Vec<Rational>& a, const Vec<Rational>& b) const {
    const int d = twist.dim();
    Vec<Rational> r = Vec<Rational>::Constant(d, Rational(0));
    if (abelian()) return r;
    for (int i = 0; i < d; ++i) {
        if (a(i).is_zero()) continue;
        r += a(i) * mul(ad[static_cast<std::size_t>(i)], b);
    }
    return r;
}

LieStructure heisenberg(const TwistPair& tp) {
    LieStructure ls;
    ls.twist = tp;
    return ls;
}

LieStructure sl2_with_ad_e() {
    LieStructure ls;
    TwistPair& tp = ls.twist;
    tp.gram = zeros<Rational>(3, 3);
    tp.gram(0, 2) = tp.gram(2, 0) = Rational(1);
    tp.gram(1, 1) = Rational(2);
    tp.coset.assign(3, Rational(0));
    ls.ad.assign(3, zeros<Rational>(3, 3));
    // [e,h] = -2e, [e,f] = h, [h,e] = 2e, [h,f] = -2f, [f,e] = -h, [f,h] = 2f
    ls.ad[0](0, 1) = Rational(-2);
    ls.ad[0](1, 2) = Rational(1);
    ls.ad[1](0, 0) = Rational(2);
    ls.ad[1](2, 2) = Rational(-2);
    ls.ad[2](1, 0) = Rational(-1);
    ls.ad[2](2, 1) = Rational(2);
    tp.nil = ls.ad[0];
    ls.dual_coxeter = Rational(2);
    return ls;
}

std::vector<std::string> lie_violations(const LieStructure& ls) {
    std::vector<std::string> out;
    const TwistPair& tp = ls.twist;
    const int d = tp.dim();
    out = invariant_violations(tp);
    if (ls.abelian()) return out;
    if (static_cast<int>(ls.ad.size()) != d) {
        out.push_back("structure constant count mismatch");
        return out;
    }
    auto e = [&](int i) { return basis_vector(d, i); };
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Vec<Rational> ij = ls.bracket(e(i), e(j)), ji = ls.bracket(e(j), e(i));
            if (!is_zero_matrix(Vec<Rational>(ij + ji))) out.push_back("bracket not antisymmetric");
            for (int k = 0; k < d; ++k) {
                Vec<Rational> jac = ls.bracket(e(i), ls.bracket(e(j), e(k))) +
                                    ls.bracket(e(j), ls.bracket(e(k), e(i))) +
                                    ls.bracket(e(k), ls.bracket(e(i), e(j)));
                if (!is_zero_matrix(jac)) out.push_back("Jacobi identity fails");
                if (!(form(tp, ij, e(k)) == form(tp, e(i), ls.bracket(e(j), e(k)))))
                    out.push_back("form not invariant");
            }
            // N is a derivation and sigma an automorphism
            Vec<Rational> lhs = mul(tp.nil, ij);
            Vec<Rational> rhs = ls.bracket(mul(tp.nil, e(i)), e(j)) + ls.bracket(e(i), mul(tp.nil, e(j)));
            if (!is_zero_matrix(Vec<Rational>(lhs - rhs))) out.push_back("N is not a derivation");
            for (int k = 0; k < d; ++k)
                if (!ij(k).is_zero() &&
                    !(tp.coset[static_cast<std::size_t>(i)] + tp.coset[static_cast<std::size_t>(j)] -
                      tp.coset[static_cast<std::size_t>(k)]).is_integer())
                    out.push_back("bracket does not respect sigma-grading");
        }
    return out;
}

LoopElement LoopElement::term(int index, const Rational& exponent, const Rational& coeff) {
    LoopElement x;
    x.add_term(index, exponent, coeff);
    return x;
}

LoopElement LoopElement::central_element(const Rational& coeff) {
    LoopElement x;
    x.central_ = coeff;
    return x;
}

void LoopElement::add_term(int index, const Rational& exponent, const Rational& coeff) {
    if (coeff.is_zero()) return;
    Key k{index, exponent};
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, coeff);
        return;
    }
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
}

LoopElement& LoopElement::operator+=(const LoopElement& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    central_ += o.central_;
    return *this;
}

LoopElement& LoopElement::operator-=(const LoopElement& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
    central_ -= o.central_;
    return *this;
}

LoopElement LoopElement::operator*(const Rational& c) const {
    LoopElement r;
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
    r.central_ = central_ * c;
    return r;
}

std::string LoopElement::str() const {
    std::string out;
    for (const auto& [k, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")*v" + std::to_string(k.first + 1) + "t^{" + k.second.str() + "}";
    }
    if (!central_.is_zero()) {
        if (!out.empty()) out += " + ";
        out += "(" + central_.str() + ")*K";
    }
    return out.empty() ? "0" : out;
}

void check_cosets(const LoopElement& x, const TwistPair& tp) {
    for (const auto& [k, c] : x.terms()) {
        if (k.first < 0 || k.first >= tp.dim())
            throw std::invalid_argument("basis index out of range");
        if (!same_coset(k.second, tp.coset[static_cast<std::size_t>(k.first)]))
            throw std::invalid_argument("exponent " + k.second.str() + " not in the coset of v" +
                                        std::to_string(k.first + 1));
    }
}

namespace {

// ((m+N) v_i | v_j)
Rational shifted_pairing(const TwistPair& tp, int i, const Rational& m, int j) {
    Rational r = m * tp.gram(i, j);
    for (int l = 0; l < tp.dim(); ++l)
        if (!tp.nil(l, i).is_zero()) r += tp.nil(l, i) * tp.gram(l, j);
    return r;
}

}  // namespace

Rational cocycle(const LoopElement& x, const LoopElement& y, const TwistPair& tp) {
    Rational r;
    for (const auto& [kx, cx] : x.terms())
        for (const auto& [ky, cy] : y.terms())
            if (kx.second + ky.second == Rational(0))
                r += cx * cy * shifted_pairing(tp, kx.first, kx.second, ky.first);
    return r;
}

LoopElement bracket(const LoopElement& x, const LoopElement& y, const LieStructure& ls) {
    const TwistPair& tp = ls.twist;
    check_cosets(x, tp);
    check_cosets(y, tp);
    LoopElement r;
    for (const auto& [kx, cx] : x.terms())
        for (const auto& [ky, cy] : y.terms()) {
            Rational c = cx * cy;
            if (!ls.abelian()) {
                const Mat<Rational>& a = ls.ad[static_cast<std::size_t>(kx.first)];
                for (int k = 0; k < tp.dim(); ++k)
                    if (!a(k, ky.first).is_zero()) r.add_term(k, kx.second + ky.second, c * a(k, ky.first));
            }
        }
    r += LoopElement::central_element(cocycle(x, y, tp));
    return r;
}

Triangular triangular_part(const LoopElement& x, const TwistPair& tp) {
    if (x.terms().empty()) return Triangular::Zero;
    if (x.terms().size() != 1 || !x.central().is_zero())
        throw std::invalid_argument("triangular_part expects a single term");
    check_cosets(x, tp);
    const auto& [key, c] = *x.terms().begin();
    // Exponents are rational, so the imaginary tie-break of C+ never fires.
    int s = key.second.sign();
    if (s > 0) return Triangular::Plus;
    if (s < 0) return Triangular::Minus;
    if (!tp.coset[static_cast<std::size_t>(key.first)].is_zero())
        throw std::invalid_argument("zero mode of a vector outside h_0");
    return Triangular::Zero;
}

SugawaraConstants sugawara_constants(const LieStructure& ls) {
    const TwistPair& tp = ls.twist;
    const int d = tp.dim();
    Mat<Rational> dual = dual_basis(tp);
    Mat<Rational> sn = tp.semisimple() + tp.nil;
    SugawaraConstants out;
    out.omega_bar = Vec<Rational>::Constant(d, Rational(0));
    for (int i = 0; i < d; ++i) {
        Vec<Rational> vi_up = dual.col(i);
        out.omega_bar += ls.bracket(mul(sn, vi_up), basis_vector(d, i));
    }
    Mat<Rational> b = operator_binom(tp.semisimple(), 2);
    for (int i = 0; i < d; ++i) out.trace_binom_s += b(i, i);
    return out;
}

}  // namespace twistlog
