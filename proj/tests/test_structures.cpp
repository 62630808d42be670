#include "doctest.h"
#include "gen.hpp"
#include "twistlog/loop_algebra.hpp"
#include "twistlog/twist.hpp"

using namespace twistlog;

namespace {

Mat<Rational> from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    Mat<Rational> m = zeros<Rational>(n, static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (int x : r) m(i, j++) = Rational(x);
        ++i;
    }
    return m;
}

template <class T>
Mat<T> transpose(const Mat<T>& m) {
    Mat<T> r = zeros<T>(m.cols(), m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r(j, i) = m(i, j);
    return r;
}

template <class T>
Mat<T> lift(const Mat<Rational>& m) {
    Mat<T> r = zeros<T>(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = T(m(i, j));
    return r;
}

TwistPair random_twist(gen::Gen& g) { return build_twist(g.module_spec(2, 3).blocks); }

LoopElement random_element(gen::Gen& g, const TwistPair& tp) {
    LoopElement x;
    int terms = static_cast<int>(g.integer(1, 3));
    for (int t = 0; t < terms; ++t) {
        int i = static_cast<int>(g.integer(0, tp.dim() - 1));
        Rational m = tp.coset[static_cast<std::size_t>(i)] + Rational(g.integer(-2, 2));
        x.add_term(i, m, g.nonzero_rational(4, 3));
    }
    if (g.coin()) x += LoopElement::central_element(g.rational(3, 2));
    return x;
}

}  // namespace

TEST_SUITE("twist_structure") {

TEST_CASE("even blocks") {
    TwistPair a = build_even_block(1, Rational(-1, 2));
    CHECK(a.dim() == 2);
    CHECK(is_zero_matrix(a.nil));
    CHECK(equal(a.gram, from_rows({{0, 1}, {1, 0}})));

    TwistPair b = build_even_block(2, Rational(-1, 3));
    // column j is N v_j: N v1 = v2, N v3 = -v4
    CHECK(equal(b.nil, from_rows({{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, -1, 0}})));
    CHECK(equal(b.gram, from_rows({{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}})));
    CHECK(invariant_violations(b).empty());
    CHECK(b.coset == std::vector<Rational>{Rational(-1, 3), Rational(-1, 3), Rational(-2, 3), Rational(-2, 3)});

    CHECK_THROWS_AS(build_even_block(1, Rational(-1)), std::invalid_argument);
    CHECK_THROWS_AS(build_even_block(1, Rational(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(build_even_block(0, Rational(0)), std::invalid_argument);
}

TEST_CASE("odd blocks") {
    TwistPair a = build_odd_block(1, Rational(-1, 2));
    CHECK(a.dim() == 1);
    CHECK(is_zero_matrix(a.nil));
    Mat<Scalar> s = sigma_matrix(a, 4);
    CHECK(s(0, 0) == Scalar(-1));

    TwistPair b = build_odd_block(2, Rational(0));
    CHECK(equal(b.nil, from_rows({{0, 0, 0}, {1, 0, 0}, {0, -1, 0}})));
    CHECK(equal(b.gram, from_rows({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}})));
    CHECK_THROWS_AS(build_odd_block(2, Rational(-1, 3)), std::invalid_argument);
}

TEST_CASE("invariants of random twist data") {
    gen::Gen g(41);
    for (int t = 0; t < 40; ++t) {
        TwistPair tp = random_twist(g);
        const int cond = conductor_for(tp.coset);
        CHECK(invariant_violations(tp).empty());
        CHECK(nilpotency_index(tp.nil) >= 1);
        CHECK(nilpotency_index(tp.nil) <= tp.dim());
        // (Na|b) + (a|Nb) = 0
        Mat<Rational> skew = mul(transpose(tp.nil), tp.gram) + mul(tp.gram, tp.nil);
        CHECK(is_zero_matrix(skew));
        CHECK(equal(transpose(tp.gram), tp.gram));
        CHECK_FALSE(exact_determinant(tp.gram).is_zero());
        Mat<Scalar> sg = sigma_matrix(tp, cond);
        Mat<Scalar> nil = lift<Scalar>(tp.nil);
        CHECK(equal(mul(sg, nil), mul(nil, sg)));
        Mat<Scalar> g2 = lift<Scalar>(tp.gram);
        CHECK(equal(mul(transpose(sg), mul(g2, sg)), g2));
        CHECK(check_canonical_blocks(tp));
        // the dual basis
        CHECK(equal(mul(transpose(dual_basis(tp)), tp.gram), identity<Rational>(tp.dim())));
    }
}

TEST_CASE("canonical block check") {
    CHECK(check_canonical_blocks(build_even_block(2, Rational(-1, 3))));
    CHECK(check_canonical_blocks(direct_sum(build_even_block(1, Rational(-1, 2)), build_odd_block(1, Rational(-1, 2)))));
    TwistPair bad = build_even_block(2, Rational(-1, 3));
    bad.gram(0, 3) = Rational(2);
    bad.gram(3, 0) = Rational(2);
    CHECK_FALSE(check_canonical_blocks(bad));
}

TEST_CASE("exp of zeta N") {
    TwistPair flat = build_even_block(1, Rational(-1, 2));
    auto r = exp_zeta_N(flat, basis_vector(2, 0));
    CHECK(r[0] == ZetaPoly<Rational>(Rational(1)));
    CHECK(r[1].is_zero_poly());

    TwistPair b = build_odd_block(2, Rational(0));
    auto e = exp_zeta_N(b, basis_vector(3, 0));
    CHECK(e[0] == ZetaPoly<Rational>(Rational(1)));
    CHECK(e[1] == ZetaPoly<Rational>::zeta());
    CHECK(e[2] == ZetaPoly<Rational>::monomial(2, Rational(-1, 2)));

    gen::Gen g(42);
    for (int t = 0; t < 20; ++t) {
        TwistPair tp = random_twist(g);
        Vec<Rational> a = Vec<Rational>::Constant(tp.dim(), Rational(0));
        for (int i = 0; i < tp.dim(); ++i) a(i) = g.rational(4, 3);
        auto fwd = exp_zeta_N(tp, a);
        auto back = apply_exp_zeta_N(tp, fwd, -1);
        for (int i = 0; i < tp.dim(); ++i) {
            CHECK(back[static_cast<std::size_t>(i)] == ZetaPoly<Rational>(a(i)));
            CHECK(fwd[static_cast<std::size_t>(i)].coeff(0) == a(i));
        }
    }
}

TEST_CASE("operator binomials") {
    TwistPair flat = build_even_block(1, Rational(-1, 2));
    Mat<Rational> b2 = operator_binom(flat, Rational(5, 2), 2);
    CHECK(equal(b2, Mat<Rational>(identity<Rational>(2) * binom_rational(Rational(5, 2), 2))));

    TwistPair tp = build_even_block(2, Rational(-1, 3));
    Rational m(-1, 3);
    CHECK(equal(operator_binom(tp, m, 1), Mat<Rational>(identity<Rational>(4) * m + tp.nil)));
    // (mI+N)(mI+N-I)/2 with N^2 = 0
    Mat<Rational> expect = identity<Rational>(4) * binom_rational(m, 2) + tp.nil * ((Rational(2) * m - Rational(1)) / Rational(2));
    CHECK(equal(operator_binom(tp, m, 2), expect));
    CHECK(equal(operator_binom(tp, m, 0), identity<Rational>(4)));

    gen::Gen g(43);
    for (int t = 0; t < 30; ++t) {
        TwistPair r = random_twist(g);
        Rational x = g.rational(5, 4);
        int j = static_cast<int>(g.integer(1, 4));
        Mat<Rational> lhs = operator_binom(r, x, j);
        Mat<Rational> rhs = operator_binom(r, x - Rational(1), j) + operator_binom(r, x - Rational(1), j - 1);
        CHECK(equal(lhs, rhs));
    }
}

TEST_CASE("log of unipotent matrices") {
    CHECK(is_zero_matrix(log_unipotent(identity<Rational>(3))));
    Rational t(7, 5);
    Mat<Rational> u = identity<Rational>(2);
    u(0, 1) = t;
    Mat<Rational> l = log_unipotent(u);
    Mat<Rational> want = zeros<Rational>(2, 2);
    want(0, 1) = t;
    CHECK(equal(l, want));

    gen::Gen g(44);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = static_cast<int>(g.integer(1, 4));
        Mat<Rational> x = zeros<Rational>(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) x(i, j) = g.rational(3, 3);
        Mat<Rational> un = exp_nilpotent(x);
        CHECK(equal(log_unipotent(un), x));
        CHECK(equal(exp_nilpotent(log_unipotent(un)), un));
    }
    Mat<Rational> bad = identity<Rational>(2) * Rational(2);
    CHECK_THROWS(log_unipotent(bad));
}

TEST_CASE("phi = sigma e^{-tau N}") {
    TwistPair tp = build_odd_block(2, Rational(0));
    Mat<Scalar> phi = phi_matrix(tp, 4);
    // sigma = 1, so phi = I - tau N + tau^2 N^2 / 2
    Scalar tau = Scalar::tau();
    CHECK(phi(1, 0) == -tau);
    CHECK(phi(2, 1) == tau);
    CHECK(phi(2, 0) == tau * tau * Scalar(Rational(-1, 2)));
    CHECK(phi(0, 0) == Scalar(1));
}

}  // TEST_SUITE

TEST_SUITE("loop_algebra") {

TEST_CASE("bracket examples") {
    LieStructure ls = heisenberg(build_even_block(2, Rational(-1, 3)));
    for (Rational m : {Rational(-1, 3), Rational(2, 3), Rational(-4, 3)}) {
        LoopElement x = LoopElement::term(0, m), y4 = LoopElement::term(3, -m), y3 = LoopElement::term(2, -m);
        CHECK(bracket(x, y4, ls) == LoopElement::central_element(m));
        CHECK(bracket(x, y3, ls) == LoopElement::central_element(Rational(1)));
        CHECK(bracket(x, LoopElement::term(3, -m + Rational(1)), ls).is_zero());
    }
    // [v_{l+i} t^m, v_j t^k] with i = 1
    LoopElement a = LoopElement::term(2, Rational(-2, 3));
    CHECK(bracket(a, LoopElement::term(0, Rational(2, 3)), ls) == LoopElement::central_element(Rational(-1)));
    CHECK(bracket(a, LoopElement::term(1, Rational(2, 3)), ls) == LoopElement::central_element(Rational(-2, 3)));
    CHECK_THROWS_AS(bracket(LoopElement::term(0, Rational(1, 2)), a, ls), std::invalid_argument);
}

TEST_CASE("abelian brackets vanish off the diagonal") {
    gen::Gen g(51);
    for (int t = 0; t < 30; ++t) {
        TwistPair tp = random_twist(g);
        LieStructure ls = heisenberg(tp);
        int i = static_cast<int>(g.integer(0, tp.dim() - 1)), j = static_cast<int>(g.integer(0, tp.dim() - 1));
        Rational m = tp.coset[static_cast<std::size_t>(i)] + Rational(g.integer(-3, 3));
        Rational n = tp.coset[static_cast<std::size_t>(j)] + Rational(g.integer(-3, 3));
        LoopElement r = bracket(LoopElement::term(i, m), LoopElement::term(j, n), ls);
        if (!(m + n).is_zero()) CHECK(r.is_zero());
        CHECK(r.terms().empty());
        // against ((m+N)a|b) computed by hand
        if ((m + n).is_zero()) {
            Rational want = m * tp.gram(i, j);
            for (int k = 0; k < tp.dim(); ++k) want += tp.nil(k, i) * tp.gram(k, j);
            CHECK(r.central() == want);
        }
    }
}

TEST_CASE("triangular decomposition") {
    TwistPair tp = build_even_block(1, Rational(-1, 2));
    CHECK(triangular_part(LoopElement::term(0, Rational(1, 2)), tp) == Triangular::Plus);
    CHECK(triangular_part(LoopElement::term(0, Rational(-1, 2)), tp) == Triangular::Minus);
    CHECK(triangular_part(LoopElement::central_element(), tp) == Triangular::Zero);
    TwistPair z = build_even_block(1, Rational(0));
    CHECK(triangular_part(LoopElement::term(1, Rational(0)), z) == Triangular::Zero);
    CHECK_THROWS(triangular_part(LoopElement::term(0, Rational(0)), tp));

    gen::Gen g(52);
    for (int t = 0; t < 30; ++t) {
        TwistPair r = random_twist(g);
        LieStructure ls = heisenberg(r);
        int i = static_cast<int>(g.integer(0, r.dim() - 1)), j = static_cast<int>(g.integer(0, r.dim() - 1));
        Rational m = r.coset[static_cast<std::size_t>(i)] + Rational(g.integer(1, 3));
        Rational n = r.coset[static_cast<std::size_t>(j)] + Rational(g.integer(1, 3));
        // both strictly positive: the plus part is abelian
        CHECK(bracket(LoopElement::term(i, m), LoopElement::term(j, n), ls).is_zero());
        Rational mm = r.coset[static_cast<std::size_t>(i)] - Rational(g.integer(1, 3));
        Rational nn = r.coset[static_cast<std::size_t>(j)] - Rational(g.integer(1, 3));
        CHECK(bracket(LoopElement::term(i, mm), LoopElement::term(j, nn), ls).is_zero());
    }
}

TEST_CASE("antisymmetry, Jacobi and the cocycle identity") {
    gen::Gen g(53);
    std::vector<LieStructure> structures{sl2_with_ad_e()};
    for (int t = 0; t < 6; ++t) structures.push_back(heisenberg(random_twist(g)));
    for (const auto& ls : structures) {
        CHECK(lie_violations(ls).empty());
        for (int t = 0; t < 25; ++t) {
            LoopElement x = random_element(g, ls.twist), y = random_element(g, ls.twist), z = random_element(g, ls.twist);
            CHECK(bracket(x, y, ls) == bracket(y, x, ls) * Rational(-1));
            LoopElement jac = bracket(x, bracket(y, z, ls), ls) + bracket(y, bracket(z, x, ls), ls) +
                              bracket(z, bracket(x, y, ls), ls);
            CHECK(jac.is_zero());
            Rational cyc = cocycle(bracket(x, y, ls), z, ls.twist) + cocycle(bracket(y, z, ls), x, ls.twist) +
                           cocycle(bracket(z, x, ls), y, ls.twist);
            CHECK(cyc.is_zero());
        }
    }
}

TEST_CASE("Sugawara constants") {
    LieStructure s = sl2_with_ad_e();
    SugawaraConstants c = sugawara_constants(s);
    Vec<Rational> four_e = basis_vector(3, 0) * Rational(4);
    CHECK(c.omega_bar == four_e);
    CHECK(mul(s.twist.nil, c.omega_bar) == Vec<Rational>::Constant(3, Rational(0)));
    CHECK(c.trace_binom_s.is_zero());

    SugawaraConstants h = sugawara_constants(heisenberg(build_even_block(2, Rational(-1, 3))));
    CHECK(h.omega_bar == Vec<Rational>::Constant(4, Rational(0)));
    CHECK(h.trace_binom_s == Rational(2) * (Rational(1, 9) - Rational(1, 3) + Rational(1)));
}

TEST_CASE("a broken structure is reported") {
    LieStructure s = sl2_with_ad_e();
    s.ad[1](0, 0) = Rational(3);
    CHECK_FALSE(lie_violations(s).empty());
}

}  // TEST_SUITE
