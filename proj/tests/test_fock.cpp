#include "doctest.h"
#include "gen.hpp"
#include "twistlog/fock.hpp"
#include "twistlog/loop_algebra.hpp"

using namespace twistlog;

namespace {

ModuleSpec one_block(BlockKind kind, int ell, Rational a0, Rational cutoff, int zero_cap = 0, BlockParams p = {}) {
    ModuleSpec s;
    s.blocks.push_back({kind, ell, a0, 0});
    s.params.push_back(p);
    s.cutoff = cutoff;
    s.zero_cap = zero_cap;
    return s;
}

// ((m+N)v_a|v_b) written out from the Gram and nilpotent matrices.
Rational cocycle_by_hand(const TwistPair& tp, int a, const Rational& ma, int b, const Rational& mb) {
    if (!(ma + mb).is_zero()) return Rational(0);
    Rational r = ma * tp.gram(a, b);
    for (int l = 0; l < tp.dim(); ++l) r += tp.nil(l, a) * tp.gram(l, b);
    return r;
}

// exponents of v_g in the coset with |m| <= bound
std::vector<Rational> exponents(const FockModule& M, int g, const Rational& bound) {
    std::vector<Rational> out;
    Rational s = M.twist().coset[static_cast<std::size_t>(g)];
    for (Rational m = s - floor(bound + s) - Rational(1); m <= bound; m += Rational(1))
        if (abs(m) <= bound) out.push_back(m);
    return out;
}

bool is_multiple_of_identity(const Operator& op, const Rational& c, int& compared) {
    compared = 0;
    for (int v = 0; v < op.size(); ++v) {
        if (!op.exact(v)) continue;
        ++compared;
        if (!(op.column(v) == Vector::unit(v, c))) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("fock_module") {

TEST_CASE("basis of even block, l=1, alpha0=-1/2, D=1") {
    FockModule M(one_block(BlockKind::Even, 1, Rational(-1, 2), Rational(1)));
    const auto& B = *M.basis();
    // x_{1,0} and x_{2,1} both have energy 1/2, so every quadratic monomial fits
    const char* expect[] = {"1", "x0_1_0", "x0_2_1", "x0_1_0^2", "x0_1_0*x0_2_1", "x0_2_1^2"};
    REQUIRE(B.size() == 6);
    for (int i = 0; i < 6; ++i) CHECK(B.monomial_str(i) == expect[i]);
    CHECK(B.energy(1) == Rational(1, 2));
    CHECK(B.energy(2) == Rational(1, 2));
    CHECK(B.energy(3) == Rational(1));
}

TEST_CASE("basis at zero cutoff is the vacuum") {
    for (Rational a0 : {Rational(-1, 2), Rational(-1, 3), Rational(-3, 4)}) {
        FockModule M(one_block(BlockKind::Even, 2, a0, Rational(0)));
        CHECK(M.basis()->size() == 1);
    }
    FockModule O(one_block(BlockKind::Odd, 2, Rational(-1, 2), Rational(0)));
    CHECK(O.basis()->size() == 1);
}

TEST_CASE("basis of odd block, l=1, alpha0=-1/2, D=1/2") {
    FockModule M(one_block(BlockKind::Odd, 1, Rational(-1, 2), Rational(1, 2)));
    REQUIRE(M.basis()->size() == 2);
    CHECK(M.basis()->monomial_str(1) == "x0_1_0");
    CHECK(M.basis()->energy(1) == Rational(1, 2));
}

TEST_CASE("basis counts match a partition count") {
    // even l=1, alpha0=-1/2: variables of energies 1/2,1/2,3/2,3/2,...
    // number of monomials of energy e equals the coefficient in prod 1/(1-q^{n+1/2})^2
    FockModule M(one_block(BlockKind::Even, 1, Rational(-1, 2), Rational(3)));
    std::map<Rational, int> count;
    for (int i = 0; i < M.basis()->size(); ++i) ++count[M.basis()->energy(i)];
    // series in q^{1/2}: coefficients of prod_{k odd} (1-t^k)^{-2} up to t^6
    std::vector<long> c(7, 0);
    c[0] = 1;
    for (int k = 1; k <= 6; k += 2)
        for (int rep = 0; rep < 2; ++rep)
            for (int e = k; e <= 6; ++e) c[static_cast<std::size_t>(e)] += c[static_cast<std::size_t>(e - k)];
    for (int e = 0; e <= 6; ++e) CHECK(count[Rational(e, 2)] == c[static_cast<std::size_t>(e)]);
}

TEST_CASE("basis with zero modes respects the degree cap") {
    BlockParams p;
    p.a1 = Rational(1);
    p.a2 = Rational(2);
    FockModule M(one_block(BlockKind::Even, 2, Rational(0), Rational(0), 3, p));
    // only x_{1,0} has zero energy
    CHECK(M.basis()->size() == 4);
    for (int i = 0; i < M.basis()->size(); ++i) CHECK(M.basis()->zero_degree(i) == i);
}

TEST_CASE("mode examples") {
    FockModule M(one_block(BlockKind::Even, 1, Rational(-1, 2), Rational(2)));
    const auto& B = *M.basis();
    int x21 = B.index_of({static_cast<std::uint16_t>(B.var_id({0, 2, 1}))});
    REQUIRE(x21 > 0);
    Vector out = M.mode_action(0, 1, Rational(1, 2)).apply(Vector::unit(x21));
    CHECK(out == Vector::unit(0, Rational(1, 2)));
    CHECK(M.mode_action(0, 2, Rational(-1, 2)).apply(M.vacuum()) == Vector::unit(x21));

    BlockParams p;
    p.a = Rational(5, 3);
    FockModule O(one_block(BlockKind::Odd, 1, Rational(0), Rational(1), 0, p));
    CHECK(O.mode_action(0, 1, Rational(0)).apply(O.vacuum()) == Vector::unit(0, Rational(5, 3)));
}

TEST_CASE("mode outside the coset is rejected") {
    FockModule M(one_block(BlockKind::Even, 1, Rational(-1, 2), Rational(1)));
    CHECK_THROWS_AS(M.mode_action(0, 1, Rational(0)), std::invalid_argument);
    FockModule T(one_block(BlockKind::Even, 2, Rational(-1, 3), Rational(1)));
    CHECK_THROWS_AS(T.mode_action(0, 1, Rational(1, 3)), std::invalid_argument);
    CHECK_NOTHROW(T.mode_action(0, 3, Rational(1, 3)));
}

TEST_CASE("commutator examples") {
    FockModule M(one_block(BlockKind::Even, 1, Rational(-1, 2), Rational(2)));
    Operator c = commutator(M.mode_action(0, 1, Rational(1, 2)), M.mode_action(0, 2, Rational(-1, 2)));
    int compared = 0;
    CHECK(is_multiple_of_identity(c, Rational(1, 2), compared));
    CHECK(compared > 0);

    FockModule T(one_block(BlockKind::Even, 2, Rational(-1, 3), Rational(2)));
    LieStructure ls = heisenberg(T.twist());
    LoopElement a = LoopElement::term(0, Rational(-1, 3)), b = LoopElement::term(2, Rational(1, 3));
    LoopElement br = bracket(a, b, ls);
    CHECK(br.terms().empty());
    CHECK(br.central() == cocycle_by_hand(T.twist(), 0, Rational(-1, 3), 2, Rational(1, 3)));
    Operator c2 = commutator(T.mode_action(0, 1, Rational(-1, 3)), T.mode_action(0, 3, Rational(1, 3)));
    CHECK(is_multiple_of_identity(c2, br.central(), compared));
    CHECK(compared > 0);

    Operator cc = commutator(T.mode_action(0, 1, Rational(-1, 3)), T.mode_action(0, 2, Rational(-4, 3)));
    CHECK(cc.is_zero_on_exact());
}

TEST_CASE("heisenberg relations on random modules") {
    gen::Gen g(11);
    for (int trial = 0; trial < 12; ++trial) {
        ModuleSpec s = g.module_spec();
        FockModule M(s);
        LieStructure ls = heisenberg(M.twist());
        int total = 0;
        for (int a = 0; a < M.dim(); ++a)
            for (int b = 0; b < M.dim(); ++b)
                for (const Rational& ma : exponents(M, a, s.cutoff))
                    for (const Rational& mb : exponents(M, b, s.cutoff)) {
                        LoopElement br = bracket(LoopElement::term(a, ma), LoopElement::term(b, mb), ls);
                        Rational expect = cocycle_by_hand(M.twist(), a, ma, b, mb);
                        REQUIRE(br.central() == expect);
                        Operator c = commutator(M.mode(a, ma), M.mode(b, mb));
                        int compared = 0;
                        INFO("spec trial " << trial << " a=" << a << " m=" << ma << " b=" << b << " n=" << mb);
                        CHECK(is_multiple_of_identity(c, expect * s.level(), compared));
                        total += compared;
                    }
        CHECK(total > 0);
    }
}

TEST_CASE("annihilation modes kill the vacuum") {
    gen::Gen g(12);
    for (int trial = 0; trial < 20; ++trial) {
        FockModule M(g.module_spec());
        for (int a = 0; a < M.dim(); ++a)
            for (const Rational& m : exponents(M, a, M.spec().cutoff + Rational(1))) {
                if (m.sign() <= 0) continue;
                CHECK(M.mode(a, m).apply(M.vacuum()).empty());
            }
    }
}

TEST_CASE("zero modes on the vacuum follow the highest-weight data") {
    BlockParams p;
    p.a1 = Rational(2, 3);
    p.a2 = Rational(-7, 5);
    FockModule E(one_block(BlockKind::Even, 2, Rational(0), Rational(1), 2, p));
    const auto& B = *E.basis();
    int x10 = B.index_of({static_cast<std::uint16_t>(B.var_id({0, 1, 0}))});
    CHECK(E.mode_action(0, 1, Rational(0)).apply(E.vacuum()) == Vector::unit(x10));
    CHECK(E.mode_action(0, 2, Rational(0)).apply(E.vacuum()) == Vector::unit(0, p.a1.value()));
    CHECK(E.mode_action(0, 3, Rational(0)).apply(E.vacuum()).empty());
    CHECK(E.mode_action(0, 3, Rational(0)).apply(Vector::unit(x10)) == Vector::unit(0, Rational(-1)));
    CHECK(E.mode_action(0, 4, Rational(0)).apply(E.vacuum()) == Vector::unit(0, p.a2.value()));

    BlockParams q;
    q.a = Rational(3);
    FockModule O(one_block(BlockKind::Odd, 2, Rational(0), Rational(1), 2, q));
    CHECK(O.mode_action(0, 3, Rational(0)).apply(O.vacuum()) == Vector::unit(0, Rational(3)));
    CHECK(O.mode_action(0, 2, Rational(0)).apply(O.vacuum()).empty());
}

TEST_CASE("cyclicity: every monomial is reached from the vacuum") {
    gen::Gen g(13);
    for (int trial = 0; trial < 10; ++trial) {
        FockModule M(g.module_spec());
        const auto& B = *M.basis();
        for (int i = 0; i < B.size(); ++i) {
            Vector v = M.vacuum();
            for (auto id : B.monomial(i)) {
                const VarKey& x = B.var(id);
                // the creation mode whose table entry is this variable
                int gidx = M.global_index(x.block, x.j);
                Rational e = B.var_energy_of(id);
                Weyl w = M.mode_weyl(gidx, -e);
                REQUIRE(w == Weyl::x(x));
                v = M.mode(gidx, -e).apply(v);
            }
            REQUIRE(v.nnz() == 1);
            CHECK(v.entries()[0].first == i);
            CHECK(v.entries()[0].second.sign() > 0);
        }
    }
}

TEST_CASE("operators respect the energy grading") {
    gen::Gen g(14);
    for (int trial = 0; trial < 10; ++trial) {
        FockModule M(g.module_spec());
        const auto& B = *M.basis();
        for (int a = 0; a < M.dim(); ++a)
            for (const Rational& m : exponents(M, a, M.spec().cutoff)) {
                const Operator& op = M.mode(a, m);
                CHECK(op.shift() == -m);
                for (int v = 0; v < op.size(); ++v)
                    for (const auto& [row, c] : op.column(v).entries()) CHECK(B.energy(row) == B.energy(v) - m);
            }
        Operator l0 = M.l0_closed_form();
        for (int v = 0; v < l0.size(); ++v)
            for (const auto& [row, c] : l0.column(v).entries()) CHECK(B.energy(row) == B.energy(v));
    }
}

TEST_CASE("creation past the cutoff is flagged, not truncated") {
    FockModule M(one_block(BlockKind::Even, 1, Rational(-1, 2), Rational(1)));
    const Operator& cr = M.mode_action(0, 1, Rational(-1, 2));
    CHECK(cr.exact(0));
    CHECK_FALSE(cr.exact(M.basis()->size() - 1));
    CHECK_THROWS_AS(cr.apply(Vector::unit(M.basis()->size() - 1)), WindowError);
    CHECK(cr.window() == Rational(1, 2));
}

TEST_CASE("identity and zero operators") {
    FockModule M(one_block(BlockKind::Odd, 2, Rational(-1, 2), Rational(3, 2)));
    gen::Gen g(15);
    Vector v;
    for (int i = 0; i < M.basis()->size(); ++i) v.add_scaled(Vector::unit(i), g.rational());
    CHECK(Operator::identity(M.basis()).apply(v) == v);
    CHECK(Operator::zero(M.basis(), Rational(0)).apply(v).empty());
}

TEST_CASE("l0 on the vacuum") {
    FockModule E(one_block(BlockKind::Even, 1, Rational(-1, 2), Rational(1)));
    CHECK(E.l0_closed_form().apply(E.vacuum()) == Vector::unit(0, Rational(1, 8)));
    FockModule O(one_block(BlockKind::Odd, 1, Rational(-1, 2), Rational(1)));
    CHECK(O.l0_closed_form().apply(O.vacuum()) == Vector::unit(0, Rational(1, 16)));
    for (int l = 1; l <= 3; ++l)
        for (Rational a0 : {Rational(-1, 3), Rational(-3, 4)}) {
            FockModule M(one_block(BlockKind::Even, l, a0, Rational(0)));
            CHECK(M.l0_closed_form().apply(M.vacuum()) == Vector::unit(0, -Rational(l, 2) * (a0 * a0 + a0)));
        }
}

TEST_CASE("l0 has a Jordan block on the lowest level, even l=2") {
    for (Rational a0 : {Rational(-1, 2), Rational(-1, 3), Rational(-3, 4)}) {
        FockModule M(one_block(BlockKind::Even, 2, a0, Rational(1)));
        const auto& B = *M.basis();
        int x1 = B.index_of({static_cast<std::uint16_t>(B.var_id({0, 1, 0}))});
        int x2 = B.index_of({static_cast<std::uint16_t>(B.var_id({0, 2, 0}))});
        REQUIRE(x1 > 0);
        REQUIRE(x2 > 0);
        Operator l0 = M.l0_closed_form();
        Rational h = -(a0 * a0 + a0);
        Rational e = -a0;
        CHECK(l0.apply(Vector::unit(x2)) == Vector::unit(x2, e + h));
        Vector img = l0.apply(Vector::unit(x1));
        CHECK(img.at(x1) == e + h);
        CHECK(img.at(x2) == Rational(-1));
        CHECK(img.nnz() == 2);
    }
}

}  // TEST_SUITE
