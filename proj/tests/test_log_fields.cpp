#include "doctest.h"
#include "gen.hpp"
#include "twistlog/delta.hpp"
#include "twistlog/identities.hpp"
#include "twistlog/log_field.hpp"
#include "twistlog/nproduct.hpp"

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

Vec<Rational> e(const FockModule& M, int g) { return basis_vector(M.dim(), g); }

std::vector<int> all_vectors(const FockModule& M) {
    std::vector<int> v;
    for (int i = 0; i < M.basis()->size(); ++i) v.push_back(i);
    return v;
}

bool same_operator(const Operator& a, const Operator& b) {
    return compare_on_exact(a, b).mismatched == 0;
}

// exponents of v_g with |m| <= bound
std::vector<Rational> exponents(const FockModule& M, int g, const Rational& bound) {
    std::vector<Rational> out;
    Rational s = M.twist().coset[static_cast<std::size_t>(g)];
    for (Rational m = s - floor(bound) - Rational(1); m <= bound; m += Rational(1))
        if (abs(m) <= bound) out.push_back(m);
    return out;
}

}  // namespace

TEST_SUITE("log_fields") {

TEST_CASE("field_of with N = 0 is the plain mode family") {
    FockModule M(one_block(BlockKind::Even, 1, Rational(-1, 2), Rational(2)));
    for (int g = 0; g < 2; ++g) {
        Field y = field_of(M, e(M, g));
        CHECK(y.zeta_degree() == 0);
        for (const auto& [key, op] : y.components()) CHECK(same_operator(op, M.mode(g, key.first)));
    }
}

TEST_CASE("field_of on an even l=2 block follows the (-zeta)^(i-j) pattern") {
    FockModule M(one_block(BlockKind::Even, 2, Rational(-1, 3), Rational(2)));
    for (int j = 1; j <= 2; ++j) {
        Field y = field_of(M, e(M, j - 1));
        CHECK(y.zeta_degree() == 2 - j);
        for (const auto& [key, op] : y.components()) {
            const auto& [m, k] = key;
            int i = j + k;
            Operator expect = M.mode(i - 1, m) * (Rational(k % 2 ? -1 : 1) / factorial(k));
            CHECK(same_operator(op, expect));
        }
        // the v_{l+j} fields use +zeta
        Field w = field_of(M, e(M, 2 + j - 1));
        for (const auto& [key, op] : w.components()) {
            const auto& [m, k] = key;
            Operator expect = M.mode(2 + j + k - 1, m) * (Rational(1) / factorial(k));
            CHECK(same_operator(op, expect));
        }
    }
}

TEST_CASE("field_of on an odd l=2 block follows the sign pattern") {
    FockModule M(one_block(BlockKind::Odd, 2, Rational(-1, 2), Rational(2)));
    for (int j = 1; j <= 3; ++j) {
        Field y = field_of(M, e(M, j - 1));
        CHECK(y.zeta_degree() == 3 - j);
        for (const auto& [key, op] : y.components()) {
            const auto& [m, k] = key;
            int i = j + k;
            int s = ((i - j) * (i + j - 1) / 2) % 2;
            Operator expect = M.mode(i - 1, m) * (Rational(s ? -1 : 1) / factorial(k));
            CHECK(same_operator(op, expect));
        }
    }
}

TEST_CASE("restrict_zeta_zero") {
    FockModule M(one_block(BlockKind::Even, 2, Rational(-1, 3), Rational(2)));
    Field y = field_of(M, e(M, 0));
    Field x = restrict_zeta_zero(y);
    CHECK(x.zeta_degree() == 0);
    for (const auto& [key, op] : x.components()) CHECK(same_operator(op, M.mode(0, key.first)));
    FockModule P(one_block(BlockKind::Even, 1, Rational(-1, 2), Rational(2)));
    Field z = field_of(P, e(P, 1));
    CHECK(compare_fields(restrict_zeta_zero(z), z, Rational(2)).ok());
    CHECK(restrict_zeta_zero(Field(M.basis(), Rational(1))).empty());
}

TEST_CASE("annihilation split") {
    FockModule M(one_block(BlockKind::Even, 1, Rational(-1, 2), Rational(2)));
    auto [ip, im] = annihilation_split(identity_field(M.basis()));
    CHECK(im.empty());
    CHECK(ip.components().size() == 1);

    Field y = field_of(M, e(M, 0));
    auto [plus, minus] = annihilation_split(y);
    for (const auto& [key, op] : minus.components()) CHECK((-key.first - Rational(1)).sign() < 0);
    for (const auto& [key, op] : plus.components()) CHECK((-key.first - Rational(1)).sign() >= 0);
    // z^{-1/2} is the leading term of the minus part
    CHECK(minus.find(Rational(-1, 2), 0) != nullptr);
    CHECK(minus.find(Rational(1, 2), 0) != nullptr);
    CHECK(plus.find(Rational(-3, 2), 0) != nullptr);
    CHECK(compare_fields(plus + minus, y, Rational(3)).ok());
}

TEST_CASE("d_z, partial_zeta, d_zeta on components") {
    FockModule M(one_block(BlockKind::Even, 2, Rational(-1, 3), Rational(2)));
    Field y = field_of(M, e(M, 0));
    Field dz = d_z(y);
    CHECK(dz.weight() == Rational(2));
    // coefficient of z^{-m-2} zeta^0: (-m-1) C_{m,0} + C_{m,1}
    for (const Rational& m : exponents(M, 0, Rational(1))) {
        Operator expect = *y.find(m, 0) * (-m - Rational(1));
        expect.add_scaled(*y.find(m, 1), Rational(1));
        CHECK(same_operator(*dz.find(m + Rational(1), 0), expect));
    }
    Field pz = partial_zeta(y);
    CHECK(pz.zeta_degree() == 0);
    // D_zeta = z D_z
    CHECK(compare_fields(d_zeta(y), z_power(dz, Rational(1)), Rational(2)).ok());
    CHECK(d_z(identity_field(M.basis())).empty());
}

TEST_CASE("normally ordered product with the identity") {
    FockModule M(one_block(BlockKind::Even, 2, Rational(-1, 3), Rational(2)));
    Field y = field_of(M, e(M, 1));
    Field no = normally_ordered(identity_field(M.basis()), y);
    CHECK(compare_fields(no, y, Rational(2)).ok());
    Field no2 = normally_ordered(y, identity_field(M.basis()));
    CHECK(compare_fields(no2, y, Rational(2)).ok());
}

TEST_CASE("normally ordered product agrees with the (-1)-product expansion") {
    for (BlockKind kind : {BlockKind::Even, BlockKind::Odd}) {
        FockModule M(kind == BlockKind::Even ? one_block(kind, 2, Rational(-1, 3), Rational(2))
                                             : one_block(kind, 2, Rational(-1, 2), Rational(2)));
        const TwistPair& tp = M.twist();
        for (int a = 0; a < M.dim(); ++a)
            for (int b = 0; b < M.dim(); ++b) {
                Field ya = field_of(M, e(M, a)), yb = field_of(M, e(M, b));
                Field lhs = normally_ordered(ya, yb);
                Field rhs = nth_product(ya, yb, -1, kHeisenbergLocality);
                Rational c = form(tp, mul(operator_binom(tp, tp.coset[static_cast<std::size_t>(a)], 2), e(M, a)),
                                  e(M, b));
                Field corr = z_power(identity_field(M.basis()), Rational(-2));
                corr *= c;
                rhs += corr;
                FieldDiff d = compare_fields(lhs, rhs, Rational(2));
                INFO("a=" << a << " b=" << b);
                CHECK(d.ok());
                CHECK(d.columns > 0);
            }
    }
}

TEST_CASE("n-th products with the identity field") {
    FockModule M(one_block(BlockKind::Even, 2, Rational(-1, 3), Rational(2)));
    Field I = identity_field(M.basis());
    for (int g = 0; g < M.dim(); ++g) {
        Field y = field_of(M, e(M, g));
        for (int n = 0; n <= 2; ++n) {
            Field p = nth_product(y, I, n, kHeisenbergLocality);
            for (const auto& [key, op] : p.components()) CHECK(op.is_zero_on_exact());
        }
        Field t = nth_product(y, I, -2, kHeisenbergLocality);
        FieldDiff d = compare_fields(t, d_z(y), Rational(2));
        CHECK(d.ok());
        CHECK(d.columns > 0);
        Field t3 = nth_product(y, I, -3, kHeisenbergLocality);
        Field expect = d_z(d_z(y));
        expect *= Rational(1, 2);
        CHECK(compare_fields(t3, expect, Rational(2)).ok());
        CHECK(compare_fields(nth_product(y, I, -1, kHeisenbergLocality), y, Rational(2)).ok());
    }
}

TEST_CASE("first product of Heisenberg fields is the pairing") {
    for (BlockKind kind : {BlockKind::Even, BlockKind::Odd}) {
        FockModule M(kind == BlockKind::Even ? one_block(kind, 2, Rational(-1, 3), Rational(2))
                                             : one_block(kind, 2, Rational(0), Rational(2), 1));
        for (int a = 0; a < M.dim(); ++a)
            for (int b = 0; b < M.dim(); ++b) {
                Field p = nth_product(field_of(M, e(M, a)), field_of(M, e(M, b)), 1, kHeisenbergLocality);
                Field expect = identity_field(M.basis());
                expect *= M.twist().gram(a, b);
                FieldDiff d = compare_fields(p, expect, Rational(2));
                CHECK(d.ok());
                CHECK(d.columns > 0);
                Field p0 = nth_product(field_of(M, e(M, a)), field_of(M, e(M, b)), 0, kHeisenbergLocality);
                for (const auto& [key, op] : p0.components()) CHECK(op.is_zero_on_exact());
            }
    }
}

TEST_CASE("locality of Heisenberg fields") {
    FockModule M(one_block(BlockKind::Even, 2, Rational(-1, 3), Rational(2)));
    auto vs = all_vectors(M);
    Field y1 = field_of(M, e(M, 0)), y4 = field_of(M, e(M, 3)), y3 = field_of(M, e(M, 2));
    CHECK(check_locality(y1, y4, 2, vs).pass());
    CHECK(check_locality(y1, y4, 3, vs).pass());
    CHECK(check_locality(y1, y1, 2, vs).pass());
    // (v1|v4) = 1, so order 1 is not enough
    CHECK(check_locality(y1, y4, 1, vs).mismatched > 0);

    // corrupt one mode
    Field bad = y1;
    Operator& op = bad.slot(Rational(2, 3), 0);
    op *= Rational(2);
    auto rep = check_locality(bad, y3, 2, vs);
    CHECK(rep.mismatched > 0);
}

TEST_CASE("borcherds examples") {
    FockModule M(one_block(BlockKind::Even, 1, Rational(-1, 2), Rational(2)));
    BorcherdsChecker chk(M);
    auto r = chk.check({0, 1, Rational(1, 2), Rational(-1, 2), 0, 0});
    CHECK(r.outcome == Outcome::Pass);
    CHECK(r.lhs == Vector::unit(0, Rational(1, 2)));
    CHECK(r.rhs == Vector::unit(0, Rational(1, 2)));
}

TEST_CASE("borcherds identity on a small logarithmic module") {
    FockModule M(one_block(BlockKind::Even, 2, Rational(-1, 3), Rational(2)));
    BorcherdsChecker chk(M);
    int pass = 0, fail = 0, inconclusive = 0;
    for (int v = 0; v < M.basis()->size(); ++v)
        for (int a = 0; a < M.dim(); ++a)
            for (int b = 0; b < M.dim(); ++b)
                for (const Rational& m : exponents(M, a, Rational(1)))
                    for (const Rational& k : exponents(M, b, Rational(1)))
                        for (int n = -2; n <= 2; ++n) {
                            auto r = chk.check({a, b, m, k, n, v});
                            if (r.outcome == Outcome::Pass) ++pass;
                            if (r.outcome == Outcome::Fail) {
                                ++fail;
                                if (fail < 4)
                                    MESSAGE("fail a=" << a << " b=" << b << " m=" << m << " k=" << k << " n=" << n
                                                      << " v=" << v);
                            }
                            if (r.outcome == Outcome::Inconclusive) ++inconclusive;
                        }
    CHECK(fail == 0);
    CHECK(pass > 0);
}

TEST_CASE("borcherds detects a corrupted mode") {
    FockModule M(one_block(BlockKind::Even, 1, Rational(-1, 2), Rational(2)));
    BorcherdsChecker chk(M);
    chk.override_mode(0, Rational(1, 2), M.mode(0, Rational(1, 2)) * Rational(2));
    auto r = chk.check({0, 1, Rational(1, 2), Rational(-1, 2), 0, 0});
    CHECK(r.outcome == Outcome::Fail);
}

TEST_CASE("commutator formula") {
    gen::Gen g(21);
    for (int trial = 0; trial < 6; ++trial) {
        FockModule M(g.module_spec(1, 2));
        for (int a = 0; a < M.dim(); ++a)
            for (int b = 0; b < M.dim(); ++b)
                for (const Rational& m : exponents(M, a, Rational(1)))
                    for (const Rational& k : exponents(M, b, Rational(1))) {
                        auto r = commutator_formula_check(M, a, m, b, k);
                        CHECK(r.outcome != Outcome::Fail);
                    }
    }
}

TEST_CASE("phi-equivariance") {
    for (BlockKind kind : {BlockKind::Even, BlockKind::Odd}) {
        for (Rational a0 : {Rational(0), Rational(-1, 2)}) {
            FockModule M(one_block(kind, 2, kind == BlockKind::Even && a0.is_zero() ? Rational(-1, 3) : a0,
                                   Rational(3, 2), 1));
            for (int a = 0; a < M.dim(); ++a) {
                auto r = phi_equivariance_check(M, e(M, a));
                INFO("a=" << a);
                CHECK(r.outcome == Outcome::Pass);
            }
        }
    }
}

TEST_CASE("phi-equivariance is a degree-one tau identity on even l=2") {
    FockModule M(one_block(BlockKind::Even, 2, Rational(-1, 3), Rational(3, 2)));
    LogField<Scalar> f = phi_field(M, e(M, 0));
    int maxdeg = 0;
    for (const auto& [key, op] : f.components())
        for (int v = 0; v < op.size(); ++v)
            for (const auto& [row, c] : op.column(v).entries()) maxdeg = std::max(maxdeg, c.tau_degree());
    CHECK(maxdeg == 1);
}

TEST_CASE("phi-equivariance detects a sign error") {
    FockModule M(one_block(BlockKind::Even, 2, Rational(-1, 3), Rational(3, 2)));
    Field y = field_of(M, e(M, 0));
    Field bad(M.basis(), y.weight());
    for (const auto& [key, op] : y.components()) bad.add(key.first, key.second, op, key.second ? Rational(-1) : Rational(1));
    LogField<Scalar> lhs = phi_field(M, e(M, 0));
    LogField<Scalar> rhs = monodromy(bad.cast<Scalar>(), M.spec().effective_conductor());
    CHECK_FALSE(compare_fields(lhs, rhs, Rational(3, 2)).ok());
}

TEST_CASE("translation covariance") {
    gen::Gen g(22);
    for (int trial = 0; trial < 5; ++trial) {
        FockModule M(g.module_spec(1, 2));
        for (int a = 0; a < M.dim(); ++a) {
            auto r = translation_check(M, e(M, a));
            CHECK(r.outcome != Outcome::Fail);
        }
    }
}

TEST_CASE("kernel of N gives zeta-free fields") {
    FockModule M(one_block(BlockKind::Even, 2, Rational(-1, 3), Rational(2)));
    // N v_2 = 0 and N v_4 = 0
    for (int g : {1, 3}) CHECK(field_of(M, e(M, g)).zeta_degree() == 0);
}

TEST_CASE("zeta derivative is a derivation of n-th products") {
    FockModule M(one_block(BlockKind::Even, 2, Rational(-1, 3), Rational(3, 2)));
    Field y1 = field_of(M, e(M, 0)), y3 = field_of(M, e(M, 2));
    for (int n = -2; n <= 1; ++n) {
        Field lhs = partial_zeta(nth_product(y1, y3, n, 2));
        Field rhs = nth_product(partial_zeta(y1), y3, n, 2) + nth_product(y1, partial_zeta(y3), n, 2);
        FieldDiff d = compare_fields(lhs, rhs, Rational(3, 2));
        INFO("n=" << n);
        CHECK(d.ok());
    }
}

TEST_CASE("n-th products stay local with the generators") {
    FockModule M(one_block(BlockKind::Even, 2, Rational(-1, 3), Rational(3, 2)));
    Field y1 = field_of(M, e(M, 0)), y3 = field_of(M, e(M, 2)), y4 = field_of(M, e(M, 3));
    std::vector<int> sample{0, 1, 2, 3};
    for (int n = -1; n <= 1; ++n) {
        Field p = nth_product(y1, y3, n, 2);
        int order = 2 * 2 + (2 - 1 - n);
        auto rep = check_locality(p, y4, order, sample);
        INFO("n=" << n);
        CHECK(rep.mismatched == 0);
    }
}

TEST_CASE("shifted delta") {
    FockModule M(one_block(BlockKind::Even, 2, Rational(-1, 3), Rational(1)));
    const TwistPair& tp = M.twist();
    TwistPair flat = build_twist({{BlockKind::Even, 1, Rational(0), 0}});
    CHECK(shifted_delta(Rational(0), flat, Rational(-3), Rational(3)) == ordinary_delta(2, -3, 3));

    TwoVarSeries d = shifted_delta(Rational(-1, 3), tp, Rational(-5), Rational(5));
    TwoVarSeries t = d.times_z12();
    CHECK_FALSE(t.is_zero());
    CHECK(t.window(Rational(-4), Rational(4)).is_zero());

    // z1^{-m0} z2^{m0} delta(z1, z2) e^{(zeta2 - zeta1) N} for two representatives m0
    for (Rational m0 : {Rational(-1, 3), Rational(2, 3), Rational(-4, 3)}) {
        TwoVarSeries s = ordinary_delta(tp.dim(), -8, 8).shifted(-m0, m0).times_exp(tp.nil);
        CHECK(s.window(Rational(-5), Rational(5)) == d.window(Rational(-5), Rational(5)));
    }
}

}  // TEST_SUITE
