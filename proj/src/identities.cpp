#include "twistlog/identities.hpp"

#include <stdexcept>

namespace twistlog {

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Pass: return "pass";
        case Outcome::Fail: return "fail";
        case Outcome::Inconclusive: return "inconclusive";
    }
    return "?";
}

BorcherdsChecker::BorcherdsChecker(const FockModule& M, int locality_order) : M_(M), N_(locality_order) {}

void BorcherdsChecker::override_mode(int g, const Rational& m, Operator op) {
    overrides_.insert_or_assign({g, m}, std::move(op));
}

const Operator& BorcherdsChecker::lhs_mode(int g, const Rational& m) const {
    auto it = overrides_.find({g, m});
    return it != overrides_.end() ? it->second : M_.mode(g, m);
}

const Field& BorcherdsChecker::field(int l) {
    auto it = fields_.find(l);
    if (it == fields_.end()) it = fields_.emplace(l, field_of(M_, basis_vector(M_.dim(), l))).first;
    return it->second;
}

void BorcherdsChecker::focus(int v) {
    if (v == focus_) return;
    focus_ = v;
    engines_.clear();
    products_.clear();
}

const VectorSeries& BorcherdsChecker::product(int l, int b, int q, int v) {
    focus(v);
    auto key = std::make_tuple(l, b, q);
    auto it = products_.find(key);
    if (it != products_.end()) return it->second;
    auto& eng = engines_[{l, b}];
    if (!eng) eng = std::make_unique<ProductEngine>(field(l), field(b), v, N_);
    return products_.emplace(key, eng->nth(q)).first->second;
}

BorcherdsResult BorcherdsChecker::check(const BorcherdsInput& in) {
    BorcherdsResult res;
    const TwistPair& tp = M_.twist();
    const FockBasis& B = *M_.basis();
    if (!M_.mode_defined(in.a, in.m) || !M_.mode_defined(in.b, in.k))
        throw std::invalid_argument("exponent outside the coset of its generator");
    const Rational Ev = B.energy(in.v);
    const Vector v = Vector::unit(in.v);
    auto fail = [&](const std::string& why) {
        res.outcome = Outcome::Inconclusive;
        res.reason = why;
        return res;
    };

    // left-hand side; the i-sums stop once the inner mode annihilates v
    const Rational n(in.n);
    for (int i = 0;; ++i) {
        if (in.n >= 0 && i > in.n) break;
        Rational kk = in.k + Rational(i);
        if (kk > Ev) break;
        Rational c = binom_rational(n, i);
        if (i % 2) c = -c;
        auto w = lhs_mode(in.b, kk).try_apply(v);
        if (!w) return fail("inner b-mode outside the window");
        auto u = lhs_mode(in.a, in.m + n - Rational(i)).try_apply(*w);
        if (!u) return fail("outer a-mode outside the window");
        res.lhs.add_scaled(*u, c);
    }
    for (int i = 0;; ++i) {
        if (in.n >= 0 && i > in.n) break;
        Rational mm = in.m + Rational(i);
        if (mm > Ev) break;
        Rational c = binom_rational(n, i);
        if ((in.n + i) % 2) c = -c;
        auto w = lhs_mode(in.a, mm).try_apply(v);
        if (!w) return fail("inner a-mode outside the window");
        auto u = lhs_mode(in.b, in.k + n - Rational(i)).try_apply(*w);
        if (!u) return fail("outer b-mode outside the window");
        res.lhs.add_scaled(*u, -c);
    }

    // right-hand side: q = n + j; a_(q) b vanishes for q >= 2 and q = 0
    for (int j = 0; in.n + j <= 1; ++j) {
        const int q = in.n + j;
        if (q == 0) continue;
        Vec<Rational> ap = mul(operator_binom(tp, in.m, j), basis_vector(M_.dim(), in.a));
        const Rational p = in.m + in.k - Rational(j);
        if (q == 1) {
            // a'_(1) b = (a'|b) vacuum, and the vacuum field is the identity
            if (p == Rational(-1)) res.rhs.add_scaled(v, form(tp, ap, basis_vector(M_.dim(), in.b)));
            continue;
        }
        const Rational P = -p - Rational(1);
        for (int l = 0; l < M_.dim(); ++l) {
            if (ap(l).is_zero()) continue;
            const VectorSeries& s = product(l, in.b, q, in.v);
            if (s.inconclusive.count(P)) return fail("composite mode outside the window");
            res.rhs.add_scaled(s.coefficient(P, 0), ap(l));
        }
    }
    res.outcome = res.lhs == res.rhs ? Outcome::Pass : Outcome::Fail;
    return res;
}

OperatorCheck commutator_formula_check(const FockModule& M, int a, const Rational& m, int b, const Rational& k) {
    OperatorCheck out;
    const TwistPair& tp = M.twist();
    Rational c;
    if ((m + k).is_zero())
        c = form(tp, mul(operator_binom(tp, m, 1), basis_vector(M.dim(), a)), basis_vector(M.dim(), b));
    Operator lhs = commutator(M.mode(a, m), M.mode(b, k));
    for (int v = 0; v < lhs.size(); ++v) {
        if (!lhs.exact(v)) continue;
        ++out.compared;
        if (!(lhs.column(v) == Vector::unit(v, c))) {
            out.outcome = Outcome::Fail;
            out.first_column = v;
            return out;
        }
    }
    out.outcome = out.compared > 0 ? Outcome::Pass : Outcome::Inconclusive;
    return out;
}

LogField<Scalar> phi_field(const FockModule& M, const Vec<Rational>& a) {
    const int cond = M.spec().effective_conductor();
    Mat<Scalar> phi = phi_matrix(M.twist(), cond);
    LogField<Scalar> out(M.basis(), Rational(1));
    for (int l = 0; l < M.dim(); ++l) {
        Scalar c;
        for (int j = 0; j < M.dim(); ++j)
            if (!a(j).is_zero()) c += phi(l, j) * Scalar(a(j));
        if (c.is_zero()) continue;
        LogField<Scalar> y = field_of(M, basis_vector(M.dim(), l)).cast<Scalar>();
        y *= c;
        out += y;
    }
    return out;
}

FieldCheck phi_equivariance_check(const FockModule& M, const Vec<Rational>& a) {
    FieldCheck out;
    LogField<Scalar> lhs = phi_field(M, a);
    LogField<Scalar> rhs = monodromy(field_of(M, a).cast<Scalar>(), M.spec().effective_conductor());
    out.diff = compare_fields(lhs, rhs, M.spec().cutoff);
    if (!out.diff.ok())
        out.outcome = Outcome::Fail;
    else
        out.outcome = out.diff.columns > 0 ? Outcome::Pass : Outcome::Inconclusive;
    return out;
}

FieldCheck translation_check(const FockModule& M, const Vec<Rational>& a, int locality_order) {
    FieldCheck out;
    Field y = field_of(M, a);
    Field lhs = nth_product(y, identity_field(M.basis()), -2, locality_order);
    Field rhs = d_z(y);
    out.diff = compare_fields(lhs, rhs, M.spec().cutoff);
    if (!out.diff.ok())
        out.outcome = Outcome::Fail;
    else
        out.outcome = out.diff.columns > 0 ? Outcome::Pass : Outcome::Inconclusive;
    return out;
}

}  // namespace twistlog
