#include "twistlog/virasoro.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace twistlog {

Rational trace_binom_s(const TwistPair& tp) {
    Rational t;
    for (const Rational& s : tp.coset) t += s * (s - Rational(1)) / Rational(2);
    return t;
}

Weyl sugawara_weyl(const FockModule& M, int k, Ordering ord) {
    const TwistPair& tp = M.twist();
    const Mat<Rational> dual = dual_basis(tp);
    const Rational reach = M.spec().cutoff + Rational(std::abs(k)) + Rational(1);
    const Rational K(k);
    Weyl sum;
    for (int i = 0; i < M.dim(); ++i)
        for (int j = 0; j < M.dim(); ++j) {
            const Rational& c = dual(j, i);  // v^i = sum_j c v_j
            if (c.is_zero()) continue;
            const Rational s = tp.coset[static_cast<std::size_t>(j)];
            if (!M.mode_defined(i, K - s)) continue;
            for (Rational m = s - floor(reach) - Rational(1); m <= reach; m += Rational(1)) {
                if (abs(m) > reach) continue;
                Weyl a = M.mode_weyl(j, m), b = M.mode_weyl(i, K - m);
                bool left = m <= Rational(-1);
                if (ord == Ordering::Reversed) left = !left;
                sum += (left ? a * b : b * a) * c;
            }
        }
    if (k == 0) sum -= Weyl::constant(trace_binom_s(tp));
    sum *= Rational(1, 2);
    return sum;
}

Operator sugawara_mode(const FockModule& M, int k, Ordering ord) {
    return materialize(sugawara_weyl(M, k, ord), M.basis(), Rational(-k));
}

Operator l0_mode(const FockModule& M) { return M.l0_closed_form(); }

Operator l0_diagonal(const FockModule& M) {
    Operator l0 = l0_mode(M);
    if (!l0.exact(0)) throw WindowError("vacuum column of L_0 is not exact");
    const Rational h = l0.column(0).at(0);
    Operator d(M.basis(), Rational(0));
    for (int v = 0; v < d.size(); ++v) d.set_column(v, Vector::unit(v, M.basis()->energy(v) + h));
    return d;
}

namespace {

std::optional<Rational> central_from(const Operator& l2, const Operator& lm2, const Operator& l0) {
    Operator r = commutator(l2, lm2);
    r -= l0 * Rational(4);
    if (!r.exact(0)) return std::nullopt;
    const Vector& col = r.column(0);
    if (col.nnz() > 1 || (col.nnz() == 1 && col.entries().front().first != 0)) return std::nullopt;
    return col.at(0) * Rational(2);
}

}  // namespace

std::optional<Rational> extract_central_charge(const FockModule& M) {
    return central_from(sugawara_mode(M, 2), sugawara_mode(M, -2), l0_mode(M));
}

VirasoroFamily virasoro_family(const FockModule& M, int range) {
    VirasoroFamily F;
    for (int k = -range; k <= range; ++k) F.modes.emplace(k, k == 0 ? l0_mode(M) : sugawara_mode(M, k));
    if (range >= 2) F.central_charge = central_from(F.modes.at(2), F.modes.at(-2), F.modes.at(0));
    return F;
}

RelationCheck virasoro_relation_check(const VirasoroFamily& F, int m, int n, const Rational& c) {
    auto get = [&](int k) -> const Operator& {
        auto it = F.modes.find(k);
        if (it == F.modes.end()) throw std::out_of_range("L_" + std::to_string(k) + " not in the family");
        return it->second;
    };
    Operator r = commutator(get(m), get(n));
    r -= get(m + n) * Rational(m - n);
    if (m + n == 0) {
        Rational central = Rational(m * m * m - m) * c / Rational(12);
        r -= Operator::identity(r.basis(), central);
    }
    RelationCheck out;
    for (int v = 0; v < r.size(); ++v) {
        if (!r.exact(v)) continue;
        ++out.compared;
        if (r.column(v).empty()) continue;
        if (out.mismatched++ == 0) out.first_column = v;
    }
    if (out.mismatched > 0)
        out.outcome = Outcome::Fail;
    else
        out.outcome = out.compared > 0 ? Outcome::Pass : Outcome::Inconclusive;
    return out;
}

RelationCheck virasoro_relation_check(const FockModule& M, int m, int n, const Rational& c) {
    VirasoroFamily F;
    for (int k : {m, n, m + n}) F.modes.try_emplace(k, k == 0 ? l0_mode(M) : sugawara_mode(M, k));
    return virasoro_relation_check(F, m, n, c);
}

namespace {

Outcome outcome_of(const FieldDiff& d) {
    if (!d.ok()) return Outcome::Fail;
    return d.columns > 0 ? Outcome::Pass : Outcome::Inconclusive;
}

Field bracket_field(const Operator& l, const Field& y, const Rational& weight) {
    Field r(y.basis(), weight);
    for (const auto& [key, op] : y.components()) r.slot(key.first, key.second) = commutator(l, op);
    return r;
}

}  // namespace

Outcome LActionCheck::outcome() const {
    if (l0.outcome == Outcome::Fail || lm1.outcome == Outcome::Fail) return Outcome::Fail;
    if (l0.outcome == Outcome::Pass && lm1.outcome == Outcome::Pass) return Outcome::Pass;
    return Outcome::Inconclusive;
}

LActionCheck l_action_check(const FockModule& M, const Vec<Rational>& a, const Operator& l0, const Operator& lm1) {
    LActionCheck out;
    const Rational& D = M.spec().cutoff;
    Field y = field_of(M, a);
    out.l0.diff = compare_fields(bracket_field(l0, y, y.weight()), d_zeta(y) + y, D);
    out.l0.outcome = outcome_of(out.l0.diff);
    out.lm1.diff = compare_fields(bracket_field(lm1, y, y.weight() + Rational(1)), d_z(y), D);
    out.lm1.outcome = outcome_of(out.lm1.diff);
    return out;
}

LActionCheck l_action_check(const FockModule& M, const Vec<Rational>& a) {
    return l_action_check(M, a, l0_mode(M), sugawara_mode(M, -1));
}

JordanData jordan_structure(const FockModule& M, const Rational& level) {
    return jordan_structure(M, l0_mode(M), level);
}

JordanData jordan_structure(const FockModule& M, const Operator& l0, const Rational& level) {
    const FockBasis& B = *M.basis();
    JordanData out;
    out.level = level;
    std::vector<int> idx;
    for (int v = 0; v < B.size(); ++v)
        if (B.energy(v) == level) idx.push_back(v);
    out.dim = static_cast<int>(idx.size());
    if (idx.empty()) return out;
    std::map<int, int> pos;
    for (int i = 0; i < out.dim; ++i) pos[idx[static_cast<std::size_t>(i)]] = i;

    Mat<Rational> A = zeros<Rational>(out.dim, out.dim);
    for (int c = 0; c < out.dim; ++c) {
        int v = idx[static_cast<std::size_t>(c)];
        if (!l0.exact(v)) {
            out.exact = false;
            continue;
        }
        for (const auto& [row, x] : l0.column(v).entries()) {
            auto it = pos.find(row);
            if (it == pos.end()) throw std::logic_error("L_0 does not preserve the energy level");
            A(it->second, c) = x;
        }
    }
    Rational tr;
    for (int i = 0; i < out.dim; ++i) tr += A(i, i);
    out.eigenvalue = tr / Rational(out.dim);
    Mat<Rational> S = A;
    for (int i = 0; i < out.dim; ++i) S(i, i) -= out.eigenvalue;

    std::vector<int> ranks{out.dim};
    Mat<Rational> P = identity<Rational>(out.dim);
    while (ranks.back() > 0) {
        if (static_cast<int>(ranks.size()) > out.dim)
            throw std::logic_error("L_0 has more than one eigenvalue at level " + level.str());
        P = mul(P, S);
        ranks.push_back(exact_rank(P));
    }
    // blocks of size >= p: ranks[p-1] - ranks[p]
    for (std::size_t p = ranks.size() - 1; p >= 1; --p) {
        int at_least = ranks[p - 1] - ranks[p];
        int longer = p + 1 < ranks.size() ? ranks[p] - ranks[p + 1] : 0;
        for (int t = 0; t < at_least - longer; ++t) out.partition.push_back(static_cast<int>(p));
    }
    return out;
}

FieldCheck exp_l0_conjugation_check(const FockModule& M, const Vec<Rational>& a, const Rational& delta) {
    using SOp = SparseOperator<Scalar>;
    FieldCheck out;
    const auto& basis = M.basis();
    const int cond = M.spec().effective_conductor();

    Operator nil = l0_mode(M);
    nil -= l0_diagonal(M);
    std::vector<Operator> powers{Operator::identity(basis)};
    while (!powers.back().is_zero_on_exact()) {
        if (static_cast<int>(powers.size()) > basis->size()) {
            out.outcome = Outcome::Inconclusive;
            return out;
        }
        powers.push_back(compose(nil, powers.back()));
    }
    powers.pop_back();

    SOp grade(basis, Rational(0)), grade_inv(basis, Rational(0));
    for (int v = 0; v < basis->size(); ++v) {
        grade.set_column(v, SparseVector<Scalar>::unit(v, root_of_unity(basis->energy(v), cond)));
        grade_inv.set_column(v, SparseVector<Scalar>::unit(v, root_of_unity(-basis->energy(v), cond)));
    }
    SOp ex = SOp::zero(basis, Rational(0)), ex_inv = SOp::zero(basis, Rational(0));
    for (std::size_t p = 0; p < powers.size(); ++p) {
        SOp term = powers[p].cast<Scalar>();
        Scalar c = Scalar::tau_power(static_cast<int>(p)) * Scalar(inverse(factorial(static_cast<int>(p))));
        ex.add_scaled(term, c);
        ex_inv.add_scaled(term, p % 2 ? -c : c);
    }
    SOp U = compose(grade, ex), Uinv = compose(ex_inv, grade_inv);

    LogField<Scalar> y = field_of(M, a).cast<Scalar>();
    LogField<Scalar> lhs(basis, y.weight());
    for (const auto& [key, op] : y.components()) lhs.slot(key.first, key.second) = compose(U, compose(op, Uinv));
    LogField<Scalar> rhs = monodromy(y, cond);
    rhs *= root_of_unity(delta, cond);
    out.diff = compare_fields(lhs, rhs, M.spec().cutoff);
    out.outcome = outcome_of(out.diff);
    return out;
}

}  // namespace twistlog
