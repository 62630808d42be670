#include "twistlog/weyl.hpp"

#include <algorithm>
#include <stdexcept>

namespace twistlog {

namespace {

void pp_add(PowerProduct& p, const VarKey& v, int e) {
    auto it = std::lower_bound(p.begin(), p.end(), v,
                               [](const std::pair<VarKey, int>& a, const VarKey& k) { return a.first < k; });
    if (it != p.end() && it->first == v) {
        it->second += e;
        if (it->second == 0) p.erase(it);
    } else if (e != 0) {
        p.insert(it, {v, e});
    }
}

PowerProduct pp_mul(const PowerProduct& a, const PowerProduct& b) {
    PowerProduct r = a;
    for (const auto& [v, e] : b) pp_add(r, v, e);
    return r;
}

int pp_power(const PowerProduct& p, const VarKey& v) {
    auto it = std::lower_bound(p.begin(), p.end(), v,
                               [](const std::pair<VarKey, int>& a, const VarKey& k) { return a.first < k; });
    return (it != p.end() && it->first == v) ? it->second : 0;
}

// n!/(n-k)!
Rational falling(int n, int k) {
    Rational r(1);
    for (int i = 0; i < k; ++i) r *= Rational(n - i);
    return r;
}

}  // namespace

Weyl Weyl::constant(const Rational& c) {
    Weyl w;
    w.add({}, c);
    return w;
}

Weyl Weyl::x(const VarKey& v, const Rational& c) {
    Weyl w;
    w.add({{{v, 1}}, {}}, c);
    return w;
}

Weyl Weyl::d(const VarKey& v, const Rational& c) {
    Weyl w;
    w.add({{}, {{v, 1}}}, c);
    return w;
}

void Weyl::add(const WeylKey& k, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Weyl& Weyl::operator+=(const Weyl& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

Weyl& Weyl::operator-=(const Weyl& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
}

Weyl& Weyl::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

Weyl operator*(const Weyl& a, const Weyl& b) {
    Weyl r;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            // d^B x^C = sum_J prod_v binom(B_v, J_v) C_v!/(C_v-J_v)! x^{C-J} d^{B-J}
            std::vector<std::pair<VarKey, std::pair<int, int>>> common;
            for (const auto& [v, e] : ka.d) {
                int c = pp_power(kb.x, v);
                if (c > 0) common.push_back({v, {e, c}});
            }
            std::vector<int> j(common.size(), 0);
            while (true) {
                Rational coef = ca * cb;
                PowerProduct xs = kb.x, ds = ka.d;
                for (std::size_t t = 0; t < common.size(); ++t) {
                    const auto& [v, bc] = common[t];
                    int jt = j[t];
                    coef *= binom_rational(Rational(bc.first), jt) * falling(bc.second, jt);
                    pp_add(xs, v, -jt);
                    pp_add(ds, v, -jt);
                }
                r.add({pp_mul(ka.x, xs), pp_mul(ds, kb.d)}, coef);
                std::size_t t = 0;
                for (; t < common.size(); ++t) {
                    int lim = std::min(common[t].second.first, common[t].second.second);
                    if (j[t] < lim) {
                        ++j[t];
                        break;
                    }
                    j[t] = 0;
                }
                if (t == common.size()) break;
            }
        }
    return r;
}

Weyl weyl_commutator(const Weyl& a, const Weyl& b) { return a * b - b * a; }

std::string Weyl::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    auto pp = [](const PowerProduct& p, const char* pre) {
        std::string s;
        for (const auto& [v, e] : p) {
            s += std::string("*") + pre + var_name(v);
            if (e > 1) s += "^" + std::to_string(e);
        }
        return s;
    };
    for (const auto& [k, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")" + pp(k.x, "") + pp(k.d, "d");
    }
    return out;
}

Rational term_shift(const WeylKey& k, const ModuleSpec& spec) {
    Rational s;
    for (const auto& [v, e] : k.x) s += Rational(e) * var_energy(spec.blocks[static_cast<std::size_t>(v.block)], v.j, v.n);
    for (const auto& [v, e] : k.d) s -= Rational(e) * var_energy(spec.blocks[static_cast<std::size_t>(v.block)], v.j, v.n);
    return s;
}

SparseOperator<Rational> materialize(const Weyl& w, const std::shared_ptr<const FockBasis>& basis,
                                     const Rational& shift) {
    const FockBasis& B = *basis;
    for (const auto& [k, c] : w.terms()) {
        for (const auto& [v, e] : k.x)
            if (!var_declared(B.spec().blocks[static_cast<std::size_t>(v.block)], v.j, v.n))
                throw std::logic_error("undeclared variable " + var_name(v));
        for (const auto& [v, e] : k.d)
            if (!var_declared(B.spec().blocks[static_cast<std::size_t>(v.block)], v.j, v.n))
                throw std::logic_error("undeclared variable " + var_name(v));
        if (!(term_shift(k, B.spec()) == shift))
            throw std::logic_error("Weyl term with energy shift " + term_shift(k, B.spec()).str() +
                                   " in operator of shift " + shift.str());
    }

    SparseOperator<Rational> op(basis, shift);
    std::vector<std::pair<int, Rational>> entries;
    std::map<PowerProduct, Rational> outside;
    for (int col = 0; col < B.size(); ++col) {
        PowerProduct m;
        for (auto id : B.monomial(col)) pp_add(m, B.var(id), 1);
        entries.clear();
        outside.clear();
        for (const auto& [k, c] : w.terms()) {
            Rational coef = c;
            PowerProduct r = m;
            bool dead = false;
            for (const auto& [v, e] : k.d) {
                int have = pp_power(r, v);
                if (have < e) {
                    dead = true;
                    break;
                }
                coef *= falling(have, e);
                pp_add(r, v, -e);
            }
            if (dead) continue;
            for (const auto& [v, e] : k.x) pp_add(r, v, e);
            MonomialIds ids;
            bool inside = true;
            for (const auto& [v, e] : r) {
                int id = B.var_id(v);
                if (id < 0) {
                    inside = false;
                    break;
                }
                for (int t = 0; t < e; ++t) ids.push_back(static_cast<std::uint16_t>(id));
            }
            int row = inside ? B.index_of(ids) : -1;
            if (row >= 0)
                entries.emplace_back(row, coef);
            else
                outside[r] += coef;
        }
        bool exact = true;
        for (const auto& [p, c] : outside)
            if (!c.is_zero()) exact = false;
        if (exact)
            op.set_column(col, SparseVector<Rational>::from_entries(entries));
        else
            op.mark_inexact(col);
    }
    return op;
}

}  // namespace twistlog
