#include "twistlog/nproduct.hpp"

#include <algorithm>
#include <stdexcept>

namespace twistlog {

namespace {

Rational falling(int n, int k) {
    Rational r(1);
    for (int i = 0; i < k; ++i) r *= Rational(n - i);
    return r;
}

// coefficients of binom(e + x, r) as a polynomial in x
std::vector<Rational> binom_poly(const Rational& e, int r) {
    std::vector<Rational> p{Rational(1)};
    for (int t = 0; t < r; ++t) {
        std::vector<Rational> q(p.size() + 1);
        for (std::size_t j = 0; j < p.size(); ++j) {
            q[j] += p[j] * (e - Rational(t));
            q[j + 1] += p[j];
        }
        p = std::move(q);
    }
    Rational fact = factorial(r);
    for (auto& c : p) c /= fact;
    return p;
}

std::vector<Rational> sorted_unique(std::vector<Rational> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

void VectorSeries::prune() {
    for (auto it = coeffs.begin(); it != coeffs.end();) {
        if (it->second.empty())
            it = coeffs.erase(it);
        else
            ++it;
    }
}

std::vector<Rational> z_exponents(const Field& f) {
    std::vector<Rational> out;
    for (const auto& [key, op] : f.components()) out.push_back(-key.first - Rational(1));
    return sorted_unique(std::move(out));
}

std::map<Rational, ProductEngine::Components> ProductEngine::by_exponent(const Field& f) {
    std::map<Rational, Components> idx;
    for (const auto& [key, op] : f.components()) idx[-key.first - Rational(1)].emplace_back(key.second, &op);
    return idx;
}

ProductEngine::ProductEngine(const Field& f, const Field& g, int v, int locality_order)
    : f_(f), g_(g), v_(v), N_(locality_order) {
    if (f.basis() != g.basis()) throw std::invalid_argument("fields on different bases");
    if (N_ < 0) throw std::invalid_argument("locality order must be non-negative");
    Ev_ = f.basis()->energy(v);
    D_ = f.basis()->cutoff();
    fidx_ = by_exponent(f);
    gidx_ = by_exponent(g);
}

const ProductEngine::Components* ProductEngine::comps(const std::map<Rational, Components>& idx,
                                                      const Rational& e) const {
    auto it = idx.find(e);
    return it == idx.end() ? nullptr : &it->second;
}

const std::optional<std::vector<std::pair<int, Vector>>>& ProductEngine::apply_single(
    const std::map<Rational, Components>& idx, std::map<Rational, std::optional<std::vector<std::pair<int, Vector>>>>& memo,
    const Rational& e) {
    auto it = memo.find(e);
    if (it != memo.end()) return it->second;
    std::optional<std::vector<std::pair<int, Vector>>> out(std::in_place);
    if (const Components* cs = comps(idx, e)) {
        for (const auto& [k, op] : *cs) {
            if (!op->exact(v_)) {
                out.reset();
                break;
            }
            if (!op->column(v_).empty()) out->emplace_back(k, op->column(v_));
        }
    }
    return memo.emplace(e, std::move(out)).first->second;
}

const std::optional<ProductEngine::ZetaTerms>& ProductEngine::fg(const Rational& e1, const Rational& e2) {
    auto key = std::make_pair(e1, e2);
    auto it = fg_.find(key);
    if (it != fg_.end()) return it->second;
    std::optional<ZetaTerms> out(std::in_place);
    const auto& gv = apply_single(gidx_, gv_, e2);
    const Components* fc = comps(fidx_, e1);
    if (!gv) {
        out.reset();
    } else if (fc) {
        for (const auto& [k2, w] : *gv) {
            for (const auto& [k1, op] : *fc) {
                auto r = op->try_apply(w);
                if (!r) {
                    out.reset();
                    break;
                }
                if (!r->empty()) (*out)[{k1, k2}] += *r;
            }
            if (!out) break;
        }
    }
    return fg_.emplace(key, std::move(out)).first->second;
}

const std::optional<ProductEngine::ZetaTerms>& ProductEngine::gf(const Rational& e1, const Rational& e2) {
    auto key = std::make_pair(e1, e2);
    auto it = gf_.find(key);
    if (it != gf_.end()) return it->second;
    std::optional<ZetaTerms> out(std::in_place);
    const auto& fv = apply_single(fidx_, fv_, e1);
    const Components* gc = comps(gidx_, e2);
    if (!fv) {
        out.reset();
    } else if (gc) {
        for (const auto& [k1, w] : *fv) {
            for (const auto& [k2, op] : *gc) {
                auto r = op->try_apply(w);
                if (!r) {
                    out.reset();
                    break;
                }
                if (!r->empty()) (*out)[{k1, k2}] += *r;
            }
            if (!out) break;
        }
    }
    return gf_.emplace(key, std::move(out)).first->second;
}

std::optional<ProductEngine::ZetaTerms> ProductEngine::coefficient(const Rational& E1, const Rational& E2,
                                                                   int ordering) {
    // intermediate states must stay below the cutoff, otherwise truncated
    // components could be missing
    if (ordering == 1 && Ev_ + E2 + g_.weight() > D_) return std::nullopt;
    if (ordering == 2 && Ev_ + E1 + f_.weight() > D_) return std::nullopt;
    ZetaTerms acc;
    for (int i = 0; i <= N_; ++i) {
        Rational c = binom_rational(Rational(N_), i);
        if (i % 2) c = -c;
        Rational e1 = E1 - Rational(N_ - i), e2 = E2 - Rational(i);
        const auto& t = ordering == 1 ? fg(e1, e2) : gf(e1, e2);
        if (!t) return std::nullopt;
        for (const auto& [kk, w] : *t) acc[kk].add_scaled(w, c);
    }
    for (auto it = acc.begin(); it != acc.end();) {
        if (it->second.empty())
            it = acc.erase(it);
        else
            ++it;
    }
    return acc;
}

void ProductEngine::candidates(std::vector<Rational>& c1, std::vector<Rational>& c2) const {
    const Rational L1 = -Ev_ - f_.weight(), L2 = -Ev_ - g_.weight();
    for (const auto& [e, cs] : fidx_)
        for (int i = 0; i <= N_; ++i) {
            Rational E = e + Rational(N_ - i);
            if (E >= L1) c1.push_back(E);
        }
    for (const auto& [e, cs] : gidx_)
        for (int i = 0; i <= N_; ++i) {
            Rational E = e + Rational(i);
            if (E >= L2) c2.push_back(E);
        }
    c1 = sorted_unique(std::move(c1));
    c2 = sorted_unique(std::move(c2));
}

VectorSeries ProductEngine::nth(int n) {
    VectorSeries out;
    if (n >= N_) return out;
    const int r = N_ - 1 - n;
    const Rational weight = f_.weight() + g_.weight() - Rational(n + 1);
    const Rational Pmin = -Ev_ - weight, Pmax = D_ - Ev_ - weight;
    std::vector<Rational> c1, c2;
    candidates(c1, c2);
    for (const Rational& E1 : c1) {
        std::vector<Rational> poly;
        for (const Rational& E2 : c2) {
            Rational P = E1 + E2 - Rational(r);
            if (P < Pmin || P > Pmax) continue;
            if (out.inconclusive.count(P)) continue;
            auto t = coefficient(E1, E2, 1);
            if (!t) t = coefficient(E1, E2, 2);
            if (!t) {
                out.inconclusive.insert(P);
                continue;
            }
            if (t->empty()) continue;
            if (poly.empty()) poly = binom_poly(E1, r);
            // D_{z1}^{(r)} z1^{E1} zeta1^{k1} = z1^{E1-r} binom(E1 + d/dzeta1, r) zeta1^{k1}
            for (const auto& [kk, w] : *t) {
                const auto [k1, k2] = kk;
                for (int j = 0; j <= k1 && j < static_cast<int>(poly.size()); ++j) {
                    Rational c = poly[static_cast<std::size_t>(j)] * falling(k1, j);
                    out.add(P, k1 - j + k2, w, c);
                }
            }
        }
    }
    for (const Rational& P : out.inconclusive)
        for (auto it = out.coeffs.lower_bound({P, 0}); it != out.coeffs.end() && it->first.first == P;)
            it = out.coeffs.erase(it);
    out.prune();
    return out;
}

ProductEngine::LocalityStats ProductEngine::locality() {
    LocalityStats st;
    std::vector<Rational> c1, c2;
    candidates(c1, c2);
    const Rational top = D_ - Ev_ - f_.weight() - g_.weight() + Rational(N_);
    for (const Rational& E1 : c1)
        for (const Rational& E2 : c2) {
            if (E1 + E2 > top) continue;
            auto a = coefficient(E1, E2, 1);
            if (!a) continue;
            auto b = coefficient(E1, E2, 2);
            if (!b) continue;
            ++st.compared;
            if (*a != *b) {
                if (st.mismatched++ == 0) st.first = std::make_pair(E1, E2);
            }
        }
    return st;
}

Field assemble_field(const std::shared_ptr<const FockBasis>& basis, const Rational& weight,
                     const std::vector<VectorSeries>& per_vector, const std::vector<Rational>& exponents,
                     int zeta_bound) {
    const FockBasis& B = *basis;
    const Rational& D = B.cutoff();
    Field out(basis, weight);
    std::set<std::pair<Rational, int>> keys;
    int maxk = 0;
    for (const auto& s : per_vector)
        for (const auto& [key, v] : s.coeffs) {
            keys.insert(key);
            maxk = std::max(maxk, key.second);
        }
    maxk = std::max(maxk, zeta_bound);
    // an exponent that is inconclusive somewhere needs every zeta degree present
    for (const Rational& e : exponents)
        if (abs(e + weight) <= D)
            for (int k = 0; k <= maxk; ++k) keys.insert({e, k});
    for (const auto& [e, k] : keys) {
        Rational m = -e - Rational(1);
        Operator& op = out.slot(m, k);
        for (int v = 0; v < B.size(); ++v) {
            const VectorSeries& s = per_vector[static_cast<std::size_t>(v)];
            Rational outE = B.energy(v) + e + weight;
            if (outE > D || s.inconclusive.count(e)) {
                op.mark_inexact(v);
                continue;
            }
            auto it = s.coeffs.find({e, k});
            if (it != s.coeffs.end()) op.set_column(v, it->second);
        }
    }
    return out;
}

Field nth_product(const Field& f, const Field& g, int n, int locality_order) {
    const auto& basis = f.basis();
    const Rational weight = f.weight() + g.weight() - Rational(n + 1);
    if (n >= locality_order) return Field(basis, weight);
    std::vector<VectorSeries> per(static_cast<std::size_t>(basis->size()));
    for (int v = 0; v < basis->size(); ++v) {
        ProductEngine eng(f, g, v, locality_order);
        per[static_cast<std::size_t>(v)] = eng.nth(n);
    }
    std::vector<Rational> ex;
    const int r = locality_order - 1 - n;
    for (const Rational& a : z_exponents(f))
        for (const Rational& b : z_exponents(g)) ex.push_back(a + b - Rational(r) + Rational(locality_order));
    return assemble_field(basis, weight, per, sorted_unique(std::move(ex)),
                          std::max(f.zeta_degree(), 0) + std::max(g.zeta_degree(), 0));
}

VectorSeries normally_ordered_apply(const Field& f, const Field& g, int v) {
    const FockBasis& B = *f.basis();
    const Rational Ev = B.energy(v), D = B.cutoff();
    const Rational weight = f.weight() + g.weight();
    VectorSeries out;
    auto fe = z_exponents(f), ge = z_exponents(g);
    std::map<Rational, std::vector<std::pair<int, const Operator*>>> fidx, gidx;
    for (const auto& [key, op] : f.components()) fidx[-key.first - Rational(1)].emplace_back(key.second, &op);
    for (const auto& [key, op] : g.components()) gidx[-key.first - Rational(1)].emplace_back(key.second, &op);

    auto apply_all = [&](const std::vector<std::pair<int, const Operator*>>& ops,
                         const std::vector<std::pair<int, Vector>>& ws,
                         std::vector<std::pair<int, std::pair<int, Vector>>>& acc) {
        for (const auto& [k2, w] : ws)
            for (const auto& [k1, op] : ops) {
                auto r = op->try_apply(w);
                if (!r) return false;
                if (!r->empty()) acc.push_back({k1, {k2, std::move(*r)}});
            }
        return true;
    };
    auto column = [&](const std::vector<std::pair<int, const Operator*>>& ops,
                      std::vector<std::pair<int, Vector>>& ws) {
        for (const auto& [k, op] : ops) {
            if (!op->exact(v)) return false;
            if (!op->column(v).empty()) ws.emplace_back(k, op->column(v));
        }
        return true;
    };

    for (const auto& [e1, fops] : fidx)
        for (const auto& [e2, gops] : gidx) {
            Rational P = e1 + e2;
            Rational outE = Ev + P + weight;
            if (outE.sign() < 0 || outE > D) continue;
            if (out.inconclusive.count(P)) continue;
            std::vector<std::pair<int, std::pair<int, Vector>>> acc;  // (k_f, (k_g, vec))
            bool ok;
            if (e1.sign() >= 0) {
                // f_+ g: needs G_{e2} v
                if (Ev + e2 + g.weight() > D) {
                    ok = false;
                } else {
                    std::vector<std::pair<int, Vector>> gv;
                    ok = column(gops, gv) && apply_all(fops, gv, acc);
                }
            } else {
                if (Ev + e1 + f.weight() > D) {
                    ok = false;
                } else {
                    std::vector<std::pair<int, Vector>> fv;
                    std::vector<std::pair<int, std::pair<int, Vector>>> tmp;
                    ok = column(fops, fv) && apply_all(gops, fv, tmp);
                    for (auto& [kg, rest] : tmp) acc.push_back({rest.first, {kg, std::move(rest.second)}});
                }
            }
            if (!ok) {
                out.inconclusive.insert(P);
                continue;
            }
            for (const auto& [kf, rest] : acc) out.add(P, kf + rest.first, rest.second);
        }
    for (const Rational& P : out.inconclusive)
        for (auto it = out.coeffs.lower_bound({P, 0}); it != out.coeffs.end() && it->first.first == P;)
            it = out.coeffs.erase(it);
    out.prune();
    return out;
}

Field normally_ordered(const Field& f, const Field& g) {
    const auto& basis = f.basis();
    std::vector<VectorSeries> per(static_cast<std::size_t>(basis->size()));
    for (int v = 0; v < basis->size(); ++v) per[static_cast<std::size_t>(v)] = normally_ordered_apply(f, g, v);
    std::vector<Rational> ex;
    for (const Rational& a : z_exponents(f))
        for (const Rational& b : z_exponents(g)) ex.push_back(a + b);
    return assemble_field(basis, f.weight() + g.weight(), per, sorted_unique(std::move(ex)),
                          std::max(f.zeta_degree(), 0) + std::max(g.zeta_degree(), 0));
}

LocalityReport check_locality(const Field& f, const Field& g, int N, const std::vector<int>& vectors) {
    LocalityReport rep;
    for (int v : vectors) {
        ProductEngine eng(f, g, v, N);
        auto st = eng.locality();
        ++rep.vectors;
        rep.compared += st.compared;
        if (st.mismatched > 0 && rep.mismatched == 0) {
            rep.first_vector = v;
            rep.first = st.first;
        }
        rep.mismatched += st.mismatched;
    }
    return rep;
}

}  // namespace twistlog
