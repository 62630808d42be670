#include "twistlog/fock.hpp"

#include <stdexcept>

namespace twistlog {

namespace {

Rational sgn(int k) { return (k % 2 == 0) ? Rational(1) : Rational(-1); }

}  // namespace

FockModule::FockModule(const ModuleSpec& spec) : basis_(build_basis(spec)) {}

int FockModule::global_index(int block, int j) const {
    const auto& bs = spec().blocks;
    if (block < 0 || block >= static_cast<int>(bs.size())) throw std::out_of_range("no such block");
    const BlockDecl& b = bs[static_cast<std::size_t>(block)];
    if (j < 1 || j > b.dim()) throw std::out_of_range("basis index outside the block");
    return b.offset + j - 1;
}

std::pair<int, int> FockModule::local_index(int global) const {
    const auto& bs = spec().blocks;
    for (int b = 0; b < static_cast<int>(bs.size()); ++b) {
        const BlockDecl& d = bs[static_cast<std::size_t>(b)];
        if (global >= d.offset && global < d.offset + d.dim()) return {b, global - d.offset + 1};
    }
    throw std::out_of_range("basis index outside h");
}

Rational FockModule::param_a1(int block) const {
    return spec().params[static_cast<std::size_t>(block)].a1.value_or(Rational(0));
}
Rational FockModule::param_a2(int block) const {
    return spec().params[static_cast<std::size_t>(block)].a2.value_or(Rational(0));
}
Rational FockModule::param_a(int block) const {
    return spec().params[static_cast<std::size_t>(block)].a.value_or(Rational(0));
}

bool FockModule::mode_defined(int global, const Rational& m) const {
    return same_coset(m, twist().coset[static_cast<std::size_t>(global)]);
}

Weyl FockModule::mode_weyl(int global, const Rational& m) const {
    if (global < 0 || global >= dim()) throw std::out_of_range("basis index outside h");
    if (!mode_defined(global, m))
        throw std::invalid_argument("exponent " + m.str() + " outside the coset of v_" + std::to_string(global + 1));
    auto [b, j] = local_index(global);
    return mode_block(b, j, m);
}

Weyl FockModule::mode_block(int block, int j, const Rational& m) const {
    const BlockDecl& bd = spec().blocks[static_cast<std::size_t>(block)];
    const int l = bd.ell;
    const Rational& a0 = bd.alpha0;
    auto X = [&](int jj, int n, const Rational& c = Rational(1)) { return Weyl::x({block, jj, n}, c); };
    auto D = [&](int jj, int n, const Rational& c = Rational(1)) { return Weyl::d({block, jj, n}, c); };
    Weyl w;
    switch (block_case(bd)) {
        case BlockCase::EvenNegative: {
            if (j <= l) {
                const int i = j;
                if (m <= a0) return X(i, (a0 - m).to_int());
                int n = (m - a0 - Rational(1)).to_int();
                w += D(2 * l + 1 - i, n + 1, m);
                if (i != l) w += D(2 * l - i, n + 1);
                return w;
            }
            const int i = j - l;
            if (m <= -a0 - Rational(1)) return X(l + i, (-a0 - Rational(1) - m).to_int() + 1);
            int n = (m + a0).to_int();
            w += D(l + 1 - i, n, m);
            if (i != l) w -= D(l - i, n);
            return w;
        }
        case BlockCase::EvenZero: {
            if (m.sign() < 0) return X(j, (-m).to_int());
            if (m.sign() > 0) {
                int n = m.to_int();
                if (j <= l) {
                    w += D(2 * l + 1 - j, n, m);
                    if (j != l) w += D(2 * l - j, n);
                } else {
                    const int i = j - l;
                    w += D(l + 1 - i, n, m);
                    if (i != l) w -= D(l - i, n);
                }
                return w;
            }
            if (j < l) return X(j, 0);
            if (j == l) return Weyl::constant(param_a1(block));
            if (j < 2 * l) return D(2 * l - j, 0, Rational(-1));
            return Weyl::constant(param_a2(block));
        }
        case BlockCase::OddNegative: {
            if (m.sign() < 0) return X(j, (Rational(-1, 2) - m).to_int());
            int n = (m - Rational(1, 2)).to_int();
            w += D(2 * l - j, n, m);
            if (j != 2 * l - 1) w += D(2 * l - 1 - j, n, sgn(j + 1));
            return w;
        }
        case BlockCase::OddZero: {
            if (m.sign() < 0) return X(j, (-m).to_int());
            if (m.sign() > 0) {
                int n = m.to_int();
                w += D(2 * l - j, n, m);
                if (j != 2 * l - 1) w += D(2 * l - 1 - j, n, sgn(j + 1));
                return w;
            }
            if (j < l) return X(j, 0);
            if (j == 2 * l - 1) return Weyl::constant(param_a(block));
            const int i = j - l + 1;
            return D(l - i, 0, sgn(l - i));
        }
    }
    return w;
}

const Operator& FockModule::mode(int global, const Rational& m) const {
    std::pair<int, Rational> key{global, m};
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return *it->second;
    }
    auto op = std::make_unique<Operator>(materialize(mode_weyl(global, m), basis_, -m));
    std::lock_guard<std::mutex> lk(mu_);
    auto [it, inserted] = cache_.emplace(std::move(key), std::move(op));
    return *it->second;
}

Operator FockModule::mode_of(const Vec<Rational>& a, const Rational& m) const {
    if (a.size() != dim()) throw std::invalid_argument("vector of wrong dimension");
    Operator r(basis_, -m);
    for (int g = 0; g < dim(); ++g) {
        if (a(g).is_zero()) continue;
        if (!mode_defined(g, m))
            throw std::invalid_argument("component v_" + std::to_string(g + 1) + " has no mode at exponent " +
                                        m.str());
        r.add_scaled(mode(g, m), a(g));
    }
    return r;
}

Weyl FockModule::l0_weyl(int block) const {
    const BlockDecl& bd = spec().blocks[static_cast<std::size_t>(block)];
    const int l = bd.ell;
    const Rational& a0 = bd.alpha0;
    const Rational& Dc = spec().cutoff;
    auto xd = [&](int j1, int j2, int n, const Rational& c) {
        Weyl w;
        w.add({{{{block, j1, n}, 1}}, {{{block, j2, n}, 1}}}, c);
        return w;
    };
    auto below = [&](int jj, int n) { return var_declared(bd, jj, n) && var_energy(bd, jj, n) <= Dc; };
    const int maxn = floor(Dc).to_int() + 1;
    Weyl w;
    switch (block_case(bd)) {
        case BlockCase::EvenNegative:
        case BlockCase::EvenZero: {
            const bool zero = block_case(bd) == BlockCase::EvenZero;
            for (int n = zero ? 1 : 0; n <= maxn; ++n)
                for (int i = 1; i <= l; ++i) {
                    if (!below(i, n)) continue;
                    w += xd(i, i, n, Rational(n) - a0);
                    if (i != 1) w += xd(i, i - 1, n, Rational(-1));
                }
            for (int n = 1; n <= maxn; ++n)
                for (int i = 1; i <= l; ++i) {
                    if (!below(l + i, n)) continue;
                    w += xd(l + i, l + i, n, Rational(n) + a0);
                    if (i != 1) w += xd(l + i, l + i - 1, n, Rational(1));
                }
            if (!zero) {
                w += Weyl::constant(-Rational(l, 2) * (a0 * a0 + a0));
            } else if (l == 1) {
                w += Weyl::constant(param_a1(block) * param_a2(block));
            } else {
                for (int i = 2; i <= l - 1; ++i) w += xd(i, i - 1, 0, Rational(-1));
                w += Weyl::x({block, 1, 0}, param_a2(block));
                w += Weyl::d({block, l - 1, 0}, -param_a1(block));
            }
            return w;
        }
        case BlockCase::OddNegative:
        case BlockCase::OddZero: {
            const bool zero = block_case(bd) == BlockCase::OddZero;
            const Rational half = zero ? Rational(0) : Rational(1, 2);
            for (int n = zero ? 1 : 0; n <= maxn; ++n)
                for (int i = 1; i <= 2 * l - 1; ++i) {
                    if (!below(i, n)) continue;
                    w += xd(i, i, n, Rational(n) + half);
                    if (i != 1) w += xd(i, i - 1, n, sgn(i + 1));
                }
            if (!zero) {
                w += Weyl::constant(Rational(2 * l - 1, 16));
            } else if (l == 1) {
                w += Weyl::constant(param_a(block) * param_a(block) / Rational(2));
            } else {
                for (int i = 2; i <= l - 1; ++i) w += xd(i, i - 1, 0, sgn(i + 1));
                Weyl dd;
                dd.add({{}, {{{block, l - 1, 0}, 2}}}, Rational(1, 2));
                w += dd;
                w += Weyl::x({block, 1, 0}, param_a(block));
            }
            return w;
        }
    }
    return w;
}

Operator FockModule::l0_closed_form(int block) const { return materialize(l0_weyl(block), basis_, Rational(0)); }

Operator FockModule::l0_closed_form() const {
    Weyl w;
    for (int b = 0; b < static_cast<int>(spec().blocks.size()); ++b) w += l0_weyl(b);
    return materialize(w, basis_, Rational(0));
}

}  // namespace twistlog
