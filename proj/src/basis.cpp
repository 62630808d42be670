#include "twistlog/basis.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace twistlog {

void ModuleSpec::validate() const {
    if (blocks.empty()) throw std::invalid_argument("module spec has no blocks");
    if (params.size() != blocks.size()) throw std::invalid_argument("one parameter set per block expected");
    if (cutoff.sign() < 0) throw std::invalid_argument("cutoff must be non-negative");
    if (zero_cap < 0) throw std::invalid_argument("zero-energy degree cap must be non-negative");
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const BlockDecl& d = blocks[b];
        if (d.ell < 1) throw std::invalid_argument("block " + std::to_string(b) + ": ell must be >= 1");
        if (d.kind == BlockKind::Even) {
            if (!(d.alpha0 > Rational(-1) && d.alpha0 <= Rational(0)))
                throw std::invalid_argument("block " + std::to_string(b) + ": alpha0 outside (-1, 0]");
        } else if (!(d.alpha0.is_zero() || d.alpha0 == Rational(-1, 2))) {
            throw std::invalid_argument("block " + std::to_string(b) + ": odd alpha0 must be 0 or -1/2");
        }
        const BlockParams& p = params[b];
        bool even_zero = d.kind == BlockKind::Even && d.alpha0.is_zero();
        bool odd_zero = d.kind == BlockKind::Odd && d.alpha0.is_zero();
        if ((p.a1 || p.a2) && !even_zero)
            throw std::invalid_argument("block " + std::to_string(b) + ": a1/a2 only apply to even blocks with alpha0 = 0");
        if (p.a && !odd_zero)
            throw std::invalid_argument("block " + std::to_string(b) + ": a only applies to odd blocks with alpha0 = 0");
    }
    if (conductor != 0) {
        if (conductor < 0 || conductor % 4 != 0)
            throw std::invalid_argument("conductor must be a positive multiple of 4");
        for (const auto& d : blocks)
            if (conductor % d.alpha0.den_int() != 0)
                throw std::invalid_argument("conductor " + std::to_string(conductor) +
                                            " not divisible by the denominator of " + d.alpha0.str());
    }
}

int ModuleSpec::effective_conductor() const {
    if (conductor != 0) return conductor;
    std::vector<Rational> a;
    for (const auto& d : blocks) a.push_back(d.alpha0);
    return conductor_for(a);
}

BlockCase block_case(const BlockDecl& b) {
    if (b.kind == BlockKind::Even) return b.alpha0.is_zero() ? BlockCase::EvenZero : BlockCase::EvenNegative;
    return b.alpha0.is_zero() ? BlockCase::OddZero : BlockCase::OddNegative;
}

bool var_declared(const BlockDecl& b, int j, int n) {
    const int l = b.ell;
    if (n < 0 || j < 1) return false;
    switch (block_case(b)) {
        case BlockCase::EvenNegative:
            if (j <= l) return true;
            return j <= 2 * l && n >= 1;
        case BlockCase::EvenZero:
            return n == 0 ? j <= l - 1 : j <= 2 * l;
        case BlockCase::OddNegative:
            return j <= 2 * l - 1;
        case BlockCase::OddZero:
            return n == 0 ? j <= l - 1 : j <= 2 * l - 1;
    }
    return false;
}

Rational var_energy(const BlockDecl& b, int j, int n) {
    switch (block_case(b)) {
        case BlockCase::EvenNegative:
            return j <= b.ell ? Rational(n) - b.alpha0 : Rational(n) + b.alpha0;
        case BlockCase::OddNegative:
            return Rational(n) + Rational(1, 2);
        default:
            return Rational(n);
    }
}

std::string var_name(const VarKey& v) {
    return "x" + std::to_string(v.block) + "_" + std::to_string(v.j) + "_" + std::to_string(v.n);
}

FockBasis::FockBasis(ModuleSpec spec, TwistPair twist) : spec_(std::move(spec)), twist_(std::move(twist)) {
    int off = 0;
    for (auto& b : spec_.blocks) {
        b.offset = off;
        off += b.dim();
    }
    spec_.validate();
    const Rational& D = spec_.cutoff;
    for (int b = 0; b < static_cast<int>(spec_.blocks.size()); ++b) {
        const BlockDecl& bd = spec_.blocks[static_cast<std::size_t>(b)];
        int maxn = static_cast<int>(floor(D).to_int()) + 1;
        for (int j = 1; j <= bd.dim(); ++j)
            for (int n = 0; n <= maxn; ++n) {
                if (!var_declared(bd, j, n)) continue;
                Rational e = var_energy(bd, j, n);
                if (e > D) continue;
                if (e.is_zero() && spec_.zero_cap == 0) continue;
                vars_.push_back({b, j, n});
            }
    }
    std::sort(vars_.begin(), vars_.end());
    if (vars_.size() > 65535) throw std::length_error("too many variables below the cutoff");
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        const VarKey& v = vars_[i];
        var_energy_.push_back(var_energy(spec_.blocks[static_cast<std::size_t>(v.block)], v.j, v.n));
        var_index_.emplace(v, static_cast<int>(i));
    }

    struct Entry {
        Rational e;
        MonomialIds m;
        int z;
    };
    std::vector<Entry> all;
    MonomialIds cur;
    auto dfs = [&](auto&& self, std::size_t start, const Rational& e, int z) -> void {
        all.push_back({e, cur, z});
        for (std::size_t id = start; id < vars_.size(); ++id) {
            Rational ne = e + var_energy_[id];
            bool zero = var_energy_[id].is_zero();
            if (ne > D) continue;
            if (zero && z + 1 > spec_.zero_cap) continue;
            cur.push_back(static_cast<std::uint16_t>(id));
            self(self, id, ne, z + (zero ? 1 : 0));
            cur.pop_back();
        }
    };
    dfs(dfs, 0, Rational(0), 0);
    std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) {
        if (a.e != b.e) return a.e < b.e;
        return a.m < b.m;
    });
    for (auto& en : all) {
        index_.emplace(en.m, static_cast<int>(monos_.size()));
        monos_.push_back(std::move(en.m));
        energy_.push_back(en.e);
        zdeg_.push_back(en.z);
    }
}

int FockBasis::index_of(const MonomialIds& m) const {
    auto it = index_.find(m);
    return it == index_.end() ? -1 : it->second;
}

int FockBasis::var_id(const VarKey& v) const {
    auto it = var_index_.find(v);
    return it == var_index_.end() ? -1 : it->second;
}

std::string FockBasis::monomial_str(int i) const {
    const MonomialIds& m = monomial(i);
    if (m.empty()) return "1";
    std::string out;
    for (std::size_t k = 0; k < m.size();) {
        std::size_t e = k;
        while (e < m.size() && m[e] == m[k]) ++e;
        if (!out.empty()) out += "*";
        out += var_name(vars_[m[k]]);
        if (e - k > 1) out += "^" + std::to_string(e - k);
        k = e;
    }
    return out;
}

std::vector<Rational> FockBasis::levels() const {
    std::vector<Rational> out;
    for (const auto& e : energy_)
        if (out.empty() || !(out.back() == e)) out.push_back(e);
    return out;
}

std::shared_ptr<const FockBasis> build_basis(const ModuleSpec& spec) {
    spec.validate();
    return std::make_shared<const FockBasis>(spec, build_twist(spec.blocks));
}

}  // namespace twistlog
