#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "twistlog/rational.hpp"
#include "twistlog/twist.hpp"

namespace twistlog {

// Highest-weight data for the blocks that admit it.
struct BlockParams {
    std::optional<Rational> a1, a2;  // even, alpha0 = 0
    std::optional<Rational> a;       // odd, alpha0 = 0
};

struct ModuleSpec {
    std::vector<BlockDecl> blocks;
    std::vector<BlockParams> params;  // one per block
    Rational cutoff;                  // D
    int zero_cap = 0;                 // Z
    int conductor = 0;                // 0: derive from the blocks

    Rational level() const { return Rational(1); }
    // Throws std::invalid_argument on inconsistent data.
    void validate() const;
    int effective_conductor() const;
};

// x_{j,n} of block `block` (j is 1-based inside the block).
struct VarKey {
    int block = 0;
    int j = 1;
    int n = 0;
    auto operator<=>(const VarKey&) const = default;
};

enum class BlockCase { EvenNegative, EvenZero, OddNegative, OddZero };
BlockCase block_case(const BlockDecl& b);

// Whether the case tables declare x_{j,n}.
bool var_declared(const BlockDecl& b, int j, int n);
Rational var_energy(const BlockDecl& b, int j, int n);

std::string var_name(const VarKey& v);

// Variables are numbered in (block, j, n) order; a monomial is the sorted
// multiset of variable ids.
using MonomialIds = std::vector<std::uint16_t>;

struct MonomialIdsHash {
    std::size_t operator()(const MonomialIds& m) const {
        std::size_t h = 1469598103934665603ULL;
        for (auto x : m) h = (h ^ x) * 1099511628211ULL;
        return h;
    }
};

class FockBasis {
public:
    FockBasis(ModuleSpec spec, TwistPair twist);

    const ModuleSpec& spec() const { return spec_; }
    const TwistPair& twist() const { return twist_; }
    int size() const { return static_cast<int>(monos_.size()); }
    const Rational& cutoff() const { return spec_.cutoff; }

    const MonomialIds& monomial(int i) const { return monos_[static_cast<std::size_t>(i)]; }
    const Rational& energy(int i) const { return energy_[static_cast<std::size_t>(i)]; }
    int zero_degree(int i) const { return zdeg_[static_cast<std::size_t>(i)]; }
    int index_of(const MonomialIds& m) const;

    int var_count() const { return static_cast<int>(vars_.size()); }
    const VarKey& var(int id) const { return vars_[static_cast<std::size_t>(id)]; }
    const Rational& var_energy_of(int id) const { return var_energy_[static_cast<std::size_t>(id)]; }
    // -1 when the variable is undeclared or above the cutoff
    int var_id(const VarKey& v) const;

    std::string monomial_str(int i) const;
    // distinct energies present, ascending
    std::vector<Rational> levels() const;

private:
    ModuleSpec spec_;
    TwistPair twist_;
    std::vector<VarKey> vars_;
    std::vector<Rational> var_energy_;
    std::map<VarKey, int> var_index_;
    std::vector<MonomialIds> monos_;
    std::vector<Rational> energy_;
    std::vector<int> zdeg_;
    std::unordered_map<MonomialIds, int, MonomialIdsHash> index_;
};

std::shared_ptr<const FockBasis> build_basis(const ModuleSpec& spec);

}  // namespace twistlog
