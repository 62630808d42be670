#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "twistlog/basis.hpp"
#include "twistlog/sparse.hpp"
#include "twistlog/weyl.hpp"

namespace twistlog {

using Operator = SparseOperator<Rational>;
using Vector = SparseVector<Rational>;

// The truncated module M_phi(R) together with the action of the twisted
// Heisenberg modes v_j t^m.
class FockModule {
public:
    explicit FockModule(const ModuleSpec& spec);

    const std::shared_ptr<const FockBasis>& basis() const { return basis_; }
    const ModuleSpec& spec() const { return basis_->spec(); }
    const TwistPair& twist() const { return basis_->twist(); }
    int dim() const { return twist().dim(); }

    // 0-based index into h of v_j in `block` (j 1-based)
    int global_index(int block, int j) const;
    std::pair<int, int> local_index(int global) const;

    // Throws std::invalid_argument when m is not in the coset of v_j.
    Weyl mode_weyl(int global, const Rational& m) const;
    const Operator& mode(int global, const Rational& m) const;
    const Operator& mode_action(int block, int j, const Rational& m) const {
        return mode(global_index(block, j), m);
    }
    // a_{(m)} for a in h; components outside the coset of m must vanish.
    Operator mode_of(const Vec<Rational>& a, const Rational& m) const;
    bool mode_defined(int global, const Rational& m) const;

    Weyl l0_weyl(int block) const;
    Operator l0_closed_form() const;
    Operator l0_closed_form(int block) const;

    Vector vacuum() const { return Vector::unit(0); }

private:
    Weyl mode_block(int block, int j, const Rational& m) const;
    Rational param_a1(int block) const;
    Rational param_a2(int block) const;
    Rational param_a(int block) const;

    std::shared_ptr<const FockBasis> basis_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, Rational>, std::unique_ptr<Operator>> cache_;
};

}  // namespace twistlog
