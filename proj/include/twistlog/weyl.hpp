#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "twistlog/basis.hpp"
#include "twistlog/sparse.hpp"

namespace twistlog {

// Sorted (variable, power) list with positive powers.
using PowerProduct = std::vector<std::pair<VarKey, int>>;

struct WeylKey {
    PowerProduct x;  // multiplication part, written on the left
    PowerProduct d;  // derivative part, written on the right
    auto operator<=>(const WeylKey&) const = default;
};

// Element of the Weyl algebra in normal order, sum of c * x^A d^B over
// variables x_{j,n}. Variables need not lie below the cutoff.
class Weyl {
public:
    Weyl() = default;
    static Weyl constant(const Rational& c);
    static Weyl x(const VarKey& v, const Rational& c = Rational(1));
    static Weyl d(const VarKey& v, const Rational& c = Rational(1));

    const std::map<WeylKey, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const WeylKey& k, const Rational& c);

    Weyl& operator+=(const Weyl& o);
    Weyl& operator-=(const Weyl& o);
    Weyl& operator*=(const Rational& c);
    friend Weyl operator+(Weyl a, const Weyl& b) { return a += b; }
    friend Weyl operator-(Weyl a, const Weyl& b) { return a -= b; }
    friend Weyl operator*(Weyl a, const Rational& c) { return a *= c; }
    friend Weyl operator*(const Weyl& a, const Weyl& b);
    friend bool operator==(const Weyl& a, const Weyl& b) { return a.terms_ == b.terms_; }

    std::string str() const;

private:
    std::map<WeylKey, Rational> terms_;
};

Weyl weyl_commutator(const Weyl& a, const Weyl& b);

// Matrix of w on the truncated basis. Every term must shift energy by
// `shift`; a column is exact iff its image lies inside the basis.
SparseOperator<Rational> materialize(const Weyl& w, const std::shared_ptr<const FockBasis>& basis,
                                     const Rational& shift);

// Energy shift of a single term.
Rational term_shift(const WeylKey& k, const ModuleSpec& spec);

}  // namespace twistlog
