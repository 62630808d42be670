#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "twistlog/log_field.hpp"

namespace twistlog {

// A field applied to one vector: coefficient of z^e zeta^k for each (e, k).
// Exponents in `inconclusive` could not be evaluated inside the window.
struct VectorSeries {
    std::map<std::pair<Rational, int>, Vector> coeffs;
    std::set<Rational> inconclusive;

    Vector coefficient(const Rational& e, int k) const {
        auto it = coeffs.find({e, k});
        return it == coeffs.end() ? Vector() : it->second;
    }
    void add(const Rational& e, int k, const Vector& v, const Rational& c = Rational(1)) {
        if (v.empty() || c.is_zero()) return;
        coeffs[{e, k}].add_scaled(v, c);
    }
    void prune();
};

// Evaluates products of two fields on a fixed basis vector, memoizing the
// compositions F_{e1}(G_{e2} v) and G_{e2}(F_{e1} v) so that all n share them.
class ProductEngine {
public:
    ProductEngine(const Field& f, const Field& g, int v, int locality_order);

    int vector() const { return v_; }

    // (f_{(n)} g)(z) v; zero for n >= N.
    VectorSeries nth(int n);

    // Coefficients of z1^{E1} z2^{E2} of z12^N f(z1) g(z2) v and of
    // z12^N g(z2) f(z1) v, both evaluated where possible.
    struct LocalityStats {
        int compared = 0;
        int mismatched = 0;
        std::optional<std::pair<Rational, Rational>> first;
    };
    LocalityStats locality();

    using ZetaTerms = std::map<std::pair<int, int>, Vector>;  // (k1, k2) -> vector

    // Coefficient of z1^{E1} z2^{E2}; ordering 1 is f(z1) g(z2), ordering 2
    // is g(z2) f(z1). nullopt when outside the window.
    std::optional<ZetaTerms> coefficient(const Rational& E1, const Rational& E2, int ordering);

private:
    using Components = std::vector<std::pair<int, const Operator*>>;
    static std::map<Rational, Components> by_exponent(const Field& f);
    const Components* comps(const std::map<Rational, Components>& idx, const Rational& e) const;

    // F_{e1}(G_{e2} v) for every (k1, k2)
    const std::optional<ZetaTerms>& fg(const Rational& e1, const Rational& e2);
    const std::optional<ZetaTerms>& gf(const Rational& e1, const Rational& e2);
    const std::optional<std::vector<std::pair<int, Vector>>>& apply_single(
        const std::map<Rational, Components>& idx, std::map<Rational, std::optional<std::vector<std::pair<int, Vector>>>>& memo,
        const Rational& e);

    void candidates(std::vector<Rational>& c1, std::vector<Rational>& c2) const;

    const Field& f_;
    const Field& g_;
    int v_;
    int N_;
    Rational Ev_;
    Rational D_;
    std::map<Rational, Components> fidx_, gidx_;
    std::map<Rational, std::optional<std::vector<std::pair<int, Vector>>>> fv_, gv_;
    std::map<std::pair<Rational, Rational>, std::optional<ZetaTerms>> fg_, gf_;
};

// Builds a field of the given weight from per-vector series (column v of
// component (m, k) is the coefficient of z^{-m-1} zeta^k). Columns whose
// output would leave the window, or whose exponent was inconclusive, are
// marked inexact. Components exist for every zeta degree up to zeta_bound.
Field assemble_field(const std::shared_ptr<const FockBasis>& basis, const Rational& weight,
                     const std::vector<VectorSeries>& per_vector, const std::vector<Rational>& exponents,
                     int zeta_bound = 0);

Field nth_product(const Field& f, const Field& g, int n, int locality_order);

// :f(z) g(z): = f(z)_+ g(z) + g(z) f(z)_-
VectorSeries normally_ordered_apply(const Field& f, const Field& g, int v);
Field normally_ordered(const Field& f, const Field& g);

struct LocalityReport {
    int vectors = 0;
    int compared = 0;
    int mismatched = 0;
    int first_vector = -1;
    std::optional<std::pair<Rational, Rational>> first;
    bool pass() const { return compared > 0 && mismatched == 0; }
};
LocalityReport check_locality(const Field& f, const Field& g, int N, const std::vector<int>& vectors);

// z-exponents e = -m-1 present in a field
std::vector<Rational> z_exponents(const Field& f);

}  // namespace twistlog
