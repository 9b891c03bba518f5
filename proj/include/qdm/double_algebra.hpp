#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdm/group.hpp"
#include "qdm/irreps.hpp"

namespace qdm {

/// Basis pair index of D(G): pairs (a, b) of group elements in row-major
/// order, a major and b minor, so index = a * |G| + b.  In the basis-pair
/// product (a1,b1)(a2,b2) = [a1 == b1 a2 b1^-1] (a1, b1 b2) the first slot
/// acts as a flux label (delta-function part) and the second as a group
/// translation.
inline int pair_index(const FiniteGroup& g, int a, int b) { return a * g.order() + b; }

/// Element of D(G): a dense complex coefficient vector over the |G|^2
/// basis pairs.
struct DoubleElement {
    FiniteGroup group;
    Vector coeffs;  // length |G|^2

    static DoubleElement zero(const FiniteGroup& g);
    static DoubleElement basis(const FiniteGroup& g, int a, int b);
};

/// Element of D(G) (x) D(G): coefficients over pairs of basis pairs,
/// index = p1 * |G|^2 + p2 (little-endian in the fixed basis order).
struct DoubleTensorElement {
    FiniteGroup group;
    Vector coeffs;  // length |G|^4

    static DoubleTensorElement zero(const FiniteGroup& g);
};

DoubleElement multiply(const DoubleElement& a, const DoubleElement& b);
DoubleElement unit(const FiniteGroup& g);                  // eta(1) = sum_k (k, 1)
Complex counit(const DoubleElement& a);                    // eps(a,b) = [a == 1]
DoubleTensorElement coproduct(const DoubleElement& a);     // sum_k (k,b) (x) (k^-1 a, b)
DoubleElement antipode(const DoubleElement& a);            // S(a,b) = (b^-1 a^-1 b, b^-1)
DoubleElement star(const DoubleElement& a);                // (a,b)^* = (b^-1 a b, b^-1)

DoubleTensorElement tensor(const DoubleElement& a, const DoubleElement& b);
DoubleTensorElement tensor_multiply(const DoubleTensorElement& a, const DoubleTensorElement& b);
DoubleTensorElement tensor_unit(const FiniteGroup& g);
DoubleTensorElement tensor_star(const DoubleTensorElement& a);
DoubleTensorElement tensor_swap(const DoubleTensorElement& a);  // flip the two legs

/// Universal R-matrix  R = sum_{g,k} (k, g) (x) (g, 1).
DoubleTensorElement r_matrix(const FiniteGroup& g);

/// R^-1 = (S (x) id)(R); verified against R by multiplication on
/// construction (throws Error if the product is not the tensor unit).
DoubleTensorElement r_matrix_inverse(const FiniteGroup& g);

/// One verified identity inside a suite run.
struct CheckRecord {
    std::string name;      // stable identifier, e.g. "hopf.antipode"
    std::string identity;  // the formula being checked, human readable
    double max_deviation = 0.0;
    bool pass = false;
};

struct HopfReport {
    std::string group;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    std::vector<CheckRecord> checks;
    bool all_pass() const;
};

/// Sabotage hooks for negative-control tests: each mode deliberately
/// corrupts one ingredient and must make the suite report a failure.
enum class HopfSabotage { none, swapped_antipode };

/// Checks associativity, coassociativity, counit and antipode axioms,
/// the *-structure, Delta being a *-homomorphism, quasi-triangularity
/// Delta^op = R Delta R^-1, and the two coproduct identities of R.
/// Basis-element checks are exhaustive for |G| <= 6 and sampled above;
/// random-element checks use the given seed.
HopfReport hopf_axiom_suite(const FiniteGroup& g, std::uint64_t seed,
                            double tol = 1e-12, HopfSabotage sabotage = HopfSabotage::none);

}  // namespace qdm
