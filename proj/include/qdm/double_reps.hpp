#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdm/double_algebra.hpp"
#include "qdm/group.hpp"
#include "qdm/irreps.hpp"

namespace qdm {

/// Unital unitary *-representation of D(G): one dim x dim matrix per basis
/// pair, indexed like DoubleElement coefficients.
struct Representation {
    FiniteGroup group;
    int dim = 0;
    std::vector<Matrix> mats;  // |G|^2 matrices, index = a * |G| + b
    /// (conjugacy class index, centralizer irrep index) for irreps produced
    /// by irreps_of_double; unset for derived representations.
    std::optional<std::pair<int, int>> label;

    const Matrix& at(int a, int b) const { return mats[a * group.order() + b]; }
    Matrix evaluate(const DoubleElement& e) const;

    /// Conventional text label: "(c0,p1)" style from the label pair, or "dim<N>".
    std::string label_text() const;
};

/// Orthonormal basis (Frobenius inner product) of
/// {t : target(a) t = t source(a) for all basis a}; t is n_target x n_source.
struct IntertwinerBasis {
    int target_dim = 0;
    int source_dim = 0;
    std::vector<Matrix> basis;

    int dimension() const { return static_cast<int>(basis.size()); }
};

/// B(D1, D2) = P12 . (D1 (x) D2)(R): a unitary (n1 n2) x (n1 n2) matrix
/// mapping V1 (x) V2 -> V2 (x) V1.
struct BraidingMatrix {
    int dim1 = 0;
    int dim2 = 0;
    Matrix matrix;
};

/// Complete list of pairwise-inequivalent irreps of D(G), one per pair
/// (conjugacy class C, irrep of the centralizer of the class representative),
/// ordered lexicographically by (class index, centralizer irrep index).
/// Dimension of entry (C, pi) is |C| * dim(pi).
std::vector<Representation> irreps_of_double(const FiniteGroup& g, IrrepOptions opts = {});

/// Monoidal product via the coproduct: (D1 x D2)(a) = (D1 (x) D2)(Delta(a)).
Representation tensor_rep(const Representation& d1, const Representation& d2);

/// Block-diagonal direct sum.
Representation direct_sum_rep(const Representation& d1, const Representation& d2);

/// Trivial representation D = eps (dimension 1).
Representation trivial_rep(const FiniteGroup& g);

IntertwinerBasis intertwiner_space(const Representation& target, const Representation& source,
                                   double tol = 1e-9);

/// N[i][j][k] = multiplicity of irrep k inside irrep_i x irrep_j.
std::vector<std::vector<std::vector<int>>> fusion_multiplicities(
    const std::vector<Representation>& irreps, double tol = 1e-9);

BraidingMatrix braiding(const Representation& d1, const Representation& d2);

struct RepReport {
    std::vector<CheckRecord> checks;
    bool all_pass() const;
};

/// Pass/fail for homomorphism on all basis pairs, unitality D(eta(1)) = I,
/// and star-compatibility D(a^*) = D(a)^*.
RepReport verify_rep(const Representation& d, double tol = 1e-9);

/// Minimal central idempotents of D(G), one per irrep, in irrep order:
/// z_i = (dim pi / |Z(r)|) sum_{c in C} sum_{m in Z(c)} conj(chi_i(c, m)) (c, m).
/// Verified central, idempotent, and D_j(z_i) = delta_ij I before returning.
std::vector<DoubleElement> central_idempotents(const FiniteGroup& g,
                                               const std::vector<Representation>& irreps,
                                               double tol = 1e-9);

}  // namespace qdm
