#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdm/group.hpp"

namespace qdm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// A unitary irreducible representation of a finite group: one dim x dim
/// matrix per element.
struct GroupIrrep {
    int dim = 0;
    std::vector<Matrix> matrices;  // indexed by element

    const Matrix& at(int element) const { return matrices[element]; }
    Complex character(int element) const { return matrices[element].trace(); }
};

struct IrrepOptions {
    double tol = 1e-9;
    std::uint64_t seed = 0x51eb851f0bdf5ULL;
    int max_retries = 12;
    // Eigenvalues closer than this (relative to spectral spread) are merged
    // into one cluster; spectra with ambiguous gaps trigger a retry.
    double cluster_gap = 1e-6;
};

/// Complete list of pairwise-inequivalent unitary irreps, computed by
/// splitting the regular representation along the eigenspaces of a random
/// self-adjoint element of its commutant. Deterministic for a fixed seed;
/// retries with fresh seeds on near-degenerate spectra and throws
/// DecompositionFailed once the retry budget is exhausted.
/// Output is sorted by (dim, character table) for stable ordering.
std::vector<GroupIrrep> unitary_irreps(const FiniteGroup& g, IrrepOptions opts = {});

/// Closed-form irreps for the named built-in groups (z2..z8, s3, d4, q8),
/// used as cross-check fixtures for the numerical path.
std::vector<GroupIrrep> catalog_irreps(const std::string& name);

/// Dimension of the space {t : a(g) t = t b(g) for all g}.
int intertwiner_dimension(const FiniteGroup& g, const GroupIrrep& a, const GroupIrrep& b,
                          double tol = 1e-9);

/// Checks homomorphism, unitarity, and irreducibility (commutant dim 1).
bool is_valid_irrep(const FiniteGroup& g, const GroupIrrep& rep, double tol = 1e-9);

}  // namespace qdm
