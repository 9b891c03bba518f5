#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "qdm/group.hpp"
#include "qdm/irreps.hpp"
#include "qdm/lattice.hpp"

namespace qdm {

/// Hard ceiling on |G|^|support| for materialized operators.
constexpr std::uint64_t kIndexBudget = std::uint64_t(1) << 24;
/// Dense storage below this dimension, sparse above.
constexpr std::uint64_t kDenseBudget = 4096;

/// Mixed-radix codec between edge labels on a sorted support and flat basis
/// indices (support[0] is the least significant digit, radix |G|).
class SupportIndex {
  public:
    SupportIndex() = default;
    SupportIndex(FiniteGroup group, std::vector<int> support);

    const std::vector<int>& support() const { return support_; }
    int digits() const { return static_cast<int>(support_.size()); }
    std::uint64_t dim() const { return dim_; }
    const FiniteGroup& group() const { return group_; }

    void decode(std::uint64_t index, int* labels) const;
    std::uint64_t encode(const int* labels) const;
    /// Position of an edge in the support (-1 when absent).
    int position(int edge) const;

  private:
    FiniteGroup group_;
    std::vector<int> support_;
    std::uint64_t dim_ = 1;
};

/// Complex operator on the tensor factor of a finite set of edges.
/// Matrices are dense below kDenseBudget and sparse (column-major) above.
class LocalOperator {
  public:
    LocalOperator() = default;
    /// Identity on an empty support.
    static LocalOperator identity(const FiniteGroup& g);
    static LocalOperator dense(const FiniteGroup& g, std::vector<int> support, Matrix m);
    static LocalOperator sparse(const FiniteGroup& g, std::vector<int> support,
                                Eigen::SparseMatrix<Complex> m);
    /// From triplets (row, col, value) over the given support.
    static LocalOperator from_triplets(const FiniteGroup& g, std::vector<int> support,
                                       std::uint64_t dim,
                                       const std::vector<Eigen::Triplet<Complex>>& trips);

    const FiniteGroup& group() const { return index_.group(); }
    const std::vector<int>& support() const { return index_.support(); }
    std::uint64_t dim() const { return index_.dim(); }
    bool is_dense() const { return dense_; }
    const Matrix& dense_matrix() const { return mat_; }
    const Eigen::SparseMatrix<Complex>& sparse_matrix() const { return sp_; }

    /// Column `col` (indexed over this operator's own support) as a list of
    /// (row, value) pairs.
    void column(std::uint64_t col, std::vector<std::pair<std::uint64_t, Complex>>& out) const;

    LocalOperator adjoint() const;
    LocalOperator scaled(Complex factor) const;

    friend LocalOperator operator*(const LocalOperator& a, const LocalOperator& b);
    friend LocalOperator operator+(const LocalOperator& a, const LocalOperator& b);
    friend LocalOperator operator-(const LocalOperator& a, const LocalOperator& b);

    /// Extend to a superset support by tensoring with identities.
    LocalOperator embedded(const std::vector<int>& union_support) const;

    Complex trace() const;

    /// Max entrywise deviation over the union support (the equality notion
    /// for operators with different supports).
    static double deviation(const LocalOperator& a, const LocalOperator& b);
    static bool approx_equal(const LocalOperator& a, const LocalOperator& b, double tol);

  private:
    SupportIndex index_;
    bool dense_ = true;
    Matrix mat_;  // valid when dense_
    Eigen::SparseMatrix<Complex> sp_;
};

/// Sparse state vector over all edges of a patch; keys are mixed-radix
/// indices over the full edge list (edge id = digit position, radix |G|).
class StateVector {
  public:
    StateVector() = default;
    StateVector(PatchPtr patch, FiniteGroup group);

    /// Product basis state |labels>.
    static StateVector basis_state(PatchPtr patch, const FiniteGroup& g,
                                   const std::vector<int>& labels);

    const FiniteGroup& group() const { return group_; }
    const PatchPtr& patch() const { return patch_; }
    std::unordered_map<std::uint64_t, Complex>& amps() { return amps_; }
    const std::unordered_map<std::uint64_t, Complex>& amps() const { return amps_; }

    double norm() const;
    void scale(Complex c);
    void add_scaled(const StateVector& other, Complex c);
    void prune(double cut = 1e-14);
    static Complex inner(const StateVector& a, const StateVector& b);  // <a|b>

    /// Label of one edge inside a full-patch key.
    int label_of(std::uint64_t key, int edge) const;
    std::uint64_t pow_of(int edge) const { return powers_[edge]; }

    StateVector apply(const LocalOperator& op) const;

  private:
    PatchPtr patch_;
    FiniteGroup group_;
    std::vector<std::uint64_t> powers_;  // |G|^edge
    std::unordered_map<std::uint64_t, Complex> amps_;
};

}  // namespace qdm
