#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "qdm/double_algebra.hpp"
#include "qdm/double_reps.hpp"
#include "qdm/lattice.hpp"
#include "qdm/local_op.hpp"

namespace qdm {

/// L^h |g> = |hg>,  R^h |g> = |g h^-1>,  T^g = |g><g|  on a single edge.
LocalOperator edge_op_left(const FiniteGroup& g, int edge, int h);
LocalOperator edge_op_right(const FiniteGroup& g, int edge, int h);
LocalOperator edge_op_proj(const FiniteGroup& g, int edge, int gl);

/// Identity operator on an explicit support.
LocalOperator identity_on(const FiniteGroup& g, std::vector<int> support);

/// Sabotage hook for negative controls: swaps two cases of the dual-triangle
/// operator table when enabled (see triangle_op / ribbon kernels).
enum class TriangleSabotage { none, wrong_dual_case };

/// Case table of Appendix-style triangle operators: direct triangles give
/// T projectors (with inversion when the triangle runs against the edge);
/// dual triangles one of L^h, R^{h^-1}, L^{h^-1}, R^h.
LocalOperator triangle_op(const Patch& p, const FiniteGroup& g, const Triangle& t, int label,
                          TriangleSabotage sabotage = TriangleSabotage::none);

/// Shared walk kernel: one pass evaluates the ribbon operator family
/// {F^{h,g}}_g for a fixed flux h on a product basis state.  Direct
/// triangles accumulate the oriented edge label into the running flux m;
/// dual triangles act with the (m^-1 h m)-conjugated L operator.  The final
/// m is the charge selector: F^{h,g} maps the state to the walked state when
/// m == g and kills it otherwise.
class RibbonKernel {
  public:
    RibbonKernel(const Patch& p, const FiniteGroup& g, const Ribbon& r,
                 const SupportIndex& workspace,
                 TriangleSabotage sabotage = TriangleSabotage::none);

    /// Mutates `labels` (digit array over the workspace) in place; returns
    /// the accumulated flux m.
    int walk(int h, int* labels) const;

    int length() const { return static_cast<int>(steps_.size()); }

  private:
    struct Step {
        int pos;       // digit position in the workspace
        bool direct;
        bool co;       // direct: edge runs s0->s1; dual: e* runs f(s0)->f(s1)
        bool origin;   // dual only: v(s0) == origin of the edge
    };
    const FiniteGroup* group_;
    std::vector<Step> steps_;
};

/// F_r^{h,g} materialized on supp(r) (budget-checked).  The empty ribbon
/// gives [g == 1] * identity.
LocalOperator ribbon_op(const Patch& p, const FiniteGroup& g, const Ribbon& r, int h, int gl,
                        TriangleSabotage sabotage = TriangleSabotage::none);

/// Gauge transformation A_s^h = F^{h,1} on the closed dual ribbon at s, and
/// flux projector B_s^g = F^{1,g} on the closed direct ribbon at s.
LocalOperator gauge_op(const Patch& p, const FiniteGroup& g, const Site& s, int h);
LocalOperator flux_op(const Patch& p, const FiniteGroup& g, const Site& s, int gl);

/// A_v = |G|^-1 sum_h A_v^h (projector); B_f = B_s^1 for any site of f.
LocalOperator vertex_projector(const Patch& p, const FiniteGroup& g, int v);
LocalOperator face_projector(const Patch& p, const FiniteGroup& g, int f);

/// U_s(a, b) = B_s^a A_s^b on a basis pair, extended linearly.
LocalOperator site_rep_basis(const Patch& p, const FiniteGroup& g, const Site& s, int a, int b);
LocalOperator site_rep(const Patch& p, const Site& s, const DoubleElement& e);

/// Commuting projector terms (1 - A_v) and (1 - B_f) over all interior
/// vertices and faces.
std::vector<LocalOperator> hamiltonian_terms(const Patch& p, const FiniteGroup& g);

/// Product of all A_v and B_f (torus only; budget-checked).
LocalOperator ground_projector(const PatchPtr& p, const FiniteGroup& g);

/// All edge labelings with trivial flux through every face (cap-guarded).
std::vector<std::vector<int>> flat_configurations(const Patch& p, const FiniteGroup& g,
                                                  std::uint64_t cap = std::uint64_t(1) << 20);

struct GroundSpaceOptions {
    std::uint64_t seed = 1;
    double tol = 1e-9;
    int stable_rounds = 3;  // extra seeds without rank growth before stopping
    std::uint64_t flat_cap = std::uint64_t(1) << 20;
};

/// Orthonormal basis of the frustration-free ground space: projects the
/// all-identity configuration and randomized flat configurations with
/// prod B_f prod A_v until the span stabilizes.
std::vector<StateVector> ground_space(const PatchPtr& p, const FiniteGroup& g,
                                      GroundSpaceOptions opts = {});

Complex expectation(const StateVector& psi, const LocalOperator& op);

/// Rectangular matrix of LocalOperators (row-major entries).
struct OperatorMatrix {
    int rows = 0, cols = 0;
    std::vector<LocalOperator> entries;

    LocalOperator& at(int r, int c) { return entries[r * cols + c]; }
    const LocalOperator& at(int r, int c) const { return entries[r * cols + c]; }

    static OperatorMatrix zero_like(const FiniteGroup& g, int rows, int cols);
    /// Entries m(i,j) * identity.
    static OperatorMatrix scalar(const FiniteGroup& g, const Matrix& m);
    /// Block-diagonal lift of one operator: delta_ij * op.
    static OperatorMatrix diagonal(const LocalOperator& op, int n);

    OperatorMatrix multiply(const OperatorMatrix& other) const;
    OperatorMatrix adjoint() const;
    /// kron on the matrix slots; entry products keep this->entry on the left.
    OperatorMatrix slot_kron(const OperatorMatrix& other) const;
    static double deviation(const OperatorMatrix& a, const OperatorMatrix& b);
};

/// Ribbon multiplet F_r^D = sum_{h,g} F_r^{h,g} (x) D(h,g): an n x n matrix
/// of lattice operators (budget-checked materialization).
OperatorMatrix ribbon_multiplet(const Patch& p, const Ribbon& r, const Representation& d,
                                TriangleSabotage sabotage = TriangleSabotage::none);

/// mu_r^D(O) = F_r^D (O (x) I_n) (F_r^D)^*.
OperatorMatrix amplimorphism_apply(const Patch& p, const Ribbon& r, const Representation& d,
                                   const LocalOperator& o);

/// Sparse block vector over a lattice workspace tensored with a chain of
/// matrix slots (slot 0 major).
struct BlockState {
    SupportIndex ws;
    std::vector<int> slot_dims;
    std::unordered_map<std::uint64_t, Vector> blocks;

    int slot_total() const;
    static BlockState basis(const SupportIndex& ws, std::vector<int> slot_dims,
                            std::uint64_t key, int slot_index);
    double norm() const;
    static double deviation(const BlockState& a, const BlockState& b);
};

/// Apply F_r^D (dagger: its adjoint) acting on slot factor `slot`.
BlockState multiplet_apply(const Patch& p, const BlockState& in, const Ribbon& r,
                           const Representation& d, int slot, bool dagger,
                           TriangleSabotage sabotage = TriangleSabotage::none);

/// Apply a plain matrix across the whole slot space, reshaping the slot
/// dimensions to `new_dims` (rows of m = prod(new_dims)).
BlockState slot_matrix_apply(const BlockState& in, const Matrix& m, std::vector<int> new_dims);

/// Apply a lattice operator (supported inside the workspace).
BlockState local_apply(const BlockState& in, const LocalOperator& op);

}  // namespace qdm
