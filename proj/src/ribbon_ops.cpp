#include "qdm/ribbon_ops.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qdm {

namespace {

LocalOperator one_edge_op(const FiniteGroup& g, int edge,
                          const std::vector<std::pair<int, int>>& mapping) {
    // mapping: list of (in label, out label) with unit amplitude.
    const int n = g.order();
    Matrix m = Matrix::Zero(n, n);
    for (auto [in, out] : mapping) m(out, in) += 1.0;
    return LocalOperator::dense(g, {edge}, std::move(m));
}

}  // namespace

LocalOperator edge_op_left(const FiniteGroup& g, int edge, int h) {
    std::vector<std::pair<int, int>> map;
    for (int x = 0; x < g.order(); ++x) map.emplace_back(x, g.mul(h, x));
    return one_edge_op(g, edge, map);
}

LocalOperator edge_op_right(const FiniteGroup& g, int edge, int h) {
    std::vector<std::pair<int, int>> map;
    for (int x = 0; x < g.order(); ++x) map.emplace_back(x, g.mul(x, g.inv(h)));
    return one_edge_op(g, edge, map);
}

LocalOperator edge_op_proj(const FiniteGroup& g, int edge, int gl) {
    return one_edge_op(g, edge, {{gl, gl}});
}

LocalOperator identity_on(const FiniteGroup& g, std::vector<int> support) {
    SupportIndex idx(g, support);
    if (idx.dim() <= kDenseBudget)
        return LocalOperator::dense(g, std::move(support),
                                    Matrix::Identity(idx.dim(), idx.dim()));
    Eigen::SparseMatrix<Complex> m(idx.dim(), idx.dim());
    m.setIdentity();
    return LocalOperator::sparse(g, std::move(support), std::move(m));
}

LocalOperator triangle_op(const Patch& p, const FiniteGroup& g, const Triangle& t, int label,
                          TriangleSabotage sabotage) {
    validate_triangle(p, t);
    const Patch::EdgeRec& e = p.edge(t.edge);
    if (t.kind == TriangleKind::direct) {
        const bool co = e.v0 == t.s0.vertex;
        return edge_op_proj(g, t.edge, co ? label : g.inv(label));
    }
    const bool co = t.s0.face == e.right_face;  // e* = (f(s0), f(s1))
    const bool origin = t.s0.vertex == e.v0;
    bool use_left = origin;
    if (sabotage == TriangleSabotage::wrong_dual_case) use_left = !use_left;
    if (co && use_left) return edge_op_left(g, t.edge, label);
    if (co && !use_left) return edge_op_right(g, t.edge, g.inv(label));
    if (!co && use_left) return edge_op_left(g, t.edge, g.inv(label));
    return edge_op_right(g, t.edge, label);
}

RibbonKernel::RibbonKernel(const Patch& p, const FiniteGroup& g, const Ribbon& r,
                           const SupportIndex& workspace, TriangleSabotage sabotage)
    : group_(&g) {
    steps_.reserve(r.length());
    for (const Triangle& t : r.triangles()) {
        const Patch::EdgeRec& e = p.edge(t.edge);
        Step s;
        s.pos = workspace.position(t.edge);
        if (s.pos < 0) throw Error("ribbon edge missing from workspace support");
        s.direct = t.kind == TriangleKind::direct;
        if (s.direct) {
            s.co = e.v0 == t.s0.vertex;
            s.origin = true;
        } else {
            s.co = t.s0.face == e.right_face;
            s.origin = t.s0.vertex == e.v0;
            if (sabotage == TriangleSabotage::wrong_dual_case) s.origin = !s.origin;
        }
        steps_.push_back(s);
    }
}

int RibbonKernel::walk(int h, int* labels) const {
    const FiniteGroup& g = *group_;
    int m = FiniteGroup::identity();
    for (const Step& s : steps_) {
        if (s.direct) {
            const int lab = labels[s.pos];
            m = g.mul(m, s.co ? lab : g.inv(lab));
        } else {
            const int x = g.mul(g.inv(m), g.mul(h, m));  // m^-1 h m
            int& lab = labels[s.pos];
            if (s.co && s.origin)
                lab = g.mul(x, lab);             // L^x
            else if (s.co && !s.origin)
                lab = g.mul(lab, x);             // R^{x^-1}
            else if (!s.co && s.origin)
                lab = g.mul(g.inv(x), lab);      // L^{x^-1}
            else
                lab = g.mul(lab, g.inv(x));      // R^x
        }
    }
    return m;
}

LocalOperator ribbon_op(const Patch& p, const FiniteGroup& g, const Ribbon& r, int h, int gl,
                        TriangleSabotage sabotage) {
    if (r.empty()) {
        LocalOperator id = LocalOperator::identity(g);
        return gl == FiniteGroup::identity() ? id : id.scaled(0.0);
    }
    SupportIndex idx(g, r.support());
    RibbonKernel kernel(p, g, r, idx, sabotage);
    std::vector<int> labels(idx.digits());
    std::vector<Eigen::Triplet<Complex>> trips;
    for (std::uint64_t col = 0; col < idx.dim(); ++col) {
        idx.decode(col, labels.data());
        const int m = kernel.walk(h, labels.data());
        if (m != gl) continue;
        trips.emplace_back(static_cast<std::int64_t>(idx.encode(labels.data())),
                           static_cast<std::int64_t>(col), 1.0);
    }
    return LocalOperator::from_triplets(g, r.support(), idx.dim(), trips);
}

LocalOperator gauge_op(const Patch& p, const FiniteGroup& g, const Site& s, int h) {
    return ribbon_op(p, g, closed_dual_ribbon(p, s), h, FiniteGroup::identity());
}

LocalOperator flux_op(const Patch& p, const FiniteGroup& g, const Site& s, int gl) {
    return ribbon_op(p, g, closed_direct_ribbon(p, s), FiniteGroup::identity(), gl);
}

LocalOperator vertex_projector(const Patch& p, const FiniteGroup& g, int v) {
    if (!p.vertex_interior(v)) throw BoundaryTouched("vertex projector needs interior vertex");
    const Site s{v, p.faces_around(v)[0]};
    LocalOperator sum = gauge_op(p, g, s, 0);
    for (int h = 1; h < g.order(); ++h) sum = sum + gauge_op(p, g, s, h);
    return sum.scaled(1.0 / g.order());
}

LocalOperator face_projector(const Patch& p, const FiniteGroup& g, int f) {
    const Site s{p.face(f).verts[0], f};
    return flux_op(p, g, s, FiniteGroup::identity());
}

LocalOperator site_rep_basis(const Patch& p, const FiniteGroup& g, const Site& s, int a, int b) {
    return flux_op(p, g, s, a) * gauge_op(p, g, s, b);
}

LocalOperator site_rep(const Patch& p, const Site& s, const DoubleElement& e) {
    const FiniteGroup& g = e.group;
    const int n = g.order();
    bool first = true;
    LocalOperator acc;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const Complex c = e.coeffs(pair_index(g, a, b));
            if (c == Complex(0, 0)) continue;
            LocalOperator term = site_rep_basis(p, g, s, a, b).scaled(c);
            acc = first ? term : acc + term;
            first = false;
        }
    if (first) throw Error("site_rep of the zero element");
    return acc;
}

std::vector<LocalOperator> hamiltonian_terms(const Patch& p, const FiniteGroup& g) {
    std::vector<LocalOperator> terms;
    for (int v = 0; v < p.vertex_count(); ++v) {
        if (!p.vertex_interior(v)) continue;
        LocalOperator av = vertex_projector(p, g, v);
        terms.push_back(identity_on(g, av.support()) - av);
    }
    for (int f = 0; f < p.face_count(); ++f) {
        bool interior = true;
        for (int e : p.face(f).edges)
            if (p.edge(e).left_face < 0 || p.edge(e).right_face < 0) interior = false;
        if (!interior) continue;
        LocalOperator bf = face_projector(p, g, f);
        terms.push_back(identity_on(g, bf.support()) - bf);
    }
    return terms;
}

LocalOperator ground_projector(const PatchPtr& p, const FiniteGroup& g) {
    if (p->boundary() != Boundary::torus)
        throw Error("ground projector is defined on torus patches only");
    // Right-to-left composition keeps intermediate products column-sparse:
    // the diagonal B_f product first restricts to flat configurations.
    LocalOperator acc = face_projector(*p, g, 0);
    for (int f = 1; f < p->face_count(); ++f) acc = face_projector(*p, g, f) * acc;
    for (int v = 0; v < p->vertex_count(); ++v) acc = vertex_projector(*p, g, v) * acc;
    return acc;
}

std::vector<std::vector<int>> flat_configurations(const Patch& p, const FiniteGroup& g,
                                                  std::uint64_t cap) {
    // Face constraint: the counterclockwise oriented product of edge labels
    // around each face is the identity. Propagate single-unknown faces and
    // branch on free edges depth-first.
    struct FaceInfo {
        std::array<int, 3> edges;
        std::array<bool, 3> co;  // edge k runs verts[k] -> verts[k+1]
    };
    std::vector<FaceInfo> faces;
    for (int f = 0; f < p.face_count(); ++f) {
        const auto& fr = p.face(f);
        FaceInfo info;
        info.edges = fr.edges;
        for (int k = 0; k < 3; ++k) info.co[k] = p.edge(fr.edges[k]).v0 == fr.verts[k];
        faces.push_back(info);
    }
    std::vector<std::vector<int>> out;
    std::vector<int> labels(p.edge_count(), -1);

    auto face_status = [&](const FaceInfo& f, int& unknown_slot) {
        unknown_slot = -1;
        int unknowns = 0;
        for (int k = 0; k < 3; ++k)
            if (labels[f.edges[k]] < 0) {
                ++unknowns;
                unknown_slot = k;
            }
        return unknowns;
    };
    auto face_ok = [&](const FaceInfo& f) {
        int m = 0;
        for (int k = 0; k < 3; ++k) {
            const int lab = labels[f.edges[k]];
            m = g.mul(m, f.co[k] ? lab : g.inv(lab));
        }
        return m == 0;
    };
    auto solve_unknown = [&](const FaceInfo& f, int slot) {
        // pre * x^sigma * post = 1
        int pre = 0, post = 0;
        for (int k = 0; k < slot; ++k)
            pre = g.mul(pre, f.co[k] ? labels[f.edges[k]] : g.inv(labels[f.edges[k]]));
        for (int k = slot + 1; k < 3; ++k)
            post = g.mul(post, f.co[k] ? labels[f.edges[k]] : g.inv(labels[f.edges[k]]));
        const int target = g.mul(g.inv(pre), g.inv(post));  // x^sigma
        return f.co[slot] ? target : g.inv(target);
    };

    std::vector<int> trail;
    auto undo_to = [&](size_t mark) {
        while (trail.size() > mark) {
            labels[trail.back()] = -1;
            trail.pop_back();
        }
    };
    auto propagate = [&]() -> bool {
        bool progress = true;
        while (progress) {
            progress = false;
            for (const auto& f : faces) {
                int slot;
                const int unknowns = face_status(f, slot);
                if (unknowns == 1) {
                    labels[f.edges[slot]] = solve_unknown(f, slot);
                    trail.push_back(f.edges[slot]);
                    progress = true;
                } else if (unknowns == 0 && !face_ok(f)) {
                    return false;
                }
            }
        }
        return true;
    };
    auto first_unassigned = [&]() {
        for (int e = 0; e < p.edge_count(); ++e)
            if (labels[e] < 0) return e;
        return -1;
    };

    auto dfs = [&](auto&& self) -> void {
        const size_t mark = trail.size();
        if (!propagate()) {
            undo_to(mark);
            return;
        }
        const int e = first_unassigned();
        if (e < 0) {
            if (out.size() >= cap)
                throw DimensionBudgetExceeded("flat configuration count exceeds the cap");
            out.push_back(labels);
            undo_to(mark);
            return;
        }
        for (int val = 0; val < g.order(); ++val) {
            const size_t before = trail.size();
            labels[e] = val;
            trail.push_back(e);
            self(self);
            undo_to(before);
        }
        undo_to(mark);
    };
    dfs(dfs);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<StateVector> ground_space(const PatchPtr& p, const FiniteGroup& g,
                                      GroundSpaceOptions opts) {
    if (p->boundary() != Boundary::torus)
        throw Error("state-level ground space runs on torus patches only");
    auto flats = flat_configurations(*p, g, opts.flat_cap);
    if (flats.empty()) throw Error("no flat configurations found");

    std::vector<LocalOperator> a_projs, b_projs;
    for (int v = 0; v < p->vertex_count(); ++v) a_projs.push_back(vertex_projector(*p, g, v));
    for (int f = 0; f < p->face_count(); ++f) b_projs.push_back(face_projector(*p, g, f));

    auto project = [&](StateVector psi) {
        for (const auto& bp : b_projs) psi = psi.apply(bp);
        for (const auto& ap : a_projs) psi = psi.apply(ap);
        return psi;
    };

    std::vector<StateVector> basis;
    auto try_add = [&](const StateVector& candidate) {
        StateVector residual = candidate;
        for (const auto& b : basis) residual.add_scaled(b, -StateVector::inner(b, residual));
        residual.prune();
        const double norm = residual.norm();
        if (norm <= opts.tol) return false;
        residual.scale(1.0 / norm);
        basis.push_back(std::move(residual));
        return true;
    };

    std::mt19937_64 rng(opts.seed);
    // The all-identity configuration first, then randomized flat seeds.
    try_add(project(StateVector::basis_state(p, g, flats.front())));
    int stagnant = 0;
    std::uniform_int_distribution<size_t> pick(0, flats.size() - 1);
    const int max_rounds = static_cast<int>(flats.size()) * 4 + 16;
    for (int round = 0; round < max_rounds && stagnant < opts.stable_rounds; ++round) {
        const auto& labels = flats[pick(rng)];
        if (try_add(project(StateVector::basis_state(p, g, labels))))
            stagnant = 0;
        else
            ++stagnant;
    }
    return basis;
}

Complex expectation(const StateVector& psi, const LocalOperator& op) {
    return StateVector::inner(psi, psi.apply(op));
}

OperatorMatrix OperatorMatrix::zero_like(const FiniteGroup& g, int rows, int cols) {
    OperatorMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.entries.assign(static_cast<size_t>(rows) * cols, LocalOperator::identity(g).scaled(0.0));
    return m;
}

OperatorMatrix OperatorMatrix::scalar(const FiniteGroup& g, const Matrix& m) {
    OperatorMatrix out = zero_like(g, static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    for (int r = 0; r < out.rows; ++r)
        for (int c = 0; c < out.cols; ++c)
            out.at(r, c) = LocalOperator::identity(g).scaled(m(r, c));
    return out;
}

OperatorMatrix OperatorMatrix::diagonal(const LocalOperator& op, int n) {
    OperatorMatrix out = zero_like(op.group(), n, n);
    for (int k = 0; k < n; ++k) out.at(k, k) = op;
    return out;
}

OperatorMatrix OperatorMatrix::multiply(const OperatorMatrix& other) const {
    if (cols != other.rows) throw Error("operator matrix shape mismatch");
    const FiniteGroup& g = entries.front().group();
    OperatorMatrix out = zero_like(g, rows, other.cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < other.cols; ++c) {
            LocalOperator acc = at(r, 0) * other.at(0, c);
            for (int k = 1; k < cols; ++k) acc = acc + at(r, k) * other.at(k, c);
            out.at(r, c) = std::move(acc);
        }
    return out;
}

OperatorMatrix OperatorMatrix::adjoint() const {
    OperatorMatrix out = *this;
    out.rows = cols;
    out.cols = rows;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) out.entries[c * rows + r] = at(r, c).adjoint();
    return out;
}

OperatorMatrix OperatorMatrix::slot_kron(const OperatorMatrix& other) const {
    const FiniteGroup& g = entries.front().group();
    OperatorMatrix out = zero_like(g, rows * other.rows, cols * other.cols);
    for (int r1 = 0; r1 < rows; ++r1)
        for (int c1 = 0; c1 < cols; ++c1)
            for (int r2 = 0; r2 < other.rows; ++r2)
                for (int c2 = 0; c2 < other.cols; ++c2)
                    out.at(r1 * other.rows + r2, c1 * other.cols + c2) =
                        at(r1, c1) * other.at(r2, c2);
    return out;
}

double OperatorMatrix::deviation(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw Error("operator matrix shape mismatch");
    double dev = 0.0;
    for (size_t k = 0; k < a.entries.size(); ++k)
        dev = std::max(dev, LocalOperator::deviation(a.entries[k], b.entries[k]));
    return dev;
}

OperatorMatrix ribbon_multiplet(const Patch& p, const Ribbon& r, const Representation& d,
                                TriangleSabotage sabotage) {
    const FiniteGroup& g = d.group;
    const int n = d.dim;
    if (r.empty()) return OperatorMatrix::scalar(g, Matrix::Identity(n, n));

    SupportIndex idx(g, r.support());
    RibbonKernel kernel(p, g, r, idx, sabotage);
    std::vector<int> labels(idx.digits());
    std::vector<std::vector<Eigen::Triplet<Complex>>> trips(static_cast<size_t>(n) * n);
    for (int h = 0; h < g.order(); ++h) {
        for (std::uint64_t col = 0; col < idx.dim(); ++col) {
            idx.decode(col, labels.data());
            const int m = kernel.walk(h, labels.data());
            const std::uint64_t row = idx.encode(labels.data());
            const Matrix& block = d.at(h, m);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const Complex v = block(i, j);
                    if (v != Complex(0, 0))
                        trips[i * n + j].emplace_back(static_cast<std::int64_t>(row),
                                                      static_cast<std::int64_t>(col), v);
                }
        }
    }
    OperatorMatrix out = OperatorMatrix::zero_like(g, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.at(i, j) =
                LocalOperator::from_triplets(g, r.support(), idx.dim(), trips[i * n + j]);
    return out;
}

OperatorMatrix amplimorphism_apply(const Patch& p, const Ribbon& r, const Representation& d,
                                   const LocalOperator& o) {
    if (!d.group.same_as(o.group())) throw GroupMismatch("amplimorphism_apply");
    OperatorMatrix fd = ribbon_multiplet(p, r, d);
    return fd.multiply(OperatorMatrix::diagonal(o, d.dim)).multiply(fd.adjoint());
}

int BlockState::slot_total() const {
    int t = 1;
    for (int d : slot_dims) t *= d;
    return t;
}

BlockState BlockState::basis(const SupportIndex& ws, std::vector<int> slot_dims,
                             std::uint64_t key, int slot_index) {
    BlockState s{ws, std::move(slot_dims), {}};
    Vector v = Vector::Zero(s.slot_total());
    v(slot_index) = 1.0;
    s.blocks[key] = std::move(v);
    return s;
}

double BlockState::norm() const {
    double n2 = 0;
    for (const auto& [k, v] : blocks) n2 += v.squaredNorm();
    return std::sqrt(n2);
}

double BlockState::deviation(const BlockState& a, const BlockState& b) {
    double dev = 0;
    for (const auto& [k, v] : a.blocks) {
        auto it = b.blocks.find(k);
        if (it == b.blocks.end())
            dev = std::max(dev, v.cwiseAbs().maxCoeff());
        else
            dev = std::max(dev, (v - it->second).cwiseAbs().maxCoeff());
    }
    for (const auto& [k, v] : b.blocks)
        if (!a.blocks.count(k)) dev = std::max(dev, v.cwiseAbs().maxCoeff());
    return dev;
}

namespace {

// Strides for acting on one slot factor: index = (pre * dim + s) * post + suf.
struct SlotShape {
    int pre = 1, dim = 1, post = 1;
};

SlotShape slot_shape(const std::vector<int>& dims, int slot) {
    SlotShape s;
    for (int k = 0; k < slot; ++k) s.pre *= dims[k];
    s.dim = dims[slot];
    for (size_t k = slot + 1; k < dims.size(); ++k) s.post *= dims[k];
    return s;
}

}  // namespace

BlockState multiplet_apply(const Patch& p, const BlockState& in, const Ribbon& r,
                           const Representation& d, int slot, bool dagger,
                           TriangleSabotage sabotage) {
    const FiniteGroup& g = d.group;
    BlockState out{in.ws, in.slot_dims, {}};
    if (in.slot_dims[slot] != d.dim) throw Error("slot dimension does not match representation");
    const SlotShape sh = slot_shape(in.slot_dims, slot);

    if (r.empty()) {
        out.blocks = in.blocks;  // F_empty^D = identity
        return out;
    }
    RibbonKernel kernel(p, g, r, in.ws, sabotage);
    std::vector<int> labels(in.ws.digits());
    std::vector<int> walked(in.ws.digits());
    for (const auto& [key, vec] : in.blocks) {
        in.ws.decode(key, labels.data());
        for (int h = 0; h < g.order(); ++h) {
            std::copy(labels.begin(), labels.end(), walked.begin());
            const int hw = dagger ? g.inv(h) : h;
            const int m = kernel.walk(hw, walked.data());
            // F^D = sum_{h,m} F^{h,m} (x) D(h,m); the adjoint multiplet walks
            // with h^-1 and uses D(h, m)^*.
            Matrix block = dagger ? Matrix(d.at(h, m).adjoint()) : d.at(h, m);
            const std::uint64_t nk = in.ws.encode(walked.data());
            Vector& target = out.blocks.try_emplace(nk, Vector::Zero(in.slot_total())).first->second;
            for (int pre = 0; pre < sh.pre; ++pre)
                for (int i = 0; i < sh.dim; ++i)
                    for (int j = 0; j < sh.dim; ++j) {
                        const Complex c = block(i, j);
                        if (c == Complex(0, 0)) continue;
                        for (int post = 0; post < sh.post; ++post)
                            target((pre * sh.dim + i) * sh.post + post) +=
                                c * vec((pre * sh.dim + j) * sh.post + post);
                    }
        }
    }
    // Drop negligible blocks.
    for (auto it = out.blocks.begin(); it != out.blocks.end();) {
        if (it->second.cwiseAbs().maxCoeff() <= 1e-14)
            it = out.blocks.erase(it);
        else
            ++it;
    }
    return out;
}

BlockState slot_matrix_apply(const BlockState& in, const Matrix& m, std::vector<int> new_dims) {
    if (m.cols() != in.slot_total()) throw Error("slot matrix does not match slot space");
    int nt = 1;
    for (int d : new_dims) nt *= d;
    if (m.rows() != nt) throw Error("slot matrix rows do not match new slot dims");
    BlockState out{in.ws, std::move(new_dims), {}};
    for (const auto& [key, vec] : in.blocks) {
        Vector nv = m * vec;
        if (nv.cwiseAbs().maxCoeff() > 1e-14) out.blocks[key] = std::move(nv);
    }
    return out;
}

BlockState local_apply(const BlockState& in, const LocalOperator& op) {
    BlockState out{in.ws, in.slot_dims, {}};
    const auto& sup = op.support();
    SupportIndex sub(in.ws.group(), sup);
    std::vector<int> pos(sup.size());
    for (size_t k = 0; k < sup.size(); ++k) {
        pos[k] = in.ws.position(sup[k]);
        if (pos[k] < 0) throw Error("operator support missing from workspace");
    }
    std::vector<int> labels(in.ws.digits());
    std::vector<int> sublab(std::max<size_t>(sup.size(), 1));
    std::vector<std::pair<std::uint64_t, Complex>> col;
    for (const auto& [key, vec] : in.blocks) {
        in.ws.decode(key, labels.data());
        for (size_t k = 0; k < sup.size(); ++k) sublab[k] = labels[pos[k]];
        op.column(sub.encode(sublab.data()), col);
        for (const auto& [subrow, v] : col) {
            sub.decode(subrow, sublab.data());
            for (size_t k = 0; k < sup.size(); ++k) labels[pos[k]] = sublab[k];
            const std::uint64_t nk = in.ws.encode(labels.data());
            Vector& target =
                out.blocks.try_emplace(nk, Vector::Zero(in.slot_total())).first->second;
            target += v * vec;
        }
    }
    return out;
}

}  // namespace qdm
