#include "qdm/double_reps.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "qdm/linalg.hpp"

namespace qdm {

namespace {

void require_same_group(const FiniteGroup& a, const FiniteGroup& b, const char* what) {
    if (!a.same_as(b)) throw GroupMismatch(std::string(what) + " over different groups");
}

}  // namespace

Matrix Representation::evaluate(const DoubleElement& e) const {
    if (!group.same_as(e.group)) throw GroupMismatch("evaluate over different groups");
    Matrix out = Matrix::Zero(dim, dim);
    for (Eigen::Index p = 0; p < e.coeffs.size(); ++p) {
        const Complex c = e.coeffs(p);
        if (c != Complex(0, 0)) out += c * mats[p];
    }
    return out;
}

std::string Representation::label_text() const {
    if (label)
        return "(c" + std::to_string(label->first) + ",p" + std::to_string(label->second) + ")";
    return "dim" + std::to_string(dim);
}

std::vector<Representation> irreps_of_double(const FiniteGroup& g, IrrepOptions opts) {
    const int n = g.order();
    const ConjugacyData conj = conjugacy_classes(g);
    std::vector<Representation> out;

    for (int ci = 0; ci < static_cast<int>(conj.classes.size()); ++ci) {
        const std::vector<int>& cls = conj.classes[ci];
        const int rep_elem = conj.representative[ci];
        Subgroup cent = subgroup_as_group(g, centralizer(g, rep_elem));

        // Coset representative q_c: minimal element with q_c r q_c^-1 = c.
        std::vector<int> coset_rep(cls.size(), -1);
        for (size_t idx = 0; idx < cls.size(); ++idx) {
            for (int q = 0; q < n; ++q)
                if (g.conj(q, rep_elem) == cls[idx]) {
                    coset_rep[idx] = q;
                    break;
                }
        }
        std::vector<int> class_pos(n, -1);
        for (size_t idx = 0; idx < cls.size(); ++idx) class_pos[cls[idx]] = static_cast<int>(idx);

        std::vector<GroupIrrep> cent_irreps = unitary_irreps(cent.group, opts);
        for (int pi = 0; pi < static_cast<int>(cent_irreps.size()); ++pi) {
            const GroupIrrep& chi = cent_irreps[pi];
            const int csz = static_cast<int>(cls.size());
            const int dim = csz * chi.dim;
            Representation rep;
            rep.group = g;
            rep.dim = dim;
            rep.label = std::make_pair(ci, pi);
            rep.mats.assign(static_cast<size_t>(n) * n, Matrix::Zero(dim, dim));

            // Basis |c, w>: flux label c in the class, charge vector w in the
            // centralizer irrep. D(a,b)|c,w> = [a == b c b^-1]
            // |b c b^-1> (x) chi(q_{bcb^-1}^-1 b q_c) w.
            for (int b = 0; b < n; ++b) {
                for (int cpos = 0; cpos < csz; ++cpos) {
                    const int c = cls[cpos];
                    const int c2 = g.conj(b, c);
                    const int c2pos = class_pos[c2];
                    const int zelem = g.mul(g.inv(coset_rep[c2pos]), g.mul(b, coset_rep[cpos]));
                    const Matrix& block = chi.at(cent.from_parent(zelem));
                    const int a = c2;  // only a = b c b^-1 survives the delta
                    Matrix& m = rep.mats[pair_index(g, a, b)];
                    m.block(c2pos * chi.dim, cpos * chi.dim, chi.dim, chi.dim) = block;
                }
            }
            out.push_back(std::move(rep));
        }
    }
    return out;
}

Representation trivial_rep(const FiniteGroup& g) {
    Representation rep;
    rep.group = g;
    rep.dim = 1;
    rep.mats.assign(static_cast<size_t>(g.order()) * g.order(), Matrix::Zero(1, 1));
    for (int b = 0; b < g.order(); ++b) rep.mats[pair_index(g, 0, b)](0, 0) = 1.0;
    return rep;
}

Representation tensor_rep(const Representation& d1, const Representation& d2) {
    require_same_group(d1.group, d2.group, "tensor_rep");
    const FiniteGroup& g = d1.group;
    const int n = g.order();
    Representation rep;
    rep.group = g;
    rep.dim = d1.dim * d2.dim;
    rep.mats.assign(static_cast<size_t>(n) * n, Matrix());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Matrix m = Matrix::Zero(rep.dim, rep.dim);
            // Delta(a,b) = sum_k (k,b) (x) (k^-1 a, b)
            for (int k = 0; k < n; ++k)
                m += kron(d1.at(k, b), d2.at(g.mul(g.inv(k), a), b));
            rep.mats[pair_index(g, a, b)] = std::move(m);
        }
    return rep;
}

Representation direct_sum_rep(const Representation& d1, const Representation& d2) {
    require_same_group(d1.group, d2.group, "direct_sum_rep");
    const FiniteGroup& g = d1.group;
    Representation rep;
    rep.group = g;
    rep.dim = d1.dim + d2.dim;
    rep.mats.reserve(d1.mats.size());
    for (size_t p = 0; p < d1.mats.size(); ++p)
        rep.mats.push_back(direct_sum(d1.mats[p], d2.mats[p]));
    return rep;
}

IntertwinerBasis intertwiner_space(const Representation& target, const Representation& source,
                                   double tol) {
    require_same_group(target.group, source.group, "intertwiner_space");
    const int nt = target.dim, ns = source.dim;
    const Eigen::Index pairs = static_cast<Eigen::Index>(target.mats.size());
    // vec(target(a) t - t source(a)) = (I (x) target(a) - source(a)^T (x) I) vec(t)
    Matrix sys(pairs * nt * ns, static_cast<Eigen::Index>(nt) * ns);
    const Matrix it = Matrix::Identity(nt, nt), is = Matrix::Identity(ns, ns);
    for (Eigen::Index p = 0; p < pairs; ++p) {
        sys.middleRows(p * nt * ns, static_cast<Eigen::Index>(nt) * ns) =
            kron(is, target.mats[p]) - kron(source.mats[p].transpose(), it);
    }
    Eigen::JacobiSVD<Matrix> svd(sys, Eigen::ComputeThinV);
    const double scale = svd.singularValues().size()
                             ? std::max(1.0, svd.singularValues()(0))
                             : 1.0;
    IntertwinerBasis out;
    out.target_dim = nt;
    out.source_dim = ns;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()(i) > tol * scale) continue;
        // Columns of V spanning the null space are orthonormal, and Frobenius
        // orthonormality of the matricized basis is the same inner product.
        Matrix t(nt, ns);
        for (int col = 0; col < ns; ++col)
            t.col(col) = svd.matrixV().col(i).segment(static_cast<Eigen::Index>(col) * nt, nt);
        out.basis.push_back(std::move(t));
    }
    return out;
}

std::vector<std::vector<std::vector<int>>> fusion_multiplicities(
    const std::vector<Representation>& irreps, double tol) {
    const int m = static_cast<int>(irreps.size());
    std::vector<std::vector<std::vector<int>>> fusion(
        m, std::vector<std::vector<int>>(m, std::vector<int>(m, 0)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Representation prod = tensor_rep(irreps[i], irreps[j]);
            for (int k = 0; k < m; ++k)
                fusion[i][j][k] = intertwiner_space(irreps[k], prod, tol).dimension();
        }
    return fusion;
}

BraidingMatrix braiding(const Representation& d1, const Representation& d2) {
    require_same_group(d1.group, d2.group, "braiding");
    const FiniteGroup& g = d1.group;
    const int n = g.order();
    // Contraction of the universal R-matrix in the leg order that makes the
    // result intertwine D1 x D2 -> D2 x D1 for these pair conventions:
    // sum_{x,k} D1(x, 1) (x) D2(k, x)  (the leg swap of the displayed sum).
    Matrix r_img = Matrix::Zero(d1.dim * d2.dim, d1.dim * d2.dim);
    for (int x = 0; x < n; ++x) {
        Matrix right = Matrix::Zero(d2.dim, d2.dim);
        for (int k = 0; k < n; ++k) right += d2.at(k, x);
        r_img += kron(d1.at(x, 0), right);
    }
    BraidingMatrix out;
    out.dim1 = d1.dim;
    out.dim2 = d2.dim;
    out.matrix = swap_matrix(d1.dim, d2.dim) * r_img;
    return out;
}

bool RepReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckRecord& c) { return c.pass; });
}

RepReport verify_rep(const Representation& d, double tol) {
    RepReport report;
    const FiniteGroup& g = d.group;
    const int n = g.order();

    // Exhaustive over basis pairs for small groups; a fixed stride sample of
    // left factors above that (|G|^4 products get expensive for q8's list).
    const bool exhaustive = n <= 6;
    const int stride = exhaustive ? 1 : std::max(1, (n * n) / 16);
    double dev_hom = 0.0;
    for (int p1 = 0; p1 < n * n; p1 += stride)
        for (int a2 = 0; a2 < n; ++a2)
            for (int b2 = 0; b2 < n; ++b2) {
                const int a1 = p1 / n, b1 = p1 % n;
                Matrix prod = d.at(a1, b1) * d.at(a2, b2);
                if (a1 == g.conj(b1, a2)) prod -= d.at(a1, g.mul(b1, b2));
                dev_hom = std::max(dev_hom, max_abs(prod));
            }
    report.checks.push_back(
        {"rep.homomorphism", "D(p) D(q) = D(pq) on basis pairs", dev_hom, dev_hom <= tol});

    Matrix unit_img = Matrix::Zero(d.dim, d.dim);
    for (int k = 0; k < n; ++k) unit_img += d.at(k, 0);
    double dev_unit = max_abs(unit_img - Matrix::Identity(d.dim, d.dim));
    report.checks.push_back({"rep.unital", "D(eta(1)) = I", dev_unit, dev_unit <= tol});

    double dev_star = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const int bi = g.inv(b);
            dev_star = std::max(dev_star,
                                max_abs(d.at(g.conj(bi, a), bi) - d.at(a, b).adjoint()));
        }
    report.checks.push_back(
        {"rep.star", "D(p^*) = D(p)^* on basis pairs", dev_star, dev_star <= tol});
    return report;
}

std::vector<DoubleElement> central_idempotents(const FiniteGroup& g,
                                               const std::vector<Representation>& irreps,
                                               double tol) {
    const int n = g.order();
    std::vector<DoubleElement> out;
    for (const auto& rep : irreps) {
        DoubleElement z = DoubleElement::zero(g);
        // chi(a, b) = tr D(a, b) vanishes unless b centralizes a, so the sum
        // effectively runs over flux labels a and elements of Z(a).
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                Complex chi = rep.at(a, b).trace();
                if (std::abs(chi) < 1e-15) continue;
                z.coeffs(pair_index(g, a, b)) += std::conj(chi);
            }
        // Normalize so the idempotent acts as the identity in its own block:
        // the raw sum gives D(z) = lambda I with lambda != 0.
        Matrix img = rep.evaluate(z);
        Complex lambda = img.trace() / static_cast<double>(rep.dim);
        if (std::abs(lambda) < tol)
            throw DecompositionFailed("central idempotent normalization vanished for irrep " +
                                      rep.label_text());
        z.coeffs /= lambda;
        out.push_back(std::move(z));
    }

    // Verification: idempotent, orthogonal family, central, block-selecting.
    for (size_t i = 0; i < out.size(); ++i) {
        for (size_t j = 0; j < out.size(); ++j) {
            Vector prod = multiply(out[i], out[j]).coeffs;
            Vector expect = i == j ? out[i].coeffs : Vector::Zero(out[i].coeffs.size()).eval();
            if ((prod - expect).cwiseAbs().maxCoeff() > tol)
                throw DecompositionFailed("central idempotents fail orthogonality check");
        }
        for (int p = 0; p < n * n; ++p) {
            DoubleElement b = DoubleElement::basis(g, p / n, p % n);
            if ((multiply(out[i], b).coeffs - multiply(b, out[i]).coeffs).cwiseAbs().maxCoeff() >
                tol)
                throw DecompositionFailed("central idempotent is not central");
        }
        for (size_t j = 0; j < irreps.size(); ++j) {
            Matrix img = irreps[j].evaluate(out[i]);
            Matrix expect = i == j ? Matrix::Identity(irreps[j].dim, irreps[j].dim)
                                   : Matrix::Zero(irreps[j].dim, irreps[j].dim).eval();
            if (max_abs(img - expect) > tol)
                throw DecompositionFailed("central idempotent does not select its block");
        }
    }
    return out;
}

}  // namespace qdm
