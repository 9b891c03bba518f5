#include "qdm/local_op.hpp"

#include <algorithm>
#include <cmath>

namespace qdm {

SupportIndex::SupportIndex(FiniteGroup group, std::vector<int> support)
    : group_(std::move(group)), support_(std::move(support)) {
    for (size_t k = 1; k < support_.size(); ++k)
        if (support_[k - 1] >= support_[k]) throw Error("support must be sorted and duplicate-free");
    const std::uint64_t n = static_cast<std::uint64_t>(group_.order());
    for (size_t k = 0; k < support_.size(); ++k) {
        if (dim_ > kIndexBudget / n)
            throw DimensionBudgetExceeded("support of " + std::to_string(support_.size()) +
                                          " edges exceeds the index budget");
        dim_ *= n;
    }
}

void SupportIndex::decode(std::uint64_t index, int* labels) const {
    const std::uint64_t n = static_cast<std::uint64_t>(group_.order());
    for (int k = 0; k < digits(); ++k) {
        labels[k] = static_cast<int>(index % n);
        index /= n;
    }
}

std::uint64_t SupportIndex::encode(const int* labels) const {
    const std::uint64_t n = static_cast<std::uint64_t>(group_.order());
    std::uint64_t out = 0;
    for (int k = digits() - 1; k >= 0; --k) out = out * n + labels[k];
    return out;
}

int SupportIndex::position(int edge) const {
    auto it = std::lower_bound(support_.begin(), support_.end(), edge);
    if (it == support_.end() || *it != edge) return -1;
    return static_cast<int>(it - support_.begin());
}

LocalOperator LocalOperator::identity(const FiniteGroup& g) {
    LocalOperator op;
    op.index_ = SupportIndex(g, {});
    op.dense_ = true;
    op.mat_ = Matrix::Identity(1, 1);
    return op;
}

LocalOperator LocalOperator::dense(const FiniteGroup& g, std::vector<int> support, Matrix m) {
    LocalOperator op;
    op.index_ = SupportIndex(g, std::move(support));
    if (m.rows() != static_cast<Eigen::Index>(op.dim()) ||
        m.cols() != static_cast<Eigen::Index>(op.dim()))
        throw Error("dense matrix does not match |G|^support");
    op.dense_ = true;
    op.mat_ = std::move(m);
    return op;
}

LocalOperator LocalOperator::sparse(const FiniteGroup& g, std::vector<int> support,
                                    Eigen::SparseMatrix<Complex> m) {
    LocalOperator op;
    op.index_ = SupportIndex(g, std::move(support));
    if (m.rows() != static_cast<Eigen::Index>(op.dim()) ||
        m.cols() != static_cast<Eigen::Index>(op.dim()))
        throw Error("sparse matrix does not match |G|^support");
    op.dense_ = false;
    op.sp_ = std::move(m);
    op.sp_.makeCompressed();
    return op;
}

LocalOperator LocalOperator::from_triplets(const FiniteGroup& g, std::vector<int> support,
                                           std::uint64_t dim,
                                           const std::vector<Eigen::Triplet<Complex>>& trips) {
    if (dim <= kDenseBudget) {
        Matrix m = Matrix::Zero(dim, dim);
        for (const auto& t : trips) m(t.row(), t.col()) += t.value();
        return dense(g, std::move(support), std::move(m));
    }
    Eigen::SparseMatrix<Complex> m(dim, dim);
    m.setFromTriplets(trips.begin(), trips.end());
    return sparse(g, std::move(support), std::move(m));
}

void LocalOperator::column(std::uint64_t col,
                           std::vector<std::pair<std::uint64_t, Complex>>& out) const {
    out.clear();
    if (dense_) {
        for (Eigen::Index r = 0; r < mat_.rows(); ++r) {
            const Complex v = mat_(r, col);
            if (v != Complex(0, 0)) out.emplace_back(static_cast<std::uint64_t>(r), v);
        }
    } else {
        for (Eigen::SparseMatrix<Complex>::InnerIterator it(sp_, col); it; ++it)
            out.emplace_back(static_cast<std::uint64_t>(it.row()), it.value());
    }
}

LocalOperator LocalOperator::adjoint() const {
    LocalOperator op = *this;
    if (dense_)
        op.mat_ = mat_.adjoint();
    else
        op.sp_ = sp_.adjoint();
    return op;
}

LocalOperator LocalOperator::scaled(Complex factor) const {
    LocalOperator op = *this;
    if (dense_)
        op.mat_ *= factor;
    else
        op.sp_ *= factor;
    return op;
}

namespace {

std::vector<int> union_support(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

LocalOperator LocalOperator::embedded(const std::vector<int>& target) const {
    if (target == support()) return *this;
    SupportIndex big(group(), target);
    // Digit positions of the old support inside the new one.
    std::vector<int> pos;
    for (int e : support()) {
        int k = big.position(e);
        if (k < 0) throw Error("embedded() target must contain the support");
        pos.push_back(k);
    }
    const int nd = big.digits();
    const std::uint64_t dim = big.dim();
    std::vector<int> labels(std::max(nd, 1));
    std::vector<int> sub(std::max(index_.digits(), 1));
    std::vector<std::pair<std::uint64_t, Complex>> col;
    std::vector<Eigen::Triplet<Complex>> trips;
    for (std::uint64_t c = 0; c < dim; ++c) {
        big.decode(c, labels.data());
        for (int k = 0; k < index_.digits(); ++k) sub[k] = labels[pos[k]];
        const std::uint64_t subcol = index_.encode(sub.data());
        column(subcol, col);
        for (const auto& [subrow, v] : col) {
            index_.decode(subrow, sub.data());
            for (int k = 0; k < index_.digits(); ++k) labels[pos[k]] = sub[k];
            trips.emplace_back(static_cast<std::int64_t>(big.encode(labels.data())),
                               static_cast<std::int64_t>(c), v);
        }
    }
    return from_triplets(group(), target, dim, trips);
}

LocalOperator operator*(const LocalOperator& a, const LocalOperator& b) {
    if (!a.group().same_as(b.group())) throw GroupMismatch("operator product");
    const std::vector<int> target = union_support(a.support(), b.support());
    LocalOperator ea = a.embedded(target), eb = b.embedded(target);
    LocalOperator out;
    out.index_ = SupportIndex(a.group(), target);
    if (ea.dense_ && eb.dense_) {
        out.dense_ = true;
        out.mat_ = ea.mat_ * eb.mat_;
    } else {
        auto to_sparse = [](const LocalOperator& x) -> Eigen::SparseMatrix<Complex> {
            if (!x.dense_) return x.sp_;
            return x.mat_.sparseView();
        };
        out.dense_ = false;
        out.sp_ = to_sparse(ea) * to_sparse(eb);
        out.sp_.makeCompressed();
    }
    return out;
}

LocalOperator operator+(const LocalOperator& a, const LocalOperator& b) {
    if (!a.group().same_as(b.group())) throw GroupMismatch("operator sum");
    const std::vector<int> target = union_support(a.support(), b.support());
    LocalOperator ea = a.embedded(target), eb = b.embedded(target);
    LocalOperator out;
    out.index_ = SupportIndex(a.group(), target);
    if (ea.dense_ && eb.dense_) {
        out.dense_ = true;
        out.mat_ = ea.mat_ + eb.mat_;
    } else {
        auto to_sparse = [](const LocalOperator& x) -> Eigen::SparseMatrix<Complex> {
            if (!x.dense_) return x.sp_;
            return x.mat_.sparseView();
        };
        out.dense_ = false;
        out.sp_ = to_sparse(ea) + to_sparse(eb);
        out.sp_.makeCompressed();
    }
    return out;
}

LocalOperator operator-(const LocalOperator& a, const LocalOperator& b) {
    return a + b.scaled(-1.0);
}

Complex LocalOperator::trace() const {
    if (dense_) return mat_.trace();
    Complex t = 0;
    for (int k = 0; k < sp_.outerSize(); ++k)
        for (Eigen::SparseMatrix<Complex>::InnerIterator it(sp_, k); it; ++it)
            if (it.row() == it.col()) t += it.value();
    return t;
}

double LocalOperator::deviation(const LocalOperator& a, const LocalOperator& b) {
    const std::vector<int> target = union_support(a.support(), b.support());
    LocalOperator d = a.embedded(target) - b.embedded(target);
    if (d.dense_) return d.mat_.size() ? d.mat_.cwiseAbs().maxCoeff() : 0.0;
    double dev = 0.0;
    for (int k = 0; k < d.sp_.outerSize(); ++k)
        for (Eigen::SparseMatrix<Complex>::InnerIterator it(d.sp_, k); it; ++it)
            dev = std::max(dev, std::abs(it.value()));
    return dev;
}

bool LocalOperator::approx_equal(const LocalOperator& a, const LocalOperator& b, double tol) {
    return deviation(a, b) <= tol;
}

StateVector::StateVector(PatchPtr patch, FiniteGroup group)
    : patch_(std::move(patch)), group_(std::move(group)) {
    powers_.resize(patch_->edge_count());
    std::uint64_t p = 1;
    const std::uint64_t n = static_cast<std::uint64_t>(group_.order());
    for (int e = 0; e < patch_->edge_count(); ++e) {
        powers_[e] = p;
        // Guard: |G|^edges must fit 64 bits with headroom.
        if (e + 1 < patch_->edge_count() && p > (std::uint64_t(1) << 62) / n)
            throw DimensionBudgetExceeded("patch state space exceeds 64-bit indexing");
        p *= n;
    }
}

StateVector StateVector::basis_state(PatchPtr patch, const FiniteGroup& g,
                                     const std::vector<int>& labels) {
    StateVector s(std::move(patch), g);
    if (static_cast<int>(labels.size()) != s.patch_->edge_count())
        throw Error("basis_state needs one label per edge");
    std::uint64_t key = 0;
    for (size_t e = 0; e < labels.size(); ++e) key += s.powers_[e] * labels[e];
    s.amps_[key] = 1.0;
    return s;
}

double StateVector::norm() const {
    double n2 = 0;
    for (const auto& [k, v] : amps_) n2 += std::norm(v);
    return std::sqrt(n2);
}

void StateVector::scale(Complex c) {
    for (auto& [k, v] : amps_) v *= c;
}

void StateVector::add_scaled(const StateVector& other, Complex c) {
    for (const auto& [k, v] : other.amps_) amps_[k] += c * v;
}

void StateVector::prune(double cut) {
    for (auto it = amps_.begin(); it != amps_.end();) {
        if (std::abs(it->second) <= cut)
            it = amps_.erase(it);
        else
            ++it;
    }
}

Complex StateVector::inner(const StateVector& a, const StateVector& b) {
    // Iterate the smaller map.
    if (b.amps_.size() < a.amps_.size()) return std::conj(inner(b, a));
    Complex s = 0;
    for (const auto& [k, v] : a.amps_) {
        auto it = b.amps_.find(k);
        if (it != b.amps_.end()) s += std::conj(v) * it->second;
    }
    return s;
}

int StateVector::label_of(std::uint64_t key, int edge) const {
    return static_cast<int>((key / powers_[edge]) % group_.order());
}

StateVector StateVector::apply(const LocalOperator& op) const {
    StateVector out(patch_, group_);
    const auto& sup = op.support();
    std::vector<int> labels(std::max<size_t>(sup.size(), 1));
    SupportIndex sub(group_, sup);
    std::vector<std::pair<std::uint64_t, Complex>> col;
    for (const auto& [key, amp] : amps_) {
        for (size_t k = 0; k < sup.size(); ++k) labels[k] = label_of(key, sup[k]);
        const std::uint64_t subcol = sub.encode(labels.data());
        op.column(subcol, col);
        for (const auto& [subrow, v] : col) {
            sub.decode(subrow, labels.data());
            std::uint64_t nk = key;
            for (size_t k = 0; k < sup.size(); ++k) {
                nk -= powers_[sup[k]] * label_of(key, sup[k]);
                nk += powers_[sup[k]] * labels[k];
            }
            out.amps_[nk] += v * amp;
        }
    }
    out.prune();
    return out;
}

}  // namespace qdm
