#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qdm {

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Eigen::MatrixXcd direct_sum(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

/// Swap matrix P : C^n (x) C^m -> C^m (x) C^n,  P(x (x) y) = y (x) x.
inline Eigen::MatrixXcd swap_matrix(int n, int m) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n * m, n * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) p(j * n + i, i * m + j) = 1.0;
    return p;
}

inline double max_abs(const Eigen::MatrixXcd& m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace qdm
