#pragma once

#include <Eigen/Dense>

namespace gradalign {

/// Row-wise unit normalization; zero rows are left as zero.
inline Eigen::MatrixXd row_unit_normalized(const Eigen::MatrixXd& m) {
    Eigen::MatrixXd out = m;
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        const double norm = out.row(i).norm();
        if (norm > 0.0) out.row(i) /= norm;
    }
    return out;
}

/// Spectral norm (largest singular value).
inline double spectral_norm(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues()(0);
}

}  // namespace gradalign
