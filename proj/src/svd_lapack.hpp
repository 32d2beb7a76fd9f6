#pragma once

// LAPACK-backed dense SVD. Eigen's BDCSVD misranks the rank-deficient
// linearized unitarity systems for some dimensions (observed at n = 21 and
// n = 30: spurious or inflated small singular values), while dgesdd resolves
// every null direction to machine precision. Internal to the library.

#include <Eigen/Dense>

namespace chm::detail {

struct FullSvd {
    Eigen::MatrixXd u;      // m x m
    Eigen::VectorXd sigma;  // min(m, n), descending
    Eigen::MatrixXd v;      // n x n (right singular vectors as columns)
};

FullSvd svd_full(const Eigen::MatrixXd& m);

Eigen::VectorXd svd_values(const Eigen::MatrixXd& m);

}  // namespace chm::detail
