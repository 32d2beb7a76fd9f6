#include "svd_lapack.hpp"

#include <stdexcept>

#include <lapacke.h>

namespace chm::detail {

FullSvd svd_full(const Eigen::MatrixXd& m) {
    const lapack_int rows = static_cast<lapack_int>(m.rows());
    const lapack_int cols = static_cast<lapack_int>(m.cols());
    Eigen::MatrixXd a = m;  // dgesdd overwrites its input
    FullSvd out;
    out.u.resize(rows, rows);
    out.sigma.resize(std::min(rows, cols));
    Eigen::MatrixXd vt(cols, cols);
    const lapack_int info =
        LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'A', rows, cols, a.data(), rows, out.sigma.data(),
                       out.u.data(), rows, vt.data(), cols);
    if (info != 0) {
        throw std::runtime_error("svd_full: dgesdd failed to converge (info " +
                                 std::to_string(info) + ")");
    }
    out.v = vt.transpose();
    return out;
}

Eigen::VectorXd svd_values(const Eigen::MatrixXd& m) {
    const lapack_int rows = static_cast<lapack_int>(m.rows());
    const lapack_int cols = static_cast<lapack_int>(m.cols());
    Eigen::MatrixXd a = m;
    Eigen::VectorXd sigma(std::min(rows, cols));
    const lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', rows, cols, a.data(), rows,
                                           sigma.data(), nullptr, rows, nullptr, cols);
    if (info != 0) {
        throw std::runtime_error("svd_values: dgesdd failed to converge (info " +
                                 std::to_string(info) + ")");
    }
    return sigma;
}

}  // namespace chm::detail
