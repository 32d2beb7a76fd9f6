#include "chm/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace chm {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double reduce_phase(double radians) {
    double r = std::fmod(radians, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;  // fmod can land exactly on 2*pi after the add
    return r;
}

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd entries) : mat_(std::move(entries)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() < 1) {
        throw std::invalid_argument("ComplexMatrix: matrix must be square and non-empty");
    }
    for (Eigen::Index i = 0; i < mat_.rows(); ++i) {
        for (Eigen::Index j = 0; j < mat_.cols(); ++j) {
            const Complex z = mat_(i, j);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw std::invalid_argument("ComplexMatrix: non-finite entry");
            }
        }
    }
}

ComplexMatrix ComplexMatrix::identity(int n) {
    if (n < 1) throw std::invalid_argument("ComplexMatrix::identity: n must be >= 1");
    return ComplexMatrix(Eigen::MatrixXcd::Identity(n, n));
}

PhaseGrid::PhaseGrid(int n, std::vector<double> phases_row_major)
    : n_(n), phases_(std::move(phases_row_major)) {
    if (n_ < 1) throw std::invalid_argument("PhaseGrid: n must be >= 1");
    if (phases_.size() != static_cast<std::size_t>(n_) * n_) {
        throw std::invalid_argument("PhaseGrid: expected n*n phases");
    }
    for (double& p : phases_) {
        if (!std::isfinite(p)) throw std::invalid_argument("PhaseGrid: non-finite phase");
        p = reduce_phase(p);
    }
}

ComplexMatrix PhaseGrid::applied_to(const ComplexMatrix& m) const {
    if (m.dim() != n_) throw std::invalid_argument("PhaseGrid: dimension mismatch");
    Eigen::MatrixXcd out = m.mat();
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            out(i, j) *= std::polar(1.0, (*this)(i, j));
        }
    }
    return ComplexMatrix(std::move(out));
}

}  // namespace chm
