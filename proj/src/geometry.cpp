#include "chm/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "chm/hadamard.hpp"
#include "svd_lapack.hpp"

namespace chm {

DensityMatrix::DensityMatrix(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() < 1) {
        throw std::invalid_argument("DensityMatrix: matrix must be square");
    }
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() >= 1e-12) {
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    }
    if (std::abs(rho_.trace() - Complex(1.0, 0.0)) >= 1e-12) {
        throw std::invalid_argument("DensityMatrix: trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_,
                                                           Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-10) {
        throw std::invalid_argument("DensityMatrix: not positive semidefinite");
    }
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
    if (n < 1) throw std::invalid_argument("DensityMatrix: n must be >= 1");
    return DensityMatrix(Eigen::MatrixXcd::Identity(n, n) / static_cast<double>(n));
}

DensityMatrix density_from_vector(const Eigen::VectorXcd& v) {
    if (std::abs(v.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("density_from_vector: vector is not normalized");
    }
    return DensityMatrix(v * v.adjoint());
}

double hs_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("hs_distance: dimension mismatch");
    return std::sqrt(0.5) * (a.mat() - b.mat()).norm();
}

double bloch_dot(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("bloch_dot: dimension mismatch");
    const int n = a.dim();
    const Eigen::MatrixXcd x = a.mat() - Eigen::MatrixXcd::Identity(n, n) / static_cast<double>(n);
    const Eigen::MatrixXcd y = b.mat() - Eigen::MatrixXcd::Identity(n, n) / static_cast<double>(n);
    // Tr(XY) without forming the product
    return 0.5 * x.transpose().cwiseProduct(y).sum().real();
}

SimplexEmbedding basis_simplex(const ComplexMatrix& basis) {
    if (orthonormality_residual(basis) > 1e-9) {
        throw std::invalid_argument("basis_simplex: columns are not orthonormal");
    }
    const int n = basis.dim();
    SimplexEmbedding simplex{n, {}, DensityMatrix::maximally_mixed(n)};
    simplex.vertices.reserve(n);
    Eigen::MatrixXcd vertex_sum = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        Eigen::VectorXcd column = basis.mat().col(j);
        column.normalize();  // absorb the 1e-9 orthonormality slack
        simplex.vertices.push_back(density_from_vector(column));
        vertex_sum += simplex.vertices.back().mat();
    }
    const double centroid_residual =
        (vertex_sum / static_cast<double>(n) - simplex.centroid.mat()).cwiseAbs().maxCoeff();
    if (centroid_residual >= 1e-12) {
        throw std::invalid_argument("basis_simplex: vertex centroid is not maximally mixed");
    }
    const double regular_dot = -1.0 / (2.0 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(bloch_dot(simplex.vertices[i], simplex.vertices[j]) - regular_dot) >
                1e-10) {
                throw std::invalid_argument("basis_simplex: vertices do not form a regular simplex");
            }
        }
    }
    return simplex;
}

SphereRadii sphere_radii(int n) {
    if (n < 2) throw std::invalid_argument("sphere_radii: n must be >= 2");
    const DensityMatrix mixed = DensityMatrix::maximally_mixed(n);
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(n);
    e0(0) = 1.0;
    const DensityMatrix pure = density_from_vector(e0);
    // Boundary witness (I - P)/(n-1): exactly one zero eigenvalue, so it
    // realizes the distance from the centre to the boundary.
    const DensityMatrix boundary(
        (Eigen::MatrixXcd::Identity(n, n) - pure.mat()) / static_cast<double>(n - 1));

    SphereRadii radii;
    radii.outsphere = hs_distance(pure, mixed);
    radii.insphere = hs_distance(mixed, boundary);
    radii.ratio = radii.outsphere / radii.insphere;
    return radii;
}

OrthogonalityReport total_orthogonality(const SimplexEmbedding& a, const SimplexEmbedding& b,
                                        double tol) {
    if (a.n != b.n) throw std::invalid_argument("total_orthogonality: dimension mismatch");
    OrthogonalityReport report;
    for (const DensityMatrix& va : a.vertices) {
        for (const DensityMatrix& vb : b.vertices) {
            report.max_dot = std::max(report.max_dot, std::abs(bloch_dot(va, vb)));
        }
    }
    report.orthogonal = report.max_dot <= tol;
    return report;
}

int stacked_simplex_rank(const std::vector<SimplexEmbedding>& simplices, double tol_rank) {
    if (simplices.empty()) return 0;
    const int n = simplices.front().n;
    for (const SimplexEmbedding& s : simplices) {
        if (s.n != n) throw std::invalid_argument("stacked_simplex_rank: dimension mismatch");
    }
    // Differences v_i - v_0 span each simplex plane; vectorize as
    // [Re entries, Im entries] so ranks of spans are preserved.
    Eigen::MatrixXd stack(static_cast<int>(simplices.size()) * (n - 1), 2 * n * n);
    int row = 0;
    for (const SimplexEmbedding& s : simplices) {
        for (int i = 1; i < static_cast<int>(s.vertices.size()); ++i) {
            const Eigen::MatrixXcd diff = s.vertices[i].mat() - s.vertices[0].mat();
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) {
                    stack(row, r * n + c) = diff(r, c).real();
                    stack(row, n * n + r * n + c) = diff(r, c).imag();
                }
            }
            ++row;
        }
    }
    const Eigen::VectorXd sigma = detail::svd_values(stack);
    const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > tol_rank * sigma_max) ++rank;
    }
    return rank;
}

}  // namespace chm
