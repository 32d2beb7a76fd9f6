#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chm/complex_matrix.hpp"

namespace chm {

/// First-order unitarity system at the Fourier point.
///
/// Differentiating the row-pair conditions
///   sum_j omega^{(a-b)j} e^{i(phi_aj - phi_bj)} = 0,  a < b,
/// at phi = 0 gives a real linear map from phase space to the constraint
/// space of stacked real/imaginary parts (dimension n(n-1)). In dephased
/// gauge the free phases are phi_aj with a,j = 1..n-1 (row-major), so the
/// map has (n-1)^2 columns; the ungauged variant keeps all n^2 phases.
/// The SVD factors are retained for minimal-norm solves at higher orders.
struct LinearizedSystem {
    int n = 0;
    Eigen::MatrixXd matrix;
    Eigen::MatrixXd kernel_basis;     // orthonormal columns spanning the null space
    Eigen::MatrixXd left_null_basis;  // orthonormal columns spanning the cokernel
    Eigen::MatrixXd svd_u;
    Eigen::VectorXd svd_sigma;
    Eigen::MatrixXd svd_v;
    int rank = 0;

    int kernel_dim() const { return static_cast<int>(kernel_basis.cols()); }
    /// Minimal-norm least-squares solution of matrix * x = b (kernel
    /// component zero by construction of the pseudoinverse).
    Eigen::VectorXd solve_min_norm(const Eigen::VectorXd& b) const;
};

struct DefectReport {
    int n = 0;
    long long d1_formula = 0;
    int kernel_dim_numeric = 0;
    long long dephased_bound = 0;
    bool agree = false;
};

/// Per-sample record of the order-by-order continuation. Residuals start at
/// order 2 and end at the order the sample stopped at (inclusive), so
/// residuals[k] belongs to order k+2.
struct ContinuationSample {
    std::vector<double> residuals;
    std::optional<int> breakdown;
};

struct ContinuationReport {
    int n = 0;
    int max_order = 0;
    int samples = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    std::vector<ContinuationSample> per_sample;
    std::optional<int> breakdown_order;
    std::string note;
};

/// Gcd-sum defect D1 = sum_{k=0}^{n-1} gcd(k, n), with gcd(0, n) = n.
long long defect_formula(int n);

/// D1(n) - (2n - 1): the first-order bound on dephased families through F_n.
long long dephased_bound(int n);

LinearizedSystem build_linearized(int n, double tol_rank = 1e-10);
LinearizedSystem build_linearized_ungauged(int n, double tol_rank = 1e-10);

/// Numerical kernel dimension of the dephased linearized system compared
/// against the gcd-sum bound.
DefectReport defect_numeric(int n, double tol_rank = 1e-10);

/// Continuation of a single first-order direction. orders[r-1] holds
/// phi^(r) in gauged coordinates; the series stops after max_order or at the
/// first order whose inhomogeneity leaves the range of the linearized map.
struct DirectionContinuation {
    std::vector<Eigen::VectorXd> orders;
    std::vector<double> residuals;
    std::optional<int> breakdown;
};

/// For s = 2..max_order: assembles the order-s inhomogeneity b from the
/// truncated expansion of e^{i phi(t)} over orders 1..s-1, measures the
/// relative cokernel residual ||L^T b|| / max(||b||, eps), and either solves
/// for the order-s correction (minimal norm, kernel component zero) or
/// records the breakdown and stops.
DirectionContinuation continue_direction(const LinearizedSystem& sys,
                                         const Eigen::VectorXd& phi1, int max_order,
                                         double tol = 1e-6);

/// Order-by-order continuation along random kernel directions. Each sample
/// draws a seeded unit vector in the first-order kernel (stream derived from
/// (seed, sample index)) and runs continue_direction. The reported breakdown
/// order is the smallest s flagged by a strict majority of samples. A
/// zero-dimensional kernel yields no breakdown and the note "isolated point".
ContinuationReport continue_orders(int n, int max_order, int samples = 5,
                                   std::uint64_t seed = 42, double tol = 1e-6,
                                   int threads = 1);

/// Conjectured dimension 3*p1*p2^2 - 3*p1*p2 - 2*p2^2 + p2 + 1 of the
/// nonlinear dephased family at N = p1*p2^2, for distinct primes p1, p2.
long long conjectured_dimension(int p1, int p2);

bool is_prime(int p);

}  // namespace chm
