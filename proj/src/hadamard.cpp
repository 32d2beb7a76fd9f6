#include "chm/hadamard.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chm {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

ComplexMatrix fourier(int n) {
    if (n < 1) throw std::invalid_argument("fourier: n must be >= 1");
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    Eigen::MatrixXcd f(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int e = static_cast<int>((static_cast<long long>(i) * j) % n);
            f(i, j) = std::polar(scale, kTwoPi * e / n);
        }
    }
    return ComplexMatrix(std::move(f));
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int na = a.dim();
    const int nb = b.dim();
    Eigen::MatrixXcd out(na * nb, na * nb);
    for (int i = 0; i < na; ++i) {
        for (int j = 0; j < na; ++j) {
            out.block(i * nb, j * nb, nb, nb) = a(i, j) * b.mat();
        }
    }
    return ComplexMatrix(std::move(out));
}

ValidationReport is_hadamard(const ComplexMatrix& m, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("is_hadamard: tol must be positive");
    const int n = m.dim();
    const Eigen::MatrixXcd gram = m.mat() * m.mat().adjoint() - Eigen::MatrixXcd::Identity(n, n);
    const double flat_target = 1.0 / std::sqrt(static_cast<double>(n));

    ValidationReport report;
    report.max_unitarity_residual = gram.cwiseAbs().maxCoeff();
    report.max_modulus_deviation =
        (m.mat().cwiseAbs().array() - flat_target).abs().maxCoeff();
    report.is_unitary = report.max_unitarity_residual <= tol;
    report.is_flat = report.max_modulus_deviation <= tol;
    return report;
}

DephaseResult dephase(const ComplexMatrix& m) {
    const int n = m.dim();
    for (int i = 0; i < n; ++i) {
        if (std::abs(m(i, 0)) == 0.0 || std::abs(m(0, i)) == 0.0) {
            throw std::invalid_argument("dephase: zero entry in first row or column");
        }
    }
    std::vector<double> d_left(n), d_right(n);
    Eigen::MatrixXcd out = m.mat();
    for (int i = 0; i < n; ++i) {
        d_left[i] = reduce_phase(-std::arg(out(i, 0)));
        out.row(i) *= std::polar(1.0, d_left[i]);
    }
    for (int j = 0; j < n; ++j) {
        d_right[j] = reduce_phase(-std::arg(out(0, j)));
        out.col(j) *= std::polar(1.0, d_right[j]);
    }
    return DephaseResult{ComplexMatrix(std::move(out)), std::move(d_left), std::move(d_right)};
}

std::vector<double> haagerup_fingerprint(const ComplexMatrix& m, double bin) {
    if (bin <= 0.0) throw std::invalid_argument("haagerup_fingerprint: bin must be positive");
    const int n = m.dim();
    const Eigen::ArrayXXd moduli = m.mat().cwiseAbs();
    const double lo = moduli.minCoeff();
    const double hi = moduli.maxCoeff();
    if (lo <= 0.0 || hi - lo > kDefaultTol) {
        throw std::invalid_argument("haagerup_fingerprint: input is not flat");
    }

    const long long wrap = std::llround(kTwoPi / bin);
    std::vector<double> phases;
    phases.reserve(static_cast<std::size_t>(n) * n * n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                for (int l = 0; l < n; ++l) {
                    const Complex prod =
                        m(i, j) * m(k, l) * std::conj(m(i, l)) * std::conj(m(k, j));
                    long long q = std::llround(reduce_phase(std::arg(prod)) / bin);
                    if (q == wrap) q = 0;  // values binned next to 2*pi wrap to 0
                    phases.push_back(static_cast<double>(q) * bin);
                }
            }
        }
    }
    std::sort(phases.begin(), phases.end());
    return phases;
}

double orthonormality_residual(const ComplexMatrix& basis) {
    const int n = basis.dim();
    return (basis.mat().adjoint() * basis.mat() - Eigen::MatrixXcd::Identity(n, n))
        .cwiseAbs()
        .maxCoeff();
}

UnbiasednessReport unbiasedness(const ComplexMatrix& basis_a, const ComplexMatrix& basis_b,
                                double tol) {
    if (tol <= 0.0) throw std::invalid_argument("unbiasedness: tol must be positive");
    if (basis_a.dim() != basis_b.dim()) {
        throw std::invalid_argument("unbiasedness: dimension mismatch");
    }
    if (orthonormality_residual(basis_a) > tol || orthonormality_residual(basis_b) > tol) {
        throw std::invalid_argument("unbiasedness: input columns are not orthonormal");
    }
    const int n = basis_a.dim();
    const Eigen::MatrixXcd overlaps = basis_a.mat().adjoint() * basis_b.mat();
    const double dev =
        (overlaps.cwiseAbs2().array() - 1.0 / n).abs().maxCoeff();
    return UnbiasednessReport{dev <= tol, dev};
}

}  // namespace chm
