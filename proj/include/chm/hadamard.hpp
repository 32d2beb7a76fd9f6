#pragma once

#include <vector>

#include "chm/complex_matrix.hpp"

namespace chm {

/// Default tolerance for boolean checks. Every check also reports the raw
/// residual so callers can apply their own policy.
inline constexpr double kDefaultTol = 1e-9;

/// Outcome of the Hadamard property check: a matrix is complex Hadamard when
/// it is unitary and all entries share the modulus 1/sqrt(n).
struct ValidationReport {
    bool is_unitary = false;
    bool is_flat = false;
    double max_unitarity_residual = 0.0;
    double max_modulus_deviation = 0.0;

    bool is_hadamard() const { return is_unitary && is_flat; }
};

/// Dephased form of a matrix together with the diagonal phases that produce
/// it: matrix = diag(e^{i d_left}) * input * diag(e^{i d_right}). The first
/// row and first column of the result are positive real.
struct DephaseResult {
    ComplexMatrix matrix;
    std::vector<double> d_left;
    std::vector<double> d_right;
};

struct UnbiasednessReport {
    bool unbiased = false;
    double max_deviation = 0.0;
};

/// Fourier matrix F_n with entries omega^{ij}/sqrt(n), omega = e^{2*pi*i/n}.
/// The exponent is reduced mod n before evaluation so entries are exact roots
/// of unity up to one libm call. Rejects n < 1.
ComplexMatrix fourier(int n);

/// Kronecker product; dimension dim(a)*dim(b). Hadamard inputs give a
/// Hadamard output.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

ValidationReport is_hadamard(const ComplexMatrix& m, double tol = kDefaultTol);

/// Canonical dephasing: rows are divided by the phase of their first entry,
/// then columns by the phase of the first entry of the row-fixed matrix.
/// Rejects matrices with a zero entry in the first row or column.
DephaseResult dephase(const ComplexMatrix& m);

/// Multiset of quartic phases arg(M_ij * M_kl * conj(M_il) * conj(M_kj)) over
/// all index quadruples, binned to multiples of `bin` and sorted. Invariant
/// under permutations and diagonal unitaries on either side, so a mismatch
/// certifies inequivalence. Rejects non-flat input.
std::vector<double> haagerup_fingerprint(const ComplexMatrix& m, double bin = kDefaultTol);

/// Checks |<a_i|b_j>|^2 = 1/n for all columns of two orthonormal bases.
/// Rejects inputs whose columns are not orthonormal within tol.
UnbiasednessReport unbiasedness(const ComplexMatrix& basis_a, const ComplexMatrix& basis_b,
                                double tol = kDefaultTol);

/// Max |(A^dagger A - I)_ij|; the orthonormality residual used by the checks.
double orthonormality_residual(const ComplexMatrix& basis);

}  // namespace chm
