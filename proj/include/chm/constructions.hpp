#pragma once

#include <vector>

#include "chm/equivalence.hpp"

namespace chm {

/// Ingredients of the warped tensor product: an N1 x N1 Hadamard outer
/// factor, N1 inner Hadamard matrices of size N2, and N1-1 diagonal phase
/// rows of length N2 whose first entry is 0 (dephased-form convention).
struct DitaSpec {
    ComplexMatrix outer;
    std::vector<ComplexMatrix> inners;
    std::vector<std::vector<double>> diagonals;
};

/// An ordered collection of orthonormal bases with its pairwise
/// unbiasedness status.
struct MubSet {
    int n = 0;
    std::vector<ComplexMatrix> bases;
    bool pairwise_unbiased = false;
    double worst_deviation = 0.0;
};

struct MubCheck {
    bool ok = false;
    double worst_deviation = 0.0;
};

/// The one-parameter 4x4 family
///   H(z) = (1/2) [[1,1,1,1],[1,z,-1,-z],[1,-1,1,-1],[1,-z,-1,z]],
/// dephased Hadamard for every unimodular z. Rejects |z| != 1 (1e-12).
ComplexMatrix hadamard4(Complex z);

/// Warped tensor product: block (a,b) of the output is
/// outer(a,b) * D^(b) * inner[b], with D^(0) the identity. Output dimension
/// N1*N2; Hadamard whenever all inputs are, dephased whenever all inputs are.
ComplexMatrix dita(const DitaSpec& spec);

/// Permutation certificate P1 * F_{n1*n2} * P2 = F_{n1} (x) F_{n2} for
/// coprime n1, n2. Rows come from the Chinese-remainder bijection
/// k -> (k mod n1, k mod n2); columns from the paired Bezout inverses.
/// Rejects non-coprime inputs (the matrices are then inequivalent).
EquivalenceCertificate crt_certificate(int n1, int n2);

/// Complete system of p+1 mutually unbiased bases in prime dimension p:
/// the computational basis plus D_m * F_p, (D_m)_jj = omega^{m j^2}, for
/// m = 0..p-1 and odd p. p = 2 uses the standard +/-i third basis since the
/// quadratic-phase construction needs odd characteristic. Rejects
/// composite p.
MubSet mub_prime(int p);

/// True iff every basis is orthonormal and every pair is unbiased at tol.
MubCheck mub_check(const std::vector<ComplexMatrix>& bases, double tol = kDefaultTol);
MubCheck mub_check(const MubSet& set, double tol = kDefaultTol);

}  // namespace chm
