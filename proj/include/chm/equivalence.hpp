#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chm/hadamard.hpp"

namespace chm {

/// Witness for the equivalence H' = P1 * D1 * H * D2 * P2.
///
/// Convention: applying the certificate to H produces
///   result(i, j) = e^{i d_left[p_left[i]]} * H(p_left[i], p_right[j]) * e^{i d_right[p_right[j]]}
/// so p_left[i] is the source row placed at row i and p_right[j] the source
/// column placed at column j.
struct EquivalenceCertificate {
    std::vector<int> p_left;
    std::vector<double> d_left;
    std::vector<double> d_right;
    std::vector<int> p_right;

    static EquivalenceCertificate identity(int n);
    int dim() const { return static_cast<int>(p_left.size()); }
};

/// Computes P1 * D1 * H * D2 * P2 for the certificate's permutations and
/// diagonals. Rejects certificates whose permutations are not bijections on
/// {0..n-1} or whose phase vectors have the wrong length.
ComplexMatrix apply_certificate(const ComplexMatrix& h, const EquivalenceCertificate& cert);

enum class EquivalenceStatus { Equivalent, Distinct, Inconclusive };

std::string to_string(EquivalenceStatus status);

struct EquivalenceVerdict {
    EquivalenceStatus status = EquivalenceStatus::Inconclusive;
    std::optional<EquivalenceCertificate> certificate;
    double residual = 0.0;
    std::string method;
};

struct CertificateCheck {
    bool ok = false;
    double residual = 0.0;
};

/// Entrywise check that the certificate maps h onto h2 within tol.
CertificateCheck verify_certificate(const ComplexMatrix& h, const ComplexMatrix& h2,
                                    const EquivalenceCertificate& cert, double tol);

/// Deterministic dephased representative; the reduction used by the oracle.
ComplexMatrix canonical_dephased(const ComplexMatrix& m);

/// Exhaustive scan over all permutation pairs, comparing canonical dephased
/// forms. Exact for flat matrices since dephasing absorbs the diagonal
/// freedom. Returns the lexicographically first witness. Hard-capped at
/// n <= 6 ((n!)^2 pairs); use invariant_distinguish beyond that.
EquivalenceVerdict equivalent_bruteforce(const ComplexMatrix& h, const ComplexMatrix& h2,
                                         double tol = 1e-8);

/// Fingerprint screen: mismatching fingerprints prove the inputs distinct;
/// matching fingerprints prove nothing, so the verdict is then Inconclusive,
/// never Equivalent.
EquivalenceVerdict invariant_distinguish(const ComplexMatrix& h, const ComplexMatrix& h2,
                                         double tol = kDefaultTol);

}  // namespace chm
