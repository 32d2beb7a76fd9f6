#include "chm/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace chm {

namespace {

void check_permutation(const std::vector<int>& p, int n, const char* label) {
    if (static_cast<int>(p.size()) != n) {
        throw std::invalid_argument(std::string(label) + ": wrong length");
    }
    std::vector<bool> seen(n, false);
    for (int v : p) {
        if (v < 0 || v >= n || seen[v]) {
            throw std::invalid_argument(std::string(label) + ": not a bijection on 0..n-1");
        }
        seen[v] = true;
    }
}

}  // namespace

EquivalenceCertificate EquivalenceCertificate::identity(int n) {
    EquivalenceCertificate cert;
    cert.p_left.resize(n);
    cert.p_right.resize(n);
    std::iota(cert.p_left.begin(), cert.p_left.end(), 0);
    std::iota(cert.p_right.begin(), cert.p_right.end(), 0);
    cert.d_left.assign(n, 0.0);
    cert.d_right.assign(n, 0.0);
    return cert;
}

std::string to_string(EquivalenceStatus status) {
    switch (status) {
        case EquivalenceStatus::Equivalent: return "Equivalent";
        case EquivalenceStatus::Distinct: return "Distinct";
        case EquivalenceStatus::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

ComplexMatrix apply_certificate(const ComplexMatrix& h, const EquivalenceCertificate& cert) {
    const int n = h.dim();
    check_permutation(cert.p_left, n, "apply_certificate: p_left");
    check_permutation(cert.p_right, n, "apply_certificate: p_right");
    if (static_cast<int>(cert.d_left.size()) != n || static_cast<int>(cert.d_right.size()) != n) {
        throw std::invalid_argument("apply_certificate: phase vector length mismatch");
    }
    Eigen::MatrixXcd out(n, n);
    for (int i = 0; i < n; ++i) {
        const int si = cert.p_left[i];
        const Complex row_phase = std::polar(1.0, cert.d_left[si]);
        for (int j = 0; j < n; ++j) {
            const int sj = cert.p_right[j];
            out(i, j) = row_phase * h(si, sj) * std::polar(1.0, cert.d_right[sj]);
        }
    }
    return ComplexMatrix(std::move(out));
}

CertificateCheck verify_certificate(const ComplexMatrix& h, const ComplexMatrix& h2,
                                    const EquivalenceCertificate& cert, double tol) {
    if (h.dim() != h2.dim()) {
        throw std::invalid_argument("verify_certificate: dimension mismatch");
    }
    const ComplexMatrix mapped = apply_certificate(h, cert);
    const double residual = (mapped.mat() - h2.mat()).cwiseAbs().maxCoeff();
    return CertificateCheck{residual <= tol, residual};
}

ComplexMatrix canonical_dephased(const ComplexMatrix& m) { return dephase(m).matrix; }

namespace {

/// Dephased form of K(i,j) = H(rows[i], cols[j]) compared entrywise against
/// `target` (itself dephased); bails out at the first entry exceeding tol and
/// reports the largest difference seen up to that point.
double compare_permuted_dephased(const Eigen::MatrixXcd& h, const std::vector<int>& rows,
                                 const std::vector<int>& cols, const Eigen::MatrixXcd& target,
                                 double tol) {
    const int n = static_cast<int>(h.rows());
    // Row phases from column 0, column phases from the row-fixed first row.
    std::vector<Complex> u(n), v(n);
    for (int i = 0; i < n; ++i) {
        const Complex z = h(rows[i], cols[0]);
        u[i] = std::conj(z) / std::abs(z);
    }
    for (int j = 0; j < n; ++j) {
        const Complex z = u[0] * h(rows[0], cols[j]);
        v[j] = std::conj(z) / std::abs(z);
    }
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Complex d = u[i] * h(rows[i], cols[j]) * v[j] - target(i, j);
            const double diff = std::abs(d);
            if (diff > worst) worst = diff;
            if (diff > tol) return worst;
        }
    }
    return worst;
}

}  // namespace

EquivalenceVerdict equivalent_bruteforce(const ComplexMatrix& h, const ComplexMatrix& h2,
                                         double tol) {
    const int n = h.dim();
    if (h2.dim() != n) throw std::invalid_argument("equivalent_bruteforce: dimension mismatch");
    if (n > 6) {
        throw std::invalid_argument(
            "equivalent_bruteforce: n > 6 is out of reach for the exhaustive scan; "
            "use invariant_distinguish");
    }

    const DephaseResult target = dephase(h2);
    const Eigen::MatrixXcd& target_mat = target.matrix.mat();

    std::vector<int> rows(n), cols(n);
    std::iota(rows.begin(), rows.end(), 0);
    double best_lower_bound = std::numeric_limits<double>::infinity();

    do {
        std::iota(cols.begin(), cols.end(), 0);
        do {
            const double diff =
                compare_permuted_dephased(h.mat(), rows, cols, target_mat, tol);
            best_lower_bound = std::min(best_lower_bound, diff);
            if (diff <= tol) {
                // Reconstruct the full certificate. With K(i,j) = H(rows[i], cols[j]),
                // dephase(K) = diag(u) K diag(v) and dephase(H') = diag(u') H' diag(v'),
                // equality of the dephased forms gives
                //   H' = diag(conj(u') u) K diag(v conj(v'))
                // and commuting the diagonals through the permutations yields
                //   d_left[rows[i]] = arg(conj(u'_i) u_i),
                //   d_right[cols[j]] = arg(v_j conj(v'_j)).
                const DephaseResult cand = dephase(
                    ComplexMatrix([&] {
                        Eigen::MatrixXcd k(n, n);
                        for (int i = 0; i < n; ++i)
                            for (int j = 0; j < n; ++j) k(i, j) = h(rows[i], cols[j]);
                        return k;
                    }()));
                EquivalenceCertificate cert;
                cert.p_left = rows;
                cert.p_right = cols;
                cert.d_left.assign(n, 0.0);
                cert.d_right.assign(n, 0.0);
                for (int i = 0; i < n; ++i) {
                    cert.d_left[rows[i]] = reduce_phase(cand.d_left[i] - target.d_left[i]);
                }
                for (int j = 0; j < n; ++j) {
                    cert.d_right[cols[j]] = reduce_phase(cand.d_right[j] - target.d_right[j]);
                }
                const CertificateCheck check = verify_certificate(h, h2, cert, tol);
                if (!check.ok) {
                    throw std::logic_error(
                        "equivalent_bruteforce: reconstructed certificate failed verification");
                }
                EquivalenceVerdict verdict;
                verdict.status = EquivalenceStatus::Equivalent;
                verdict.certificate = std::move(cert);
                verdict.residual = check.residual;
                verdict.method = "oracle";
                return verdict;
            }
        } while (std::next_permutation(cols.begin(), cols.end()));
    } while (std::next_permutation(rows.begin(), rows.end()));

    EquivalenceVerdict verdict;
    verdict.status = EquivalenceStatus::Distinct;
    verdict.residual = best_lower_bound;
    verdict.method = "oracle";
    return verdict;
}

EquivalenceVerdict invariant_distinguish(const ComplexMatrix& h, const ComplexMatrix& h2,
                                         double tol) {
    if (h.dim() != h2.dim()) {
        throw std::invalid_argument("invariant_distinguish: dimension mismatch");
    }
    const std::vector<double> fa = haagerup_fingerprint(h, tol);
    const std::vector<double> fb = haagerup_fingerprint(h2, tol);
    EquivalenceVerdict verdict;
    verdict.method = "invariant";
    if (fa != fb) {
        verdict.status = EquivalenceStatus::Distinct;
        std::size_t mismatches = 0;
        for (std::size_t i = 0; i < fa.size(); ++i) {
            if (fa[i] != fb[i]) ++mismatches;
        }
        verdict.residual = static_cast<double>(mismatches) / static_cast<double>(fa.size());
    } else {
        verdict.status = EquivalenceStatus::Inconclusive;
        verdict.residual = 0.0;
    }
    return verdict;
}

}  // namespace chm
