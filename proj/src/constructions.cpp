#include "chm/constructions.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "chm/tangent.hpp"

namespace chm {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Modular inverse via extended Euclid; requires gcd(a, m) = 1.
long long mod_inverse(long long a, long long m) {
    if (m == 1) return 0;
    long long old_r = a % m, r = m;
    long long old_s = 1, s = 0;
    while (r != 0) {
        const long long q = old_r / r;
        long long tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
    return ((old_s % m) + m) % m;
}

}  // namespace

ComplexMatrix hadamard4(Complex z) {
    if (std::abs(std::abs(z) - 1.0) > 1e-12) {
        throw std::invalid_argument("hadamard4: z must be unimodular");
    }
    Eigen::MatrixXcd h(4, 4);
    h << 1, 1, 1, 1,
         1, z, -1, -z,
         1, -1, 1, -1,
         1, -z, -1, z;
    return ComplexMatrix(0.5 * h);
}

ComplexMatrix dita(const DitaSpec& spec) {
    const int n1 = spec.outer.dim();
    if (static_cast<int>(spec.inners.size()) != n1) {
        throw std::invalid_argument("dita: expected one inner matrix per outer column");
    }
    const int n2 = spec.inners.front().dim();
    for (const ComplexMatrix& inner : spec.inners) {
        if (inner.dim() != n2) throw std::invalid_argument("dita: inner dimension mismatch");
    }
    if (static_cast<int>(spec.diagonals.size()) != n1 - 1) {
        throw std::invalid_argument("dita: expected N1-1 diagonal phase rows");
    }
    for (const std::vector<double>& d : spec.diagonals) {
        if (static_cast<int>(d.size()) != n2) {
            throw std::invalid_argument("dita: diagonal length mismatch");
        }
        if (d.front() != 0.0) {
            throw std::invalid_argument("dita: each diagonal must start with phase 0");
        }
    }
    if (!is_hadamard(spec.outer).is_hadamard()) {
        throw std::invalid_argument("dita: outer factor is not Hadamard");
    }
    for (const ComplexMatrix& inner : spec.inners) {
        if (!is_hadamard(inner).is_hadamard()) {
            throw std::invalid_argument("dita: inner factor is not Hadamard");
        }
    }

    Eigen::MatrixXcd out(n1 * n2, n1 * n2);
    for (int b = 0; b < n1; ++b) {
        Eigen::MatrixXcd warped = spec.inners[b].mat();
        if (b > 0) {
            for (int j = 0; j < n2; ++j) {
                warped.row(j) *= std::polar(1.0, spec.diagonals[b - 1][j]);
            }
        }
        for (int a = 0; a < n1; ++a) {
            out.block(a * n2, b * n2, n2, n2) = spec.outer(a, b) * warped;
        }
    }
    return ComplexMatrix(std::move(out));
}

EquivalenceCertificate crt_certificate(int n1, int n2) {
    if (n1 < 1 || n2 < 1) throw std::invalid_argument("crt_certificate: factors must be >= 1");
    if (std::gcd(n1, n2) != 1) {
        throw std::invalid_argument(
            "crt_certificate: factors are not coprime (the Fourier matrices are then "
            "inequivalent)");
    }
    const int n = n1 * n2;
    const long long mu1 = n1 > 1 ? mod_inverse(n2 % n1, n1) : 0;
    const long long mu2 = n2 > 1 ? mod_inverse(n1 % n2, n2) : 0;

    EquivalenceCertificate cert;
    cert.p_left.resize(n);
    cert.p_right.resize(n);
    cert.d_left.assign(n, 0.0);
    cert.d_right.assign(n, 0.0);
    for (int r = 0; r < n; ++r) {
        const long long a1 = r / n2;
        const long long a2 = r % n2;
        cert.p_left[r] = static_cast<int>((a1 * n2 + a2 * n1) % n);
        cert.p_right[r] = static_cast<int>((a1 * mu1 % n * n2 + a2 * mu2 % n * n1) % n);
    }
    return cert;
}

MubSet mub_prime(int p) {
    if (!is_prime(p)) {
        throw std::invalid_argument("mub_prime: p must be prime (construction not claimed "
                                    "for composite dimensions)");
    }
    MubSet set;
    set.n = p;
    set.bases.push_back(ComplexMatrix::identity(p));
    if (p == 2) {
        // The quadratic-phase formula needs odd characteristic; the third
        // qubit basis is the standard +/-i pair.
        set.bases.push_back(fourier(2));
        Eigen::MatrixXcd third(2, 2);
        const double s = 1.0 / std::sqrt(2.0);
        third << Complex(s, 0), Complex(s, 0),
                 Complex(0, s), Complex(0, -s);
        set.bases.push_back(ComplexMatrix(std::move(third)));
    } else {
        const ComplexMatrix f = fourier(p);
        for (int m = 0; m < p; ++m) {
            Eigen::MatrixXcd basis = f.mat();
            for (int j = 0; j < p; ++j) {
                const long long e = (static_cast<long long>(m) * j % p) * j % p;
                basis.row(j) *= std::polar(1.0, kTwoPi * static_cast<double>(e) / p);
            }
            set.bases.push_back(ComplexMatrix(std::move(basis)));
        }
    }
    const MubCheck check = mub_check(set.bases);
    set.pairwise_unbiased = check.ok;
    set.worst_deviation = check.worst_deviation;
    return set;
}

MubCheck mub_check(const std::vector<ComplexMatrix>& bases, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("mub_check: tol must be positive");
    MubCheck result;
    result.ok = true;
    for (const ComplexMatrix& basis : bases) {
        if (orthonormality_residual(basis) > tol) {
            result.ok = false;
            return result;
        }
    }
    for (std::size_t i = 0; i < bases.size(); ++i) {
        for (std::size_t j = i + 1; j < bases.size(); ++j) {
            const UnbiasednessReport rep = unbiasedness(bases[i], bases[j], tol);
            result.worst_deviation = std::max(result.worst_deviation, rep.max_deviation);
            if (!rep.unbiased) result.ok = false;
        }
    }
    return result;
}

MubCheck mub_check(const MubSet& set, double tol) { return mub_check(set.bases, tol); }

}  // namespace chm
