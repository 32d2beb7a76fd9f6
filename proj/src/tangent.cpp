#include "chm/tangent.hpp"

#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "chm/rng.hpp"
#include "svd_lapack.hpp"

namespace chm {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Below this norm the order-s inhomogeneity is rounding noise on a
// mathematically vanishing vector (all first-order data is unit-normalized),
// and the relative cokernel residual would be meaningless; such orders count
// as consistent with residual 0.
constexpr double kZeroInhomogeneityFloor = 1e-12;

struct PairIndex {
    int a;
    int b;
};

std::vector<PairIndex> row_pairs(int n) {
    std::vector<PairIndex> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
    }
    return pairs;
}

LinearizedSystem build_system(int n, double tol_rank, bool gauged) {
    if (n < 2) throw std::invalid_argument("build_linearized: n must be >= 2");
    if (tol_rank <= 0.0) throw std::invalid_argument("build_linearized: tol_rank must be positive");

    const std::vector<PairIndex> pairs = row_pairs(n);
    const int rows = 2 * static_cast<int>(pairs.size());
    const int cols = gauged ? (n - 1) * (n - 1) : n * n;
    const auto col_of = [&](int a, int j) -> int {
        if (gauged) {
            if (a == 0 || j == 0) return -1;
            return (a - 1) * (n - 1) + (j - 1);
        }
        return a * n + j;
    };

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto [a, b] = pairs[p];
        for (int j = 0; j < n; ++j) {
            // d/dphi of omega^{(a-b)j} e^{i(phi_aj - phi_bj)} at phi = 0.
            const int e = static_cast<int>((((static_cast<long long>(a) - b) * j) % n + n) % n);
            const Complex w = Complex(0.0, 1.0) * std::polar(1.0, kTwoPi * e / n);
            if (const int ca = col_of(a, j); ca >= 0) {
                m(2 * p, ca) += w.real();
                m(2 * p + 1, ca) += w.imag();
            }
            if (const int cb = col_of(b, j); cb >= 0) {
                m(2 * p, cb) -= w.real();
                m(2 * p + 1, cb) -= w.imag();
            }
        }
    }

    detail::FullSvd svd = detail::svd_full(m);
    const double sigma_max = svd.sigma.size() > 0 ? svd.sigma(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.sigma.size(); ++i) {
        if (svd.sigma(i) > tol_rank * sigma_max) ++rank;
    }

    LinearizedSystem sys;
    sys.n = n;
    sys.matrix = std::move(m);
    sys.svd_u = std::move(svd.u);
    sys.svd_v = std::move(svd.v);
    sys.svd_sigma = std::move(svd.sigma);
    sys.rank = rank;
    sys.kernel_basis = sys.svd_v.rightCols(cols - rank);
    sys.left_null_basis = sys.svd_u.rightCols(rows - rank);
    return sys;
}

/// Coefficients 0..order of exp(i * sum_r t^r a_r) given the real series a,
/// via m*e_m = i * sum_{r<=m} r*a_r*e_{m-r}.
void exp_series(const std::vector<double>& a, int order, std::vector<Complex>& out) {
    out.assign(order + 1, Complex(0.0, 0.0));
    out[0] = 1.0;
    for (int m = 1; m <= order; ++m) {
        Complex acc(0.0, 0.0);
        for (int r = 1; r <= m && r < static_cast<int>(a.size()); ++r) {
            acc += Complex(0.0, r * a[r]) * out[m - r];
        }
        out[m] = acc / static_cast<double>(m);
    }
}

ContinuationSample run_sample(const LinearizedSystem& sys, int max_order, double tol,
                              SplitMix64 rng) {
    Eigen::VectorXd coeffs(sys.kernel_dim());
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) coeffs(i) = rng.normal();
    Eigen::VectorXd phi1 = sys.kernel_basis * coeffs;
    phi1.normalize();
    const DirectionContinuation run = continue_direction(sys, phi1, max_order, tol);
    return ContinuationSample{run.residuals, run.breakdown};
}

}  // namespace

DirectionContinuation continue_direction(const LinearizedSystem& sys,
                                         const Eigen::VectorXd& phi1, int max_order,
                                         double tol) {
    const int n = sys.n;
    if (phi1.size() != sys.matrix.cols()) {
        throw std::invalid_argument("continue_direction: direction has wrong dimension");
    }
    const std::vector<PairIndex> pairs = row_pairs(n);

    DirectionContinuation run;
    run.orders.push_back(phi1);

    const std::size_t grid = static_cast<std::size_t>(n) * n;
    std::vector<std::vector<double>> series_a(grid);
    std::vector<std::vector<Complex>> series_e(grid);

    for (int s = 2; s <= max_order; ++s) {
        // Per-entry truncated series of exp(i * phi_aj(t)) built from orders
        // 1..s-1; the coefficient at t^s is then exactly the lower-order
        // contribution, with the unknown phi^(s) entering only linearly.
        for (int a = 1; a < n; ++a) {
            for (int j = 1; j < n; ++j) {
                std::vector<double>& coeff = series_a[static_cast<std::size_t>(a) * n + j];
                coeff.assign(s, 0.0);
                for (int r = 1; r < s; ++r) {
                    coeff[r] = run.orders[r - 1]((a - 1) * (n - 1) + (j - 1));
                }
            }
        }
        for (int a = 0; a < n; ++a) {
            for (int j = 0; j < n; ++j) {
                const std::size_t idx = static_cast<std::size_t>(a) * n + j;
                if (a == 0 || j == 0) {
                    series_e[idx].assign(s + 1, Complex(0.0, 0.0));
                    series_e[idx][0] = 1.0;  // gauge-fixed phases stay zero
                } else {
                    exp_series(series_a[idx], s, series_e[idx]);
                }
            }
        }

        Eigen::VectorXd b(2 * static_cast<Eigen::Index>(pairs.size()));
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const auto [a, bb] = pairs[p];
            Complex total(0.0, 0.0);
            for (int j = 0; j < n; ++j) {
                const std::vector<Complex>& ea = series_e[static_cast<std::size_t>(a) * n + j];
                const std::vector<Complex>& eb = series_e[static_cast<std::size_t>(bb) * n + j];
                Complex conv(0.0, 0.0);
                for (int m = 0; m <= s; ++m) conv += ea[m] * std::conj(eb[s - m]);
                const int e =
                    static_cast<int>((((static_cast<long long>(a) - bb) * j) % n + n) % n);
                total += std::polar(1.0, kTwoPi * e / n) * conv;
            }
            b(2 * p) = -total.real();
            b(2 * p + 1) = -total.imag();
        }

        const double b_norm = b.norm();
        double residual = 0.0;
        if (b_norm > kZeroInhomogeneityFloor) {
            residual = (sys.left_null_basis.transpose() * b).norm() / std::max(b_norm, 1e-300);
        }
        run.residuals.push_back(residual);
        if (residual > tol) {
            run.breakdown = s;
            break;
        }
        run.orders.push_back(b_norm > kZeroInhomogeneityFloor
                                 ? sys.solve_min_norm(b)
                                 : Eigen::VectorXd::Zero(sys.matrix.cols()).eval());
    }
    return run;
}

Eigen::VectorXd LinearizedSystem::solve_min_norm(const Eigen::VectorXd& b) const {
    Eigen::VectorXd y = svd_u.transpose() * b;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(matrix.cols());
    for (int i = 0; i < rank; ++i) x += (y(i) / svd_sigma(i)) * svd_v.col(i);
    return x;
}

long long defect_formula(int n) {
    if (n < 1) throw std::invalid_argument("defect_formula: n must be >= 1");
    long long sum = 0;
    for (int k = 0; k < n; ++k) sum += std::gcd(k, n);  // gcd(0, n) = n
    return sum;
}

long long dephased_bound(int n) { return defect_formula(n) - (2LL * n - 1); }

LinearizedSystem build_linearized(int n, double tol_rank) { return build_system(n, tol_rank, true); }

LinearizedSystem build_linearized_ungauged(int n, double tol_rank) {
    return build_system(n, tol_rank, false);
}

DefectReport defect_numeric(int n, double tol_rank) {
    const LinearizedSystem sys = build_linearized(n, tol_rank);
    DefectReport report;
    report.n = n;
    report.d1_formula = defect_formula(n);
    report.dephased_bound = dephased_bound(n);
    report.kernel_dim_numeric = sys.kernel_dim();
    report.agree = report.kernel_dim_numeric == report.dephased_bound;
    return report;
}

ContinuationReport continue_orders(int n, int max_order, int samples, std::uint64_t seed,
                                   double tol, int threads) {
    if (n < 2) throw std::invalid_argument("continue_orders: n must be >= 2");
    if (max_order < 2) throw std::invalid_argument("continue_orders: max_order must be >= 2");
    if (samples < 1) throw std::invalid_argument("continue_orders: samples must be >= 1");
    if (tol <= 0.0) throw std::invalid_argument("continue_orders: tol must be positive");

    ContinuationReport report;
    report.n = n;
    report.max_order = max_order;
    report.samples = samples;
    report.seed = seed;
    report.tolerance = tol;

    const LinearizedSystem sys = build_linearized(n);
    if (sys.kernel_dim() == 0) {
        report.note = "isolated point";
        return report;
    }
    if (n == 10 && max_order >= 11) {
        // the order-11 consistency conditions at n = 10 accumulate eleven
        // orders of multinomial arithmetic
        report.note = "extended-precision-recommended";
    }

    report.per_sample.resize(samples);
    const int workers = std::max(1, std::min(threads, samples));
    if (workers == 1) {
        for (int k = 0; k < samples; ++k) {
            report.per_sample[k] = run_sample(sys, max_order, tol, SplitMix64::stream(seed, k));
        }
    } else {
        // Samples are independent and keyed by index, so the partition does
        // not affect the report.
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (int k = next.fetch_add(1); k < samples; k = next.fetch_add(1)) {
                    report.per_sample[k] =
                        run_sample(sys, max_order, tol, SplitMix64::stream(seed, k));
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    for (int s = 2; s <= max_order && !report.breakdown_order; ++s) {
        int flagged = 0;
        for (const ContinuationSample& sample : report.per_sample) {
            const int idx = s - 2;
            if (idx < static_cast<int>(sample.residuals.size()) &&
                sample.residuals[idx] > tol) {
                ++flagged;
            }
        }
        if (2 * flagged > samples) report.breakdown_order = s;
    }
    return report;
}

long long conjectured_dimension(int p1, int p2) {
    if (!is_prime(p1) || !is_prime(p2)) {
        throw std::invalid_argument("conjectured_dimension: p1 and p2 must be prime");
    }
    if (p1 == p2) {
        throw std::invalid_argument("conjectured_dimension: p1 and p2 must be distinct");
    }
    const long long a = p1;
    const long long b = p2;
    return 3 * a * b * b - 3 * a * b - 2 * b * b + b + 1;
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

}  // namespace chm
