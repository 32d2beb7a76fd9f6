#include "chm/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace chm {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int kFormatVersion = 1;

double circular_distance(double x, double y) {
    double d = std::fabs(x - y);
    d = std::fmod(d, 1.0);
    return std::min(d, 1.0 - d);
}

[[noreturn]] void fail_field(const std::string& field, const std::string& what) {
    throw MatrixFileError("field '" + field + "': " + what);
}

const nlohmann::json& require(const nlohmann::json& doc, const std::string& field) {
    const auto it = doc.find(field);
    if (it == doc.end()) fail_field(field, "missing");
    return *it;
}

long long require_int(const nlohmann::json& doc, const std::string& field) {
    const nlohmann::json& v = require(doc, field);
    if (!v.is_number_integer()) fail_field(field, "expected integer");
    return v.get<long long>();
}

int line_of_offset(const std::string& text, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

}  // namespace

std::optional<RationalPhase> rational_phase_of(Complex z, long long max_den, double tol) {
    double frac = std::arg(z) / kTwoPi;
    frac -= std::floor(frac);
    if (frac >= 1.0) frac = 0.0;

    // Continued-fraction convergents of frac with denominators <= max_den.
    long long p_prev = 1, q_prev = 0;  // h_{-1}/k_{-1}
    long long p_cur = 0, q_cur = 1;    // h_0/k_0 for a_0 = 0 (frac in [0,1))
    double x = frac;
    long long best_p = 0, best_q = 1;
    double best_err = circular_distance(frac, 0.0);
    for (int step = 0; step < 64; ++step) {
        if (x < 1e-15) break;
        x = 1.0 / x;
        const double a_real = std::floor(x);
        if (a_real > 2e18) break;
        const long long a = static_cast<long long>(a_real);
        const long long p_next = a * p_cur + p_prev;
        const long long q_next = a * q_cur + q_prev;
        if (q_next > max_den || q_next <= 0) break;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
        const double err =
            circular_distance(frac, static_cast<double>(p_cur) / static_cast<double>(q_cur));
        if (err < best_err) {
            best_p = p_cur;
            best_q = q_cur;
            best_err = err;
        }
        x -= a_real;
    }
    if (best_err > tol / kTwoPi) return std::nullopt;

    RationalPhase r;
    r.q = best_q;
    r.p = ((best_p % best_q) + best_q) % best_q;
    const long long g = std::gcd(r.p, r.q);
    if (g > 1) {
        r.p /= g;
        r.q /= g;
    }
    return r;
}

nlohmann::json matrix_to_json(const ComplexMatrix& m, MatrixRepresentation repr,
                              const MatrixMetadata& meta) {
    const int n = m.dim();
    nlohmann::json doc;
    doc["format_version"] = kFormatVersion;
    doc["n"] = n;
    doc["metadata"] = {{"name", meta.name}, {"provenance", meta.provenance}};
    if (repr == MatrixRepresentation::Cartesian) {
        doc["representation"] = "cartesian";
        nlohmann::json entries = nlohmann::json::array();
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                entries.push_back({m(i, j).real(), m(i, j).imag()});
            }
        }
        doc["entries"] = std::move(entries);
    } else {
        doc["representation"] = "exact-phase";
        doc["scale_inv_sqrt"] = n;
        const double scale = 1.0 / std::sqrt(static_cast<double>(n));
        nlohmann::json phases = nlohmann::json::array();
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const Complex z = m(i, j);
                if (std::fabs(std::abs(z) - scale) > 1e-12) {
                    fail_field("phases", "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                             ") does not have modulus 1/sqrt(n)");
                }
                const std::optional<RationalPhase> r = rational_phase_of(z);
                if (!r) {
                    fail_field("phases", "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                             ") has no rational phase of denominator <= 10^6");
                }
                phases.push_back({r->p, r->q});
            }
        }
        doc["phases"] = std::move(phases);
    }
    return doc;
}

ComplexMatrix matrix_from_json(const nlohmann::json& doc) {
    if (require_int(doc, "format_version") != kFormatVersion) {
        fail_field("format_version", "unsupported version");
    }
    const long long n = require_int(doc, "n");
    if (n < 1 || n > 4096) fail_field("n", "dimension out of range");
    const nlohmann::json& repr = require(doc, "representation");
    if (!repr.is_string()) fail_field("representation", "expected string");

    Eigen::MatrixXcd m(n, n);
    if (repr == "cartesian") {
        const nlohmann::json& entries = require(doc, "entries");
        if (!entries.is_array() || entries.size() != static_cast<std::size_t>(n * n)) {
            fail_field("entries", "expected n^2 [re, im] pairs");
        }
        for (long long k = 0; k < n * n; ++k) {
            const nlohmann::json& pair = entries[k];
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
                !pair[1].is_number()) {
                fail_field("entries[" + std::to_string(k) + "]", "expected [re, im] pair");
            }
            m(k / n, k % n) = Complex(pair[0].get<double>(), pair[1].get<double>());
        }
    } else if (repr == "exact-phase") {
        if (require_int(doc, "scale_inv_sqrt") != n) {
            fail_field("scale_inv_sqrt", "scale must equal the dimension");
        }
        const nlohmann::json& phases = require(doc, "phases");
        if (!phases.is_array() || phases.size() != static_cast<std::size_t>(n * n)) {
            fail_field("phases", "expected n^2 [p, q] rationals");
        }
        const double scale = 1.0 / std::sqrt(static_cast<double>(n));
        for (long long k = 0; k < n * n; ++k) {
            const nlohmann::json& pair = phases[k];
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
                !pair[1].is_number_integer()) {
                fail_field("phases[" + std::to_string(k) + "]", "expected [p, q] integers");
            }
            const long long p = pair[0].get<long long>();
            const long long q = pair[1].get<long long>();
            if (q < 1 || p < 0 || p >= q) {
                fail_field("phases[" + std::to_string(k) + "]", "require 0 <= p < q, q >= 1");
            }
            if (std::gcd(p, q) != 1) {
                fail_field("phases[" + std::to_string(k) + "]", "p/q not in lowest terms");
            }
            m(k / n, k % n) =
                std::polar(scale, kTwoPi * (static_cast<double>(p) / static_cast<double>(q)));
        }
    } else {
        fail_field("representation", "expected \"cartesian\" or \"exact-phase\"");
    }
    return ComplexMatrix(std::move(m));
}

namespace {

nlohmann::json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MatrixFileError("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw MatrixFileError("parse error in '" + path + "' at line " +
                              std::to_string(line_of_offset(text, e.byte)) + ": " + e.what());
    }
}

void write_file(const nlohmann::json& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw MatrixFileError("cannot open '" + path + "' for writing");
    out << doc.dump(2) << "\n";
    if (!out) throw MatrixFileError("write failed for '" + path + "'");
}

}  // namespace

void save_matrix(const ComplexMatrix& m, const std::string& path, MatrixRepresentation repr,
                 const MatrixMetadata& meta) {
    write_file(matrix_to_json(m, repr, meta), path);
}

ComplexMatrix load_matrix(const std::string& path) { return matrix_from_json(parse_file(path)); }

nlohmann::json certificate_to_json(const EquivalenceCertificate& cert) {
    nlohmann::json doc;
    doc["format_version"] = kFormatVersion;
    doc["n"] = cert.dim();
    doc["p_left"] = cert.p_left;
    doc["d_left"] = cert.d_left;
    doc["d_right"] = cert.d_right;
    doc["p_right"] = cert.p_right;
    return doc;
}

EquivalenceCertificate certificate_from_json(const nlohmann::json& doc) {
    if (require_int(doc, "format_version") != kFormatVersion) {
        fail_field("format_version", "unsupported version");
    }
    const long long n = require_int(doc, "n");
    if (n < 1 || n > 4096) fail_field("n", "dimension out of range");
    EquivalenceCertificate cert;
    const auto read_perm = [&](const char* field, std::vector<int>& out) {
        const nlohmann::json& v = require(doc, field);
        if (!v.is_array() || v.size() != static_cast<std::size_t>(n)) {
            fail_field(field, "expected n integers");
        }
        std::vector<bool> seen(n, false);
        for (const nlohmann::json& e : v) {
            if (!e.is_number_integer()) fail_field(field, "expected integer entries");
            const long long k = e.get<long long>();
            if (k < 0 || k >= n || seen[k]) fail_field(field, "not a permutation of 0..n-1");
            seen[k] = true;
            out.push_back(static_cast<int>(k));
        }
    };
    const auto read_phases = [&](const char* field, std::vector<double>& out) {
        const nlohmann::json& v = require(doc, field);
        if (!v.is_array() || v.size() != static_cast<std::size_t>(n)) {
            fail_field(field, "expected n phases");
        }
        for (const nlohmann::json& e : v) {
            if (!e.is_number()) fail_field(field, "expected numeric entries");
            out.push_back(e.get<double>());
        }
    };
    read_perm("p_left", cert.p_left);
    read_phases("d_left", cert.d_left);
    read_phases("d_right", cert.d_right);
    read_perm("p_right", cert.p_right);
    return cert;
}

void save_certificate(const EquivalenceCertificate& cert, const std::string& path) {
    write_file(certificate_to_json(cert), path);
}

EquivalenceCertificate load_certificate(const std::string& path) {
    return certificate_from_json(parse_file(path));
}

}  // namespace chm
