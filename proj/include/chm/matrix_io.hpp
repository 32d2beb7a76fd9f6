#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "chm/equivalence.hpp"

namespace chm {

/// Raised for malformed matrix/certificate files; the message names the
/// offending field (or the line for syntax errors).
class MatrixFileError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class MatrixRepresentation { Cartesian, ExactPhase };

struct MatrixMetadata {
    std::string name;
    std::string provenance;
};

/// Reduced fraction p/q, 0 <= p < q, meaning the phase factor e^{2*pi*i*p/q}.
struct RationalPhase {
    long long p = 0;
    long long q = 1;
};

/// Best rational approximation p/q (q <= max_den) of the phase of z on the
/// unit circle, accepted only when |arg(z) - 2*pi*p/q| <= tol circularly.
std::optional<RationalPhase> rational_phase_of(Complex z, long long max_den = 1000000,
                                               double tol = 1e-12);

/// Versioned on-disk matrix format. Cartesian files hold n^2 re/im decimal
/// pairs; exact-phase files hold the global scale 1/sqrt(n) plus n^2 reduced
/// rationals p/q meaning e^{2*pi*i*p/q}. Exact-phase requires every entry to
/// be unimodular*1/sqrt(n) with a phase matching a rational of denominator
/// <= 10^6 within 1e-12.
nlohmann::json matrix_to_json(const ComplexMatrix& m, MatrixRepresentation repr,
                              const MatrixMetadata& meta = {});
ComplexMatrix matrix_from_json(const nlohmann::json& doc);

void save_matrix(const ComplexMatrix& m, const std::string& path, MatrixRepresentation repr,
                 const MatrixMetadata& meta = {});
ComplexMatrix load_matrix(const std::string& path);

nlohmann::json certificate_to_json(const EquivalenceCertificate& cert);
EquivalenceCertificate certificate_from_json(const nlohmann::json& doc);
void save_certificate(const EquivalenceCertificate& cert, const std::string& path);
EquivalenceCertificate load_certificate(const std::string& path);

}  // namespace chm
