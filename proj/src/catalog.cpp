#include "chm/catalog.hpp"

#include <cmath>
#include <stdexcept>

#include "chm/constructions.hpp"
#include "chm/hadamard.hpp"

namespace chm {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

ComplexMatrix dita6_sample() {
    // Fixed warped-tensor sample: outer F_2, inners F_3, one diagonal with
    // rational phases 11/60 and 29/60 of a turn (exact-phase storable).
    DitaSpec spec{fourier(2),
                  {fourier(3), fourier(3)},
                  {{0.0, 2.0 * kPi * 11.0 / 60.0, 2.0 * kPi * 29.0 / 60.0}}};
    return dita(spec);
}

double parse_tol(const std::string& property) {
    const auto at = property.find('@');
    if (at == std::string::npos) return kDefaultTol;
    return std::stod(property.substr(at + 1));
}

std::vector<CatalogEntry> make_catalog() {
    std::vector<CatalogEntry> entries;
    const std::vector<std::string> hadamard_props = {"hadamard@1e-12", "dephased@1e-12",
                                                     "unbiased-vs-identity@1e-9"};

    for (int n = 2; n <= 12; ++n) {
        entries.push_back({"F" + std::to_string(n), "Fourier matrix, dimension " + std::to_string(n),
                           [n] { return fourier(n); }, hadamard_props});
    }
    entries.push_back({"H4_z1", "4x4 family at z = 1 (the real Hadamard matrix)",
                       [] { return hadamard4(Complex(1.0, 0.0)); }, hadamard_props});
    entries.push_back({"H4_zi", "4x4 family at z = i (the Fourier matrix)",
                       [] { return hadamard4(Complex(0.0, 1.0)); }, hadamard_props});
    entries.push_back({"H4_zpi5", "4x4 family at z = e^{i pi/5}",
                       [] { return hadamard4(std::polar(1.0, kPi / 5.0)); }, hadamard_props});
    entries.push_back({"F2xF2", "Tensor product F_2 (x) F_2",
                       [] { return tensor(fourier(2), fourier(2)); }, hadamard_props});
    entries.push_back({"F2xF3", "Tensor product F_2 (x) F_3",
                       [] { return tensor(fourier(2), fourier(3)); }, hadamard_props});
    entries.push_back({"F3xF4", "Tensor product F_3 (x) F_4",
                       [] { return tensor(fourier(3), fourier(4)); }, hadamard_props});
    entries.push_back({"dita6_sample", "6x6 warped tensor product with fixed diagonal phases",
                       dita6_sample, hadamard_props});
    return entries;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = make_catalog();
    return entries;
}

const CatalogEntry* find_catalog_entry(const std::string& name) {
    for (const CatalogEntry& entry : catalog()) {
        if (entry.name == name) return &entry;
    }
    return nullptr;
}

std::vector<PropertyCheckResult> verify_entry(const CatalogEntry& entry) {
    const ComplexMatrix m = entry.build();
    std::vector<PropertyCheckResult> results;
    for (const std::string& property : entry.expected_properties) {
        const double tol = parse_tol(property);
        PropertyCheckResult result;
        result.property = property;
        if (property.rfind("hadamard", 0) == 0) {
            const ValidationReport report = is_hadamard(m, tol);
            result.passed = report.is_hadamard();
            result.residual =
                std::max(report.max_unitarity_residual, report.max_modulus_deviation);
        } else if (property.rfind("dephased", 0) == 0) {
            // First row and column must already be positive real 1/sqrt(n).
            const int n = m.dim();
            const double target = 1.0 / std::sqrt(static_cast<double>(n));
            double dev = 0.0;
            for (int i = 0; i < n; ++i) {
                dev = std::max(dev, std::abs(m(i, 0) - Complex(target, 0.0)));
                dev = std::max(dev, std::abs(m(0, i) - Complex(target, 0.0)));
            }
            result.passed = dev <= tol;
            result.residual = dev;
        } else if (property.rfind("unbiased-vs-identity", 0) == 0) {
            const UnbiasednessReport report =
                unbiasedness(ComplexMatrix::identity(m.dim()), m, tol);
            result.passed = report.unbiased;
            result.residual = report.max_deviation;
        } else {
            throw std::logic_error("verify_entry: unknown property '" + property + "'");
        }
        results.push_back(std::move(result));
    }
    return results;
}

}  // namespace chm
