#pragma once

#include <functional>
#include <string>
#include <vector>

#include "chm/complex_matrix.hpp"

namespace chm {

/// Named construction with fixed parameters and the checks it is expected to
/// pass. Property strings are "name@tol", e.g. "hadamard@1e-12".
struct CatalogEntry {
    std::string name;
    std::string description;
    std::function<ComplexMatrix()> build;
    std::vector<std::string> expected_properties;
};

struct PropertyCheckResult {
    std::string property;
    bool passed = false;
    double residual = 0.0;
};

/// Built-in matrices: F_2..F_12, the three H(z) samples, the tensor
/// products F_2xF_2, F_2xF_3, F_3xF_4 and a fixed 6x6 warped tensor sample.
const std::vector<CatalogEntry>& catalog();

const CatalogEntry* find_catalog_entry(const std::string& name);

/// Builds the entry and evaluates each expected property.
std::vector<PropertyCheckResult> verify_entry(const CatalogEntry& entry);

}  // namespace chm
