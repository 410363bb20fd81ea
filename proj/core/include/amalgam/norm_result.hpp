#pragma once

#include <nlohmann/json.hpp>

#include <limits>
#include <string>
#include <vector>

namespace amalgam {

/// A computed norm together with the metadata needed to reproduce it.
struct NormResult {
    double value = 0.0;
    /// Human readable space, e.g. "L^3" or "W(L^2,L^4)".
    std::string space;
    nlohmann::json exponents = nlohmann::json::object();
    nlohmann::json grid = nlohmann::json::object();
    nlohmann::json window = nlohmann::json::object();
    /// Relative discretization error estimate; NaN when no estimate applies.
    double est_error = std::numeric_limits<double>::quiet_NaN();
    /// Set when the outer sum does not settle on the working box.
    bool divergent = false;
    std::vector<std::string> warnings;
};

nlohmann::json to_json(const NormResult& r);

} // namespace amalgam
