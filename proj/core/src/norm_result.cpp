#include "amalgam/norm_result.hpp"

#include <cmath>

namespace amalgam {

nlohmann::json to_json(const NormResult& r) {
    nlohmann::json j;
    j["value"] = std::isfinite(r.value) ? nlohmann::json(r.value) : nlohmann::json("inf");
    j["space"] = r.space;
    j["exponents"] = r.exponents;
    j["grid"] = r.grid;
    j["window"] = r.window;
    j["est_error"] = std::isnan(r.est_error) ? nlohmann::json(nullptr) : nlohmann::json(r.est_error);
    j["divergent"] = r.divergent;
    if (!r.warnings.empty()) j["warnings"] = r.warnings;
    return j;
}

} // namespace amalgam
