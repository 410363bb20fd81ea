#pragma once

#include "amalgam/grid.hpp"
#include "amalgam/wiener.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace amalgam::verify {

struct PropertyOutcome {
    std::string name;
    std::size_t trials = 0;
    std::size_t failures = 0;
    /// JSON dump of the first failing case.
    std::string counterexample;
};

struct PropertyReport {
    std::uint64_t seed = 0;
    std::size_t corpus = 0;
    std::vector<PropertyOutcome> outcomes;

    bool passed() const;
    nlohmann::json to_json() const;
};

using AmalgamNormFn = std::function<double(const grid::SampledField&, double p, double q, const wiener::WindowSpec&)>;

enum class Corpus { mixed, spikes };

struct SuiteOptions {
    std::uint64_t seed = 20240501;
    std::size_t corpus_size = 500;
    Corpus corpus = Corpus::mixed;
    /// Replaces wiener::amalgam_norm inside the suite (mutation testing of the harness).
    AmalgamNormFn amalgam_override;
};

/// Unit-cube amalgam properties: diagonal identity, homogeneity, triangle inequality, inclusion,
/// Hölder pairing, duality extremizer, convolution bound, weak <= strong, exact interpolation,
/// Parseval and p-monotonicity.
PropertyReport property_suite(const SuiteOptions& opts = {});

} // namespace amalgam::verify
