#pragma once

#include "amalgam/exponents.hpp"
#include "amalgam/kernel.hpp"
#include "amalgam/verify.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace amalgam::report {

/// Shortest decimal that round-trips; "inf", "-inf", "nan" for non-finite values.
std::string format_double(double v);

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& cells);

private:
    std::ofstream out_;
    std::size_t columns_;
};

nlohmann::json to_json(const propagator::KernelSamples& k);
nlohmann::json to_json(const propagator::DecayProfile& p);

/// Columns t, value, est_error, divergent.
void write_csv(const std::filesystem::path& path, const propagator::DecayProfile& p);
void write_csv(const std::filesystem::path& path, const propagator::KernelSamples& k);
/// Columns inv_qt, inv_rt, inv_q, inv_r, accepted, boundary.
void write_mesh_csv(const std::filesystem::path& path, const exponents::RegionScan& scan);

/// manifest.json: written with status "incomplete" before any result, then completed.
class RunManifest {
public:
    RunManifest(std::filesystem::path dir, std::string command, nlohmann::json parameters);
    void add_output(const std::string& name);
    void set(const std::string& key, nlohmann::json value);
    /// status is "complete" or "failed".
    void finish(const std::string& status);
    const std::filesystem::path& dir() const { return dir_; }

private:
    void write() const;
    std::filesystem::path dir_;
    nlohmann::json body_;
    std::chrono::steady_clock::time_point start_;
};

} // namespace amalgam::report
