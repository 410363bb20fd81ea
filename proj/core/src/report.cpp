#include "amalgam/report.hpp"

#include "amalgam/version.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace amalgam::report {
namespace {

nlohmann::json number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

nlohmann::json complex_list(const std::vector<std::complex<double>>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& z : v) a.push_back({number(z.real()), number(z.imag())});
    return a;
}

nlohmann::json number_list(const std::vector<double>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (double x : v) a.push_back(number(x));
    return a;
}

} // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary), columns_(header.size()) {
    if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw std::invalid_argument("CSV row width differs from the header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        const auto& c = cells[i];
        if (c.find_first_of(",\"\n") != std::string::npos) {
            out_ << '"';
            for (char ch : c) out_ << (ch == '"' ? std::string("\"\"") : std::string(1, ch));
            out_ << '"';
        } else {
            out_ << c;
        }
    }
    out_ << '\n';
    if (!out_) throw std::runtime_error("CSV write failed");
}

nlohmann::json to_json(const propagator::KernelSamples& k) {
    return {{"n", k.n},
            {"sigma", k.sigma},
            {"gamma", k.gamma},
            {"t", k.t},
            {"radii", number_list(k.radii)},
            {"values", complex_list(k.values)},
            {"errors", number_list(k.errors)},
            {"est_error", number(k.est_error)},
            {"converged", k.converged},
            {"schedule", k.schedule.to_json()}};
}

nlohmann::json to_json(const propagator::DecayProfile& p) {
    nlohmann::json div = nlohmann::json::array();
    for (bool d : p.divergent) div.push_back(d);
    return {{"n", p.n},
            {"sigma", to_string(p.sigma)},
            {"rt", p.rt.str()},
            {"r", p.r.str()},
            {"times", number_list(p.times)},
            {"values", number_list(p.values)},
            {"errors", number_list(p.errors)},
            {"divergent", div},
            {"converged", p.converged},
            {"grid", p.grid},
            {"window", p.window}};
}

void write_csv(const std::filesystem::path& path, const propagator::DecayProfile& p) {
    CsvWriter w(path, {"t", "value", "est_error", "divergent"});
    for (std::size_t i = 0; i < p.times.size(); ++i)
        w.row({format_double(p.times[i]), format_double(p.values[i]),
               format_double(i < p.errors.size() ? p.errors[i] : std::nan("")),
               i < p.divergent.size() && p.divergent[i] ? "1" : "0"});
}

void write_csv(const std::filesystem::path& path, const propagator::KernelSamples& k) {
    CsvWriter w(path, {"radius", "re", "im", "abs", "abs_error"});
    for (std::size_t i = 0; i < k.radii.size(); ++i)
        w.row({format_double(k.radii[i]), format_double(k.values[i].real()), format_double(k.values[i].imag()),
               format_double(std::abs(k.values[i])), format_double(k.errors[i])});
}

void write_mesh_csv(const std::filesystem::path& path, const exponents::RegionScan& scan) {
    CsvWriter w(path, {"inv_qt", "inv_rt", "inv_q", "inv_r", "accepted", "boundary"});
    for (const auto& m : scan.mesh)
        w.row({to_string(m.reciprocals[0]), to_string(m.reciprocals[1]), to_string(m.reciprocals[2]),
               to_string(m.reciprocals[3]), m.accepted ? "1" : "0", m.boundary ? "1" : "0"});
}

RunManifest::RunManifest(std::filesystem::path dir, std::string command, nlohmann::json parameters)
    : dir_(std::move(dir)), start_(std::chrono::steady_clock::now()) {
    std::filesystem::create_directories(dir_);
    body_ = {{"command", command},
             {"tool_version", std::string(kVersion)},
             {"parameters", std::move(parameters)},
             {"status", "incomplete"},
             {"outputs", nlohmann::json::array()}};
    write();
}

void RunManifest::add_output(const std::string& name) { body_["outputs"].push_back(name); }

void RunManifest::set(const std::string& key, nlohmann::json value) { body_[key] = std::move(value); }

void RunManifest::finish(const std::string& status) {
    body_["status"] = status;
    body_["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    write();
}

void RunManifest::write() const {
    auto tmp = dir_ / "manifest.json.tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write manifest in " + dir_.string());
        os << body_.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, dir_ / "manifest.json");
}

} // namespace amalgam::report
