#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "kolmo/diagnostics.hpp"
#include "kolmo/exact.hpp"
#include "kolmo/integrator.hpp"
#include "kolmo/models.hpp"

namespace kolmo::io {

using json = nlohmann::json;

/// A configuration problem, reported as "<source>:<line>: <field>: <reason>".
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// JSON text plus where it came from, so errors can point at a line.
class ConfigSource {
public:
    ConfigSource(std::string text, std::string name);
    static ConfigSource from_file(const std::filesystem::path& path);

    const json& root() const { return root_; }
    const std::string& text() const { return text_; }
    const std::string& name() const { return name_; }

    /// 1-based line of the first occurrence of "key", or 0.
    int line_of(const std::string& key) const;
    [[noreturn]] void fail(const std::string& path, const std::string& reason) const;

private:
    std::string text_;
    std::string name_;
    json root_;
};

// Domain objects <-> JSON. Readers take the enclosing source for error locations.

AlphaSq alpha_sq_from_json(const json& j);
json to_json(const AlphaSq& a);

ExactSpec exact_spec_from_json(const json& j);
json to_json(const ExactSpec& spec);

TorusConfig torus_from_json(const json& j, const TorusConfig& defaults = {});
json to_json(const TorusConfig& c);

ModelSpec model_from_json(const json& j);
json to_json(const ModelSpec& m);

StepperConfig stepper_from_json(const json& j);

json to_json(const SweepReport& r);
json to_json(const CounterexampleReport& r);

// CSV ------------------------------------------------------------------------

/// 17 significant digits, the shortest form that round-trips a double.
std::string format_double(double v);

/// Columns t,l2,x,gradx2; x is the X-norm where defined and "nan" otherwise.
void write_tracks_csv(const std::filesystem::path& path, const Tracks& tracks);
/// Columns x,y,omega in row-major grid order (x outer).
void write_field_csv(const std::filesystem::path& path, const PhysicalField& field);
PhysicalField read_field_csv(const std::filesystem::path& path, const TorusConfig& grid);

/// UTF-8, sorted keys, two-space indent, trailing newline.
void write_json(const std::filesystem::path& path, const json& j);

// Manifests ------------------------------------------------------------------

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

struct RunManifest {
    std::string command;
    std::string config_digest;
    std::uint64_t seed = 0;
    std::string tool_version;
    std::string start_time;
    std::string end_time;
    std::vector<std::filesystem::path> outputs; // relative to the output directory

    /// Hashes every output and writes manifest.json into out_dir.
    void write(const std::filesystem::path& out_dir) const;
};

std::string utc_now();

} // namespace kolmo::io
