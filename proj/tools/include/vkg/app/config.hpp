#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vkg/analysis.hpp"
#include "vkg/picard.hpp"

namespace vkg::app {

/// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Radial field datum u(x) = amplitude * b(|x| / radius).
struct FieldBump {
    double amplitude = 0.0;
    double radius = 1.0;
    Bump1D bump{};

    bool operator==(const FieldBump&) const = default;
};

struct LatticeConfig {
    std::size_t steps_per_unit = 16;
    double moment_spacing = 1.0 / 64.0;
    double field_spacing = 1.0 / 128.0;
    double data_spacing = 1.0 / 256.0;
    std::size_t momentum_nodes = 16;
    std::size_t sphere_theta = 16;
    std::size_t sphere_phi = 32;
    std::size_t radial_nodes = 24;
    std::size_t time_per_panel = 2;
    std::size_t analytic_time_nodes = 32;
    double fd_step = 1e-3;

    bool operator==(const LatticeConfig&) const = default;
};

struct IterationSettings {
    std::size_t max_iterations = 8;
    double gap_tolerance = 1e-4;
    std::size_t gap_samples = 4096;
    std::size_t gap_momentum_nodes = 6;

    bool operator==(const IterationSettings&) const = default;
};

struct DiagnosticsConfig {
    std::size_t energy_samples = 8;
    std::size_t residual_tests = 12;   ///< leading rows of the default suite; 0 skips residuals
    std::size_t residual_time_nodes = 8;
    std::size_t residual_space_nodes = 10;
    std::size_t residual_momentum_nodes = 8;
    std::size_t snapshots = 3;         ///< evenly spaced in [0, T], capped by max_snapshots
    std::size_t max_snapshots = 16;

    bool operator==(const DiagnosticsConfig&) const = default;
};

struct RunConfig {
    DensityParams density{};
    double p = 0.0;                   ///< exponent of the threshold norm; infinity allowed
    FieldBump u1{}, u2{};             ///< u(0) and d_t u(0) before mollification
    int mollifier = 2;
    std::vector<int> refine{};        ///< mollifier indices for `refine`
    double horizon = 0.5;
    LatticeConfig lattice{};
    IterationSettings iteration{};
    DiagnosticsConfig diagnostics{};
    std::string output = "run";
    std::uint64_t seed = 0;

    RunConfig();
    bool operator==(const RunConfig&) const = default;

    /// Throws ConfigError when a module precondition cannot hold.
    void validate() const;

    InitialData initial_data() const;
    IterationConfig iteration_config() const;
    ResidualQuadrature residual_quadrature() const;
};

nlohmann::json to_json(const RunConfig& cfg);
/// Unknown keys are rejected; missing keys keep their defaults.
RunConfig from_json(const nlohmann::json& j);

RunConfig load_config(const std::string& path);
std::string serialize(const RunConfig& cfg);
RunConfig parse(const std::string& text);

} // namespace vkg::app
