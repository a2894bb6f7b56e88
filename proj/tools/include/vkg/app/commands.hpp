#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vkg/analysis.hpp"
#include "vkg/app/config.hpp"

namespace vkg::app {

enum ExitCode : int {
    kExitOk = 0,
    kExitThreshold = 1,
    kExitConfig = 2,
    kExitNotConverged = 3,
};

/// Command-line overrides applied on top of the config file.
struct RunOptions {
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    bool force = false;
};

/// Everything computed by one simulate pipeline.
struct RunArtifacts {
    int mollifier_index = 0;
    ThresholdReport threshold;
    RegularizedSolution solution;
    std::shared_ptr<const FieldSolution> companion;
    std::vector<std::size_t> energy_nodes;
    std::vector<EnergyBreakdown> energy;
    std::vector<double> mass_drift;
    std::vector<InequalityReport> interaction, rho65;
    std::vector<AprioriReport> apriori; ///< empty when the threshold fails
    std::vector<ResidualRow> residuals;

    bool converged() const { return solution.report.converged; }
    double max_energy_drift() const;
    double max_mass_drift() const;
};

ThresholdReport data_threshold(const RunConfig& cfg);

/// Evenly spaced node indices k_i = round(i N / (count - 1)), deduplicated.
std::vector<std::size_t> sample_nodes(std::size_t last_node, std::size_t count);

/// Picard solve with mollifier index n followed by the diagnostics; when the
/// iteration does not converge only the solution and report are filled.
RunArtifacts run_pipeline(const RunConfig& cfg, int n, std::ostream& log);

/// manifest.json, energy.csv, inequalities.csv, residuals.csv,
/// convergence.csv and snapshot_<i>.csv under dir.
void write_artifacts(const RunArtifacts& run, const RunConfig& cfg, const std::string& dir);

/// Order-independent summary values of a run, also used by refine.
nlohmann::json run_summary(const RunArtifacts& run);

int cmd_check_data(const RunConfig& cfg, std::ostream& out);
int cmd_simulate(const RunConfig& cfg, const RunOptions& opt, std::ostream& out, std::ostream& err);
int cmd_refine(const RunConfig& cfg, const RunOptions& opt, std::ostream& out, std::ostream& err);

/// Full command-line entry point (check-data | simulate | refine).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace vkg::app
