#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "vkg/field.hpp"
#include "vkg/kinetic.hpp"
#include "vkg/specfun.hpp"

namespace vkg {

/// Raw data of the coupled problem: f0 and the unmollified field data.
struct InitialData {
    DensityPtr density;
    FieldData field; ///< u(0) and d_t u(0) before smoothing
};

/// Everything that defines one time window of the regularized problem.
/// The first window starts at t0 = 0 with u(0) = u1 * delta, d_t u(0) = u2 * delta
/// and the companion field data u1 * d, u2 * d.
struct WindowData {
    double t0 = 0.0;
    DensityPtr density;
    ForcePtr history;      ///< force on [0, t0] in absolute time; null when t0 = 0
    FieldData field;       ///< data of u at t0
    FieldData companion;   ///< data of the companion field (source -rho * d) at t0
};

enum class Geometry { Radial, Box };

struct IterationConfig {
    double horizon = 0.5;
    std::size_t steps_per_unit = 64;   ///< time nodes and characteristic steps per unit time
    Geometry geometry = Geometry::Radial;
    double moment_spacing = 1.0 / 32.0;
    double field_spacing = 1.0 / 64.0;
    double data_spacing = 1.0 / 256.0; ///< grid of the mollified radial data
    double box_spacing = 0.125;        ///< lattice spacing in box geometry
    MomentQuadrature momentum{16};
    SolverSpec solver{};
    std::size_t max_iterations = 8;
    double gap_tolerance = 1e-4;
    std::size_t gap_samples = 4096;
    std::size_t gap_momentum_nodes = 6; ///< momentum nodes per axis of the lattice part of the gap set
    std::uint64_t seed = 0;
    std::string checkpoint_dir;         ///< source history per iteration when non-empty

    std::size_t time_steps() const;
    std::vector<double> time_nodes() const;
    double time_step() const { return horizon / static_cast<double>(time_steps()); }
    void validate() const;
};

struct PhaseTimings {
    double source = 0.0;
    double field = 0.0;
    double kinetic = 0.0;
    double gap = 0.0;
};

struct ConvergenceReport {
    std::vector<double> gaps;     ///< sup |f_{k+1} - f_k| over the sample set, k = 0, 1, ...
    std::vector<double> rho_gaps; ///< sup |rho_{k+1} - rho_k| on the moment lattice
    std::size_t iterations = 0;
    bool converged = false;
    PhaseTimings timings{};
};

/// One Picard iterate: the kinetic state f_k (pullback through the force of
/// u_{k-1}, or f0 itself for k = 0) and its moments.
struct Iterate {
    std::size_t index = 0;
    ForcePtr force;                 ///< absolute-time force transporting f_k; null for k = 0
    std::shared_ptr<const RadialMomentTable> moments;
    SourcePtr source;               ///< -rho_{k-1} * delta that produced the force
    std::shared_ptr<const FieldSolution> field;
    double gap = 0.0;
};

/// Converged regularized solution on one window [t0, t0 + T].
struct RegularizedSolution {
    WindowData window;
    IterationConfig config;
    int mollifier_index = 0;
    std::vector<double> times;      ///< local time nodes on [0, T]
    ForcePtr kinetic_force;         ///< absolute-time force of the final f; null for the static state
    std::shared_ptr<const RadialMomentTable> moments;   ///< moments of the final f at local times
    std::shared_ptr<const RadialSourceHistory> source;  ///< -rho * delta
    std::shared_ptr<const FieldSolution> field;         ///< u with source -rho * delta (local time)
    std::shared_ptr<const RadialFieldTable> field_table;
    ConvergenceReport report;

    /// f at local time t.
    KineticState state(double t_local) const;
    double horizon() const { return config.horizon; }
};

/// Mollifies radial data by radial convolution with the given kernel.
SpatialFunctionPtr mollify(const SpatialFunction& g, const RadialKernel& kernel, double spacing);

/// First window: smooths the raw field data with delta (and d for the companion).
WindowData make_initial_window(const InitialData& data, const Mollifier& mollifier, double data_spacing = 1.0 / 256.0);

/// -(rho * kernel) on a radial grid for every row of the moment table.
std::shared_ptr<const RadialSourceHistory> build_radial_source(const RadialMomentTable& moments,
                                                               const RadialKernel& kernel, double spacing,
                                                               std::size_t cells);

/// -(rho * delta) on a box lattice by 3D convolution quadrature against the
/// support ball of delta; rho is given on the same lattice per time node.
SourceHistory build_source(const std::vector<double>& times, const std::vector<std::vector<double>>& rho,
                           const Mollifier& mollifier, const BoxLattice& lattice, double support_radius);

/// Radius R_u of the field data support plus the source support over the window.
double field_extent(const WindowData& window, const IterationConfig& cfg, int mollifier_index);

/// One Picard step: moments of prev -> source -> field -> next pullback.
Iterate iterate_once(const Iterate& prev, const WindowData& window, const IterationConfig& cfg,
                     const Mollifier& mollifier);

/// Sup over the gap sample set of |f_a - f_b| on [0, T].
double sup_gap(const WindowData& window, const ForcePtr& a, const ForcePtr& b, const IterationConfig& cfg);

RegularizedSolution run_picard(const WindowData& window, const IterationConfig& cfg, const Mollifier& mollifier);

/// Data for the window following `sol`: f0 pulled back through the chained
/// force, field data and companion data evaluated at the end of the window.
/// The restart samples u(T) and d_t u(T) on the data grid, so it is only a
/// C^1-accurate continuation of the single-window construction.
WindowData next_window(const RegularizedSolution& sol, const FieldSolution& companion);

/// Companion field of the energy identity: source -rho * d, data of the window.
std::shared_ptr<const FieldSolution> solve_companion(const RegularizedSolution& sol, const Mollifier& mollifier);

/// Force over [0, t0 + late.horizon]: `early` before t0, `late` shifted by t0 after.
ForcePtr make_chained_force(ForcePtr early, ForcePtr late, double t0);

} // namespace vkg
