#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "vkg/bump.hpp"
#include "vkg/field.hpp"
#include "vkg/quadrature.hpp"
#include "vkg/vec3.hpp"

namespace vkg {

/// Phase-space point z = (x, v).
struct PhasePoint {
    Vec3 x{};
    Vec3 v{};
    bool operator==(const PhasePoint&) const = default;
};

/// v / sqrt(1 + |v|^2).
Vec3 relativistic_velocity(const Vec3& v);

/// Fixed-step RK4 settings; the step is shortened so it divides |s - t|.
struct CharacteristicSpec {
    double step = 1.0 / 64.0;
};

/// Z(s, t, z): solution of x' = v_hat, v' = -grad u(s, x) through z at time t.
/// A null force means free streaming.
PhasePoint trace_characteristic(const ForceField* force, double t, const PhasePoint& z, double s,
                                const CharacteristicSpec& spec = {});

/// A number together with its quadrature error estimate.
struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

/// f(x, v) = A * b(|x| / R) * b(|v - v0| / W), a product of radial bumps.
struct DensityParams {
    double amplitude = 0.0;
    double space_radius = 0.5;
    double momentum_width = 1.0;
    Vec3 momentum_center{};
    Bump1D bump{};

    bool operator==(const DensityParams&) const = default;
};

class InitialDensity {
public:
    explicit InitialDensity(DensityParams params);

    const DensityParams& params() const { return params_; }
    double value(const PhasePoint& z) const;
    double value(const Vec3& x, const Vec3& v) const { return value(PhasePoint{x, v}); }
    bool is_zero() const { return params_.amplitude == 0.0; }
    bool is_radial() const { return norm(params_.momentum_center) == 0.0; }

    double space_radius() const { return params_.space_radius; }
    /// Radius of the ball about 0 containing the momentum support.
    double momentum_radius() const { return norm(params_.momentum_center) + params_.momentum_width; }

    const Estimate& norm_l1() const { return l1_; }
    const Estimate& norm_kin() const { return kin_; }
    /// L^p norm; p = infinity gives the sup norm.
    Estimate norm_p(double p) const;
    double sup() const { return sup_; }

    /// Spatial density rho(0, x) = A b(|x|/R) int b(|v - v0|/W) dv.
    double initial_rho(const Vec3& x) const;

private:
    DensityParams params_;
    Estimate l1_, kin_;
    double sup_ = 0.0;
};

using DensityPtr = std::shared_ptr<const InitialDensity>;

/// Product Gauss-Legendre rule on [-P, P]^3 with P = momentum_bound().
struct MomentQuadrature {
    std::size_t nodes = 16;
};

struct Moments {
    double rho = 0.0;     ///< int f dv
    Vec3 j{};             ///< int v_hat f dv
    double energy = 0.0;  ///< int sqrt(1+|v|^2) f dv
};

/// f(t, .) represented by pullback along characteristics of a force field.
class KineticState {
public:
    enum class Mode { Static, Transported };

    /// Static state f(t, z) = f0(z): the zeroth Picard iterate.
    static KineticState initial(DensityPtr density, double t = 0.0);
    /// f(t, z) = f0(Z(0, t, z)); a null force means free streaming.
    static KineticState transported(DensityPtr density, ForcePtr force, double t, CharacteristicSpec spec = {});
    /// f(t, z) = f(t_freeze, z) for the transported state: the zeroth iterate of
    /// a window starting at t_freeze.
    static KineticState frozen(DensityPtr density, ForcePtr force, double t_freeze, double t,
                               CharacteristicSpec spec = {});

    const InitialDensity& density() const { return *density_; }
    const DensityPtr& density_ptr() const { return density_; }
    const ForcePtr& force() const { return force_; }
    double time() const { return t_; }
    /// Time from which characteristics are traced back to 0.
    double trace_time() const { return trace_; }
    Mode mode() const { return mode_; }
    const CharacteristicSpec& spec() const { return spec_; }

    /// Radius outside which f(t, x, .) = 0.
    double spatial_bound() const;
    /// P(t) = P0 + t * sup|grad u|.
    double momentum_bound() const;

    double eval_f(const PhasePoint& z) const;
    double eval_f(const Vec3& x, const Vec3& v) const { return eval_f(PhasePoint{x, v}); }

private:
    KineticState(DensityPtr density, ForcePtr force, double t, double trace, CharacteristicSpec spec, Mode mode);

    DensityPtr density_;
    ForcePtr force_;
    double t_ = 0.0;
    double trace_ = 0.0;
    CharacteristicSpec spec_{};
    Mode mode_ = Mode::Static;
};

Moments velocity_moments(const KineticState& state, const Vec3& x, const MomentQuadrature& mq = {});
double density_rho(const KineticState& state, const Vec3& x, const MomentQuadrature& mq = {});
Vec3 current_j(const KineticState& state, const Vec3& x, const MomentQuadrature& mq = {});

/// 6D product quadrature over [-R(t), R(t)]^3 x [-P(t), P(t)]^3.
struct PhaseQuadrature {
    std::size_t space_nodes = 12;
    MomentQuadrature momentum{};
};

double mass(const KineticState& state, const PhaseQuadrature& pq = {});
double kinetic_energy(const KineticState& state, const PhaseQuadrature& pq = {});

/// Moments of radially symmetric states on time nodes times r_j = j * spacing,
/// evaluated at x = (r_j, 0, 0).
class RadialMomentTable {
public:
    RadialMomentTable(std::vector<double> times, double spacing, std::vector<std::vector<double>> rho,
                      std::vector<std::vector<double>> j_r, std::vector<std::vector<double>> energy);

    const std::vector<double>& times() const { return times_; }
    double spacing() const { return spacing_; }
    std::size_t cells() const { return rho_.front().size() - 1; }
    double radius(std::size_t j) const { return spacing_ * static_cast<double>(j); }

    double rho_at(std::size_t k, std::size_t j) const { return rho_[k][j]; }
    double jr_at(std::size_t k, std::size_t j) const { return jr_[k][j]; }
    double energy_at(std::size_t k, std::size_t j) const { return energy_[k][j]; }
    const std::vector<double>& rho_row(std::size_t k) const { return rho_[k]; }

    /// Cubic interpolation in r, linear in t.
    double rho(double t, double r) const;
    double j_r(double t, double r) const;

    /// 4 pi int r^2 w(r) dr of a moment row by composite Simpson.
    double integrate_row(const std::vector<double>& row) const;
    double mass(std::size_t k) const { return integrate_row(rho_[k]); }
    double kinetic_energy(std::size_t k) const { return integrate_row(energy_[k]); }

    void write_csv(std::size_t k, const std::string& path) const;

    double max_abs_difference(const RadialMomentTable& other) const;

private:
    std::vector<double> times_;
    double spacing_;
    std::vector<std::vector<double>> rho_, jr_, energy_;
    std::vector<RadialProfile> rho_prof_, jr_prof_;
};

/// Tabulates moments of state_at(t_k) for radial states; the table keeps the
/// given times.
RadialMomentTable tabulate_radial_moments(const std::function<KineticState(double)>& state_at,
                                          const std::vector<double>& times, double spacing, std::size_t cells,
                                          const MomentQuadrature& mq);

/// CSV x,y,z,rho,jx,jy,jz of the moments on a lattice.
void write_moment_snapshot(const KineticState& state, const BoxLattice& lattice, const MomentQuadrature& mq,
                           const std::string& path);
/// CSV x,y,f of f(t, (x, y, 0), v) for fixed v on an n x n grid over [-L, L]^2.
void write_f_slice(const KineticState& state, const Vec3& v, double half_width, std::size_t n, const std::string& path);

} // namespace vkg
