#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vkg/quadrature.hpp"
#include "vkg/radial.hpp"
#include "vkg/specfun.hpp"
#include "vkg/vec3.hpp"

namespace vkg {

// ---------------------------------------------------------------------------
// Spatial data

/// Scalar function on R^3 entering the Klein-Gordon initial data.
class SpatialFunction {
public:
    virtual ~SpatialFunction() = default;

    virtual double value(const Vec3& x) const = 0;
    virtual Vec3 gradient(const Vec3& x) const = 0;
    /// Radius outside which the function vanishes; empty when unbounded.
    virtual std::optional<double> support_radius() const { return std::nullopt; }
    virtual bool is_zero() const { return false; }
    /// Non-null when the function depends on |x| only.
    virtual const RadialProfile* radial_profile() const { return nullptr; }

    /// Mean over the sphere |y - x| = a.
    virtual double sphere_mean(const Vec3& x, double a, const SphereRule& rule) const;
    /// d/da of the sphere mean, i.e. the mean of gradient(x + a w) . w.
    virtual double sphere_mean_deriv(const Vec3& x, double a, const SphereRule& rule) const;
};

using SpatialFunctionPtr = std::shared_ptr<const SpatialFunction>;

SpatialFunctionPtr make_zero_function();
SpatialFunctionPtr make_constant_function(double c);
SpatialFunctionPtr make_function(std::function<double(const Vec3&)> value, std::function<Vec3(const Vec3&)> gradient,
                                 std::optional<double> support_radius = std::nullopt);
/// Radial function backed by a profile; sphere means are exact for the
/// piecewise-linear profile.
SpatialFunctionPtr make_radial_function(RadialProfile profile);

/// Initial data u(0) = u1, d_t u(0) = u2 of the linear Klein-Gordon problem.
struct FieldData {
    SpatialFunctionPtr u1 = make_zero_function();
    SpatialFunctionPtr u2 = make_zero_function();

    /// Largest support radius of the two data, empty if one is unbounded.
    std::optional<double> support_radius() const;
    bool is_zero() const { return u1->is_zero() && u2->is_zero(); }
    bool is_radial() const
    {
        return (u1->is_zero() || u1->radial_profile()) && (u2->is_zero() || u2->radial_profile());
    }
};

// ---------------------------------------------------------------------------
// Space-time sources

/// Right-hand side g(s, y) of the Klein-Gordon equation on [0, horizon].
class SpaceTimeSource {
public:
    virtual ~SpaceTimeSource() = default;

    virtual double horizon() const = 0;
    virtual double value(double s, const Vec3& y) const = 0;
    virtual double sphere_mean(double s, const Vec3& x, double a, const SphereRule& rule) const;
    /// d/da of the sphere mean; the default differences sphere_mean in a.
    virtual double sphere_mean_deriv(double s, const Vec3& x, double a, const SphereRule& rule) const;
    /// Breakpoints of the time interpolation; empty for smooth analytic sources.
    virtual const std::vector<double>& time_nodes() const;
    virtual bool is_zero() const { return false; }
    virtual bool is_radial() const { return false; }
    /// Radius outside which g(s, .) vanishes for every s, if known.
    virtual std::optional<double> support_radius() const { return std::nullopt; }
};

using SourcePtr = std::shared_ptr<const SpaceTimeSource>;

SourcePtr make_zero_source(double horizon);
SourcePtr make_analytic_source(std::function<double(double, const Vec3&)> g, double horizon,
                               std::optional<double> support_radius = std::nullopt);

/// Uniform box lattice: nodes origin + spacing * (i, j, k).
struct BoxLattice {
    Vec3 origin{};
    double spacing = 1.0;
    std::array<std::size_t, 3> extents{1, 1, 1};

    std::size_t size() const { return extents[0] * extents[1] * extents[2]; }
    Vec3 node(std::size_t i, std::size_t j, std::size_t k) const
    {
        return origin + spacing * Vec3(static_cast<double>(i), static_cast<double>(j), static_cast<double>(k));
    }
    Vec3 node(std::size_t flat) const;
    std::size_t flat(std::size_t i, std::size_t j, std::size_t k) const { return (k * extents[1] + j) * extents[0] + i; }
    Vec3 upper() const { return node(extents[0] - 1, extents[1] - 1, extents[2] - 1); }
    /// True when the closed ball B_radius(0) lies inside the box.
    bool covers_ball(double radius) const;
    /// Symmetric cube lattice [-half_width, half_width]^3 with the given spacing.
    static BoxLattice centered_cube(double half_width, double spacing);

    /// Trilinear interpolation of lattice values (zero outside the box).
    double interpolate(const std::vector<double>& values, const Vec3& x) const;
};

/// Source sampled on time nodes times a box lattice; linear in time,
/// trilinear in space.
class SourceHistory final : public SpaceTimeSource {
public:
    SourceHistory(std::vector<double> time_nodes, BoxLattice lattice, std::vector<std::vector<double>> values);

    double horizon() const override { return times_.back(); }
    double value(double s, const Vec3& y) const override;
    double sphere_mean(double s, const Vec3& x, double a, const SphereRule& rule) const override;
    const std::vector<double>& time_nodes() const override { return times_; }
    bool is_zero() const override { return all_zero_; }

    const BoxLattice& lattice() const { return lattice_; }
    const std::vector<double>& slice(std::size_t k) const { return values_[k]; }
    double time_step() const;

    void write_csv(const std::string& path) const;
    static SourceHistory read_csv(const std::string& path);
    void write_binary(const std::string& path) const;
    static SourceHistory read_binary(const std::string& path);

private:
    std::vector<double> times_;
    BoxLattice lattice_;
    std::vector<std::vector<double>> values_;
    bool all_zero_ = false;
};

/// Radially symmetric source g(s, |y|): one radial profile per time node.
class RadialSourceHistory final : public SpaceTimeSource {
public:
    RadialSourceHistory(std::vector<double> time_nodes, std::vector<RadialProfile> profiles);

    double horizon() const override { return times_.back(); }
    double value(double s, const Vec3& y) const override;
    double value_at_radius(double s, double r) const;
    double sphere_mean(double s, const Vec3& x, double a, const SphereRule& rule) const override;
    double sphere_mean_deriv(double s, const Vec3& x, double a, const SphereRule& rule) const override;
    const std::vector<double>& time_nodes() const override { return times_; }
    bool is_zero() const override { return all_zero_; }
    bool is_radial() const override { return true; }
    std::optional<double> support_radius() const override;

    const RadialProfile& profile(std::size_t k) const { return profiles_[k]; }
    double time_step() const;

    void write_csv(const std::string& path) const;
    static RadialSourceHistory read_csv(const std::string& path);

private:
    std::vector<double> times_;
    std::vector<RadialProfile> profiles_;
    bool all_zero_ = false;
};

/// Locates s in the uniform-or-not node list: returns (k, theta) with
/// s = (1 - theta) t_k + theta t_{k+1}.
std::pair<std::size_t, double> locate_time(const std::vector<double>& nodes, double s);

// ---------------------------------------------------------------------------
// Solver

/// Sample of the assembled field and its first derivatives.
struct FieldSample {
    double u = 0.0;
    double du_dt = 0.0;
    Vec3 grad_u{};
};

/// Quadrature and differencing parameters for the exact-formula solver.
struct SolverSpec {
    QuadratureSpec quadrature{};
    std::size_t analytic_time_nodes = 32; ///< Gauss nodes on [0, t] for smooth sources
    double kernel_spacing = 1e-3;
    double fd_step = 1e-3;                ///< h_t = h_x, relative to scale
    double scale = 1.0;
};

/// Evaluates the homogeneous (Kirchhoff-type) and retarded formulas with
/// product quadrature. Immutable and safe to share.
class KleinGordonSolver {
public:
    explicit KleinGordonSolver(SolverSpec spec = {}, double max_time = 4.0);

    const SolverSpec& spec() const { return spec_; }
    double max_time() const { return max_time_; }
    const SphereRule& sphere() const { return sphere_; }
    const KernelTable& kernels() const { return *kernels_; }

    /// Solution of the homogeneous equation with data (u1, u2) at t > 0.
    double homogeneous(const FieldData& data, double t, const Vec3& x) const;
    /// Retarded solution with vanishing data, 0 < t <= horizon.
    double inhomogeneous(const SpaceTimeSource& source, double t, const Vec3& x) const;
    /// d_t of the retarded solution: the u1-part of the homogeneous formula
    /// applied to g(s, .) over the elapsed time t - s, integrated in s.
    double inhomogeneous_time_derivative(const SpaceTimeSource& source, double t, const Vec3& x) const;

    /// Individual homogeneous terms, in order: sphere mean of u1, gradient
    /// term, -(t^2/2) mean of u1, ball term of u1, t mean of u2, ball term of u2.
    std::array<double, 6> homogeneous_terms(const FieldData& data, double t, const Vec3& x) const;

private:
    template <class Inner>
    double time_integral(const SpaceTimeSource& source, double t, Inner&& inner) const;

    SolverSpec spec_;
    double max_time_;
    SphereRule sphere_;
    QuadratureRule radial_unit_;   // Gauss-Legendre on [0, 1]
    QuadratureRule panel_unit_;    // per-panel Gauss-Legendre on [0, 1]
    QuadratureRule analytic_unit_; // Gauss-Legendre on [0, 1] for smooth sources
    std::shared_ptr<const KernelTable> kernels_;
};

/// Data together with a source: u = u_hom + u_inh.
class FieldSolution {
public:
    FieldSolution(std::shared_ptr<const KleinGordonSolver> solver, FieldData data, SourcePtr source);

    double horizon() const { return source_ ? source_->horizon() : solver_->max_time(); }
    const FieldData& data() const { return data_; }
    const SourcePtr& source() const { return source_; }
    const KleinGordonSolver& solver() const { return *solver_; }

    /// u(t, x); t = 0 returns the data.
    double value(double t, const Vec3& x) const;
    /// d_t u: central differences for the homogeneous part, the exact
    /// derivative formula for the retarded part.
    double time_derivative(double t, const Vec3& x) const;
    /// grad_x u via central differences with step h_x.
    Vec3 gradient(double t, const Vec3& x) const;

private:
    std::shared_ptr<const KleinGordonSolver> solver_;
    FieldData data_;
    SourcePtr source_;
};

double eval_homogeneous(const KleinGordonSolver& solver, const FieldData& data, double t, const Vec3& x);
double eval_inhomogeneous(const KleinGordonSolver& solver, const SpaceTimeSource& source, double t, const Vec3& x);
FieldSample eval_field(const FieldSolution& sol, double t, const Vec3& x);

/// Sup-norm diagnostic against the (1+t)^4 growth factor.
struct SupNormReport {
    double t = 0.0;
    double max_abs_u = 0.0;
    double data_norms = 0.0;   ///< sup|u1| + sup|grad u1| + sup|u2| + sup|g(t)| over the samples
    double bound_factor = 0.0; ///< (1+t)^4 * data_norms
    double ratio = 0.0;        ///< max_abs_u / bound_factor (0 when the factor vanishes)
};

SupNormReport supnorm_monitor(const FieldSolution& sol, double t, const std::vector<Vec3>& samples);

// ---------------------------------------------------------------------------
// Tabulated fields used as forces on characteristics

/// Force provider: grad_x u(s, x) on [0, horizon].
class ForceField {
public:
    virtual ~ForceField() = default;
    virtual double horizon() const = 0;
    virtual Vec3 grad_u(double s, const Vec3& x) const = 0;
    /// Upper bound of |grad_x u| over [0, horizon] x R^3.
    virtual double sup_bound() const = 0;
};

using ForcePtr = std::shared_ptr<const ForceField>;

ForcePtr make_zero_force(double horizon);
/// Spatially constant gradient g (force -g).
ForcePtr make_constant_force(const Vec3& grad, double horizon);
ForcePtr make_function_force(std::function<Vec3(double, const Vec3&)> grad, double horizon, double sup_bound);

/// Field values on time nodes times a uniform radial grid; gradients are
/// interpolated cubically in r and linearly in t.
class RadialFieldTable final : public ForceField {
public:
    RadialFieldTable(std::vector<double> time_nodes, double spacing, std::vector<std::vector<double>> u,
                     std::vector<std::vector<double>> u_r);

    /// Fills the table from a field solution for r_j = j*spacing, j = 0..cells.
    static RadialFieldTable fill(const FieldSolution& sol, const std::vector<double>& time_nodes, double spacing,
                                 std::size_t cells);

    double horizon() const override { return times_.back(); }
    Vec3 grad_u(double s, const Vec3& x) const override;
    double sup_bound() const override { return sup_; }

    double value(double s, double r) const;
    double radial_derivative(double s, double r) const;
    const std::vector<double>& time_nodes() const { return times_; }
    double spacing() const { return spacing_; }
    std::size_t cells() const { return u_.front().size() - 1; }
    double u_at(std::size_t k, std::size_t j) const { return u_[k][j]; }
    double ur_at(std::size_t k, std::size_t j) const { return ur_[k][j]; }

private:
    std::vector<double> times_;
    double spacing_;
    std::vector<RadialProfile> u_profiles_, ur_profiles_;
    std::vector<std::vector<double>> u_, ur_;
    double sup_ = 0.0;
};

/// Field values and gradients on time nodes times a box lattice (gradient by
/// central differences of the solution); trilinear in space, linear in time.
class BoxFieldTable final : public ForceField {
public:
    static BoxFieldTable fill(const FieldSolution& sol, const std::vector<double>& time_nodes, const BoxLattice& lattice);

    double horizon() const override { return times_.back(); }
    Vec3 grad_u(double s, const Vec3& x) const override;
    double sup_bound() const override { return sup_; }
    double value(double s, const Vec3& x) const;
    const BoxLattice& lattice() const { return lattice_; }
    const std::vector<double>& time_nodes() const { return times_; }
    const std::vector<double>& u_slice(std::size_t k) const { return u_[k]; }

private:
    std::vector<double> times_;
    BoxLattice lattice_;
    std::vector<std::vector<double>> u_;
    std::array<std::vector<std::vector<double>>, 3> grad_;
    double sup_ = 0.0;
};

} // namespace vkg
