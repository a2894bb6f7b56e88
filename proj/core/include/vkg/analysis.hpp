#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "vkg/bump.hpp"
#include "vkg/field.hpp"
#include "vkg/kinetic.hpp"
#include "vkg/picard.hpp"

namespace vkg {

// ---------------------------------------------------------------------------
// Constants and the smallness threshold

/// q = p / (p - 1); p = infinity gives q = 1.
double conjugate_exponent(double p);

/// C_q = (4 pi / 3)^{1/(q+3)} (q+3)/3 (3/q)^{q/(q+3)} for q in [1, 3]
/// (q = 3 is accepted as a boundary probe).
double constant_Cq(double q);

/// Sobolev constant S3 = 3 (pi/2)^{4/3}.
double sobolev_S3();

/// C(f) = (4q/pi)^{1/2} 3^{-7/6} ((q+3)/q)^{(q+3)/6} |f|_1^{(3-q)/6} |f|_p^{q/6}.
double constant_C_of_f(double norm1, double normp, double q);
double constant_C_of_f(const InitialDensity& f, double p);

/// (pi / 2q) 3^{7/3} (q / (q+3))^{(q+3)/3}.
double threshold_rhs(double q);

struct ThresholdReport {
    double p = 0.0, q = 0.0;
    double norm1 = 0.0, normp = 0.0;
    double C = 0.0;
    double lhs = 0.0, rhs = 0.0;
    bool satisfied = false;
    double epsilon = 0.0; ///< valid only when satisfied
};

/// p in [2, infinity].
ThresholdReport threshold_check(double norm1, double normp, double p);
ThresholdReport threshold_check(const InitialDensity& f, double p);

/// C_q^{(q+3)/6} |f|_1^{(3-q)/6} |f|_p^{q/6} E_K^{1/2}.
double rho65_bound(double norm1, double normp, double p, double kinetic_energy);

// ---------------------------------------------------------------------------
// Energy

struct EnergyBreakdown {
    double t = 0.0;
    double E_K = 0.0;
    double E_F_tilde = 0.0;
    double E_C = 0.0;
    double total = 0.0;
    double drift = 0.0;       ///< (total - total(0)) / |total(0)|
    double mass = 0.0;
    double ut_norm2 = 0.0;    ///< |d_t u~|_2^2
    double grad_norm2 = 0.0;  ///< |grad u~|_2^2
    double u_norm2 = 0.0;     ///< |u~|_2^2
    double rho65 = 0.0;       ///< |rho|_{6/5}
};

/// Energy at local time node k of a radial regularized solution; `companion`
/// is the field with source -rho * d. Field terms are integrated over the
/// propagation-bounded ball on the field grid.
EnergyBreakdown energy_breakdown(const RegularizedSolution& sol, const FieldSolution& companion, std::size_t k);

/// Energy series at the given node indices, with drift relative to the first.
std::vector<EnergyBreakdown> energy_series(const RegularizedSolution& sol, const FieldSolution& companion,
                                           const std::vector<std::size_t>& nodes);

/// max |u - u~ * d| over radial samples at local time node k.
double companion_identity_error(const RegularizedSolution& sol, const FieldSolution& companion,
                                const Mollifier& mollifier, std::size_t k);

struct InequalityReport {
    double t = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
    double margin() const { return rhs - lhs; }
};

/// |int u rho| <= C(f) |grad u~|_2 E_K^{1/2}, with 1% slack.
InequalityReport interaction_estimate_check(const EnergyBreakdown& e, double C_of_f);
/// Measured |rho|_{6/5} against the bound, with 1% slack.
InequalityReport rho65_check(const EnergyBreakdown& e, double norm1, double normp, double p);

struct AprioriReport {
    double t = 0.0;
    double energy = 0.0;
    double rhs = 0.0;
    double coefficient = 0.0; ///< 1/2 - supC2 / (4 eps)
    bool holds = false;
};

/// E~ >= (1-eps) E_K + |u~_t|^2/2 + |u~|^2/2 + (1/2 - supC2/(4 eps)) |grad u~|^2.
AprioriReport apriori_bound_check(const EnergyBreakdown& e, double epsilon, double supC2, double tolerance = 1e-9);

// ---------------------------------------------------------------------------
// Weak residuals

/// phi(t) phi_x(x) phi_v(v), each a tensor product of 1D polynomial bumps
/// (1 - s^2)^4 scaled to [c - w, c + w].
struct TestFunction {
    double t_center = 0.25, t_width = 0.2;
    Vec3 x_center{}, x_width{0.15, 0.15, 0.15};
    Vec3 v_center{}, v_width{0.4, 0.4, 0.4};

    double time(double t) const;
    double time_d1(double t) const;
    double time_d2(double t) const;
    double space(const Vec3& x) const;
    Vec3 space_grad(const Vec3& x) const;
    double space_laplacian(const Vec3& x) const;
    double momentum(const Vec3& v) const;
    Vec3 momentum_grad(const Vec3& v) const;
};

/// Twelve instances placed inside the support of the data: positions scaled
/// by R0, momenta by P0, time supports inside (0, T).
std::vector<TestFunction> default_test_suite(double space_radius, double momentum_radius, double horizon);

struct ResidualQuadrature {
    std::size_t time_nodes = 8;
    std::size_t space_nodes = 10;    ///< per axis
    std::size_t momentum_nodes = 8;  ///< per axis
};

struct Residual {
    double value = 0.0;
    double scale = 0.0; ///< sum of |term| integrals, for relative measures
    double relative() const { return scale > 0.0 ? std::abs(value) / scale : 0.0; }
};

using StateAt = std::function<KineticState(double)>;
using GradAt = std::function<Vec3(double, const Vec3&)>;
using ScalarAt = std::function<double(double, const Vec3&)>;

/// int int int f (phi' phi_x phi_v + phi phi_v v_hat . grad phi_x - phi phi_x grad u . grad phi_v).
Residual weak_vlasov_residual(const StateAt& state, const GradAt& grad_u, const TestFunction& phi, double horizon,
                              const ResidualQuadrature& rq = {});
/// int int (u phi_tt - u lap phi + u phi + s phi) with s the (mollified) density.
Residual weak_kg_residual(const ScalarAt& u, const ScalarAt& density, const TestFunction& phi, double horizon,
                          const ResidualQuadrature& rq = {});
/// int int (rho phi_t + j . grad phi).
Residual continuity_residual(const ScalarAt& rho, const GradAt& j, const TestFunction& phi, double horizon,
                             const ResidualQuadrature& rq = {});

struct ResidualRow {
    std::size_t test = 0;
    Residual vlasov, kg, continuity;
};

/// All three residuals of a regularized solution on a test suite. With
/// `limit_form` the KG residual uses rho instead of rho * delta.
std::vector<ResidualRow> solution_residuals(const RegularizedSolution& sol, const std::vector<TestFunction>& suite,
                                            const ResidualQuadrature& rq = {}, bool limit_form = false);

} // namespace vkg
