#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "vkg/vec3.hpp"

namespace vkg {

/// Largest argument accepted by bessel_j1.
inline constexpr double kBesselMaxArgument = 500.0;

/// Below this argument the kernel ratios use their truncated even series.
inline constexpr double kRatioSeriesSwitch = 1e-2;

/// Arguments up to this value use the power series; larger ones use Miller's
/// backward recurrence normalized by J0 + 2 sum J_2k = 1.
inline constexpr double kBesselSeriesSwitch = 8.0;

/// Bessel function of the first kind of order one, 0 <= xi <= kBesselMaxArgument.
double bessel_j1(double xi);

/// J0, J1, J2, J3 at xi (same method and domain as bessel_j1).
std::array<double, 4> bessel_j0123(double xi);

/// J1(xi)/xi with the removable singularity at 0 (value 1/2).
double j1_ratio(double xi);

/// (J1(xi)/xi)' = -J2(xi)/xi, zero at the origin.
double j1_ratio_deriv(double xi);

/// (J1(xi)/xi)'/xi = -J2(xi)/xi^2, equal to -1/8 at the origin. This is the
/// combined kernel that multiplies t in the homogeneous Klein-Gordon formula.
double j1_ratio_deriv_over_xi(double xi);

/// Tabulated J1(xi)/xi, its derivative, and the combined kernel on
/// [0, max_argument] with cubic Hermite interpolation.
class KernelTable {
public:
    explicit KernelTable(double max_argument, double spacing = 1e-3);

    double max_argument() const { return max_argument_; }
    double spacing() const { return spacing_; }
    std::size_t node_count() const { return ratio_.size(); }
    double node(std::size_t i) const { return spacing_ * static_cast<double>(i); }

    double ratio(double xi) const { return interpolate(ratio_, ratio_slope_, xi); }
    double ratio_deriv(double xi) const { return interpolate(deriv_, deriv_slope_, xi); }
    double ratio_deriv_over_xi(double xi) const { return interpolate(combined_, combined_slope_, xi); }

    /// Raw tabulated values (node i).
    double ratio_at(std::size_t i) const { return ratio_[i]; }
    double ratio_deriv_at(std::size_t i) const { return deriv_[i]; }

    /// Writes columns xi, j1_ratio, j1_ratio_deriv.
    void write_csv(const std::string& path) const;

private:
    double interpolate(const std::vector<double>& v, const std::vector<double>& dv, double xi) const;

    double max_argument_, spacing_;
    std::vector<double> ratio_, ratio_slope_;
    std::vector<double> deriv_, deriv_slope_;
    std::vector<double> combined_, combined_slope_;
};

/// Radially symmetric kernel with compact support, its values and the shell
/// antiderivative G(s) = int_0^s sigma k(sigma) d sigma.
class RadialKernel {
public:
    RadialKernel() = default;

    double support() const { return support_; }
    double value(double r) const;
    double value(const Vec3& x) const { return value(norm(x)); }
    /// Shell antiderivative; even in s and constant for |s| >= support.
    double shell_antiderivative(double s) const;

    /// Builds from tabulated values on [0, support] (cubic interpolation).
    static RadialKernel from_table(std::vector<double> values, double support);
    /// Builds from an analytic profile.
    template <class F>
    static RadialKernel from_function(F&& profile, double support, std::size_t cells = 2048)
    {
        std::vector<double> v(cells + 1);
        for (std::size_t i = 0; i <= cells; ++i)
            v[i] = profile(support * static_cast<double>(i) / static_cast<double>(cells));
        return from_table(std::move(v), support);
    }

private:
    void build_antiderivative();

    double support_ = 0.0;
    double spacing_ = 1.0;
    std::vector<double> values_;
    std::vector<double> antideriv_;
};

/// Radial bump mollifier d_n(x) = c exp(-1/(1 - |n x|^2)) on |x| < 1/n and its
/// self-convolution delta_n = d_n * d_n (support radius 2/n).
class Mollifier {
public:
    int index() const { return n_; }
    double seed_radius() const { return 1.0 / n_; }
    double pair_radius() const { return 2.0 / n_; }

    /// d_n evaluated from the closed form.
    double seed(double r) const;
    double seed(const Vec3& x) const { return seed(norm(x)); }
    /// delta_n from its radial table.
    double pair(double r) const { return pair_.value(r); }
    double pair(const Vec3& x) const { return pair(norm(x)); }

    const RadialKernel& seed_kernel() const { return seed_; }
    const RadialKernel& pair_kernel() const { return pair_; }
    double normalization() const { return norm_const_; }

    friend Mollifier make_mollifier(int n);

private:
    int n_ = 1;
    double norm_const_ = 0.0;
    RadialKernel seed_;
    RadialKernel pair_;
};

/// Builds the mollifier pair for index n >= 1.
Mollifier make_mollifier(int n);

/// Integral of exp(-1/(1 - r^2)) over the unit ball.
double unit_bump_mass();

/// Radial convolution (f * k)(r) of a radial function f, sampled at nodes
/// r' with quadrature weights, against a radial kernel.
double radial_convolve_at(const RadialKernel& kernel, const std::vector<double>& nodes,
                          const std::vector<double>& weights, const std::vector<double>& values, double r);

} // namespace vkg
