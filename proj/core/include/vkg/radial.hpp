#pragma once

#include <cstddef>
#include <vector>

namespace vkg {

/// Radial function g(|x|) sampled on r_j = j * spacing, j = 0..N, and taken
/// to vanish beyond r_N. Sphere means treat g as piecewise linear in r, which
/// makes them exact closed forms.
class RadialProfile {
public:
    enum class Interp { Linear, Cubic };
    /// Symmetry used to extend the samples to r < 0 for cubic interpolation.
    enum class Parity { Even, Odd };

    RadialProfile() = default;
    RadialProfile(double spacing, std::vector<double> values, Interp interp = Interp::Linear,
                  Parity parity = Parity::Even);

    template <class F>
    static RadialProfile sample(F&& g, double extent, std::size_t cells, Interp interp = Interp::Linear)
    {
        std::vector<double> v(cells + 1);
        const double h = extent / static_cast<double>(cells);
        for (std::size_t j = 0; j <= cells; ++j)
            v[j] = g(h * static_cast<double>(j));
        return RadialProfile(h, std::move(v), interp);
    }

    double spacing() const { return spacing_; }
    double extent() const { return spacing_ * static_cast<double>(values_.size() - 1); }
    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    double node(std::size_t j) const { return spacing_ * static_cast<double>(j); }
    Interp interpolation() const { return interp_; }

    double value(double r) const;
    double derivative(double r) const;

    /// int_lo^hi sigma g(sigma) d sigma for 0 <= lo <= hi.
    double shell_integral(double lo, double hi) const;

    /// Mean of g(|y|) over the sphere |y - x| = a, where |x| = r.
    double sphere_mean(double r, double a) const;
    /// d/da of sphere_mean(r, a).
    double sphere_mean_deriv(double r, double a) const;

private:
    double linear(double r) const;
    double slope(double r, Interp interp) const;
    double cumulative(double s) const;

    double spacing_ = 1.0;
    std::vector<double> values_{0.0};
    std::vector<double> cumulative_{0.0};
    Interp interp_ = Interp::Linear;
    Parity parity_ = Parity::Even;
};

} // namespace vkg
