#pragma once

#include <cstddef>
#include <vector>

#include "vkg/vec3.hpp"

namespace vkg {

/// One-dimensional rule: nodes and weights on an interval.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre rule with n nodes mapped to [a, b].
QuadratureRule gauss_legendre(std::size_t n, double a = -1.0, double b = 1.0);

/// Composite Gauss-Legendre: `panels` equal panels on [a, b], `per_panel` nodes each.
QuadratureRule composite_gauss_legendre(std::size_t panels, std::size_t per_panel, double a, double b);

/// Composite Simpson weights for an odd number of equispaced samples on [a, b].
/// Falls back to the trapezoid rule on the last interval when the count is even.
std::vector<double> simpson_weights(std::size_t samples, double a, double b);

/// Product rule on the unit sphere: Gauss-Legendre in cos(theta) times the
/// periodic trapezoid rule in phi. Weights are normalized to sum to one, so
/// applying the rule yields the spherical mean.
class SphereRule {
public:
    SphereRule(std::size_t n_theta = 16, std::size_t n_phi = 32);

    std::size_t size() const { return directions_.size(); }
    std::size_t n_theta() const { return n_theta_; }
    std::size_t n_phi() const { return n_phi_; }
    const std::vector<Vec3>& directions() const { return directions_; }
    const std::vector<double>& weights() const { return weights_; }

    /// Mean of f over the sphere |y - center| = radius.
    template <class F>
    double mean(F&& f, const Vec3& center, double radius) const
    {
        double acc = 0.0;
        for (std::size_t i = 0; i < directions_.size(); ++i)
            acc += weights_[i] * f(center + radius * directions_[i]);
        return acc;
    }

private:
    std::size_t n_theta_, n_phi_;
    std::vector<Vec3> directions_;
    std::vector<double> weights_;
};

/// Orders of the product rules used by the field solver.
struct QuadratureSpec {
    std::size_t sphere_theta = 16;
    std::size_t sphere_phi = 32;
    std::size_t radial_nodes = 24;
    std::size_t time_per_panel = 2; ///< Gauss nodes per source-history cell
};

/// Radical-inverse (Halton) point in [0,1)^dim for index i, using the first
/// `dim` primes as bases.
std::vector<double> halton_point(std::size_t index, std::size_t dim);

} // namespace vkg
