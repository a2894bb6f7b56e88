#include "vkg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vkg/error.hpp"

namespace vkg {

QuadratureRule gauss_legendre(std::size_t n, double a, double b)
{
    if (n == 0)
        throw DomainError("gauss_legendre: node count must be positive");

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);

    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = z;
            for (std::size_t k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            dp = static_cast<double>(n) * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16)
                break;
        }
        double p0 = 1.0, p1 = z;
        for (std::size_t k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / static_cast<double>(k);
            p0 = p1;
            p1 = pk;
        }
        dp = static_cast<double>(n) * (z * p1 - p0) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[i] = mid - half * z;
        rule.nodes[n - 1 - i] = mid + half * z;
        rule.weights[i] = rule.weights[n - 1 - i] = half * w;
    }
    return rule;
}

QuadratureRule composite_gauss_legendre(std::size_t panels, std::size_t per_panel, double a, double b)
{
    if (panels == 0)
        throw DomainError("composite_gauss_legendre: panel count must be positive");
    const QuadratureRule ref = gauss_legendre(per_panel);
    QuadratureRule rule;
    rule.nodes.reserve(panels * per_panel);
    rule.weights.reserve(panels * per_panel);
    const double h = (b - a) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + h * static_cast<double>(p);
        for (std::size_t i = 0; i < per_panel; ++i) {
            rule.nodes.push_back(lo + 0.5 * h * (ref.nodes[i] + 1.0));
            rule.weights.push_back(0.5 * h * ref.weights[i]);
        }
    }
    return rule;
}

std::vector<double> simpson_weights(std::size_t samples, double a, double b)
{
    if (samples < 2)
        throw DomainError("simpson_weights: need at least two samples");
    std::vector<double> w(samples, 0.0);
    const double h = (b - a) / static_cast<double>(samples - 1);
    const std::size_t intervals = samples - 1;
    const std::size_t paired = intervals - intervals % 2;
    for (std::size_t i = 0; i < paired; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    if (paired < intervals) {
        w[samples - 2] += 0.5 * h;
        w[samples - 1] += 0.5 * h;
    }
    return w;
}

SphereRule::SphereRule(std::size_t n_theta, std::size_t n_phi) : n_theta_{n_theta}, n_phi_{n_phi}
{
    if (n_theta == 0 || n_phi == 0)
        throw DomainError("SphereRule: orders must be positive");
    const QuadratureRule mu = gauss_legendre(n_theta);
    directions_.reserve(n_theta * n_phi);
    weights_.reserve(n_theta * n_phi);
    for (std::size_t i = 0; i < n_theta; ++i) {
        const double c = mu.nodes[i];
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        for (std::size_t j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(n_phi);
            directions_.emplace_back(s * std::cos(phi), s * std::sin(phi), c);
            weights_.push_back(0.5 * mu.weights[i] / static_cast<double>(n_phi));
        }
    }
}

std::vector<double> halton_point(std::size_t index, std::size_t dim)
{
    static constexpr unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (dim > std::size(primes))
        throw DomainError("halton_point: dimension too large");
    std::vector<double> p(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        const unsigned base = primes[d];
        double f = 1.0, r = 0.0;
        std::size_t i = index + 1;
        while (i > 0) {
            f /= base;
            r += f * static_cast<double>(i % base);
            i /= base;
        }
        p[d] = r;
    }
    return p;
}

} // namespace vkg
