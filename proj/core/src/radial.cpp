#include "vkg/radial.hpp"

#include <cmath>

#include "vkg/error.hpp"

namespace vkg {

namespace {
// int_0^u (r0 + w)(g0 + m w) dw
double cell_piece(double r0, double g0, double m, double u)
{
    return r0 * g0 * u + 0.5 * (r0 * m + g0) * u * u + m * u * u * u / 3.0;
}
} // namespace

RadialProfile::RadialProfile(double spacing, std::vector<double> values, Interp interp, Parity parity)
    : spacing_{spacing}, values_{std::move(values)}, interp_{interp}, parity_{parity}
{
    if (!(spacing > 0.0) || values_.size() < 2)
        throw DomainError("RadialProfile: need positive spacing and at least two samples");
    cumulative_.assign(values_.size(), 0.0);
    for (std::size_t j = 1; j < values_.size(); ++j) {
        const double m = (values_[j] - values_[j - 1]) / spacing_;
        cumulative_[j] = cumulative_[j - 1] + cell_piece(node(j - 1), values_[j - 1], m, spacing_);
    }
}

double RadialProfile::linear(double r) const
{
    const double s = r / spacing_;
    const auto j = static_cast<std::size_t>(s);
    if (j + 1 >= values_.size())
        return j + 1 == values_.size() && s == static_cast<double>(j) ? values_.back() : 0.0;
    const double u = s - static_cast<double>(j);
    return (1.0 - u) * values_[j] + u * values_[j + 1];
}

double RadialProfile::value(double r) const
{
    r = std::abs(r);
    if (r > extent())
        return 0.0;
    if (interp_ == Interp::Linear)
        return linear(r);
    const double s = r / spacing_;
    const auto i = static_cast<long>(s);
    const double u = s - static_cast<double>(i);
    const long n = static_cast<long>(values_.size());
    const double reflect = parity_ == Parity::Even ? 1.0 : -1.0;
    auto at = [&](long j) {
        if (j < 0)
            return reflect * values_[static_cast<std::size_t>(-j)];
        return j < n ? values_[static_cast<std::size_t>(j)] : 0.0;
    };
    const double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
    return p0 * (-u * (u - 1) * (u - 2) / 6.0) + p1 * ((u + 1) * (u - 1) * (u - 2) / 2.0)
        + p2 * (-(u + 1) * u * (u - 2) / 2.0) + p3 * ((u + 1) * u * (u - 1) / 6.0);
}

double RadialProfile::derivative(double r) const
{
    return slope(r, interp_);
}

double RadialProfile::slope(double r, Interp interp) const
{
    const double sign = r < 0.0 ? -1.0 : 1.0;
    r = std::abs(r);
    if (r > extent())
        return 0.0;
    const double s = r / spacing_;
    const auto i = static_cast<long>(s);
    const double u = s - static_cast<double>(i);
    const long n = static_cast<long>(values_.size());
    auto at = [&](long j) {
        if (j < 0)
            j = -j;
        return j < n ? values_[static_cast<std::size_t>(j)] : 0.0;
    };
    if (interp == Interp::Linear)
        return sign * (at(i + 1) - at(i)) / spacing_;
    const double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
    const double d = p0 * (-(3 * u * u - 6 * u + 2) / 6.0) + p1 * ((3 * u * u - 4 * u - 1) / 2.0)
        + p2 * (-(3 * u * u - 2 * u - 2) / 2.0) + p3 * ((3 * u * u - 1) / 6.0);
    return sign * d / spacing_;
}

double RadialProfile::cumulative(double s) const
{
    if (s >= extent())
        return cumulative_.back();
    const double x = s / spacing_;
    const auto j = static_cast<std::size_t>(x);
    const double m = (values_[j + 1] - values_[j]) / spacing_;
    return cumulative_[j] + cell_piece(node(j), values_[j], m, s - node(j));
}

double RadialProfile::shell_integral(double lo, double hi) const
{
    const double ext = extent();
    if (lo >= ext)
        return 0.0;
    hi = std::min(hi, ext);
    if (hi <= lo)
        return 0.0;
    if (hi - lo > 4.0 * spacing_)
        return cumulative(hi) - cumulative(lo);
    // short interval: integrate cell by cell to avoid cancellation
    double acc = 0.0;
    double a = lo;
    while (a < hi) {
        auto j = static_cast<std::size_t>(a / spacing_);
        if (j + 1 >= values_.size())
            break;
        const double cell_end = std::min(hi, node(j + 1));
        if (cell_end <= a) {
            ++j;
            a = node(j);
            continue;
        }
        const double m = (values_[j + 1] - values_[j]) / spacing_;
        acc += cell_piece(node(j), values_[j], m, cell_end - node(j)) - cell_piece(node(j), values_[j], m, a - node(j));
        a = cell_end;
    }
    return acc;
}

double RadialProfile::sphere_mean(double r, double a) const
{
    r = std::abs(r);
    a = std::abs(a);
    if (r == 0.0)
        return linear(a);
    if (a == 0.0)
        return linear(r);
    return shell_integral(std::abs(r - a), r + a) / (2.0 * r * a);
}

double RadialProfile::sphere_mean_deriv(double r, double a) const
{
    r = std::abs(r);
    if (a <= 0.0)
        return 0.0;
    // near the center M(r, a) = g(a) + O(r^2), and the difference formula
    // degenerates to the secant slope of one cell
    if (r < 2.0 * spacing_)
        return slope(a, Interp::Cubic);
    const double lo = std::abs(r - a);
    const double mean = sphere_mean(r, a);
    const double sgn = a > r ? 1.0 : (a < r ? -1.0 : 0.0);
    const double di = (r + a) * linear(r + a) - sgn * lo * linear(lo);
    return di / (2.0 * r * a) - mean / a;
}

} // namespace vkg
