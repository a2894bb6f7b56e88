#include "vkg/specfun.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>

#include "vkg/error.hpp"
#include "vkg/quadrature.hpp"

namespace vkg {

namespace {

void check_argument(double xi, const char* what)
{
    if (!(xi >= 0.0))
        throw DomainError(std::string(what) + ": argument must be nonnegative");
    if (xi > kBesselMaxArgument)
        throw DomainError(std::string(what) + ": argument above supported range");
}

// J_n by the alternating power series, n = 0..3.
double series_jn(int n, double xi)
{
    const double half = 0.5 * xi;
    const double q = -half * half;
    double fact_n = 1.0;
    for (int i = 2; i <= n; ++i)
        fact_n *= i;
    double term = std::pow(half, n) / fact_n;
    double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k + n));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) && k > half)
            break;
    }
    return sum;
}

// Miller's backward recurrence; returns J0..J3.
std::array<double, 4> miller_j0123(double xi)
{
    int m = static_cast<int>(xi + 40.0 + 8.0 * std::cbrt(xi));
    m += m % 2;
    double next = 0.0, cur = 1e-300;
    double even_sum = 0.0;
    std::array<double, 4> low{};
    for (int k = m; k >= 1; --k) {
        const double prev = 2.0 * k / xi * cur - next; // J_{k-1}
        next = cur;
        cur = prev;
        const int idx = k - 1;
        if (idx <= 3)
            low[idx] = cur;
        if (idx > 3 && idx % 2 == 0)
            even_sum += cur;
        if (std::abs(cur) > 1e250) {
            cur *= 1e-250;
            next *= 1e-250;
            even_sum *= 1e-250;
            for (double& v : low)
                v *= 1e-250;
        }
    }
    const double norm_sum = low[0] + 2.0 * (low[2] + even_sum);
    for (double& v : low)
        v /= norm_sum;
    return low;
}

} // namespace

std::array<double, 4> bessel_j0123(double xi)
{
    check_argument(xi, "bessel_j0123");
    if (xi <= kBesselSeriesSwitch)
        return {series_jn(0, xi), series_jn(1, xi), series_jn(2, xi), series_jn(3, xi)};
    return miller_j0123(xi);
}

double bessel_j1(double xi)
{
    check_argument(xi, "bessel_j1");
    if (xi <= kBesselSeriesSwitch)
        return series_jn(1, xi);
    return miller_j0123(xi)[1];
}

double j1_ratio(double xi)
{
    check_argument(xi, "j1_ratio");
    if (xi < kRatioSeriesSwitch) {
        const double s = xi * xi;
        return 0.5 + s * (-1.0 / 16.0 + s * (1.0 / 384.0 - s / 18432.0));
    }
    return bessel_j1(xi) / xi;
}

double j1_ratio_deriv(double xi)
{
    check_argument(xi, "j1_ratio_deriv");
    if (xi < kRatioSeriesSwitch) {
        const double s = xi * xi;
        return xi * (-1.0 / 8.0 + s * (1.0 / 96.0 + s * (-1.0 / 3072.0 + s / 184320.0)));
    }
    return -bessel_j0123(xi)[2] / xi;
}

double j1_ratio_deriv_over_xi(double xi)
{
    check_argument(xi, "j1_ratio_deriv_over_xi");
    if (xi < kRatioSeriesSwitch) {
        const double s = xi * xi;
        return -1.0 / 8.0 + s * (1.0 / 96.0 + s * (-1.0 / 3072.0 + s / 184320.0));
    }
    return -bessel_j0123(xi)[2] / (xi * xi);
}

// ---------------------------------------------------------------------------

KernelTable::KernelTable(double max_argument, double spacing) : max_argument_{max_argument}, spacing_{spacing}
{
    if (!(spacing > 0.0))
        throw DomainError("KernelTable: spacing must be positive");
    if (!(max_argument >= 0.0) || max_argument > kBesselMaxArgument)
        throw DomainError("KernelTable: max_argument outside supported range");
    const auto count = static_cast<std::size_t>(std::ceil(max_argument / spacing)) + 2;
    for (auto* v : {&ratio_, &ratio_slope_, &deriv_, &deriv_slope_, &combined_, &combined_slope_})
        v->resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double xi = node(i);
        if (xi < kRatioSeriesSwitch) {
            const double s = xi * xi;
            ratio_[i] = j1_ratio(xi);
            ratio_slope_[i] = deriv_[i] = j1_ratio_deriv(xi);
            deriv_slope_[i] = -1.0 / 8.0 + s * (1.0 / 32.0 + s * (-5.0 / 3072.0 + 7.0 * s / 184320.0));
            combined_[i] = j1_ratio_deriv_over_xi(xi);
            combined_slope_[i] = xi * (1.0 / 48.0 + s * (-1.0 / 768.0 + s / 30720.0));
        } else {
            const auto j = bessel_j0123(std::min(xi, kBesselMaxArgument));
            ratio_[i] = j[1] / xi;
            ratio_slope_[i] = deriv_[i] = -j[2] / xi;
            deriv_slope_[i] = -j[1] / xi + 3.0 * j[2] / (xi * xi);
            combined_[i] = -j[2] / (xi * xi);
            combined_slope_[i] = j[3] / (xi * xi);
        }
    }
}

double KernelTable::interpolate(const std::vector<double>& v, const std::vector<double>& dv, double xi) const
{
    if (!(xi >= 0.0) || xi > max_argument_)
        throw DomainError("KernelTable: argument outside tabulated range");
    const double s = xi / spacing_;
    auto i = static_cast<std::size_t>(s);
    if (i + 1 >= v.size())
        i = v.size() - 2;
    const double u = s - static_cast<double>(i);
    const double u2 = u * u, u3 = u2 * u;
    const double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
    const double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
    return h00 * v[i] + h10 * spacing_ * dv[i] + h01 * v[i + 1] + h11 * spacing_ * dv[i + 1];
}

void KernelTable::write_csv(const std::string& path) const
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("KernelTable: cannot open " + path);
    out << "xi,j1_ratio,j1_ratio_deriv\n" << std::setprecision(17);
    for (std::size_t i = 0; i < ratio_.size(); ++i) {
        if (node(i) > max_argument_)
            break;
        out << node(i) << ',' << ratio_[i] << ',' << deriv_[i] << '\n';
    }
}

// ---------------------------------------------------------------------------

RadialKernel RadialKernel::from_table(std::vector<double> values, double support)
{
    if (values.size() < 4 || !(support > 0.0))
        throw DomainError("RadialKernel: need at least four samples and positive support");
    RadialKernel k;
    k.support_ = support;
    k.spacing_ = support / static_cast<double>(values.size() - 1);
    k.values_ = std::move(values);
    k.build_antiderivative();
    return k;
}

double RadialKernel::value(double r) const
{
    r = std::abs(r);
    if (r >= support_)
        return 0.0;
    const double s = r / spacing_;
    const auto i = static_cast<long>(s);
    const double u = s - static_cast<double>(i);
    const long n = static_cast<long>(values_.size());
    auto at = [&](long j) {
        if (j < 0)
            j = -j; // even reflection
        return j < n ? values_[static_cast<std::size_t>(j)] : 0.0;
    };
    const double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
    // four-point Lagrange on nodes -1, 0, 1, 2
    return p0 * (-u * (u - 1) * (u - 2) / 6.0) + p1 * ((u + 1) * (u - 1) * (u - 2) / 2.0)
        + p2 * (-(u + 1) * u * (u - 2) / 2.0) + p3 * ((u + 1) * u * (u - 1) / 6.0);
}

void RadialKernel::build_antiderivative()
{
    const QuadratureRule g = gauss_legendre(6, 0.0, 1.0);
    antideriv_.assign(values_.size(), 0.0);
    for (std::size_t i = 1; i < values_.size(); ++i) {
        const double lo = spacing_ * static_cast<double>(i - 1);
        double acc = 0.0;
        for (std::size_t q = 0; q < g.size(); ++q) {
            const double s = lo + spacing_ * g.nodes[q];
            acc += g.weights[q] * s * value(s);
        }
        antideriv_[i] = antideriv_[i - 1] + spacing_ * acc;
    }
}

double RadialKernel::shell_antiderivative(double s) const
{
    s = std::abs(s);
    if (s >= support_)
        return antideriv_.back();
    const double x = s / spacing_;
    auto i = static_cast<std::size_t>(x);
    if (i + 1 >= antideriv_.size())
        i = antideriv_.size() - 2;
    const double u = x - static_cast<double>(i);
    const double s0 = spacing_ * static_cast<double>(i), s1 = s0 + spacing_;
    const double d0 = s0 * value(s0), d1 = s1 * value(s1);
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * antideriv_[i] + (u3 - 2 * u2 + u) * spacing_ * d0 + (-2 * u3 + 3 * u2) * antideriv_[i + 1]
        + (u3 - u2) * spacing_ * d1;
}

double radial_convolve_at(const RadialKernel& kernel, const std::vector<double>& nodes,
                          const std::vector<double>& weights, const std::vector<double>& values, double r)
{
    double acc = 0.0;
    if (r < 1e-9 * kernel.support()) {
        for (std::size_t i = 0; i < nodes.size(); ++i)
            acc += weights[i] * nodes[i] * nodes[i] * values[i] * kernel.value(nodes[i]);
        return 4.0 * std::numbers::pi * acc;
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double rp = nodes[i];
        if (values[i] == 0.0 || std::abs(r - rp) >= kernel.support())
            continue;
        acc += weights[i] * rp * values[i]
            * (kernel.shell_antiderivative(r + rp) - kernel.shell_antiderivative(r - rp));
    }
    return 2.0 * std::numbers::pi * acc / r;
}

// ---------------------------------------------------------------------------

namespace {
double unit_bump(double s)
{
    const double q = 1.0 - s * s;
    return q > 0.0 ? std::exp(-1.0 / q) : 0.0;
}
} // namespace

double unit_bump_mass()
{
    const QuadratureRule rule = composite_gauss_legendre(64, 16, 0.0, 1.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i)
        acc += rule.weights[i] * rule.nodes[i] * rule.nodes[i] * unit_bump(rule.nodes[i]);
    return 4.0 * std::numbers::pi * acc;
}

double Mollifier::seed(double r) const { return norm_const_ * unit_bump(n_ * r); }

Mollifier make_mollifier(int n)
{
    if (n < 1)
        throw DomainError("make_mollifier: index must be a positive integer");
    Mollifier m;
    m.n_ = n;
    const double nd = static_cast<double>(n);
    m.norm_const_ = nd * nd * nd / unit_bump_mass();
    m.seed_ = RadialKernel::from_function([&m](double r) { return m.seed(r); }, m.seed_radius(), 4096);

    const QuadratureRule rule = composite_gauss_legendre(32, 8, 0.0, m.seed_radius());
    std::vector<double> seed_values(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i)
        seed_values[i] = m.seed(rule.nodes[i]);

    constexpr std::size_t cells = 1024;
    std::vector<double> pair(cells + 1);
    for (std::size_t i = 0; i < cells; ++i) {
        const double r = m.pair_radius() * static_cast<double>(i) / cells;
        pair[i] = std::max(0.0, radial_convolve_at(m.seed_, rule.nodes, rule.weights, seed_values, r));
    }
    pair[cells] = 0.0;
    m.pair_ = RadialKernel::from_table(std::move(pair), m.pair_radius());
    return m;
}

} // namespace vkg
