#pragma once

#include <cmath>
#include <string>

namespace vkg {

/// Compactly supported profile b(s) on |s| < 1, even in s.
///   Exp:  exp(-1/(1 - s^2))    (smooth)
///   Poly: (1 - s^2)^k          (C^{k-1} across |s| = 1)
struct Bump1D {
    enum class Kind { Exp, Poly };
    Kind kind = Kind::Exp;
    int power = 4; ///< k of the polynomial kind, at least 2

    double value(double s) const
    {
        const double w = 1.0 - s * s;
        if (w <= 0.0)
            return 0.0;
        if (kind == Kind::Exp)
            return std::exp(-1.0 / w);
        return std::pow(w, power);
    }
    double derivative(double s) const
    {
        const double w = 1.0 - s * s;
        if (w <= 0.0)
            return 0.0;
        if (kind == Kind::Exp)
            return -2.0 * s / (w * w) * std::exp(-1.0 / w);
        return -2.0 * power * s * std::pow(w, power - 1);
    }
    double second_derivative(double s) const
    {
        const double w = 1.0 - s * s;
        if (w <= 0.0)
            return 0.0;
        if (kind == Kind::Exp) {
            // d/ds[-2s w^-2 e^{-1/w}] with w' = -2s
            const double e = std::exp(-1.0 / w);
            return e * (-2.0 / (w * w) - 8.0 * s * s / (w * w * w) + 4.0 * s * s / (w * w * w * w));
        }
        const double k = power;
        return -2.0 * k * std::pow(w, k - 1) + 4.0 * k * (k - 1) * s * s * std::pow(w, k - 2);
    }
    double peak() const { return value(0.0); }

    bool operator==(const Bump1D&) const = default;
};

Bump1D::Kind parse_bump_kind(const std::string& name);
std::string bump_kind_name(Bump1D::Kind kind);

} // namespace vkg
