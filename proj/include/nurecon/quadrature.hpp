#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "nurecon/error.hpp"

namespace nurecon {

/// Gauss–Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point rule by Newton iteration on P_n. The 16-point rule is built once.
GaussLegendreRule gauss_legendre_rule(int points);

struct QuadratureSpec {
    int points_per_panel = 16;
    int max_panels = 1 << 14;
    double tol = 1e-13;
};

struct QuadratureResult {
    std::complex<double> value;
    double error_estimate = 0.0;
    int panels = 0;
};

/// Composite Gauss–Legendre on [a, b] with 2^k equal panels, doubling until two
/// successive levels agree to spec.tol (absolute). start_panels is rounded up
/// to a power of two. Throws NumericalError past spec.max_panels.
template <class F>
QuadratureResult integrate_composite(const F& integrand, double a, double b, const QuadratureSpec& spec,
                                     int start_panels = 1) {
    const GaussLegendreRule rule = gauss_legendre_rule(spec.points_per_panel);
    auto level = [&](int panels) {
        const double h = (b - a) / panels;
        std::complex<double> sum{0.0, 0.0};
        for (int p = 0; p < panels; ++p) {
            const double mid = a + (p + 0.5) * h;
            std::complex<double> panel{0.0, 0.0};
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                panel += rule.weights[i] * std::complex<double>(integrand(mid + 0.5 * h * rule.nodes[i]));
            }
            sum += 0.5 * h * panel;
        }
        return sum;
    };

    int panels = static_cast<int>(std::bit_ceil(static_cast<unsigned>(std::max(1, start_panels))));
    if (panels > spec.max_panels) panels = spec.max_panels;
    std::complex<double> prev = level(panels);
    double estimate = std::numeric_limits<double>::infinity();
    while (panels < spec.max_panels) {
        panels *= 2;
        const std::complex<double> cur = level(panels);
        estimate = std::abs(cur - prev);
        prev = cur;
        if (estimate <= spec.tol) return {cur, estimate, panels};
    }
    throw NumericalError("composite Gauss-Legendre did not reach tol " + std::to_string(spec.tol) +
                             " within " + std::to_string(spec.max_panels) + " panels",
                         estimate);
}

}  // namespace nurecon
