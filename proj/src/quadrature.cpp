#include "nurecon/quadrature.hpp"

#include <numbers>

namespace nurecon {

namespace {

GaussLegendreRule build_rule(int n) {
    if (n < 1) throw ParameterError("Gauss-Legendre rule needs at least one point");
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = -z;
        rule.nodes[hi] = z;
        rule.weights[lo] = rule.weights[hi] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return rule;
}

}  // namespace

GaussLegendreRule gauss_legendre_rule(int points) {
    static const GaussLegendreRule rule16 = build_rule(16);
    if (points == 16) return rule16;
    return build_rule(points);
}

}  // namespace nurecon
