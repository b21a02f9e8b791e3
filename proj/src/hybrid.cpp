#include "nurecon/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nurecon/csv.hpp"
#include "nurecon/error.hpp"

namespace nurecon {

std::string_view to_string(MethodTag t) { return t == MethodTag::Filter ? "filter" : "extrapolated"; }

void HybridConfig::validate(std::span<const double> jumps) const {
    if (!(delta > 0.0)) throw ConfigError("hybrid: delta must be > 0");
    filter.validate();
    if (!(svd_tol >= 0.0)) throw ConfigError("hybrid: svd_tol must be >= 0");
    if (n_override && *n_override < 1) throw ConfigError("hybrid: n must be >= 1");
    if (fit_sample_count && *fit_sample_count < 1) throw ConfigError("hybrid: fit sample count must be >= 1");
    if (jumps.size() < 2 || jumps.front() != 0.0 || jumps.back() != 1.0) {
        throw ConfigError("hybrid: jump set must start at 0 and end at 1");
    }
    for (std::size_t l = 0; l + 1 < jumps.size(); ++l) {
        if (!(jumps[l + 1] - jumps[l] > 2.0 * delta)) {
            throw ConfigError("hybrid: subinterval [" + csv::sci(jumps[l]) + ", " + csv::sci(jumps[l + 1]) +
                              "] is not wider than 2*delta = " + csv::sci(2.0 * delta));
        }
    }
}

ExtrapolationParams HybridConfig::degree_params(int m) const {
    return degree_rule == DegreeRule::Practical ? extrapolation_params_practical(m, delta)
                                                : extrapolation_params_theoretical(Q, eps, rho);
}

std::size_t subinterval_index(std::span<const double> jumps, double x) {
    const auto it = std::upper_bound(jumps.begin(), jumps.end(), x);
    const auto idx = static_cast<std::size_t>(std::distance(jumps.begin(), it));
    return std::min(idx == 0 ? 0 : idx - 1, jumps.size() - 2);
}

HybridReconstruction hybrid_reconstruct(const FilterReconstruction& recon, std::span<const double> grid,
                                        const HybridConfig& cfg) {
    const auto& jumps = recon.jumps;
    cfg.validate(jumps);
    HybridReconstruction out;
    out.grid.assign(grid.begin(), grid.end());
    out.jumps = jumps;
    out.n = recon.op->n();
    out.degree = cfg.degree_params(recon.samples.freqs.m);
    const int node_count = cfg.fit_sample_count.value_or(out.degree.N + 1);

    // Grid values come from their own call so they match filter_reconstruct(recon, grid) exactly.
    const auto fv_grid = filter_reconstruct(recon, grid);

    const std::size_t subintervals = jumps.size() - 1;
    std::vector<double> points;
    std::vector<std::size_t> node_offset(subintervals);
    for (std::size_t l = 0; l < subintervals; ++l) {
        node_offset[l] = points.size();
        const auto nodes = equispaced_nodes(jumps[l] + cfg.delta, jumps[l + 1] - cfg.delta, node_count - 1);
        points.insert(points.end(), nodes.begin(), nodes.end());
    }
    const auto fv = filter_reconstruct(recon, points);

    out.fits.reserve(subintervals);
    for (std::size_t l = 0; l < subintervals; ++l) {
        const auto first = static_cast<std::ptrdiff_t>(node_offset[l]);
        const std::span<const double> xs(points.begin() + first, static_cast<std::size_t>(node_count));
        const std::span<const double> ys(fv.values.begin() + first, static_cast<std::size_t>(node_count));
        try {
            out.fits.push_back(chebyshev_fit(xs, ys, out.degree.M));
        } catch (const NumericalError& e) {
            throw NumericalError("hybrid: subinterval " + std::to_string(l) + ": " + e.what());
        }
    }

    const std::size_t g = grid.size();
    out.values.resize(g);
    out.tags.resize(g);
    out.filter_values = fv_grid.values;
    out.imag_residual = fv_grid.imag_residual;
    for (std::size_t i = 0; i < g; ++i) {
        const double x = grid[i];
        const std::size_t l = subinterval_index(jumps, x);
        const double d = std::min(x - jumps[l], jumps[l + 1] - x);
        if (d < cfg.delta) {
            out.tags[i] = MethodTag::Extrapolated;
            out.values[i] = evaluate_fit(out.fits[l], x);
        } else {
            out.tags[i] = MethodTag::Filter;
            out.values[i] = out.filter_values[i];
        }
    }
    return out;
}

HybridReconstruction hybrid_reconstruct(const FourierSamples& samples, std::span<const double> jumps,
                                        std::span<const double> grid, const HybridConfig& cfg) {
    cfg.validate(jumps);
    const int n = cfg.n_override.value_or(choose_n(samples.freqs.scheme, samples.freqs.m));
    auto op = std::make_shared<const FrameOperator>(samples.freqs, n, cfg.svd_tol);
    const FilterReconstruction recon(op, samples, cfg.filter, std::vector<double>(jumps.begin(), jumps.end()));
    return hybrid_reconstruct(recon, grid, cfg);
}

// ---------------------------------------------------------------------------

double delta_objective(double delta, double xi, int m, double rho, double eta, double C) {
    if (!(delta > 0.0) || !(delta < xi)) throw DomainError("delta_objective: need 0 < delta < xi");
    const double r = (xi + delta + 2.0 * std::sqrt(xi * delta)) / (2.0 * rho);
    if (!(r > 0.0 && r < 1.0)) throw DomainError("delta_objective: r* >= 1");
    const double denom = std::log(rho) - std::log((xi - delta) / 2.0);
    if (!(denom > 0.0)) throw DomainError("delta_objective: non-positive denominator");
    const double log_eps = std::log(C) + 2.25 * std::log(static_cast<double>(m)) - eta * m * delta;
    return -std::log(r) / denom * log_eps;
}

double optimize_delta(double xi, int m, double rho, double eta, double C, double search_tol) {
    if (!(xi > 0.0 && xi < 1.0)) throw ParameterError("optimize_delta: xi must lie in (0,1)");
    if (m < 1) throw ParameterError("optimize_delta: m must be >= 1");
    if (!(eta > 0.0) || !(C > 0.0)) throw ParameterError("optimize_delta: eta and C must be > 0");
    if (!(search_tol > 0.0) || !(2.0 * search_tol < xi)) throw ParameterError("optimize_delta: bad search_tol");

    constexpr double inf = std::numeric_limits<double>::infinity();
    auto g = [&](double d) {
        try {
            return delta_objective(d, xi, m, rho, eta, C);
        } catch (const DomainError&) {
            return inf;
        }
    };
    const double lo = search_tol;
    const double hi = xi - search_tol;
    constexpr int coarse = 200;
    const double h = (hi - lo) / coarse;
    int best = -1;
    double best_val = inf;
    for (int i = 0; i <= coarse; ++i) {
        const double v = g(lo + h * i);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    if (best < 0) throw ParameterError("optimize_delta: objective undefined on the whole search range (r* >= 1)");

    double a = lo + h * std::max(0, best - 1);
    double b = lo + h * std::min(coarse, best + 1);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double gc = g(c);
    double gd = g(d);
    while (b - a > search_tol) {
        if (gc <= gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - inv_phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + inv_phi * (b - a);
            gd = g(d);
        }
    }
    const double mid = 0.5 * (a + b);
    // Keep the coarse winner if refinement wandered onto an undefined point.
    return g(mid) <= best_val ? mid : lo + h * best;
}

}  // namespace nurecon
