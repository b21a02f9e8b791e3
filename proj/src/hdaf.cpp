#include "nurecon/hdaf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nurecon/error.hpp"

namespace nurecon {

void FilterConfig::validate() const {
    if (!(alpha > 0.0)) throw ParameterError("filter alpha must be > 0");
    if (!(kappa > 0.0)) throw ParameterError("filter kappa must be > 0");
    if (p_floor < 0) throw ParameterError("filter p_floor must be >= 0");
}

bool FilterConfig::satisfies_decay_condition() const {
    return alpha * kappa < 1.0 / (2.0 * std::log(1.0 + std::numbers::sqrt2));
}

double hermite_polynomial(int order, double t) {
    if (order < 0 || order > 400) {
        throw ParameterError("hermite_polynomial: order " + std::to_string(order) + " outside [0, 400]");
    }
    if (order == 0) return 1.0;
    double prev = 1.0;
    double cur = 2.0 * t;
    for (int k = 1; k < order; ++k) {
        const double next = 2.0 * t * cur - 2.0 * k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double hdaf_kernel(int p, double gamma, double x) {
    if (!(gamma > 0.0)) throw ParameterError("hdaf_kernel: gamma must be > 0");
    if (p < 0) throw ParameterError("hdaf_kernel: p must be >= 0");
    const double s = x / (std::numbers::sqrt2 * gamma);
    const double gauss = std::exp(-s * s);
    if (gauss == 0.0) return 0.0;
    double sum = 0.0;
    double coeff = 1.0;  // (-1)^l / (4^l l!)
    for (int l = 0; l <= p; ++l) {
        if (l > 0) coeff *= -1.0 / (4.0 * l);
        sum += coeff * hermite_polynomial(2 * l, s);
    }
    return gauss * sum / gamma;
}

namespace {

double log_poisson_term(int l, double z) {
    if (l == 0) return 0.0;
    return l * std::log(z) - std::lgamma(l + 1.0);
}

// Σ_{l>p} e^{-z} z^l / l! for z < p + 1; terms decrease geometrically.
double poisson_tail(int p, double z) {
    if (z == 0.0) return 0.0;
    double term = std::exp(-z + log_poisson_term(p + 1, z));
    double sum = 0.0;
    for (int l = p + 1; term > 0.0; ++l) {
        sum += term;
        if (term < sum * 1e-18) break;
        term *= z / (l + 1);
    }
    return sum;
}

}  // namespace

double filter_sigma(int p, double gamma, double w) {
    if (p < 0) throw ParameterError("filter_sigma: p must be >= 0");
    const double wg = w * gamma;
    const double z = 0.5 * wg * wg;
    if (z > 700.0) {
        double lmax = -std::numeric_limits<double>::infinity();
        for (int l = 0; l <= p; ++l) lmax = std::max(lmax, log_poisson_term(l, z));
        double acc = 0.0;
        for (int l = 0; l <= p; ++l) acc += std::exp(log_poisson_term(l, z) - lmax);
        return std::exp(-z + lmax + std::log(acc));
    }
    // Below the Poisson mode the head sum can round above 1; go through the tail instead.
    if (z < p + 1.0) return 1.0 - poisson_tail(p, z);
    double term = 1.0;
    double sum = 1.0;
    for (int l = 1; l <= p; ++l) {
        term *= z / l;
        sum += term;
    }
    return std::exp(-z) * sum;
}

double filter_sigma_complement(int p, double gamma, double w) {
    if (p < 0) throw ParameterError("filter_sigma_complement: p must be >= 0");
    const double wg = w * gamma;
    const double z = 0.5 * wg * wg;
    if (z >= p + 1.0) return 1.0 - filter_sigma(p, gamma, w);
    return poisson_tail(p, z);
}

AdaptiveParams adaptive_params_from_distance(double d, int m, const FilterConfig& cfg) {
    if (m < 1) throw ParameterError("adaptive_params: m must be >= 1");
    if (!(d >= 0.0)) throw ParameterError("adaptive_params: distance must be >= 0");
    if (std::isinf(d)) return {0.0, cfg.p_floor, d};
    const double gamma = std::sqrt(cfg.alpha * d * m);
    const int p = std::max(cfg.p_floor, static_cast<int>(std::floor(cfg.kappa * d * m + 1e-9)));
    return {gamma, p, d};
}

AdaptiveParams adaptive_params(double x, int m, const FilterConfig& cfg, std::span<const double> jumps) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("adaptive_params: x outside [0,1]");
    return adaptive_params_from_distance(distance_to_jump(jumps, x), m, cfg);
}

std::vector<double> frequency_weights(const FrequencySet& freqs, const AdaptiveParams& params) {
    std::vector<double> w(freqs.size());
    const double inv_m = 1.0 / freqs.m;
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = filter_sigma(params.p, params.gamma, freqs.lambda[i] * inv_m);
    return w;
}

namespace {

double log_tail_core(int n, int m, int p, double gamma, const char* name) {
    if (n < 1 || m < 1) throw ParameterError(std::string(name) + ": n and m must be >= 1");
    if (p < 0) throw ParameterError(std::string(name) + ": p must be >= 0");
    if (!(gamma > 0.0)) throw ParameterError(std::string(name) + ": gamma must be > 0");
    const double ratio = n * gamma / (std::numbers::sqrt2 * m);
    const double z = ratio * ratio;
    if (z < p) {
        throw PreconditionError(std::string(name) + ": requires n^2 gamma^2 / (2 m^2) >= p, got " +
                                std::to_string(z) + " < " + std::to_string(p));
    }
    return -z + log_poisson_term(p, z);
}

}  // namespace

double tail_bound_linf(int n, int m, int p, double gamma, double f_sup) {
    const double core = log_tail_core(n, m, p, gamma, "tail_bound_linf");
    return std::exp(std::log(2.0 * f_sup * n) + core);
}

double tail_bound_l2(int n, int m, int p, double gamma, double f_sup) {
    const double core = log_tail_core(n, m, p, gamma, "tail_bound_l2");
    return std::exp(std::log(f_sup * std::sqrt(2.0 * n)) + core);
}

double mollifier_periodized(int p, double gamma, int m, double x, double period, std::optional<int> j_truncation) {
    if (!(period > 0.0)) throw ParameterError("mollifier_periodized: period must be > 0");
    if (m < 1) throw ParameterError("mollifier_periodized: m must be >= 1");
    int J = 0;
    if (j_truncation) {
        J = *j_truncation;
        if (J < 0) throw ParameterError("mollifier_periodized: negative truncation");
    } else {
        const double reach = 40.0 * std::numbers::sqrt2 * gamma / m + std::abs(x);
        J = static_cast<int>(std::ceil(reach / period)) + 1;
    }
    double sum = 0.0;
    for (int j = -J; j <= J; ++j) sum += hdaf_kernel(p, gamma, m * (x + period * j));
    return sum;
}

}  // namespace nurecon
