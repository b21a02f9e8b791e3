#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nurecon/fourier_data.hpp"

namespace nurecon {

/// Adaptive filter constants: γ_x = √(α d m), p_x = max(p_floor, ⌊κ d m⌋).
struct FilterConfig {
    double alpha = 1.0;
    double kappa = 1.0 / 15.0;
    int p_floor = 0;

    /// Throws ParameterError for non-positive α or κ, or negative p_floor.
    void validate() const;

    /// α·κ < 1/(2 ln(1+√2)). Violations are allowed but reported as warnings.
    bool satisfies_decay_condition() const;
};

struct AdaptiveParams {
    double gamma = 0.0;
    int p = 0;
    double d = 0.0;

    friend bool operator==(const AdaptiveParams&, const AdaptiveParams&) = default;
};

/// Physicists' Hermite polynomial H_order(t) by the three-term recurrence.
/// Orders above 400 are rejected with ParameterError.
double hermite_polynomial(int order, double t);

/// HDAF kernel (1/γ) e^{-s²} Σ_{l≤p} (-1)^l/(4^l l!) H_{2l}(s), s = x/(√2 γ).
///
/// Diagnostic only. Its transform with the e^{-iwx} convention is
/// √(2π) σ_{p,γ}(w); the reconstruction itself uses filter_sigma directly.
double hdaf_kernel(int p, double gamma, double x);

/// σ_{p,γ}(w) = e^{-z} Σ_{l=0}^{p} z^l / l!, z = (wγ)²/2.
///
/// Multiplicative term recurrence; log-sum-exp once z > 700.
double filter_sigma(int p, double gamma, double w);

/// 1 - σ_{p,γ}(w), computed without cancellation (tail of the Poisson series).
double filter_sigma_complement(int p, double gamma, double w);

/// Per-point (γ, p) from the distance to the nearest jump.
///
/// An empty jump set selects no-filter mode: d = +inf, γ = 0, p = p_floor,
/// which makes every frequency weight exactly 1. d = 0 gives the same weights.
AdaptiveParams adaptive_params(double x, int m, const FilterConfig& cfg, std::span<const double> jumps);
AdaptiveParams adaptive_params_from_distance(double d, int m, const FilterConfig& cfg);

/// weight_j = σ_{p,γ}(λ_j / m).
std::vector<double> frequency_weights(const FrequencySet& freqs, const AdaptiveParams& params);

/// 2 ‖f‖∞ (n/p!) e^{-z} z^p with z = n²γ²/(2m²); requires z ≥ p.
double tail_bound_linf(int n, int m, int p, double gamma, double f_sup);
/// ‖f‖∞ (√(2n)/p!) e^{-z} z^p with z = n²γ²/(2m²); requires z ≥ p.
double tail_bound_l2(int n, int m, int p, double gamma, double f_sup);

/// Σ_j H_{p,γ}(m (x + period·j)) truncated at |j| ≤ j_truncation.
///
/// Without an explicit truncation the smallest one whose dropped images sit
/// beyond 40 kernel widths is used (Gaussian factor below e^{-800}).
double mollifier_periodized(int p, double gamma, int m, double x, double period = 1.0,
                            std::optional<int> j_truncation = std::nullopt);

}  // namespace nurecon
