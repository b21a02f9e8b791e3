#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nurecon/extrapolation.hpp"
#include "nurecon/frame.hpp"

namespace nurecon {

enum class MethodTag { Filter, Extrapolated };
std::string_view to_string(MethodTag t);

enum class DegreeRule { Practical, Theoretical };

struct HybridConfig {
    double delta = 1.0 / 40.0;
    FilterConfig filter;
    std::optional<int> n_override;  // otherwise choose_n(scheme, m)
    double svd_tol = 1e-12;

    DegreeRule degree_rule = DegreeRule::Practical;
    // Theoretical rule inputs.
    double Q = 1.0;
    double eps = 1e-6;
    double rho = 2.0;

    /// Node count N + 1 for each fit; defaults to 4M² + 1.
    std::optional<int> fit_sample_count;

    /// Throws ConfigError naming the first subinterval not wider than 2δ.
    void validate(std::span<const double> jumps) const;
    ExtrapolationParams degree_params(int m) const;
};

struct HybridReconstruction {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<MethodTag> tags;
    std::vector<double> filter_values;
    std::vector<double> imag_residual;
    std::vector<ChebyshevFit> fits;  // one per subinterval [ξ_l, ξ_{l+1}]
    std::vector<double> jumps;
    int n = 0;
    ExtrapolationParams degree;
};

/// Filter values where the distance to the owning subinterval's end points is
/// at least δ; elsewhere (including jump points, which belong to the
/// subinterval on their right) the value of that subinterval's Chebyshev fit
/// to filter values at N+1 equispaced nodes on [ξ_l + δ, ξ_{l+1} - δ].
///
/// The jump set must be sorted, start at 0 and end at 1.
HybridReconstruction hybrid_reconstruct(const FilterReconstruction& recon, std::span<const double> grid,
                                        const HybridConfig& cfg);

/// Builds the frame operator with n from the config, then as above.
HybridReconstruction hybrid_reconstruct(const FourierSamples& samples, std::span<const double> jumps,
                                        std::span<const double> grid, const HybridConfig& cfg);

/// Index of the subinterval owning x: [ξ_l, ξ_{l+1}), the last one closed.
std::size_t subinterval_index(std::span<const double> jumps, double x);

/// -log r*/(log ρ - log((ξ-δ)/2)) · (log C + (9/4) log m - η m δ),
/// r* = (ξ + δ + 2√(ξδ))/(2ρ). Throws DomainError where r* ≥ 1 or the
/// denominator is not positive.
double delta_objective(double delta, double xi, int m, double rho, double eta, double C);

/// Minimizer of delta_objective over (tol, ξ - tol): a 200-point scan, then
/// golden-section refinement to width tol. ParameterError if the objective is
/// undefined on the whole range.
double optimize_delta(double xi, int m, double rho, double eta, double C, double search_tol = 1e-8);

}  // namespace nurecon
