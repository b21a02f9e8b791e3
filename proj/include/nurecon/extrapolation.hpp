#pragma once

#include <iosfwd>
#include <span>
#include <vector>

namespace nurecon {

/// Degree-M least-squares polynomial in the Chebyshev-T basis on [a, b],
/// t = 2(x - a)/(b - a) - 1.
struct ChebyshevFit {
    int degree = 0;
    std::vector<double> coefficients;  // a_0 .. a_M
    double a = 0.0;
    double b = 1.0;
    int node_count = 0;        // N + 1
    double residual_norm = 0;  // RMS residual at the nodes

    double to_t(double x) const { return 2.0 * (x - a) / (b - a) - 1.0; }
};

/// Least squares on the Chebyshev-Vandermonde system by column-pivoted QR.
///
/// The domain [a, b] is the hull of xs. Throws ParameterError when
/// xs.size() <= M, sizes differ, or nodes repeat; NumericalError on rank loss.
ChebyshevFit chebyshev_fit(std::span<const double> xs, std::span<const double> ys, int M);

/// Clenshaw recurrence at t(x). Valid outside [a, b].
double evaluate_fit(const ChebyshevFit& fit, double x);

/// x_j = a + (b - a) j / N, j = 0..N.
std::vector<double> equispaced_nodes(double a, double b, int N);

struct ExtrapolationParams {
    int M = 0;
    int N = 0;
};

/// M = round(4 + mδ), N = 4M².
ExtrapolationParams extrapolation_params_practical(int m, double delta);
/// M = ⌈log(Q/ε)/log ρ⌉, N = 4M².
ExtrapolationParams extrapolation_params_theoretical(double Q, double eps, double rho);

/// C Q^{1-α(x)} ε^{α(x)} / (1 - r(x)), r(x) = (x + √(x²-1))/ρ, α(x) = -log r(x)/log ρ.
/// x must lie in [1, (ρ + 1/ρ)/2).
double extrapolation_error_bound(double rho, double Q, double eps, double x, double C);

// "# a=.., b=.., M=.., N=.., residual_norm=.." then "k,a_k".
void write_fit_csv(std::ostream& out, const ChebyshevFit& fit);
ChebyshevFit read_fit_csv(std::istream& in);

}  // namespace nurecon
