#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "nurecon/piecewise.hpp"

/// Brute-force reference computations for tests and the acceptance harness.
///
/// Nothing here calls the quadrature, filter or frame code of the main
/// pipeline, so a shared bug cannot hide on both sides of a comparison.
namespace nurecon::oracle {

using ComplexFn = std::function<std::complex<double>(double)>;

/// Adaptive Gauss–Kronrod (7/15) bisection. The interval is first split into
/// `start_panels` pieces; a panel is accepted when |K15 - G7| is below its
/// share of `tol`. NumericalError past 60 levels.
std::complex<double> integrate_gk(const ComplexFn& fn, double a, double b, double tol = 1e-15,
                                  int start_panels = 1);

/// ∫_0^1 e^{2πi(λ-l)x} dx by quadrature.
std::complex<double> exp_inner_product(double lambda, int l, double tol = 1e-15);

/// \hat f(l) = ∫_0^1 f e^{-2πilx} dx, one entry per l in [lo, hi].
std::vector<std::complex<double>> projection_coefficients(const PiecewiseFunction& f, int lo, int hi,
                                                          double tol = 1e-15);
/// l = -n..n, stored at index l + n.
std::vector<std::complex<double>> projection_coefficients(const PiecewiseFunction& f, int n, double tol = 1e-15);

/// e^{-z} Σ_{l≤p} z^l/l! term by term in long double from lgamma.
long double sigma(int p, double gamma, double w);

/// Re Σ_{|l|≤n} σ_{p,γ}(l/m) \hat f(l) e^{2πilx}; f_hat holds l = -n..n.
double classical_filtered_sum(std::span<const std::complex<double>> f_hat, int p, double gamma, int m, int n,
                              double x);

/// √(Σ_{n<|j|≤J} |σ_{p,γ}(j/m) \hat f(j)|²).
///
/// NumericalError unless the terms at |j| = J are below 1e-18 of the total
/// (or below 1e-28 absolutely).
double mollified_tail_energy(const PiecewiseFunction& f, int p, double gamma, int m, int n, int J);
/// Same from precomputed coefficients for l = -J..J (J = (size-1)/2).
double mollified_tail_energy(std::span<const std::complex<double>> f_hat, int p, double gamma, int m, int n);

struct ErrorSummary {
    std::vector<double> pointwise;  // NaN at excluded points
    double sup = 0.0;
    double mean = 0.0;
    double sup_interior = 0.0;  // over d(x) >= delta
    std::size_t excluded = 0;
};

/// |recon(x) - f(x)| on the grid. Points within a few ulps of a jump are excluded.
ErrorSummary ground_truth_error(std::span<const double> grid, std::span<const double> recon,
                                const PiecewiseFunction& f, double delta);

}  // namespace nurecon::oracle
