#pragma once

#include <complex>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nurecon/fourier_data.hpp"
#include "nurecon/hdaf.hpp"

namespace nurecon {

/// ⟨ψ, φ_l⟩ = ∫_0^1 e^{2πi(λ-l)x} dx.
///
/// Exactly 1 at λ = l and exactly 0 when λ - l is a nonzero integer; a short
/// series is used for |λ - l| < 1e-9.
std::complex<double> inner_product_exp(double lambda, int l);

/// Cross-correlation matrix Ω(j, l) = ⟨ψ_j, φ_l⟩ (rows j = -m..m, columns
/// l = -n..n) with a truncated-SVD pseudo-inverse. Immutable once built.
///
/// With samples η_j = ∫ f ψ_j^*, a mode expansion Σ c_l φ_l satisfies
/// conj(Ω) c = η, so solve() returns conj(Ω† conj(η)), the minimum-norm
/// least-squares solution of that system.
class FrameOperator {
public:
    FrameOperator(FrequencySet freqs, int n, double rel_tol = 1e-12);

    int m() const noexcept { return freqs_.m; }
    int n() const noexcept { return n_; }
    const FrequencySet& freqs() const noexcept { return freqs_; }
    const Eigen::MatrixXcd& omega() const noexcept { return omega_; }
    std::complex<double> entry(int j, int l) const { return omega_(j + m(), l + n_); }

    /// All singular values, descending.
    const Eigen::VectorXd& singular_values() const noexcept { return sigma_; }
    double rel_tol() const noexcept { return rel_tol_; }
    int effective_rank() const noexcept { return rank_; }

    /// Explicit Ω† of shape (2n+1) × (2m+1).
    const Eigen::MatrixXcd& pseudo_inverse() const noexcept { return pinv_; }

    /// Mode coefficients c (length 2n+1) from sample-side data η (length 2m+1),
    /// applied through the stored SVD factors.
    Eigen::VectorXcd solve(const Eigen::VectorXcd& eta) const;

    /// Non-fatal conditions met during assembly (rank loss, n > m).
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

private:
    FrequencySet freqs_;
    int n_;
    double rel_tol_;
    int rank_ = 0;
    Eigen::MatrixXcd omega_;
    Eigen::VectorXd sigma_;
    Eigen::MatrixXcd u_;  // (2m+1) × rank
    Eigen::MatrixXcd v_;  // (2n+1) × rank
    Eigen::VectorXd inv_sigma_;
    Eigen::MatrixXcd pinv_;
    std::vector<std::string> warnings_;
};

FrameOperator assemble_omega(const FrequencySet& freqs, int n, double rel_tol = 1e-12);

/// max over (j, l) of |Ω(j, l)| (1 + |j - l|).
double admissibility_constant(const FrameOperator& op);
double admissibility_constant(const FrequencySet& freqs, int n);

/// jittered: ⌊0.6 m⌋, log: ⌊2 m^0.6⌋, uniform: m. Never below 1.
int choose_n(Scheme scheme, int m);
/// ⌊A m / (A + 2 c₀²)⌋, never below 1.
int choose_n_theoretical(double A, double c0, int m);

enum class CachePolicy { PerPoint, GroupByParams };

/// Everything needed to evaluate the filtered frame reconstruction.
struct FilterReconstruction {
    FilterReconstruction(std::shared_ptr<const FrameOperator> op, FourierSamples samples, FilterConfig cfg,
                         std::vector<double> jumps, CachePolicy policy = CachePolicy::GroupByParams);

    std::shared_ptr<const FrameOperator> op;
    FourierSamples samples;
    FilterConfig filter;
    std::vector<double> jumps;  // empty selects no-filter mode
    CachePolicy policy;
};

struct FilterValues {
    std::vector<double> values;
    std::vector<double> imag_residual;
    std::vector<AdaptiveParams> params;
};

/// Re Σ_l c_{x,l} e^{2πilx} with c_x from the weighted samples σ(λ_j/m) \hat f(λ_j).
///
/// Under GroupByParams the pseudo-inverse is applied once per distinct (p, γ)
/// through one matrix product; PerPoint solves each point separately.
FilterValues filter_reconstruct(const FilterReconstruction& recon, std::span<const double> xs);

/// Same value at one point through the SVD factors, for cross-checking.
std::pair<double, double> filter_reconstruct_point(const FilterReconstruction& recon, double x);

/// Evaluation with caller-provided per-frequency weights (length 2m+1).
std::pair<double, double> reconstruct_with_weights(const FilterReconstruction& recon, double x,
                                                   std::span<const double> weights);

// CSV: "row,col,re,im" with signed j and l; "k,sigma_k".
void write_omega_csv(std::ostream& out, const FrameOperator& op);
void write_singular_values_csv(std::ostream& out, const FrameOperator& op);

}  // namespace nurecon
