#include "nurecon/frame.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>

#include "nurecon/csv.hpp"
#include "nurecon/error.hpp"

namespace nurecon {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// e^{-2πi l x}, with l·x reduced modulo 1 first.
std::complex<double> mode_conj(int l, double x) {
    const double t = l * x;
    return std::polar(1.0, -two_pi * (t - std::nearbyint(t)));
}

}  // namespace

std::complex<double> inner_product_exp(double lambda, int l) {
    const double theta = lambda - l;
    if (theta == 0.0) return {1.0, 0.0};
    if (std::abs(theta) < 1e-9) {
        const std::complex<double> a{0.0, two_pi * theta};
        return 1.0 + a / 2.0 + a * a / 6.0;
    }
    // (e^{2πiθ} - 1)/(2πiθ) = e^{iπr} sin(πr)/(πθ) with r = θ mod 1; no cancellation for small θ.
    const double r = theta - std::nearbyint(theta);
    if (r == 0.0) return {0.0, 0.0};
    const double pr = std::numbers::pi * r;
    return std::polar(std::sin(pr) / (std::numbers::pi * theta), pr);
}

FrameOperator::FrameOperator(FrequencySet freqs, int n, double rel_tol)
    : freqs_(std::move(freqs)), n_(n), rel_tol_(rel_tol) {
    if (n < 1) throw ParameterError("assemble_omega: n must be >= 1");
    if (!(rel_tol >= 0.0)) throw ParameterError("assemble_omega: rel_tol must be >= 0");
    const int m = freqs_.m;
    if (freqs_.size() != static_cast<std::size_t>(2 * m + 1)) {
        throw ParameterError("assemble_omega: frequency set must have 2m+1 entries");
    }
    if (n > m) {
        warnings_.push_back("2n+1 = " + std::to_string(2 * n + 1) + " exceeds the sample count 2m+1 = " +
                            std::to_string(2 * m + 1));
    }

    const int rows = 2 * m + 1;
    const int cols = 2 * n + 1;
    omega_.resize(rows, cols);
    for (int c = 0; c < cols; ++c) {
        for (int r = 0; r < rows; ++r) omega_(r, c) = inner_product_exp(freqs_.lambda[static_cast<std::size_t>(r)], c - n);
    }

    Eigen::BDCSVD<Eigen::MatrixXcd> svd(omega_, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) throw NumericalError("assemble_omega: SVD failed");
    sigma_ = svd.singularValues();
    const double smax = sigma_.size() > 0 ? sigma_(0) : 0.0;
    rank_ = 0;
    for (Eigen::Index k = 0; k < sigma_.size(); ++k) {
        if (sigma_(k) > 0.0 && sigma_(k) >= rel_tol_ * smax) ++rank_;
    }
    if (rank_ < cols) {
        warnings_.push_back("effective rank " + std::to_string(rank_) + " < 2n+1 = " + std::to_string(cols) +
                            " (ill-posed frame section)");
    }
    u_ = svd.matrixU().leftCols(rank_);
    v_ = svd.matrixV().leftCols(rank_);
    inv_sigma_ = sigma_.head(rank_).cwiseInverse();
    pinv_ = v_ * inv_sigma_.asDiagonal() * u_.adjoint();
}

Eigen::VectorXcd FrameOperator::solve(const Eigen::VectorXcd& eta) const {
    if (eta.size() != omega_.rows()) throw UsageError("FrameOperator::solve: data length mismatch");
    const Eigen::VectorXcd projected = u_.adjoint() * eta.conjugate();
    const Eigen::VectorXcd scaled = inv_sigma_.asDiagonal() * projected;
    return (v_ * scaled).conjugate();
}

FrameOperator assemble_omega(const FrequencySet& freqs, int n, double rel_tol) {
    return FrameOperator(freqs, n, rel_tol);
}

double admissibility_constant(const FrameOperator& op) {
    double c0 = 0.0;
    const int m = op.m();
    const int n = op.n();
    for (int j = -m; j <= m; ++j) {
        for (int l = -n; l <= n; ++l) c0 = std::max(c0, std::abs(op.entry(j, l)) * (1.0 + std::abs(j - l)));
    }
    return c0;
}

double admissibility_constant(const FrequencySet& freqs, int n) {
    double c0 = 0.0;
    const int m = freqs.m;
    for (int j = -m; j <= m; ++j) {
        for (int l = -n; l <= n; ++l) {
            c0 = std::max(c0, std::abs(inner_product_exp(freqs.at(j), l)) * (1.0 + std::abs(j - l)));
        }
    }
    return c0;
}

int choose_n(Scheme scheme, int m) {
    if (m < 2) throw ParameterError("choose_n: m must be >= 2");
    int n = m;
    switch (scheme) {
        case Scheme::Jittered: n = (3 * m) / 5; break;
        case Scheme::Log: n = static_cast<int>(std::floor(2.0 * std::pow(m, 0.6) + 1e-9)); break;
        case Scheme::Uniform: n = m; break;
    }
    return std::max(1, n);
}

int choose_n_theoretical(double A, double c0, int m) {
    if (m < 2) throw ParameterError("choose_n_theoretical: m must be >= 2");
    if (!(A > 0.0) || !(c0 > 0.0)) throw ParameterError("choose_n_theoretical: A and c0 must be > 0");
    return std::max(1, static_cast<int>(std::floor(A * m / (A + 2.0 * c0 * c0) + 1e-9)));
}

// ---------------------------------------------------------------------------

FilterReconstruction::FilterReconstruction(std::shared_ptr<const FrameOperator> op_, FourierSamples samples_,
                                           FilterConfig cfg, std::vector<double> jumps_, CachePolicy policy_)
    : op(std::move(op_)), samples(std::move(samples_)), filter(cfg), jumps(std::move(jumps_)), policy(policy_) {
    if (!op) throw UsageError("FilterReconstruction: null frame operator");
    if (!(samples.freqs == op->freqs())) {
        throw UsageError("FilterReconstruction: samples and frame operator use different frequency sets");
    }
    if (samples.values.size() != samples.freqs.size()) {
        throw UsageError("FilterReconstruction: sample vector length does not match the frequency set");
    }
    filter.validate();
    std::sort(jumps.begin(), jumps.end());
}

namespace {

void check_grid(std::span<const double> xs) {
    for (double x : xs) {
        if (!(x >= 0.0 && x <= 1.0)) throw DomainError("filter_reconstruct: grid point outside [0,1]");
    }
}

std::pair<double, double> sum_modes(const Eigen::VectorXcd& c, int n, double x) {
    // Σ_l c_l e^{2πilx} = conj(Σ_l conj(c_l) e^{-2πilx})
    std::complex<double> s{0.0, 0.0};
    for (int l = -n; l <= n; ++l) s += c(l + n) * std::conj(mode_conj(l, x));
    return {s.real(), std::abs(s.imag())};
}

}  // namespace

std::pair<double, double> reconstruct_with_weights(const FilterReconstruction& recon, double x,
                                                   std::span<const double> weights) {
    const auto& fs = recon.samples.freqs;
    if (weights.size() != fs.size()) throw UsageError("reconstruct_with_weights: weight length mismatch");
    Eigen::VectorXcd eta(static_cast<Eigen::Index>(fs.size()));
    for (std::size_t i = 0; i < fs.size(); ++i) eta(static_cast<Eigen::Index>(i)) = weights[i] * recon.samples.values[i];
    return sum_modes(recon.op->solve(eta), recon.op->n(), x);
}

std::pair<double, double> filter_reconstruct_point(const FilterReconstruction& recon, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("filter_reconstruct: x outside [0,1]");
    const auto params = adaptive_params(x, recon.samples.freqs.m, recon.filter, recon.jumps);
    const auto w = frequency_weights(recon.samples.freqs, params);
    return reconstruct_with_weights(recon, x, w);
}

FilterValues filter_reconstruct(const FilterReconstruction& recon, std::span<const double> xs) {
    check_grid(xs);
    FilterValues out;
    out.values.resize(xs.size());
    out.imag_residual.resize(xs.size());
    out.params.resize(xs.size());
    const int m = recon.samples.freqs.m;
    for (std::size_t k = 0; k < xs.size(); ++k) out.params[k] = adaptive_params(xs[k], m, recon.filter, recon.jumps);

    if (recon.policy == CachePolicy::PerPoint) {
        for (std::size_t k = 0; k < xs.size(); ++k) {
            const auto w = frequency_weights(recon.samples.freqs, out.params[k]);
            std::tie(out.values[k], out.imag_residual[k]) = reconstruct_with_weights(recon, xs[k], w);
        }
        return out;
    }

    // One column of conj(η) per distinct (p, γ).
    std::map<std::pair<int, double>, Eigen::Index> column_of;
    std::vector<Eigen::Index> col(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const auto key = std::make_pair(out.params[k].p, out.params[k].gamma);
        auto [it, inserted] = column_of.try_emplace(key, static_cast<Eigen::Index>(column_of.size()));
        col[k] = it->second;
    }
    const auto rows = static_cast<Eigen::Index>(recon.samples.values.size());
    Eigen::MatrixXcd data(rows, static_cast<Eigen::Index>(column_of.size()));
    for (const auto& [key, c] : column_of) {
        const AdaptiveParams params{key.second, key.first, 0.0};
        const auto w = frequency_weights(recon.samples.freqs, params);
        for (Eigen::Index r = 0; r < rows; ++r) {
            data(r, c) = std::conj(w[static_cast<std::size_t>(r)] * recon.samples.values[static_cast<std::size_t>(r)]);
        }
    }
    // Column k holds conj(c) for its parameter group.
    const Eigen::MatrixXcd coeffs_conj = recon.op->pseudo_inverse() * data;
    const int n = recon.op->n();
    for (std::size_t k = 0; k < xs.size(); ++k) {
        std::complex<double> s{0.0, 0.0};
        for (int l = -n; l <= n; ++l) s += coeffs_conj(l + n, col[k]) * mode_conj(l, xs[k]);
        out.values[k] = s.real();
        out.imag_residual[k] = std::abs(s.imag());
    }
    return out;
}

void write_omega_csv(std::ostream& out, const FrameOperator& op) {
    out << "# m=" << op.m() << "\n# n=" << op.n() << "\n# scheme=" << to_string(op.freqs().scheme) << "\n";
    out << "row,col,re,im\n";
    for (int j = -op.m(); j <= op.m(); ++j) {
        for (int l = -op.n(); l <= op.n(); ++l) {
            const auto v = op.entry(j, l);
            out << j << "," << l << "," << csv::sci(v.real()) << "," << csv::sci(v.imag()) << "\n";
        }
    }
}

void write_singular_values_csv(std::ostream& out, const FrameOperator& op) {
    out << "# rel_tol=" << csv::sci(op.rel_tol()) << "\n# effective_rank=" << op.effective_rank() << "\n";
    out << "k,sigma_k\n";
    for (Eigen::Index k = 0; k < op.singular_values().size(); ++k) {
        out << k << "," << csv::sci(op.singular_values()(k)) << "\n";
    }
}

}  // namespace nurecon
