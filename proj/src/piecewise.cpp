#include "nurecon/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nurecon/error.hpp"

namespace nurecon {

PiecewiseFunction::PiecewiseFunction(std::vector<SmoothPiece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw ParameterError("piecewise function needs at least one piece");
    if (pieces_.front().interval.lo != 0.0) throw ParameterError("first piece must start at 0");
    if (pieces_.back().interval.hi != 1.0) throw ParameterError("last piece must end at 1");

    breakpoints_.reserve(pieces_.size() + 1);
    breakpoints_.push_back(0.0);
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        const auto& iv = pieces_[k].interval;
        if (!(iv.lo < iv.hi)) {
            throw ParameterError("piece " + std::to_string(k) + " has empty interval");
        }
        if (k > 0 && iv.lo != pieces_[k - 1].interval.hi) {
            throw ParameterError("pieces " + std::to_string(k - 1) + " and " + std::to_string(k) +
                                 " do not tile [0,1)");
        }
        if (!pieces_[k].eval) throw ParameterError("piece " + std::to_string(k) + " has no evaluator");
        breakpoints_.push_back(iv.hi);
    }
}

std::size_t PiecewiseFunction::piece_index(double x) const {
    // First breakpoint strictly greater than x, among ξ_1..ξ_K.
    auto it = std::upper_bound(breakpoints_.begin() + 1, breakpoints_.end(), x);
    const auto idx = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    return std::min(idx, pieces_.size() - 1);
}

double PiecewiseFunction::operator()(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("evaluate: x = " + std::to_string(x) + " outside [0,1]");
    }
    return pieces_[piece_index(x)].eval(x);
}

std::vector<double> PiecewiseFunction::jump_set(bool include_endpoints) const {
    if (include_endpoints) return breakpoints_;
    return {breakpoints_.begin() + 1, breakpoints_.end() - 1};
}

double distance_to_jump(std::span<const double> jumps, double x) {
    if (jumps.empty()) return std::numeric_limits<double>::infinity();
    auto it = std::lower_bound(jumps.begin(), jumps.end(), x);
    double d = std::numeric_limits<double>::infinity();
    if (it != jumps.end()) d = std::min(d, std::abs(*it - x));
    if (it != jumps.begin()) d = std::min(d, std::abs(x - *(it - 1)));
    return d;
}

PiecewiseFunction builtin_f1() {
    constexpr double pi = std::numbers::pi;
    return PiecewiseFunction({
        {{0.0, 0.5}, Expr::sine(4.0 * pi)},
        {{0.5, 1.0}, Expr::sine(2.0 * pi)},
    });
}

PiecewiseFunction builtin_f2() {
    constexpr double pi = std::numbers::pi;
    return PiecewiseFunction({
        {{0.0, 0.3}, Expr::gaussian(-5.0)},
        {{0.3, 0.7}, Expr::cosine(2.0 * pi)},
        {{0.7, 1.0}, Expr::product(Expr::exponential(1.0), Expr::sine(4.0 * pi))},
    });
}

}  // namespace nurecon
