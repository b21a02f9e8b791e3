#pragma once

#include <limits>
#include <span>
#include <vector>

#include "nurecon/expression.hpp"

namespace nurecon {

/// Half-open interval [lo, hi).
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const noexcept { return hi - lo; }
    bool contains(double x) const noexcept { return lo <= x && x < hi; }
};

/// A smooth closed-form piece, valid on the closure of its interval.
struct SmoothPiece {
    Interval interval;
    Expr eval;
};

/// Piecewise-smooth real function on [0,1] with known breakpoints.
///
/// Pieces are right-continuous: piece k owns [ξ_k, ξ_{k+1}), and x = 1 is
/// owned by the last piece. Immutable after construction.
class PiecewiseFunction {
public:
    /// Pieces must tile [0,1) in order with no gaps or overlaps.
    explicit PiecewiseFunction(std::vector<SmoothPiece> pieces);

    /// Throws DomainError for x outside [0,1].
    double operator()(double x) const;

    /// Index of the piece owning x (x in [0,1]).
    std::size_t piece_index(double x) const;

    const std::vector<SmoothPiece>& pieces() const noexcept { return pieces_; }

    /// ξ_0 = 0 < ξ_1 < ... < ξ_K = 1.
    const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }

    /// Interior breakpoints, plus 0 and 1 when include_endpoints is set.
    std::vector<double> jump_set(bool include_endpoints = true) const;

private:
    std::vector<SmoothPiece> pieces_;
    std::vector<double> breakpoints_;
};

/// Distance from x to the nearest element of a sorted jump set; +inf when the set is empty.
double distance_to_jump(std::span<const double> jumps, double x);

inline double distance_to_jump(const PiecewiseFunction& f, double x) {
    const auto jumps = f.jump_set(true);
    return distance_to_jump(jumps, x);
}

/// sin(4πx) on [0, 0.5), sin(2πx) on [0.5, 1].
PiecewiseFunction builtin_f1();

/// exp(-5x²) on [0, 0.3), cos(2πx) on [0.3, 0.7), eˣ sin(4πx) on [0.7, 1].
PiecewiseFunction builtin_f2();

}  // namespace nurecon
