#pragma once

#include <gamma2n/errors.hpp>

namespace gamma2n::hyptrig {

// Default slack for arccosh arguments that drift below 1 through rounding.
// Formula chains lose ~1e-12 per step; anything further below 1 than this
// is treated as a real domain violation, not noise.
inline constexpr double kAcoshSlack = 1e-9;

// Nonnegative finite hyperbolic length. Construction validates, so a
// HypLength in hand is always usable as a formula input.
class HypLength {
public:
    explicit HypLength(double value);
    double value() const noexcept { return value_; }

private:
    double value_;
};

// Angle in (0, pi/2), the range where cos is in (0, 1) and the
// quadrilateral relations below are meaningful.
class Angle {
public:
    explicit Angle(double radians);
    double radians() const noexcept { return radians_; }

private:
    double radians_;
};

// arccosh with a guard band: arguments in [1 - tol, 1) clamp to 1 (result 0),
// arguments below that throw DomainError, as do NaN/overflowed inputs.
// Stable near 1 (computed via log1p, no cancellation).
double acosh_guarded(double x, double tol = kAcoshSlack);

// Hypotenuse of a hyperbolic right triangle with legs a, b:
//   cosh hyp = cosh a * cosh b.
HypLength right_triangle_hyp(HypLength a, HypLength b);

// Trirectangle (Lambert quadrilateral) side relation. For the quadrilateral
// with three right angles and acute angle phi, the two sides not adjacent to
// phi satisfy
//   sinh(side1) * sinh(side2) = cos(phi).
// Given one side (as a half-length) and phi, returns the other. Diverges as
// c_half -> 0, hence the positivity requirement.
HypLength trirectangle_partner(HypLength c_half, Angle phi);

// Geodesic connecting the far endpoints of two perpendiculars of lengths
// a and b erected at distance d along a base geodesic (same side):
//   cosh out = cosh d * cosh a * cosh b - sinh a * sinh b.
// Always >= d; degenerates to |a - b| at d = 0.
HypLength quad_two_right(HypLength d, HypLength a, HypLength b);

// Opposite side of a right-angled hexagon with alternating sides a1, m, a2:
//   cosh out = sinh a1 * sinh a2 * cosh m - cosh a1 * cosh a2.
// Throws DomainError when no such hexagon exists (right side < 1).
HypLength hexagon_opposite(HypLength a1, HypLength a2, HypLength m);

} // namespace gamma2n::hyptrig
