#include <gamma2n/hyptrig.hpp>

#include <cmath>
#include <sstream>

namespace gamma2n::hyptrig {

namespace {

[[noreturn]] void throw_domain(const char* what, double value) {
    std::ostringstream os;
    os << what << " (value " << value << ")";
    throw DomainError(os.str());
}

} // namespace

HypLength::HypLength(double value) : value_(value) {
    if (!std::isfinite(value)) {
        throw_domain("hyperbolic length must be finite", value);
    }
    if (value < 0.0) {
        throw_domain("hyperbolic length must be nonnegative", value);
    }
}

Angle::Angle(double radians) : radians_(radians) {
    constexpr double kHalfPi = 1.5707963267948966;
    if (!(radians > 0.0) || !(radians < kHalfPi)) {
        throw_domain("angle must lie in (0, pi/2)", radians);
    }
}

double acosh_guarded(double x, double tol) {
    if (std::isnan(x)) {
        throw DomainError("arccosh argument is NaN (corrupted formula chain)");
    }
    if (x < 1.0) {
        if (x >= 1.0 - tol) {
            return 0.0;  // rounding noise just below the branch point
        }
        throw_domain("arccosh argument below 1 beyond tolerance", x);
    }
    // Near 1 the textbook log form cancels; log1p keeps full precision.
    const double y = x - 1.0;
    if (y < 0.5) {
        return std::log1p(y + std::sqrt(y * (y + 2.0)));
    }
    return std::acosh(x);
}

HypLength right_triangle_hyp(HypLength a, HypLength b) {
    const double arg = std::cosh(a.value()) * std::cosh(b.value());
    return HypLength(acosh_guarded(arg));
}

HypLength trirectangle_partner(HypLength c_half, Angle phi) {
    if (c_half.value() == 0.0) {
        throw DomainError("trirectangle partner side diverges as the given side goes to 0");
    }
    const double ratio = std::cos(phi.radians()) / std::sinh(c_half.value());
    return HypLength(std::asinh(ratio));
}

HypLength quad_two_right(HypLength d, HypLength a, HypLength b) {
    const double arg = std::cosh(d.value()) * std::cosh(a.value()) * std::cosh(b.value())
                       - std::sinh(a.value()) * std::sinh(b.value());
    return HypLength(acosh_guarded(arg));
}

HypLength hexagon_opposite(HypLength a1, HypLength a2, HypLength m) {
    const double arg = std::sinh(a1.value()) * std::sinh(a2.value()) * std::cosh(m.value())
                       - std::cosh(a1.value()) * std::cosh(a2.value());
    if (arg < 1.0 - kAcoshSlack) {
        std::ostringstream os;
        os << "no right-angled hexagon with these alternating sides (cosh of the "
              "opposite side would be " << arg << ")";
        throw DomainError(os.str());
    }
    return HypLength(acosh_guarded(arg));
}

} // namespace gamma2n::hyptrig
