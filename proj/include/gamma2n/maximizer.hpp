#pragma once

#include <gamma2n/surface.hpp>

#include <vector>

namespace gamma2n::maximizer {

// Shape parameter L = 4 cos^2(pi/n), in (1, 4) for n >= 3. The systole
// maximum is governed by the cubic in K = cosh(systole/2):
//   2K^3 - 3K^2 + 1 - L(K+1)^2 = 0.
struct ShapeParamL {
    double L;
};

struct CubicRoots {
    std::vector<double> roots;  // all real roots, ascending
    double selected;            // the unique root > 1 (K = cosh of a length)
    double discriminant;        // (L^3 + 18L^2 - 27L)/108
};

enum class Method { ClosedForm, NumericRoot, BruteForce };

struct Optimum {
    int n;
    double K;        // cosh(systole/2)
    double c_star;
    double t_star;
    double systole;
    Method method;
};

// Search box and grid for brute_force_max. The candidate-minimum objective
// is a faithful systole model only near its interior maximum; for c beyond
// roughly 3 it keeps growing along the domain edge (about 2c/3 as the seam
// shrinks) and stops describing the surface, so the default box is chosen
// to bracket every true optimum (c* < 2.18 for all n) while staying clear
// of that regime. Widen it deliberately if you want to see the edge effect.
struct SearchConfig {
    double c_min = 0.2;
    double c_max = 2.6;
    int c_steps = 200;
    int t_steps = 200;      // t grid spans [0, c] per c column
    int zoom_rounds = 3;    // 10x window shrink around the incumbent
    bool polish = true;     // compass-search refinement after the last round
};

ShapeParamL shape_param(int n);

// 2K^3 - 3K^2 + 1 - L(K+1)^2, the defining residual.
double cubic_residual(double K, ShapeParamL L);

// Closed-form roots via the depressed cubic y = K - (L+3)/6:
// real-radical Cardano when the discriminant is nonnegative, the
// trigonometric three-root method otherwise (which for integer n happens
// only at n = 3). Requires L in (0, 4]; throws NoValidRoot if the
// root > 1 is not unique.
CubicRoots solve_K_closed_form(ShapeParamL L);

// Independent check: bracketed bisection of cubic_residual on (1, 10]
// to 1e-13. Same domain and selection rule as the closed form.
double solve_K_numeric(ShapeParamL L);

// The systole-maximal surface for symmetry order n: K from the closed form,
// c* = arccosh K, seam from the trirectangle relation, and the twist from
// the equalization cosh(t*/2) = cosh(c*/2)/cosh(s/2), which makes the C, CD
// and CE lifts all equal to 2c*.
Optimum optimal_surface(int n);

// Grid maximin over the search box with iterative zoom and optional
// compass polish. Independent of the closed form; serves as its oracle.
Optimum brute_force_max(int n, const SearchConfig& cfg = {});

// One row per genus in [g_min, g_max] with n = genus + 1.
struct GenusRow {
    int genus;
    int n;
    double K;
    double systole;
    double c_star;
    double t_star;
};

std::vector<GenusRow> genus_table(int g_min, int g_max);

} // namespace gamma2n::maximizer
