#pragma once

#include <gamma2n/hyptrig.hpp>

#include <array>
#include <cstddef>
#include <set>
#include <string>

namespace gamma2n {

// Absolute tolerance for reporting ties among lifted lengths in the argmin.
inline constexpr double kArgminTieTol = 1e-12;

// The five free-homotopy families of candidate shortest curves on the
// quotient orbifold S^2(2,2,2,n). CE is the cuff itself, CD and DE join the
// order-2 cone points through the seam, CE_PRIME and C wrap around it.
enum class FamilyId { C, CD, CE, CE_PRIME, DE };

inline constexpr std::array<FamilyId, 5> kAllFamilies = {
    FamilyId::C, FamilyId::CD, FamilyId::CE, FamilyId::CE_PRIME, FamilyId::DE};

// Canonical tag strings ("C", "CD", "CE", "CE_PRIME", "DE").
const char* family_tag(FamilyId f);

// Shape of a genus n-1 surface assembled from two isometric n-holed spheres:
// cuffs of length 2c, twist t between the seam endpoints of the two spheres
// (0 <= t <= c), and the seam length s determined by the trirectangle
// relation sinh(s/2) * sinh(c/2) = cos(pi/n). Build via make_params only.
struct SurfaceParams {
    int n;
    double c;
    double t;
    double s;
};

// Geodesic lengths of the five candidate families on the quotient orbifold.
struct CandidateLengths {
    double len_CD;
    double len_DE;
    double len_CE;
    double len_CE_prime;
    double len_C;

    double operator[](FamilyId f) const;
};

// Length multipliers picked up by a curve on its way up the covering tower
// S^2(2,2,2,n) -> S^2(2,2,n,n) -> S^2(2,2,...,2) -> surface.
struct LiftChain {
    int r1;       // S^2(2,2,n,n) over S^2(2,2,2,n)
    int r2;       // S^2(2,2,...,2) over S^2(2,2,n,n)
    int r3;       // surface over S^2(2,2,...,2)
    int product;  // r1 * r2 * r3
};

// Everything known about the systole candidates of one surface: orbifold
// lengths, their lifts to the surface, the minimum, and who attains it.
struct SystoleReport {
    SurfaceParams params;
    CandidateLengths candidates;
    std::array<double, 5> lifted;  // indexed in kAllFamilies order
    double systole;
    std::set<FamilyId> argmin;    // all families within kArgminTieTol of the min

    double lifted_of(FamilyId f) const;
};

// Partials of the cosh-length expressions (not of the lengths themselves;
// cosh is increasing on positive lengths, so sign conclusions transfer).
// The c-derivatives account for the induced seam change ds/dc.
struct CoshLengthPartials {
    double ds_dc;
    double dcosh_len_CD_dt;
    double dcosh_len_DE_dt;
    double dcosh_len_DE_dc;
    double dcosh_len_C_dt;
    double dcosh_len_C_dc;
};

// Result of the annulus cross-check around the (1,2)-subsurface boundary.
struct AnnulusRelations {
    double h;         // half-width, cosh h = sqrt((cosh l + cosh k)/(cosh k - 1))
    double residual;  // cosh k - cosh h * cosh(k/2); 0 in the equilateral case
};

// Validates n >= 3, c > 0, 0 <= t <= c and solves the seam length.
// Throws InvalidParams naming the violated bound.
SurfaceParams make_params(int n, double c, double t);

// The five candidate lengths:
//   len_CE       = c/2
//   cosh len_CD  = cosh(t/2) cosh(s/2)
//   cosh len_DE  = cosh((c-t)/2) cosh(s/2)
//   cosh len_CE' = cosh s cosh(t/2) cosh((c-t)/2) - sinh(t/2) sinh((c-t)/2)
//   cosh len_C   = cosh s cosh(t/2) cosh(c-t/2)   - sinh(t/2) sinh(c-t/2)
CandidateLengths candidate_lengths(const SurfaceParams& p);

// Covering length multipliers per family:
//   C -> (1,1,2); CD, CE, CE' -> (2,1,2); DE -> (2,n,2) odd n, (2,n,1) even n.
LiftChain lift_chain(FamilyId f, int n);

// Lift all candidates, take the minimum, and report ties.
SystoleReport systole_report(const SurfaceParams& p);

// Analytic partials, valid strictly inside 0 < t < c:
//   ds/dc             = -cosh(c/2) sinh(s/2) / (cosh(s/2) sinh(c/2))
//   d cosh l_CD / dt  =  (1/2) sinh(t/2) cosh(s/2)
//   d cosh l_DE / dt  = -(1/2) cosh(s/2) sinh((c-t)/2)
//   d cosh l_DE / dc  =  (1/2) (sinh(s/2) ds/dc cosh((c-t)/2) + cosh(s/2) sinh((c-t)/2))
//   d cosh l_C  / dt  =  (1/2) (cosh s + 1) sinh(t - c)
//   d cosh l_C  / dc  =  sinh s ds/dc cosh(t/2) cosh(c-t/2)
//                        + cosh s cosh(t/2) sinh(c-t/2) - sinh(t/2) cosh(c-t/2)
CoshLengthPartials analytic_partials(const SurfaceParams& p);

// Cut-and-paste change of coordinates that swaps the roles of the CD and CE
// families: c'' = 2 len_CD, s'' from the trirectangle relation, t'' from
// cosh(t''/2) cosh(s''/2) = cosh(c/2). Preserves the systole and is an
// involution where defined; throws OutOfDomain when the image leaves the
// chart (t'' > c'', or the cosh ratio dips below 1).
SurfaceParams dual_params(const SurfaceParams& p);

// Boundary length l of the (1,2)-subsurface cut out by one cuff and the
// neighboring seams: cosh l = sinh^2(c) cosh(s) - cosh^2(c). Throws
// DomainError if the subsurface degenerates (cannot occur for valid params;
// algebraically cosh l = 4cos^2(pi/n) (cosh c + 1) - 1 >= 1).
hyptrig::HypLength sigma12_boundary(const SurfaceParams& p);

// Width h of the maximal embedded annulus around a geodesic of length k
// facing a boundary of length l, plus the equilateral-configuration
// residual cosh k - cosh h cosh(k/2). Requires k > 0.
AnnulusRelations annulus_relations(hyptrig::HypLength l, hyptrig::HypLength k);

} // namespace gamma2n
