#include <gamma2n/surface.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gamma2n {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void bad_params(const std::string& msg) {
    throw InvalidParams(msg);
}

} // namespace

const char* family_tag(FamilyId f) {
    switch (f) {
        case FamilyId::C:        return "C";
        case FamilyId::CD:       return "CD";
        case FamilyId::CE:       return "CE";
        case FamilyId::CE_PRIME: return "CE_PRIME";
        case FamilyId::DE:       return "DE";
    }
    return "?";
}

double CandidateLengths::operator[](FamilyId f) const {
    switch (f) {
        case FamilyId::C:        return len_C;
        case FamilyId::CD:       return len_CD;
        case FamilyId::CE:       return len_CE;
        case FamilyId::CE_PRIME: return len_CE_prime;
        case FamilyId::DE:       return len_DE;
    }
    return 0.0;
}

SurfaceParams make_params(int n, double c, double t) {
    if (n < 3) {
        std::ostringstream os;
        os << "cone order n must be at least 3, got " << n;
        bad_params(os.str());
    }
    if (!std::isfinite(c) || c <= 0.0) {
        std::ostringstream os;
        os << "cuff length c must be finite and positive, got " << c;
        bad_params(os.str());
    }
    if (!std::isfinite(t) || t < 0.0 || t > c) {
        std::ostringstream os;
        os << "waist offset t must lie in [0, c], got t=" << t << " with c=" << c;
        bad_params(os.str());
    }
    // Seam length from the trirectangle with acute angle pi/n:
    // sinh(s/2) * sinh(c/2) = cos(pi/n).
    const auto half_s =
        hyptrig::trirectangle_partner(hyptrig::HypLength(c / 2.0), hyptrig::Angle(kPi / n));
    return SurfaceParams{n, c, t, 2.0 * half_s.value()};
}

CandidateLengths candidate_lengths(const SurfaceParams& p) {
    using hyptrig::HypLength;
    const double c = p.c, t = p.t, s = p.s;

    CandidateLengths out{};
    out.len_CD = hyptrig::right_triangle_hyp(HypLength(t / 2.0), HypLength(s / 2.0)).value();
    out.len_DE =
        hyptrig::right_triangle_hyp(HypLength((c - t) / 2.0), HypLength(s / 2.0)).value();
    out.len_CE = c / 2.0;
    out.len_CE_prime =
        hyptrig::quad_two_right(HypLength(s), HypLength(t / 2.0), HypLength((c - t) / 2.0))
            .value();
    out.len_C =
        hyptrig::quad_two_right(HypLength(s), HypLength(t / 2.0), HypLength(c - t / 2.0)).value();
    return out;
}

LiftChain lift_chain(FamilyId f, int n) {
    if (n < 3) {
        std::ostringstream os;
        os << "cone order n must be at least 3, got " << n;
        bad_params(os.str());
    }
    switch (f) {
        case FamilyId::C:
            return LiftChain{1, 1, 2, 2};
        case FamilyId::CD:
        case FamilyId::CE:
        case FamilyId::CE_PRIME:
            return LiftChain{2, 1, 2, 4};
        case FamilyId::DE:
            if (n % 2 == 1) {
                return LiftChain{2, n, 2, 4 * n};
            }
            return LiftChain{2, n, 1, 2 * n};
    }
    bad_params("unknown candidate family");
}

double SystoleReport::lifted_of(FamilyId f) const {
    return lifted[static_cast<std::size_t>(f)];
}

SystoleReport systole_report(const SurfaceParams& p) {
    SystoleReport rep;
    rep.params = p;
    rep.candidates = candidate_lengths(p);

    double best = std::numeric_limits<double>::infinity();
    for (FamilyId f : kAllFamilies) {
        const auto chain = lift_chain(f, p.n);
        const double lifted = chain.product * rep.candidates[f];
        rep.lifted[static_cast<std::size_t>(f)] = lifted;
        best = std::min(best, lifted);
    }
    rep.systole = best;
    for (FamilyId f : kAllFamilies) {
        if (rep.lifted_of(f) <= best + kArgminTieTol) {
            rep.argmin.insert(f);
        }
    }
    return rep;
}

CoshLengthPartials analytic_partials(const SurfaceParams& p) {
    if (!(p.t > 0.0 && p.t < p.c)) {
        std::ostringstream os;
        os << "partials need an interior point 0 < t < c, got t=" << p.t << ", c=" << p.c;
        bad_params(os.str());
    }
    const double c = p.c, t = p.t, s = p.s;
    const double ch_s2 = std::cosh(s / 2.0), sh_s2 = std::sinh(s / 2.0);
    const double ch_c2 = std::cosh(c / 2.0), sh_c2 = std::sinh(c / 2.0);
    const double ch_t2 = std::cosh(t / 2.0), sh_t2 = std::sinh(t / 2.0);
    const double ch_w = std::cosh((c - t) / 2.0), sh_w = std::sinh((c - t) / 2.0);
    const double ch_s = std::cosh(s), sh_s = std::sinh(s);
    const double ch_u = std::cosh(c - t / 2.0), sh_u = std::sinh(c - t / 2.0);

    CoshLengthPartials d{};
    // Implicit differentiation of sinh(s/2) sinh(c/2) = const.
    d.ds_dc = -ch_c2 * sh_s2 / (ch_s2 * sh_c2);
    d.dcosh_len_CD_dt = 0.5 * sh_t2 * ch_s2;
    d.dcosh_len_DE_dt = -0.5 * ch_s2 * sh_w;
    d.dcosh_len_DE_dc = 0.5 * (sh_s2 * d.ds_dc * ch_w + ch_s2 * sh_w);
    d.dcosh_len_C_dt = 0.5 * (ch_s + 1.0) * std::sinh(t - c);
    d.dcosh_len_C_dc = sh_s * d.ds_dc * ch_t2 * ch_u + ch_s * ch_t2 * sh_u - sh_t2 * ch_u;
    return d;
}

SurfaceParams dual_params(const SurfaceParams& p) {
    using hyptrig::HypLength;
    const CandidateLengths cand = candidate_lengths(p);
    const double c2 = 2.0 * cand.len_CD;
    const double s2 =
        2.0 *
        hyptrig::trirectangle_partner(HypLength(c2 / 2.0), hyptrig::Angle(kPi / p.n)).value();

    // The dual waist is pinned by requiring the dual CD geodesic to have the
    // original half-cuff length: cosh(t2/2) cosh(s2/2) = cosh(c/2).
    const double ratio = std::cosh(p.c / 2.0) / std::cosh(s2 / 2.0);
    if (ratio < 1.0 - hyptrig::kAcoshSlack) {
        std::ostringstream os;
        os << "dual waist is undefined here (cosh ratio " << ratio << " < 1)";
        throw OutOfDomain(os.str());
    }
    double t2 = 2.0 * hyptrig::acosh_guarded(ratio);
    if (t2 > c2 + 1e-9) {
        std::ostringstream os;
        os << "dual waist t=" << t2 << " exceeds dual cuff c=" << c2
           << "; the dual point leaves the coordinate chart";
        throw OutOfDomain(os.str());
    }
    t2 = std::min(t2, c2);
    return make_params(p.n, c2, t2);
}

hyptrig::HypLength sigma12_boundary(const SurfaceParams& p) {
    using hyptrig::HypLength;
    return hyptrig::hexagon_opposite(HypLength(p.c), HypLength(p.c), HypLength(p.s));
}

AnnulusRelations annulus_relations(hyptrig::HypLength l, hyptrig::HypLength k) {
    if (k.value() <= 0.0) {
        throw DomainError("annulus core geodesic must have positive length");
    }
    const double ch_l = std::cosh(l.value());
    const double ch_k = std::cosh(k.value());
    const double quotient = (ch_l + ch_k) / (ch_k - 1.0);
    if (quotient < 1.0 - hyptrig::kAcoshSlack) {
        std::ostringstream os;
        os << "annulus width undefined (quotient " << quotient << " < 1)";
        throw DomainError(os.str());
    }
    const double ch_h = std::sqrt(quotient);
    AnnulusRelations out{};
    out.h = hyptrig::acosh_guarded(ch_h);
    out.residual = ch_k - ch_h * std::cosh(k.value() / 2.0);
    return out;
}

} // namespace gamma2n
