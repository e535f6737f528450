#include <gamma2n/maximizer.hpp>

#include <gamma2n/hyptrig.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>
#include <vector>

namespace gamma2n::maximizer {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Number of worker threads for grid sweeps. SYSTOLE_THREADS caps it when set;
// results are identical for any thread count (the reduction is order-fixed).
unsigned worker_count(std::size_t rows) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 4;
    if (const char* env = std::getenv("SYSTOLE_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && parsed >= 1) {
            hw = static_cast<unsigned>(std::min(parsed, 256L));
        } else {
            hw = 1;  // unparseable cap: be conservative rather than guess
        }
    }
    const std::size_t cap = std::max<std::size_t>(1, std::min<std::size_t>(hw, rows));
    return static_cast<unsigned>(cap);
}

// Systole of the five-family envelope, evaluated with raw libm calls.
// The grid sweep calls this millions of times; the checked wrapper types in
// candidate_lengths would only re-validate arguments the grid constructs
// correctly by design. Arguments of acosh are clamped at 1 to absorb the
// last-ulp dips that occur when t is 0 or c.
double envelope_systole(int n, double c, double t, double cos_pi_n) {
    const double s = 2.0 * std::asinh(cos_pi_n / std::sinh(c / 2.0));
    const double ch_s2 = std::cosh(s / 2.0);
    const double ch_s = std::cosh(s);
    const double ch_t2 = std::cosh(t / 2.0), sh_t2 = std::sinh(t / 2.0);
    const double ch_w = std::cosh((c - t) / 2.0), sh_w = std::sinh((c - t) / 2.0);

    const auto safe_acosh = [](double x) { return std::acosh(std::max(x, 1.0)); };

    const double len_CD = safe_acosh(ch_t2 * ch_s2);
    const double len_DE = safe_acosh(ch_w * ch_s2);
    const double len_CEP = safe_acosh(ch_s * ch_t2 * ch_w - sh_t2 * sh_w);
    const double len_C =
        safe_acosh(ch_s * ch_t2 * std::cosh(c - t / 2.0) - sh_t2 * std::sinh(c - t / 2.0));

    const double lift_DE = (n % 2 == 1) ? 4.0 * n : 2.0 * n;
    double m = 2.0 * len_C;
    m = std::min(m, 4.0 * len_CD);
    m = std::min(m, 2.0 * c);
    m = std::min(m, 4.0 * len_CEP);
    m = std::min(m, lift_DE * len_DE);
    return m;
}

struct GridBest {
    double value = -std::numeric_limits<double>::infinity();
    std::size_t i = 0;  // c index
    std::size_t j = 0;  // t index
    double c = 0.0;
    double t = 0.0;

    // Strictly better value wins; exact ties resolve to the lowest (i, j) so
    // the sweep result does not depend on thread count or schedule.
    bool better_than(const GridBest& o) const {
        if (value != o.value) return value > o.value;
        if (i != o.i) return i < o.i;
        return j < o.j;
    }
};

GridBest sweep_grid(int n, double cos_pi_n, double c_lo, double c_hi, std::size_t c_steps,
                    double t_center, double t_halfwidth, std::size_t t_steps) {
    const double dc = (c_hi - c_lo) / static_cast<double>(c_steps - 1);

    std::vector<GridBest> partial(worker_count(c_steps));
    const unsigned workers = static_cast<unsigned>(partial.size());

    auto run_rows = [&](unsigned w) {
        GridBest best;
        for (std::size_t i = w; i < c_steps; i += workers) {
            const double c = c_lo + dc * static_cast<double>(i);
            // t window: full [0, c] when no center is given, else the zoomed
            // band around the incumbent, clamped into [0, c].
            double t_lo = 0.0, t_hi = c;
            if (t_halfwidth > 0.0) {
                t_lo = std::max(0.0, t_center - t_halfwidth);
                t_hi = std::min(c, t_center + t_halfwidth);
                if (t_hi < t_lo) t_hi = t_lo;
            }
            const double dt =
                (t_steps > 1) ? (t_hi - t_lo) / static_cast<double>(t_steps - 1) : 0.0;
            for (std::size_t j = 0; j < t_steps; ++j) {
                const double t = t_lo + dt * static_cast<double>(j);
                const double v = envelope_systole(n, c, t, cos_pi_n);
                GridBest cand{v, i, j, c, t};
                if (cand.better_than(best)) best = cand;
            }
        }
        return best;
    };

    if (workers == 1) {
        partial[0] = run_rows(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] { partial[w] = run_rows(w); });
        }
        for (auto& th : pool) th.join();
    }

    GridBest best;
    for (const auto& p : partial) {
        if (p.better_than(best)) best = p;
    }
    return best;
}

// Deterministic compass polish: walk the 8 grid neighbours, halving the step
// until it underflows 1e-10. Only strict improvement moves; c stays inside
// the configured box and t inside [0, c].
GridBest compass_polish(int n, double cos_pi_n, GridBest seed, double step, double c_lo,
                        double c_hi) {
    GridBest cur = seed;
    cur.value = envelope_systole(n, cur.c, cur.t, cos_pi_n);
    while (step > 1e-10) {
        bool moved = false;
        for (int dc = -1; dc <= 1; ++dc) {
            for (int dt = -1; dt <= 1; ++dt) {
                if (dc == 0 && dt == 0) continue;
                double c = std::clamp(cur.c + dc * step, c_lo, c_hi);
                double t = std::clamp(cur.t + dt * step, 0.0, c);
                const double v = envelope_systole(n, c, t, cos_pi_n);
                if (v > cur.value) {
                    cur.value = v;
                    cur.c = c;
                    cur.t = t;
                    moved = true;
                }
            }
        }
        if (!moved) step *= 0.5;
    }
    return cur;
}

} // namespace

ShapeParamL shape_param(int n) {
    if (n < 3) {
        std::ostringstream os;
        os << "cone order n must be at least 3, got " << n;
        throw InvalidParams(os.str());
    }
    const double cosv = std::cos(kPi / n);
    return ShapeParamL{4.0 * cosv * cosv};
}

double cubic_residual(double K, ShapeParamL L) {
    return 2.0 * K * K * K - 3.0 * K * K + 1.0 - L.L * (K + 1.0) * (K + 1.0);
}

CubicRoots solve_K_closed_form(ShapeParamL Lp) {
    const double L = Lp.L;
    if (!std::isfinite(L) || L <= 0.0 || L > 4.0) {
        std::ostringstream os;
        os << "shape parameter L must lie in (0, 4], got " << L;
        throw InvalidParams(os.str());
    }

    // Normalize 2K^3 - 3K^2 + 1 - L(K+1)^2 = 0 and depress with K = y + shift.
    const double shift = (L + 3.0) / 6.0;
    const double P = -(L * L + 18.0 * L + 9.0) / 12.0;
    const double half_q_neg = (L * L * L + 27.0 * L * L + 135.0 * L - 27.0) / 216.0;  // -Q/2
    const double disc = (L * L * L + 18.0 * L * L - 27.0 * L) / 108.0;  // (Q/2)^2 + (P/3)^3

    CubicRoots out;
    out.discriminant = disc;

    if (disc < 0.0) {
        // Three real roots; real radicals are unavailable here, so use the
        // cosine parameterization.
        const double m = 2.0 * std::sqrt(-P / 3.0);
        const double arg = std::clamp(8.0 * half_q_neg / (m * m * m), -1.0, 1.0);
        const double theta = std::acos(arg);
        for (int k = 0; k < 3; ++k) {
            const double y = m * std::cos((theta + 2.0 * kPi * k) / 3.0);
            out.roots.push_back(y + shift);
        }
    } else {
        const double rt = std::sqrt(disc);
        const double u = std::cbrt(half_q_neg + rt);
        const double v = std::cbrt(half_q_neg - rt);
        out.roots.push_back(u + v + shift);
        if (disc == 0.0) {
            // Repeated pair at -(u+v)/2 (u = v here).
            out.roots.push_back(-(u + v) / 2.0 + shift);
        }
    }

    std::sort(out.roots.begin(), out.roots.end());

    int above_one = 0;
    for (double r : out.roots) {
        if (r > 1.0) {
            ++above_one;
            out.selected = r;
        }
    }
    if (above_one != 1) {
        std::ostringstream os;
        os << "expected exactly one root above 1, found " << above_one << " (L=" << L << ")";
        throw NoValidRoot(os.str());
    }
    return out;
}

double solve_K_numeric(ShapeParamL Lp) {
    const double L = Lp.L;
    if (!std::isfinite(L) || L <= 0.0 || L > 4.0) {
        std::ostringstream os;
        os << "shape parameter L must lie in (0, 4], got " << L;
        throw InvalidParams(os.str());
    }
    double lo = 1.0 + 1e-9, hi = 10.0;
    double flo = cubic_residual(lo, Lp);
    const double fhi = cubic_residual(hi, Lp);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0)) {
        throw NoValidRoot("no sign change in the bisection bracket (1, 10]");
    }
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = cubic_residual(mid, Lp);
        if (fmid == 0.0) return mid;
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

Optimum optimal_surface(int n) {
    const CubicRoots roots = solve_K_closed_form(shape_param(n));
    const double K = roots.selected;
    const double c = hyptrig::acosh_guarded(K);

    const double s =
        2.0 *
        hyptrig::trirectangle_partner(hyptrig::HypLength(c / 2.0), hyptrig::Angle(kPi / n))
            .value();
    // Waist position where the lifted CD family ties the cuff: 2 len_CD = c.
    const double t =
        2.0 * hyptrig::acosh_guarded(std::cosh(c / 2.0) / std::cosh(s / 2.0));

    Optimum opt;
    opt.n = n;
    opt.K = K;
    opt.c_star = c;
    opt.t_star = std::min(t, c);
    opt.systole = 2.0 * c;
    opt.method = Method::ClosedForm;
    return opt;
}

Optimum brute_force_max(int n, const SearchConfig& cfg) {
    if (n < 3) {
        std::ostringstream os;
        os << "cone order n must be at least 3, got " << n;
        throw InvalidParams(os.str());
    }
    if (!std::isfinite(cfg.c_min) || !std::isfinite(cfg.c_max) || cfg.c_min <= 0.0 ||
        cfg.c_max <= cfg.c_min) {
        std::ostringstream os;
        os << "search box must satisfy 0 < c_min < c_max, got [" << cfg.c_min << ", "
           << cfg.c_max << "]";
        throw InvalidParams(os.str());
    }
    if (cfg.c_steps < 2 || cfg.t_steps < 2) {
        std::ostringstream os;
        os << "grid needs at least 2 steps per axis, got " << cfg.c_steps << "x" << cfg.t_steps;
        throw InvalidParams(os.str());
    }
    if (cfg.zoom_rounds < 0) {
        throw InvalidParams("zoom round count must be nonnegative");
    }

    const double cos_pi_n = std::cos(kPi / n);
    const auto c_steps = static_cast<std::size_t>(cfg.c_steps);
    const auto t_steps = static_cast<std::size_t>(cfg.t_steps);

    GridBest best =
        sweep_grid(n, cos_pi_n, cfg.c_min, cfg.c_max, c_steps, 0.0, 0.0, t_steps);

    double wc = (cfg.c_max - cfg.c_min) / 10.0;
    double wt = best.c / 10.0;
    for (int round = 0; round < cfg.zoom_rounds; ++round) {
        const double c_lo = std::max(cfg.c_min, best.c - wc);
        const double c_hi = std::min(cfg.c_max, best.c + wc);
        GridBest zoom = sweep_grid(n, cos_pi_n, c_lo, c_hi, c_steps, best.t, wt, t_steps);
        if (zoom.value > best.value) best = zoom;
        wc /= 10.0;
        wt /= 10.0;
    }

    if (cfg.polish) {
        const double step = std::max(wc, 1e-6) * 10.0;
        best = compass_polish(n, cos_pi_n, best, step, cfg.c_min, cfg.c_max);
    }

    Optimum opt;
    opt.n = n;
    opt.K = std::cosh(best.c);
    opt.c_star = best.c;
    opt.t_star = best.t;
    opt.systole = best.value;
    opt.method = Method::BruteForce;
    return opt;
}

std::vector<GenusRow> genus_table(int g_min, int g_max) {
    if (g_min < 2 || g_max < g_min) {
        std::ostringstream os;
        os << "genus range must satisfy 2 <= g_min <= g_max, got [" << g_min << ", " << g_max
           << "]";
        throw InvalidParams(os.str());
    }
    std::vector<GenusRow> rows;
    rows.reserve(static_cast<std::size_t>(g_max - g_min + 1));
    for (int g = g_min; g <= g_max; ++g) {
        const Optimum opt = optimal_surface(g + 1);
        rows.push_back(GenusRow{g, opt.n, opt.K, opt.systole, opt.c_star, opt.t_star});
    }
    return rows;
}

} // namespace gamma2n::maximizer
