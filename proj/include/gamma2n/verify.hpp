#pragma once

#include <string>
#include <vector>

namespace gamma2n::verify {

// Every tolerance the battery uses, in one place so reports are
// self-describing and a failure names the bound it broke.
struct Tolerances {
    double trirectangle_identity = 1e-12;
    double lift_products_exact = 0.0;
    double partials_fd_relative = 1e-6;
    double dual_involution = 1e-8;
    double dual_systole_invariance = 1e-10;
    double root_agreement = 1e-10;
    double root_residual = 1e-9;
    double equalization = 1e-9;
    double annulus_closure = 1e-6;
    double table_k_values = 5e-5;
    double bolza_exact = 1e-9;
};

struct CheckResult {
    std::string name;
    bool passed;
    double measured;   // worst observed error
    double tolerance;
    std::string detail;
};

// Informational lines (not pass/fail): values of printed formula variants
// that the implementation deliberately does not use, for comparison.
struct InfoLine {
    std::string text;
};

struct Report {
    std::vector<CheckResult> checks;
    std::vector<InfoLine> info;
    Tolerances tolerances;
    bool all_passed() const;
};

// Runs the full invariant battery up to symmetry order n_max (>= 3):
// trirectangle identity, lift products, endpoint orderings, monotonicity,
// analytic partials vs finite differences, dual involution and systole
// invariance, closed-form vs bisection roots, equalization at the optimum,
// annulus closure, table reproduction, and the Bolza value.
Report run_battery(int n_max, const Tolerances& tol = {});

} // namespace gamma2n::verify
