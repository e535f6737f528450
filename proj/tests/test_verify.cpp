#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gamma2n/verify.hpp>

#include <gamma2n/errors.hpp>

#include <algorithm>
#include <set>
#include <string>

using namespace gamma2n::verify;

TEST_CASE("battery passes with default tolerances") {
    const Report rep = run_battery(12);
    CHECK(rep.all_passed());
    CHECK(rep.checks.size() >= 10);
    for (const auto& check : rep.checks) {
        INFO(check.name, ": measured ", check.measured, " tolerance ", check.tolerance);
        CHECK(check.passed);
        CHECK(check.measured <= check.tolerance);
    }
}

TEST_CASE("battery covers every advertised check") {
    const Report rep = run_battery(8);
    std::set<std::string> names;
    for (const auto& check : rep.checks) names.insert(check.name);
    for (const char* required :
         {"trirectangle-identity", "lift-products", "endpoint-orderings", "partials-vs-fd",
          "dual-involution", "dual-systole-invariance", "dual-fixed-point", "root-agreement",
          "root-residual", "equalization", "annulus-closure", "table-k-values", "bolza-root"}) {
        INFO("missing check: ", required);
        CHECK(names.count(required) == 1);
    }
}

TEST_CASE("battery reports the two printed-variant notes") {
    const Report rep = run_battery(5);
    REQUIRE(rep.info.size() == 2);
    CHECK(rep.info[0].text.find("3.7978") != std::string::npos);
    CHECK(rep.info[0].text.find("0.9822") != std::string::npos);
    CHECK(rep.info[1].text.find("1.4686") != std::string::npos);
}

TEST_CASE("battery echoes the tolerances it ran with") {
    Tolerances tol;
    tol.annulus_closure = 2.5e-7;
    const Report rep = run_battery(5, tol);
    CHECK(rep.tolerances.annulus_closure == 2.5e-7);
    const auto it = std::find_if(rep.checks.begin(), rep.checks.end(),
                                 [](const CheckResult& c) { return c.name == "annulus-closure"; });
    REQUIRE(it != rep.checks.end());
    CHECK(it->tolerance == 2.5e-7);
}

TEST_CASE("an unattainable tolerance turns into a reported failure") {
    Tolerances tol;
    tol.partials_fd_relative = 1e-300;
    const Report rep = run_battery(5, tol);
    CHECK_FALSE(rep.all_passed());
    int failures = 0;
    for (const auto& check : rep.checks) {
        if (!check.passed) {
            ++failures;
            CHECK(check.name == "partials-vs-fd");
            CHECK(check.measured > check.tolerance);
        }
    }
    CHECK(failures == 1);
}

TEST_CASE("battery validates its range") {
    CHECK_THROWS_AS(run_battery(2), gamma2n::InvalidParams);
    CHECK_THROWS_AS(run_battery(-5), gamma2n::InvalidParams);
}
