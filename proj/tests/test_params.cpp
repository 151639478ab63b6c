#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "ves/params.hpp"

using ves::Mode;
using ves::Params;
using ves::Reduction;
using ves::validate_params;

TEST_CASE("benchmark params round out as expected") {
    const Params p = ves::benchmark_params();
    CHECK(p.theta() == 0.6);
    CHECK(p.omega() == 0.5);
    CHECK(p.psi() == 0.7);
    CHECK(p.alpha() == 0.2);
    CHECK(p.beta() == 0.8);
    CHECK(p.gamma() == 1.05);
    CHECK(p.eta() == doctest::Approx(0.95).epsilon(1e-15));
    CHECK(p.mu() == 0.6);
    CHECK(p.mode() == Mode::strict);
    CHECK(p.satisfies_strict());
}

TEST_CASE("strict validation rejects each bad value by name") {
    auto expect_violation = [](double th, double om, double ps, double al,
                               double be, double ga, const char* name) {
        try {
            validate_params(th, om, ps, al, be, ga);
            FAIL_CHECK("expected ConstraintViolation for " << name);
        } catch (const ves::ConstraintViolation& e) {
            CHECK(e.name() == name);
        }
    };
    expect_violation(0.0, 0.5, 0.7, 0.2, 0.8, 1.05, "theta");
    expect_violation(1.0, 0.5, 0.7, 0.2, 0.8, 1.05, "theta");
    expect_violation(0.6, 0.0, 0.7, 0.2, 0.8, 1.05, "omega");
    expect_violation(0.6, 0.5, 1.0, 0.2, 0.8, 1.05, "psi");
    expect_violation(0.6, 0.5, 0.7, 0.0, 0.8, 1.05, "alpha");
    expect_violation(0.6, 0.5, 0.7, 0.2, 1.0, 1.05, "beta");
    expect_violation(0.6, 0.5, 0.7, 0.2, 0.8, 0.0, "gamma");
    expect_violation(0.6, 0.5, 0.7, 0.2, 0.8, -2.0, "gamma");
    // eta = 0.6 + 0.8*0.9 = 1.32
    expect_violation(0.6, 0.8, 0.9, 0.2, 0.8, 1.05, "theta + omega*psi");
}

TEST_CASE("non-finite inputs are named") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(validate_params(nan, 0.5, 0.7, 0.2, 0.8, 1.05),
                    ves::NonFinite);
    CHECK_THROWS_AS(validate_params(0.6, 0.5, 0.7, 0.2, 0.8, inf),
                    ves::NonFinite);
}

TEST_CASE("extended mode admits the boundary reductions") {
    const Params cd =
        validate_params(0.6, 0.0, 0.7, 0.2, 0.8, 1.0, Mode::extended);
    CHECK(ves::classify_reduction(cd) == Reduction::cobb_douglas);
    CHECK_FALSE(cd.satisfies_strict());

    const Params ces =
        validate_params(0.0, 2.0, 0.5, 0.2, 0.8, 1.0, Mode::extended);
    CHECK(ves::classify_reduction(ces) == Reduction::ces);
    CHECK(ces.eta() == doctest::Approx(1.0).epsilon(1e-15));

    // theta = 0 without omega*psi = 1 stays out
    CHECK_THROWS_AS(
        validate_params(0.0, 0.5, 0.5, 0.2, 0.8, 1.0, Mode::extended),
        ves::ConstraintViolation);
    // omega = 0 still needs theta inside (0,1)
    CHECK_THROWS_AS(
        validate_params(0.0, 0.0, 0.7, 0.2, 0.8, 1.0, Mode::extended),
        ves::ConstraintViolation);
    // strict mode refuses both boundaries
    CHECK_THROWS_AS(validate_params(0.6, 0.0, 0.7, 0.2, 0.8, 1.0),
                    ves::ConstraintViolation);
    CHECK_THROWS_AS(validate_params(0.0, 2.0, 0.5, 0.2, 0.8, 1.0),
                    ves::ConstraintViolation);
}

TEST_CASE("interior extended params classify as general") {
    const Params p =
        validate_params(0.3, 0.4, 0.5, 0.5, 0.5, 2.0, Mode::extended);
    CHECK(ves::classify_reduction(p) == Reduction::general_ves);
    CHECK(p.satisfies_strict());
}

TEST_CASE("mode strings round-trip") {
    CHECK(ves::mode_from_string("strict") == Mode::strict);
    CHECK(ves::mode_from_string("extended") == Mode::extended);
    CHECK(std::string(ves::to_string(Mode::extended)) == "extended");
    CHECK_THROWS_AS(ves::mode_from_string("loose"), ves::Error);
}
