#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "test_util.hpp"
#include "ves/core.hpp"
#include "ves/verify.hpp"

using doctest::Approx;
using ves::benchmark_params;
using ves::GridSpec;
using ves::Mode;
using ves::Params;
using ves::Spacing;
namespace vv = ves::verify;

namespace {
const GridSpec kCheckGrid{0.01, 100.0, 64, Spacing::log};

const vv::CheckResult& find_check(const vv::Report& rep, const std::string& n) {
    for (const auto& c : rep.checks)
        if (c.name == n) return c;
    throw std::runtime_error("missing check " + n);
}
}  // namespace

TEST_CASE("central differences recover polynomial derivatives") {
    auto cube = [](double x) { return x * x * x; };
    CHECK(vv::central_diff(cube, 2.0, 1, 1e-6) == Approx(12.0).epsilon(1e-9));
    CHECK(vv::central_diff(cube, 2.0, 2, 1e-4) == Approx(12.0).epsilon(1e-7));
    CHECK_THROWS_AS(vv::central_diff(cube, 2.0, 3, 1e-6), ves::Error);
    CHECK_THROWS_AS(vv::central_diff(cube, 2.0, 1, 0.5), ves::Error);
    CHECK_THROWS_AS(vv::central_diff(cube, 0.0, 1, 1e-6),
                    ves::NonPositiveInput);
}

TEST_CASE("sigma definition holds through both chains") {
    const auto r = vv::check_sigma_definition(benchmark_params(), kCheckGrid);
    CHECK(r.passed);
    CHECK_FALSE(r.skipped);
    CHECK(r.samples == 64);
    CHECK(r.max_rel_error <= r.tolerance);
    CHECK(r.notes.find("closed_chain") != std::string::npos);
    CHECK(r.notes.find("numeric_chain") != std::string::npos);
}

TEST_CASE("mrs identity holds and rebuilds sigma") {
    const auto r = vv::check_mrs_identity(benchmark_params(), kCheckGrid);
    CHECK(r.passed);
    CHECK(r.samples == 64);
    CHECK(r.notes.find("identity") != std::string::npos);
    CHECK(r.notes.find("sigma_chain") != std::string::npos);
}

TEST_CASE("check grids must stay inside the trusted range") {
    CHECK_THROWS_AS(vv::check_sigma_definition(
                        benchmark_params(), {1e-5, 10.0, 64, Spacing::log}),
                    ves::GridError);
    CHECK_THROWS_AS(vv::check_mrs_identity(benchmark_params(),
                                           {0.01, 1e5, 64, Spacing::log}),
                    ves::GridError);
}

TEST_CASE("reduced ode reproduces the closed form") {
    const Params p = benchmark_params();
    vv::OdeConfig cfg;
    cfg.y_start = ves::eval_f(p, 1.0);
    const auto path = vv::integrate_reduced_ode(p, cfg);
    REQUIRE(path.size() == 4097);
    CHECK(path.front().k == 1.0);
    CHECK(path.front().value == cfg.y_start);
    CHECK(path.back().k == 2.0);
    CHECK(path.back().value ==
          Approx(ves::eval_f(p, 2.0)).epsilon(1e-12));

    // integrating downhill works too
    vv::OdeConfig down;
    down.k_start = 2.0;
    down.k_end = 1.0;
    down.y_start = ves::eval_f(p, 2.0);
    CHECK(vv::integrate_reduced_ode(p, down).back().value ==
          Approx(ves::eval_f(p, 1.0)).epsilon(1e-12));

    // zero length path keeps y exactly
    vv::OdeConfig still;
    still.k_end = 1.0;
    still.y_start = 1.05;
    CHECK(vv::integrate_reduced_ode(p, still).back().value == 1.05);
}

TEST_CASE("ode config validation") {
    vv::OdeConfig cfg;
    cfg.zeta = 0.0;
    CHECK_THROWS_AS(vv::validate(cfg), ves::ConfigError);
    cfg = {};
    cfg.y_start = -1.0;
    CHECK_THROWS_AS(vv::validate(cfg), ves::ConfigError);
    cfg = {};
    cfg.step_count = 8;
    CHECK_THROWS_AS(vv::validate(cfg), ves::ConfigError);
    cfg = {};
    cfg.k_start = 0.0;
    CHECK_THROWS_AS(vv::validate(cfg), ves::ConfigError);
}

TEST_CASE("rk4 converges at fourth order") {
    const Params p = benchmark_params();
    auto rel_err = [&](int n) {
        vv::OdeConfig cfg;
        cfg.y_start = ves::eval_f(p, 1.0);
        cfg.step_count = n;
        const double got = vv::integrate_reduced_ode(p, cfg).back().value;
        const double want = ves::eval_f(p, 2.0);
        return std::fabs(got - want) / want;
    };
    const double e16 = rel_err(16);
    const double e32 = rel_err(32);
    CHECK(e16 > 1e-13);  // above round-off, so the ratio means something
    CHECK(e32 < e16 / 8.0);
}

TEST_CASE("mrs path reconstruction from sigma") {
    const Params p = benchmark_params();
    const GridSpec g{0.5, 20.0, 64, Spacing::log};
    const auto path = vv::reconstruct_mrs_from_sigma(
        [&](double k) { return ves::eval_sigma(p, k); }, 1.0,
        ves::eval_mrs(p, 1.0), g);
    REQUIRE(path.size() == 64);
    double worst = 0.0;
    for (const auto& pt : path) {
        const double want = ves::eval_mrs(p, pt.k);
        worst = std::max(worst, std::fabs(pt.value - want) / want);
    }
    CHECK(worst < 1e-10);

    // constant sigma = 2 has the closed solution r0 * sqrt(k/k0)
    const auto flat = vv::reconstruct_mrs_from_sigma(
        [](double) { return 2.0; }, 1.0, 3.0, g);
    for (const auto& pt : flat)
        CHECK(pt.value == Approx(3.0 * std::sqrt(pt.k)).epsilon(1e-10));

    CHECK_THROWS_AS(vv::reconstruct_mrs_from_sigma([](double) { return -1.0; },
                                                   1.0, 1.0, g),
                    ves::NumericalError);
    CHECK_THROWS_AS(vv::reconstruct_mrs_from_sigma([](double) { return 2.0; },
                                                   1.0, 0.0, g),
                    ves::NonPositiveInput);
}

TEST_CASE("output path reconstruction from the mrs") {
    const Params p = benchmark_params();
    const GridSpec g{0.5, 20.0, 64, Spacing::log};
    const auto path = vv::reconstruct_y_from_mrs(
        [&](double k) { return ves::eval_mrs(p, k); }, 1.0, 1.0,
        ves::eval_f(p, 1.0), g);
    double worst = 0.0;
    for (const auto& pt : path) {
        const double want = ves::eval_f(p, pt.k);
        worst = std::max(worst, std::fabs(pt.value - want) / want);
    }
    CHECK(worst < 1e-10);

    // r(k) = k and zeta = 2 gives dlny/dlnk = 1/3 exactly
    const auto flat = vv::reconstruct_y_from_mrs([](double k) { return k; },
                                                 2.0, 1.0, 5.0, g);
    for (const auto& pt : flat)
        CHECK(pt.value == Approx(5.0 * std::cbrt(pt.k)).epsilon(1e-10));

    CHECK_THROWS_AS(vv::reconstruct_y_from_mrs([](double k) { return k; }, 0.0,
                                               1.0, 1.0, g),
                    ves::ConfigError);
    CHECK_THROWS_AS(vv::reconstruct_y_from_mrs([](double) { return 0.0; }, 1.0,
                                               1.0, 1.0, g),
                    ves::NumericalError);
}

TEST_CASE("sigma infinity probe on the fast branch") {
    const auto r = vv::probe_sigma_infinity(benchmark_params());
    CHECK(r.passed);
    CHECK_FALSE(r.skipped);
    CHECK(r.max_rel_error <= 1e-2);
    CHECK(r.notes.find("branch_limit=1 ") != std::string::npos);
    CHECK(r.notes.find("numeric_estimate=") != std::string::npos);
}

TEST_CASE("sigma infinity probe on the contested branch") {
    const Params slow = ves::validate_params(0.6, 0.5, 0.4, 0.2, 0.8, 1.05);
    const auto r = vv::probe_sigma_infinity(slow);
    CHECK(r.skipped);
    CHECK(r.passed);
    CHECK(r.notes.find("branch_limit=1.22222222222") != std::string::npos);
    CHECK(r.notes.find("numeric_estimate=") != std::string::npos);
    CHECK(r.notes.find("reported_not_asserted") != std::string::npos);
}

TEST_CASE("shape scan on the benchmark") {
    const auto r =
        vv::scan_shape(benchmark_params(), {0.1, 1000.0, 256, Spacing::log});
    CHECK(r.passed);
    CHECK(r.samples == 256);
    CHECK(r.notes.find("kstar=23.0461") != std::string::npos);
    CHECK_THROWS_AS(
        vv::scan_shape(benchmark_params(), {0.1, 1000.0, 64, Spacing::log}),
        ves::GridError);
}

TEST_CASE("full battery passes on the benchmark") {
    const vv::Report rep = vv::run_all(benchmark_params());
    CHECK(rep.overall);
    REQUIRE(rep.checks.size() == 10);
    const char* expected[] = {
        "mrs_identity",         "sigma_definition", "ode_closure",
        "rk4_order",            "mrs_reconstruction", "y_reconstruction",
        "sigma_infinity_probe", "inada_probe",      "shares_limit_probe",
        "shape_scan"};
    for (size_t i = 0; i < rep.checks.size(); ++i) {
        CHECK(rep.checks[i].name == expected[i]);
        CHECK(rep.checks[i].passed);
    }
    const std::string text = vv::to_text(rep);
    CHECK(text.find("overall=PASS") != std::string::npos);
    CHECK(text.find("check=ode_closure status=PASS") != std::string::npos);

    const auto j = nlohmann::json::parse(vv::to_json_string(rep));
    CHECK(j["overall"] == true);
    CHECK(j["checks"].size() == 10);
    CHECK(j["params"]["theta"] == 0.6);
}

TEST_CASE("full battery tolerates the boundary reductions") {
    const Params cd =
        ves::validate_params(0.6, 0.0, 0.7, 0.2, 0.8, 1.0, Mode::extended);
    const vv::Report cd_rep = vv::run_all(cd);
    CHECK(cd_rep.overall);
    // constant share makes rk4 exact, so the order ratio is unmeasurable
    CHECK(find_check(cd_rep, "rk4_order").skipped);
    CHECK(find_check(cd_rep, "shape_scan").notes.find("unimodality skipped") !=
          std::string::npos);

    const Params ces =
        ves::validate_params(0.0, 2.0, 0.5, 0.2, 0.8, 1.0, Mode::extended);
    const vv::Report ces_rep = vv::run_all(ces);
    CHECK(ces_rep.overall);
    CHECK(find_check(ces_rep, "sigma_infinity_probe").skipped);
    CHECK(find_check(ces_rep, "inada_probe").skipped);
}

TEST_CASE("slow tail params skip the shares probe with a matched law") {
    // psi = 0.08: at k = 1e8 the share gap is ~beta*omega*psi/(alpha*k^psi)
    // which is far above 1e-4, yet exactly on its decay law
    const Params slow = ves::validate_params(0.3, 0.5, 0.08, 0.2, 0.8, 1.0);
    const vv::Report rep = vv::run_all(slow);
    const auto& probe = find_check(rep, "shares_limit_probe");
    CHECK(probe.skipped);
    CHECK(probe.passed);
    CHECK(probe.notes.find("limit unreached") != std::string::npos);
}
