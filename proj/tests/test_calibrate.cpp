#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "test_util.hpp"
#include "ves/calibrate.hpp"
#include "ves/core.hpp"

using doctest::Approx;
using ves::benchmark_params;
using ves::GridSpec;
using ves::Mode;
using ves::Observation;
using ves::Params;
using ves::Spacing;
namespace vc = ves::calibrate;

namespace {
const GridSpec kDataGrid{0.25, 32.0, 12, Spacing::log};

vc::Problem make_problem(std::vector<Observation> obs,
                         Mode mode = Mode::strict, std::uint64_t seed = 7) {
    vc::Problem prob;
    prob.observations = std::move(obs);
    prob.mode = mode;
    prob.seed = seed;
    return prob;
}
}  // namespace

TEST_CASE("synthetic data is deterministic and anchored to the curve") {
    const Params p = benchmark_params();
    const auto a = vc::synth_data(p, kDataGrid, 0.05, 3);
    const auto b = vc::synth_data(p, kDataGrid, 0.05, 3);
    REQUIRE(a.size() == 12);
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].k == b[i].k);
        CHECK(a[i].y == b[i].y);
    }
    const auto c = vc::synth_data(p, kDataGrid, 0.05, 4);
    CHECK(a[0].y != c[0].y);

    const auto clean = vc::synth_data(p, kDataGrid, 0.0, 99);
    for (const auto& o : clean) CHECK(o.y == ves::eval_f(p, o.k));

    CHECK_THROWS_AS(vc::synth_data(p, kDataGrid, -0.1, 0), ves::NegativeInput);
}

TEST_CASE("residuals vanish on the truth and follow the log form") {
    const Params p = benchmark_params();
    const auto obs = vc::synth_data(p, kDataGrid, 0.0, 1);
    for (double r : vc::residuals(p, obs)) CHECK(std::fabs(r) < 1e-14);

    const std::vector<Observation> one{{2.0, 2.0, 1.0}};
    CHECK(vc::residuals(p, one)[0] ==
          Approx(0.16962121058964804).epsilon(1e-12));

    CHECK_THROWS_AS(vc::residuals(p, {{0.0, 1.0, 1.0}}),
                    ves::NonPositiveObservation);
    CHECK_THROWS_AS(vc::residuals(p, {{1.0, -1.0, 1.0}}),
                    ves::NonPositiveObservation);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(vc::residuals(p, {{1.0, nan, 1.0}}), ves::NonFinite);
}

TEST_CASE("gamma and beta trade places without moving the residuals") {
    // scaling (alpha, beta) by c and gamma by c^omega leaves f unchanged,
    // so the data cannot tell these parameter sets apart
    const Params a = benchmark_params();
    const Params b = ves::validate_params(0.6, 0.5, 0.7, 0.1, 0.4,
                                          1.05 * std::sqrt(2.0));
    const auto obs = vc::synth_data(a, kDataGrid, 0.05, 21);
    const auto ra = vc::residuals(a, obs);
    const auto rb = vc::residuals(b, obs);
    for (size_t i = 0; i < ra.size(); ++i)
        CHECK(std::fabs(ra[i] - rb[i]) < 1e-12);
}

TEST_CASE("data requirements are enforced") {
    const Params p = benchmark_params();
    auto obs = vc::synth_data(p, {0.5, 8.0, 4, Spacing::log}, 0.0, 1);
    CHECK_THROWS_AS(vc::fit(make_problem(obs)), ves::InsufficientData);

    auto five = vc::synth_data(p, {0.5, 8.0, 5, Spacing::log}, 0.0, 1);
    auto prob = make_problem(five);
    prob.normalize_alpha_beta = false;
    CHECK_THROWS_AS(vc::fit(prob), ves::InsufficientData);

    auto dup = vc::synth_data(p, kDataGrid, 0.0, 1);
    dup[3].k = dup[4].k;
    CHECK_THROWS_AS(vc::fit(make_problem(dup)), ves::InsufficientData);

    auto bad = vc::synth_data(p, kDataGrid, 0.0, 1);
    bad[2].weight = 0.0;
    CHECK_THROWS_AS(vc::fit(make_problem(bad)), ves::NonPositiveObservation);
}

TEST_CASE("noiseless benchmark data is recovered to high accuracy") {
    const Params truth = benchmark_params();
    const auto obs = vc::synth_data(truth, kDataGrid, 0.0, 7);
    const auto r = vc::fit(make_problem(obs));
    CHECK(r.converged);
    CHECK(r.rmse <= 1e-8);
    CHECK(r.params.theta() == Approx(0.6).epsilon(2e-4));
    CHECK(r.params.omega() == Approx(0.5).epsilon(2e-4));
    CHECK(r.params.psi() == Approx(0.7).epsilon(2e-4));
    CHECK(r.params.alpha() == Approx(0.2).epsilon(5e-4));
    CHECK(r.params.beta() == Approx(0.8).epsilon(2e-4));
    CHECK(r.params.gamma() == Approx(1.05).epsilon(2e-4));
    CHECK(r.iterations > 0);
    CHECK(r.restarts_used >= 1);
    CHECK(r.rmse <= r.initial_rmse + 1e-15);

    // same inputs, same answer, bit for bit
    const auto again = vc::fit(make_problem(obs));
    CHECK(again.params.theta() == r.params.theta());
    CHECK(again.params.psi() == r.params.psi());
    CHECK(again.params.gamma() == r.params.gamma());
    CHECK(again.rmse == r.rmse);
    CHECK(again.iterations == r.iterations);
}

TEST_CASE("recovery works across several seeds and truths") {
    std::mt19937_64 rng(29);
    for (int rep = 0; rep < 6; ++rep) {
        const Params truth = testutil::random_strict_params(rng);
        // normalized fits can only see alpha/beta and gamma*beta^omega, so
        // compare against the equivalent normalized representation
        const double scale = truth.alpha() + truth.beta();
        const Params norm = ves::validate_params(
            truth.theta(), truth.omega(), truth.psi(), truth.alpha() / scale,
            truth.beta() / scale,
            truth.gamma() * std::pow(scale, truth.omega()), truth.mode());
        const auto obs = vc::synth_data(norm, kDataGrid, 0.0, 100 + rep);
        const auto r = vc::fit(make_problem(obs, Mode::strict, rep));
        CHECK(r.rmse <= 1e-6);
        CHECK(r.params.psi() == Approx(norm.psi()).epsilon(2e-3));
        CHECK(r.params.theta() == Approx(norm.theta()).epsilon(2e-3));
    }
}

TEST_CASE("cobb-douglas data drives omega to the boundary in extended mode") {
    const Params truth =
        ves::validate_params(0.55, 0.0, 0.7, 0.2, 0.8, 1.2, Mode::extended);
    const auto obs = vc::synth_data(truth, {0.2, 20.0, 10, Spacing::log}, 0.0, 5);
    const auto r = vc::fit(make_problem(obs, Mode::extended));
    CHECK(r.rmse <= 1e-8);
    CHECK(r.params.omega() <= 1e-3);
    CHECK(r.params.theta() == Approx(0.55).epsilon(1e-3));
    CHECK(r.params.gamma() == Approx(1.2).epsilon(1e-3));

    // strict mode cannot reach omega = 0 but must get arbitrarily close
    const auto rs = vc::fit(make_problem(obs, Mode::strict));
    CHECK(rs.params.omega() >= 1e-9);
    CHECK(rs.params.omega() <= 1e-3);
    CHECK(rs.rmse <= 1e-6);
}

TEST_CASE("noisy fits improve on the best initial guess and stay sane") {
    const Params truth = benchmark_params();
    const auto obs = vc::synth_data(truth, {0.25, 32.0, 48, Spacing::log},
                                    0.05, 11);
    const auto r = vc::fit(make_problem(obs, Mode::strict, 11));
    CHECK(r.converged);
    CHECK(r.rmse <= r.initial_rmse + 1e-15);
    CHECK(r.rmse > 0.01);   // can't beat the noise floor
    CHECK(r.rmse < 0.10);
    CHECK(r.params.theta() == Approx(0.6).epsilon(0.35));
    CHECK(r.params.eta() < 1.0);

    // weighted rmse definition: sqrt(sum w r^2 / sum w) on the reported fit
    const auto res = vc::residuals(r.params, obs);
    double ssr = 0.0, wsum = 0.0;
    for (size_t i = 0; i < res.size(); ++i) {
        ssr += obs[i].weight * res[i] * res[i];
        wsum += obs[i].weight;
    }
    CHECK(r.rmse == Approx(std::sqrt(ssr / wsum)).epsilon(1e-12));
}

TEST_CASE("weights tilt the fit toward the heavy observations") {
    const Params truth = benchmark_params();
    auto obs = vc::synth_data(truth, {0.25, 32.0, 24, Spacing::log}, 0.08, 13);
    // crank the weight on the first half only
    std::vector<Observation> tilted = obs;
    for (size_t i = 0; i < tilted.size() / 2; ++i) tilted[i].weight = 50.0;
    const auto flat = vc::fit(make_problem(obs, Mode::strict, 2));
    const auto heavy = vc::fit(make_problem(tilted, Mode::strict, 2));
    const auto res_flat = vc::residuals(flat.params, obs);
    const auto res_heavy = vc::residuals(heavy.params, obs);
    double low_flat = 0.0, low_heavy = 0.0;
    for (size_t i = 0; i < obs.size() / 2; ++i) {
        low_flat += res_flat[i] * res_flat[i];
        low_heavy += res_heavy[i] * res_heavy[i];
    }
    CHECK(low_heavy <= low_flat + 1e-12);
}

TEST_CASE("free-beta fits match the data as well as normalized ones") {
    const Params truth = benchmark_params();
    const auto obs = vc::synth_data(truth, {0.25, 32.0, 16, Spacing::log},
                                    0.0, 17);
    auto prob = make_problem(obs);
    prob.normalize_alpha_beta = false;
    const auto r = vc::fit(prob);
    CHECK(r.rmse <= 1e-6);
    // alpha/beta is identified even though alpha and beta separately are not
    CHECK(r.params.alpha() / r.params.beta() == Approx(0.25).epsilon(1e-2));
}

TEST_CASE("tiny budgets raise NoConvergence with the best fit attached") {
    const Params truth = benchmark_params();
    const auto obs = vc::synth_data(truth, kDataGrid, 0.0, 7);
    vc::Options opts;
    opts.max_evals = 10;
    try {
        vc::fit(make_problem(obs), opts);
        FAIL_CHECK("expected NoConvergence");
    } catch (const vc::NoConvergence& e) {
        CHECK_FALSE(e.best().converged);
        CHECK(e.best().iterations >= 10);
        CHECK(e.best().iterations <= 40);
        CHECK(e.best().restarts_used == 1);
        CHECK(std::isfinite(e.best().rmse));
    }
}
