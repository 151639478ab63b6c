#pragma once

#include <cstdint>
#include <vector>

#include "ves/grid.hpp"
#include "ves/io.hpp"
#include "ves/params.hpp"

namespace ves::calibrate {

struct Problem {
    std::vector<Observation> observations;
    // Impose alpha + beta = 1 and drop beta from the search.
    bool normalize_alpha_beta = true;
    Mode mode = Mode::strict;
    std::uint64_t seed = 0;
};

struct Options {
    int starts = 16;         // multistart points (seeded Halton)
    long max_evals = 40000;  // total objective evaluation budget
    double ftol = 1e-24;     // simplex objective spread for convergence
    double xtol = 1e-10;     // simplex diameter for convergence
    int restarts = 2;        // shrink-restarts per start point
};

struct Result {
    Params params;
    double rmse;          // weighted, in log space
    double initial_rmse;  // best multistart point before local search
    long iterations;      // objective evaluations spent
    bool converged;
    int restarts_used;    // local searches actually launched
};

// Budget ran out before the best local search met tolerance. Best-so-far
// rides along.
class NoConvergence : public Error {
public:
    explicit NoConvergence(Result best)
        : Error("calibration did not converge within the evaluation budget"),
          best_(std::move(best)) {}

    const Result& best() const { return best_; }

private:
    Result best_;
};

// Log-space residuals ln y_i - ln f(k_i), in observation order. Throws
// NonPositiveObservation and NonFinite on bad rows.
std::vector<double> residuals(const Params& p,
                              const std::vector<Observation>& obs);

// Weighted nonlinear least squares on ln y. (ln gamma, theta, omega) are
// profiled exactly per candidate (psi, alpha[, beta]); Nelder-Mead with
// seeded multistarts covers the rest. Deterministic for a fixed problem.
// Throws InsufficientData (fewer than 5 normalized / 6 free observations,
// or duplicate k), NonPositiveObservation, NonFinite, NoConvergence.
Result fit(const Problem& problem, const Options& opts = {});

// y_i = f(k_i) * exp(e_i), e_i ~ N(0, noise_sd) from a Box-Muller pair on
// mt19937_64(seed). Bit-deterministic across platforms. noise_sd >= 0.
std::vector<Observation> synth_data(const Params& p, const GridSpec& grid,
                                    double noise_sd, std::uint64_t seed);

}  // namespace ves::calibrate
