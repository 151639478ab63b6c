#pragma once

#include <utility>

#include "ves/params.hpp"

namespace ves {

// Everything of interest at a single capital intensity.
struct Bundle {
    double k;
    double f;
    double f_prime;
    double f_second;
    double mrs;           // f/f' - k
    double sigma;
    double sigma_prime;
    double share_capital; // k f'/f
    double share_labor;   // 1 - share_capital
};

enum class LimitValue { zero, positive_infinity };

struct FprimeLimits {
    LimitValue at_zero;
    LimitValue at_infinity;
};

enum class SigmaInfinityBranch { two_psi_ge_one, two_psi_lt_one };

struct SigmaLimits {
    double at_zero;          // always 1
    double at_infinity_paper;
    SigmaInfinityBranch at_infinity_branch;
};

// f(k). Defined for k >= 0; the value at 0 is 0 when theta > 0 and
// gamma*beta^omega when theta = 0 (CES). Throws NegativeInput.
double eval_f(const Params& p, double k);

// Remaining point evaluators require k > 0 and throw NonPositiveInput.
double eval_fprime(const Params& p, double k);
double eval_fsecond(const Params& p, double k);

// Marginal rate of substitution along the unit-labor isoquant, f/f' - k.
double eval_mrs(const Params& p, double k);

// Elasticity of substitution. Computed as 1 + c*x / D(x) with x = k^psi,
// c = alpha*beta*omega*psi^2 and
//   D(x) = alpha^2 eta(1-eta) x^2
//        + alpha*beta (2 theta (1-eta) + omega psi (1-psi)) x
//        + beta^2 theta (1-theta),
// whose coefficients are all nonnegative under validation, so sigma >= 1
// holds in floating point, not only in exact arithmetic. D is the same
// bracket that makes f'' negative; see eval_fsecond.
double eval_sigma(const Params& p, double k);

double eval_sigma_prime(const Params& p, double k);

// Location k* of the interior maximum of sigma,
// [beta^2 theta(1-theta) / (alpha^2 eta(1-eta))]^(1/(2 psi)).
// Throws NoTurningPoint for the Cobb-Douglas and CES reductions.
double sigma_turning_point(const Params& p);

// Limits of sigma at 0 and infinity. at_infinity_paper is 1 when
// 2 psi >= 1, else 1 + omega psi^2 / (2 theta (1-theta-omega psi)
// + omega psi (1-psi)); the second branch disagrees with numerical
// evaluation and is reported, never asserted. Throws for CES.
SigmaLimits sigma_limits(const Params& p);

// (capital share, labor share) at k. The pair sums to 1 exactly.
std::pair<double, double> eval_shares(const Params& p, double k);

// Limits of the capital share at infinity and of the labor share's
// complement: (eta, 1 - eta).
std::pair<double, double> shares_limits(const Params& p);

// Inada conditions, f'(0+) = +inf and f'(inf) = 0. Symbolic statement,
// no probing. Throws for CES where both fail.
FprimeLimits limits_fprime(const Params& p);

// F(K, L) = L f(K/L). Throws NonPositiveLabor, NegativeInput.
double aggregate_output(const Params& p, double capital, double labor);

// All nine quantities from one shared set of intermediate terms, so the
// bundle is internally consistent to the last bit (same x, same base, same
// D(x) everywhere). share_capital + share_labor == 1 exactly because
// share_labor is computed as the complement.
Bundle eval_bundle(const Params& p, double k);

}  // namespace ves
