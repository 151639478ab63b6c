#include "ves/core.hpp"

#include <cmath>

namespace ves {

namespace {

// Shared intermediates at one k. The quadratic
//   D(x) = t2 x^2 + t1 x + t0,  x = k^psi
// carries every curvature fact at once: f'' = -f D/(k(alpha x + beta))^2
// and sigma = 1 + c x / D. All four coefficients are nonnegative whenever
// the params validated (eta < 1 or the boundary reductions), so D > 0,
// f'' < 0 and sigma >= 1 cannot be lost to round-off.
struct Terms {
    double x;     // k^psi
    double base;  // alpha x + beta
    double num;   // alpha eta x + beta theta, = k f'/f * base
    double t2, t1, t0;
    double c;     // alpha beta omega psi^2
    double d;     // D(x)
};

Terms terms_at(const Params& p, double k) {
    const double theta = p.theta(), omega = p.omega(), psi = p.psi();
    const double alpha = p.alpha(), beta = p.beta(), eta = p.eta();
    Terms t;
    t.x = std::pow(k, psi);
    t.base = alpha * t.x + beta;
    t.num = alpha * eta * t.x + beta * theta;
    t.t2 = alpha * alpha * eta * (1.0 - eta);
    t.t1 = alpha * beta * (2.0 * theta * (1.0 - eta) + omega * psi * (1.0 - psi));
    t.t0 = beta * beta * theta * (1.0 - theta);
    t.c = alpha * beta * omega * psi * psi;
    t.d = (t.t2 * t.x + t.t1) * t.x + t.t0;
    return t;
}

void require_positive_k(double k) {
    if (!std::isfinite(k)) throw NonFinite("k");
    if (!(k > 0.0)) throw NonPositiveInput("k", k);
}

}  // namespace

double eval_f(const Params& p, double k) {
    if (!std::isfinite(k)) throw NonFinite("k");
    if (k < 0.0) throw NegativeInput("k", k);
    if (k == 0.0)
        return p.theta() > 0.0 ? 0.0
                               : p.gamma() * std::pow(p.beta(), p.omega());
    const double base = p.alpha() * std::pow(k, p.psi()) + p.beta();
    return p.gamma() * std::pow(k, p.theta()) * std::pow(base, p.omega());
}

double eval_fprime(const Params& p, double k) {
    require_positive_k(k);
    const Terms t = terms_at(p, k);
    return p.gamma() * t.num /
           (std::pow(k, 1.0 - p.theta()) * std::pow(t.base, 1.0 - p.omega()));
}

double eval_fsecond(const Params& p, double k) {
    require_positive_k(k);
    const Terms t = terms_at(p, k);
    const double f = p.gamma() * std::pow(k, p.theta()) *
                     std::pow(t.base, p.omega());
    const double kb = k * t.base;
    return -f * t.d / (kb * kb);
}

double eval_mrs(const Params& p, double k) {
    require_positive_k(k);
    const Terms t = terms_at(p, k);
    const double slack = p.alpha() * (1.0 - p.eta()) * t.x +
                         p.beta() * (1.0 - p.theta());
    return k * slack / t.num;
}

double eval_sigma(const Params& p, double k) {
    require_positive_k(k);
    const Terms t = terms_at(p, k);
    return 1.0 + t.c * t.x / t.d;
}

double eval_sigma_prime(const Params& p, double k) {
    require_positive_k(k);
    const Terms t = terms_at(p, k);
    const double lead = p.alpha() * p.beta() * p.omega() * p.psi() *
                        p.psi() * p.psi();
    return lead * (t.x / k) * (t.t0 - t.t2 * t.x * t.x) / (t.d * t.d);
}

double sigma_turning_point(const Params& p) {
    switch (classify_reduction(p)) {
        case Reduction::cobb_douglas:
            throw NoTurningPoint("sigma is constant 1 when omega = 0");
        case Reduction::ces:
            throw NoTurningPoint("sigma is constant 1/(1-psi) when theta = 0");
        default:
            break;
    }
    const Terms t = terms_at(p, 1.0);
    return std::pow(t.t0 / t.t2, 1.0 / (2.0 * p.psi()));
}

SigmaLimits sigma_limits(const Params& p) {
    if (classify_reduction(p) == Reduction::ces)
        throw Error(
            "sigma_limits: CES reduction has constant sigma = 1/(1-psi); "
            "the limits-approach-1 statement does not apply");
    SigmaLimits out;
    out.at_zero = 1.0;
    if (2.0 * p.psi() >= 1.0) {
        out.at_infinity_branch = SigmaInfinityBranch::two_psi_ge_one;
        out.at_infinity_paper = 1.0;
    } else {
        // Stated limit for the slow-psi branch. Numerical probes contradict
        // it (they approach 1 here as well); callers report this value but
        // must not assert it. See probe_sigma_infinity.
        out.at_infinity_branch = SigmaInfinityBranch::two_psi_lt_one;
        const double wp = p.omega() * p.psi();
        const double den = 2.0 * p.theta() * (1.0 - p.theta() - wp) +
                           wp * (1.0 - p.psi());
        out.at_infinity_paper = 1.0 + p.omega() * p.psi() * p.psi() / den;
    }
    return out;
}

std::pair<double, double> eval_shares(const Params& p, double k) {
    require_positive_k(k);
    const Terms t = terms_at(p, k);
    const double share_k = t.num / t.base;
    return {share_k, 1.0 - share_k};
}

std::pair<double, double> shares_limits(const Params& p) {
    return {p.eta(), 1.0 - p.eta()};
}

FprimeLimits limits_fprime(const Params& p) {
    if (classify_reduction(p) == Reduction::ces)
        throw Error(
            "limits_fprime: CES reduction violates the Inada conditions "
            "(f' tends to gamma*alpha^omega, not 0)");
    // theta > 0 and eta < 1 hold for everything else that validates, so
    // f' ~ k^(theta-1) at 0 and ~ k^(eta-1) at infinity.
    return {LimitValue::positive_infinity, LimitValue::zero};
}

double aggregate_output(const Params& p, double capital, double labor) {
    if (!std::isfinite(labor)) throw NonFinite("labor");
    if (!(labor > 0.0)) throw NonPositiveLabor(labor);
    return labor * eval_f(p, capital / labor);
}

Bundle eval_bundle(const Params& p, double k) {
    require_positive_k(k);
    const Terms t = terms_at(p, k);
    Bundle b;
    b.k = k;
    b.f = p.gamma() * std::pow(k, p.theta()) * std::pow(t.base, p.omega());
    b.f_prime = p.gamma() * t.num /
                (std::pow(k, 1.0 - p.theta()) *
                 std::pow(t.base, 1.0 - p.omega()));
    const double kb = k * t.base;
    b.f_second = -b.f * t.d / (kb * kb);
    const double slack = p.alpha() * (1.0 - p.eta()) * t.x +
                         p.beta() * (1.0 - p.theta());
    b.mrs = k * slack / t.num;
    b.sigma = 1.0 + t.c * t.x / t.d;
    const double lead = p.alpha() * p.beta() * p.omega() * p.psi() *
                        p.psi() * p.psi();
    b.sigma_prime = lead * (t.x / k) * (t.t0 - t.t2 * t.x * t.x) /
                    (t.d * t.d);
    b.share_capital = t.num / t.base;
    b.share_labor = 1.0 - b.share_capital;
    return b;
}

}  // namespace ves
