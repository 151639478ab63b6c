#include "ves/params.hpp"

#include <cmath>

namespace ves {

namespace {

constexpr double kCesProductTol = 1e-12;

void require_finite(const char* name, double v) {
    if (!std::isfinite(v)) throw NonFinite(name);
}

void check_strict(double theta, double omega, double psi, double alpha,
                  double beta, double gamma) {
    if (!(theta > 0.0 && theta < 1.0))
        throw ConstraintViolation("theta", theta, "0 < theta < 1");
    if (!(omega > 0.0 && omega < 1.0))
        throw ConstraintViolation("omega", omega, "0 < omega < 1");
    if (!(psi > 0.0 && psi < 1.0))
        throw ConstraintViolation("psi", psi, "0 < psi < 1");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ConstraintViolation("alpha", alpha, "0 < alpha < 1");
    if (!(beta > 0.0 && beta < 1.0))
        throw ConstraintViolation("beta", beta, "0 < beta < 1");
    if (!(gamma > 0.0))
        throw ConstraintViolation("gamma", gamma, "gamma > 0");
    double eta = theta + omega * psi;
    if (!(eta < 1.0))
        throw ConstraintViolation("theta + omega*psi", eta,
                                  "theta + omega*psi < 1");
}

void check_extended(double theta, double omega, double psi, double alpha,
                    double beta, double gamma) {
    // Two boundary families are admitted on top of strict: omega = 0
    // (Cobb-Douglas; psi/alpha/beta still pinned inside their boxes so the
    // representation stays unambiguous) and theta = 0 with omega*psi = 1
    // (CES; eta = 1 by construction, so the eta constraint is waived).
    if (omega == 0.0) {
        if (!(theta > 0.0 && theta < 1.0))
            throw ConstraintViolation("theta", theta, "0 < theta < 1");
    } else if (theta == 0.0) {
        if (!(omega > 0.0))
            throw ConstraintViolation("omega", omega, "omega > 0");
        if (!(psi > 0.0 && psi < 1.0))
            throw ConstraintViolation("psi", psi, "0 < psi < 1");
        if (std::fabs(omega * psi - 1.0) > kCesProductTol)
            throw ConstraintViolation("omega*psi", omega * psi,
                                      "theta = 0 requires omega*psi = 1");
    } else {
        check_strict(theta, omega, psi, alpha, beta, gamma);
        return;
    }
    if (!(psi > 0.0 && psi < 1.0))
        throw ConstraintViolation("psi", psi, "0 < psi < 1");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ConstraintViolation("alpha", alpha, "0 < alpha < 1");
    if (!(beta > 0.0 && beta < 1.0))
        throw ConstraintViolation("beta", beta, "0 < beta < 1");
    if (!(gamma > 0.0))
        throw ConstraintViolation("gamma", gamma, "gamma > 0");
}

}  // namespace

Params validate_params(double theta, double omega, double psi, double alpha,
                       double beta, double gamma, Mode mode) {
    require_finite("theta", theta);
    require_finite("omega", omega);
    require_finite("psi", psi);
    require_finite("alpha", alpha);
    require_finite("beta", beta);
    require_finite("gamma", gamma);
    if (mode == Mode::strict)
        check_strict(theta, omega, psi, alpha, beta, gamma);
    else
        check_extended(theta, omega, psi, alpha, beta, gamma);
    return Params(theta, omega, psi, alpha, beta, gamma, mode);
}

bool Params::satisfies_strict() const {
    try {
        check_strict(theta_, omega_, psi_, alpha_, beta_, gamma_);
        return true;
    } catch (const ConstraintViolation&) {
        return false;
    }
}

Reduction classify_reduction(const Params& p) {
    if (p.omega() == 0.0) return Reduction::cobb_douglas;
    if (p.theta() == 0.0 &&
        std::fabs(p.omega() * p.psi() - 1.0) <= kCesProductTol)
        return Reduction::ces;
    return Reduction::general_ves;
}

Params benchmark_params() {
    return validate_params(0.6, 0.5, 0.7, 0.2, 0.8, 1.05, Mode::strict);
}

const char* to_string(Mode m) {
    return m == Mode::strict ? "strict" : "extended";
}

const char* to_string(Reduction r) {
    switch (r) {
        case Reduction::cobb_douglas: return "cobb_douglas";
        case Reduction::ces: return "ces";
        default: return "general_ves";
    }
}

Mode mode_from_string(const std::string& s) {
    if (s == "strict") return Mode::strict;
    if (s == "extended") return Mode::extended;
    throw Error("unknown mode '" + s + "' (expected strict or extended)");
}

}  // namespace ves
