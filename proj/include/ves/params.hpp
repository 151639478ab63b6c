#pragma once

#include <string>

#include "ves/errors.hpp"

namespace ves {

// strict: every constraint open, theta+omega*psi < 1.
// extended: additionally admits the Cobb-Douglas boundary (omega = 0) and the
// CES boundary (theta = 0 with omega*psi = 1).
enum class Mode { strict, extended };

enum class Reduction { cobb_douglas, ces, general_ves };

// Parameter set for f(k) = gamma * k^theta * (alpha*k^psi + beta)^omega.
// Instances only come out of validate_params(), so holding a Params is proof
// the constraints of its mode hold. eta and mu are derived, never stored
// independently of (theta, omega, psi).
class Params {
public:
    double theta() const { return theta_; }
    double omega() const { return omega_; }
    double psi() const { return psi_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double gamma() const { return gamma_; }
    Mode mode() const { return mode_; }

    // Asymptotic capital share, theta + omega*psi.
    double eta() const { return eta_; }
    // Capital share at the origin.
    double mu() const { return theta_; }

    // True when the values would also pass strict-mode validation.
    bool satisfies_strict() const;

private:
    Params(double theta, double omega, double psi, double alpha, double beta,
           double gamma, Mode mode)
        : theta_(theta), omega_(omega), psi_(psi), alpha_(alpha), beta_(beta),
          gamma_(gamma), eta_(theta + omega * psi), mode_(mode) {}

    friend Params validate_params(double, double, double, double, double,
                                  double, Mode);

    double theta_, omega_, psi_, alpha_, beta_, gamma_, eta_;
    Mode mode_;
};

// Checks finiteness and the mode's constraint set, in the order theta, omega,
// psi, alpha, beta, gamma, then the joint constraint on theta + omega*psi.
// Throws NonFinite or ConstraintViolation naming the first offender.
Params validate_params(double theta, double omega, double psi, double alpha,
                       double beta, double gamma, Mode mode = Mode::strict);

// cobb_douglas when omega = 0, ces when theta = 0 and omega*psi = 1 (to
// 1e-12), general_ves otherwise.
Reduction classify_reduction(const Params& p);

// theta=0.6 omega=0.5 psi=0.7 alpha=0.2 beta=0.8 gamma=1.05.
Params benchmark_params();

const char* to_string(Mode m);
const char* to_string(Reduction r);
Mode mode_from_string(const std::string& s);

}  // namespace ves
