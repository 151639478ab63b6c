#include "ves/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ves/core.hpp"

namespace ves::calibrate {

namespace {

constexpr double kEtaMax = 1.0 - 1e-9;   // joint constraint theta + omega*psi
constexpr double kLinLo = 1e-9;          // strict box for profiled theta/omega
constexpr double kLinHi = 1.0 - 1e-9;
constexpr double kNlLo = 1e-6;           // search box for psi/alpha/beta
constexpr double kNlHi = 1.0 - 1e-6;

struct Working {
    std::vector<double> lk, ly, w;
    double wsum = 0.0;
    bool normalize = true;
    Mode mode = Mode::strict;
};

// Gaussian elimination with partial pivoting, 3x3. The callers always add
// a ridge first, so a false return means genuinely degenerate data.
bool solve3(double a[3][3], double b[3], double x[3]) {
    int piv[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int best = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(a[piv[r]][col]) > std::fabs(a[piv[best]][col]))
                best = r;
        std::swap(piv[col], piv[best]);
        const double d = a[piv[col]][col];
        if (std::fabs(d) < 1e-300) return false;
        for (int r = col + 1; r < 3; ++r) {
            const double m = a[piv[r]][col] / d;
            for (int c = col; c < 3; ++c) a[piv[r]][c] -= m * a[piv[col]][c];
            b[piv[r]] -= m * b[piv[col]];
        }
    }
    for (int col = 2; col >= 0; --col) {
        double s = b[piv[col]];
        for (int c = col + 1; c < 3; ++c) s -= a[piv[col]][c] * x[c];
        x[col] = s / a[piv[col]][col];
    }
    return true;
}

struct LinearFit {
    double lng = 0.0, theta = 0.0, omega = 0.0;
    double ssr = HUGE_VAL;
    double objective = HUGE_VAL;
};

// For fixed (psi, alpha, beta) the model is linear in
// (ln gamma, theta, omega) against regressors (1, ln k, ln(alpha k^psi +
// beta)), so those three are profiled exactly: weighted normal equations
// with a tiny ridge, then clamped into the feasible box with the residual
// intercept re-profiled and a quadratic penalty on what the clamp removed.
LinearFit profile_linear(const Working& wk, double psi, double alpha,
                         double beta) {
    const size_t n = wk.lk.size();
    std::vector<double> g(n);
    for (size_t i = 0; i < n; ++i)
        g[i] = std::log(alpha * std::exp(psi * wk.lk[i]) + beta);

    double a[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    double rhs[3] = {0, 0, 0};
    for (size_t i = 0; i < n; ++i) {
        const double phi[3] = {1.0, wk.lk[i], g[i]};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) a[r][c] += wk.w[i] * phi[r] * phi[c];
            rhs[r] += wk.w[i] * phi[r] * wk.ly[i];
        }
    }
    double max_diag = std::max({a[0][0], a[1][1], a[2][2]});
    for (int r = 0; r < 3; ++r) a[r][r] += 1e-12 * max_diag + 1e-300;

    LinearFit fit;
    double sol[3];
    if (!solve3(a, rhs, sol)) return fit;
    const double raw_theta = sol[1], raw_omega = sol[2];

    const double omega_lo = wk.mode == Mode::extended ? 0.0 : kLinLo;
    fit.theta = std::clamp(raw_theta, kLinLo, kLinHi);
    fit.omega = std::clamp(raw_omega, omega_lo, kLinHi);
    if (fit.theta + fit.omega * psi > kEtaMax)
        fit.omega = std::max(omega_lo, (kEtaMax - fit.theta) / psi);

    double num = 0.0;
    for (size_t i = 0; i < n; ++i)
        num += wk.w[i] * (wk.ly[i] - fit.theta * wk.lk[i] - fit.omega * g[i]);
    fit.lng = std::clamp(num / wk.wsum, -700.0, 700.0);

    fit.ssr = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double r =
            wk.ly[i] - fit.lng - fit.theta * wk.lk[i] - fit.omega * g[i];
        fit.ssr += wk.w[i] * r * r;
    }
    const double over = std::max(0.0, raw_theta + raw_omega * psi - kEtaMax);
    const double clampd = (raw_theta - fit.theta) * (raw_theta - fit.theta) +
                          (raw_omega - fit.omega) * (raw_omega - fit.omega);
    fit.objective = fit.ssr + 10.0 * (over * over + clampd);
    return fit;
}

double radical_inverse(unsigned base, std::uint64_t i) {
    double f = 1.0, r = 0.0;
    while (i) {
        f /= base;
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

struct NmOutcome {
    std::vector<double> x;
    double fx = HUGE_VAL;
    bool by_tolerance = false;
};

// Nelder-Mead with standard coefficients, stopping on objective spread,
// simplex diameter or the shared evaluation budget. Deterministic: ties in
// the vertex ordering keep insertion order.
NmOutcome nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                      const std::vector<double>& x0, double scale,
                      double ftol, double xtol, long& budget) {
    const size_t dim = x0.size();
    std::vector<std::vector<double>> vx;
    std::vector<double> vf;
    auto eval = [&](const std::vector<double>& x) {
        --budget;
        return fn(x);
    };

    NmOutcome out;
    out.x = x0;
    if (budget <= 0) return out;
    vx.push_back(x0);
    vf.push_back(eval(x0));
    out.fx = vf[0];
    for (size_t j = 0; j < dim; ++j) {
        std::vector<double> v = x0;
        const double step = scale * (kNlHi - kNlLo);
        v[j] += (v[j] + step > kNlHi) ? -step : step;
        vx.push_back(v);
        if (budget <= 0) {
            vf.push_back(HUGE_VAL);
            continue;
        }
        vf.push_back(eval(v));
    }

    auto order = [&]() {
        std::vector<size_t> idx(vx.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](size_t a, size_t b) { return vf[a] < vf[b]; });
        std::vector<std::vector<double>> nx;
        std::vector<double> nf;
        for (size_t i : idx) {
            nx.push_back(vx[i]);
            nf.push_back(vf[i]);
        }
        vx = std::move(nx);
        vf = std::move(nf);
    };

    while (true) {
        order();
        out.x = vx[0];
        out.fx = vf[0];
        double spread = vf.back() - vf.front();
        double diam = 0.0;
        for (size_t v = 1; v < vx.size(); ++v)
            for (size_t j = 0; j < dim; ++j)
                diam = std::max(diam, std::fabs(vx[v][j] - vx[0][j]));
        if (spread <= ftol || diam <= xtol) {
            out.by_tolerance = true;
            return out;
        }
        if (budget <= 0) return out;

        std::vector<double> centroid(dim, 0.0);
        for (size_t v = 0; v + 1 < vx.size(); ++v)
            for (size_t j = 0; j < dim; ++j) centroid[j] += vx[v][j];
        for (size_t j = 0; j < dim; ++j) centroid[j] /= static_cast<double>(dim);

        auto blend = [&](double coef) {
            std::vector<double> x(dim);
            for (size_t j = 0; j < dim; ++j)
                x[j] = centroid[j] + coef * (vx.back()[j] - centroid[j]);
            return x;
        };

        const auto xr = blend(-1.0);
        const double fr = eval(xr);
        if (fr < vf[0]) {
            if (budget <= 0) {
                vx.back() = xr;
                vf.back() = fr;
                continue;
            }
            const auto xe = blend(-2.0);
            const double fe = eval(xe);
            if (fe < fr) {
                vx.back() = xe;
                vf.back() = fe;
            } else {
                vx.back() = xr;
                vf.back() = fr;
            }
        } else if (fr < vf[vf.size() - 2]) {
            vx.back() = xr;
            vf.back() = fr;
        } else {
            if (budget <= 0) continue;
            const auto xc = blend(fr < vf.back() ? -0.5 : 0.5);
            const double fc = eval(xc);
            if (fc < std::min(fr, vf.back())) {
                vx.back() = xc;
                vf.back() = fc;
            } else {
                for (size_t v = 1; v < vx.size(); ++v) {
                    for (size_t j = 0; j < dim; ++j)
                        vx[v][j] = vx[0][j] + 0.5 * (vx[v][j] - vx[0][j]);
                    if (budget <= 0) {
                        vf[v] = HUGE_VAL;
                        continue;
                    }
                    vf[v] = eval(vx[v]);
                }
            }
        }
    }
}

void validate_observations(const std::vector<Observation>& obs) {
    for (size_t i = 0; i < obs.size(); ++i) {
        const auto& o = obs[i];
        const std::string row = "row " + std::to_string(i + 1);
        if (!std::isfinite(o.k) || !std::isfinite(o.y) ||
            !std::isfinite(o.weight))
            throw NonFinite("observation " + row);
        if (!(o.k > 0.0)) throw NonPositiveObservation(row + ": k <= 0");
        if (!(o.y > 0.0)) throw NonPositiveObservation(row + ": y <= 0");
        if (!(o.weight > 0.0))
            throw NonPositiveObservation(row + ": weight <= 0");
    }
}

}  // namespace

std::vector<double> residuals(const Params& p,
                              const std::vector<Observation>& obs) {
    validate_observations(obs);
    std::vector<double> out;
    out.reserve(obs.size());
    for (const Observation& o : obs)
        out.push_back(std::log(o.y) - std::log(eval_f(p, o.k)));
    return out;
}

Result fit(const Problem& problem, const Options& opts) {
    const auto& obs = problem.observations;
    validate_observations(obs);
    const size_t need = problem.normalize_alpha_beta ? 5 : 6;
    if (obs.size() < need)
        throw InsufficientData("need at least " + std::to_string(need) +
                               " observations, got " +
                               std::to_string(obs.size()));
    {
        std::vector<double> ks;
        ks.reserve(obs.size());
        for (const auto& o : obs) ks.push_back(o.k);
        std::sort(ks.begin(), ks.end());
        if (std::adjacent_find(ks.begin(), ks.end()) != ks.end())
            throw InsufficientData("duplicate k values");
    }
    if (opts.starts < 1) throw ConfigError("starts must be >= 1");

    Working wk;
    wk.normalize = problem.normalize_alpha_beta;
    wk.mode = problem.mode;
    for (const auto& o : obs) {
        wk.lk.push_back(std::log(o.k));
        wk.ly.push_back(std::log(o.y));
        wk.w.push_back(o.weight);
        wk.wsum += o.weight;
    }

    const size_t dim = wk.normalize ? 2 : 3;
    auto unpack = [&](const std::vector<double>& x, double& psi,
                      double& alpha, double& beta) {
        psi = std::clamp(x[0], kNlLo, kNlHi);
        alpha = std::clamp(x[1], kNlLo, kNlHi);
        beta = wk.normalize ? 1.0 - alpha : std::clamp(x[2], kNlLo, kNlHi);
    };
    long evals = 0;
    auto objective = [&](const std::vector<double>& x) {
        ++evals;
        double psi, alpha, beta;
        unpack(x, psi, alpha, beta);
        double outside = 0.0;
        for (size_t j = 0; j < dim; ++j) {
            const double d = std::max({kNlLo - x[j], x[j] - kNlHi, 0.0});
            outside += d * d;
        }
        return profile_linear(wk, psi, alpha, beta).objective + 10.0 * outside;
    };

    const std::uint64_t offset = 1 + problem.seed % 100003;
    long budget = opts.max_evals;
    struct Best {
        std::vector<double> x;
        double fx = HUGE_VAL;
        bool tol = false;
    } best;
    double initial_best_ssr = HUGE_VAL;
    int launched = 0;

    for (int s = 0; s < opts.starts; ++s) {
        if (budget <= 0 && s > 0) break;
        std::vector<double> x0(dim);
        const std::uint64_t idx = offset + static_cast<std::uint64_t>(s);
        x0[0] = 0.05 + 0.9 * radical_inverse(2, idx);
        x0[1] = 0.05 + 0.9 * radical_inverse(3, idx);
        if (dim == 3) x0[2] = 0.05 + 0.9 * radical_inverse(5, idx);
        ++launched;

        {
            double psi, alpha, beta;
            unpack(x0, psi, alpha, beta);
            initial_best_ssr =
                std::min(initial_best_ssr, profile_linear(wk, psi, alpha, beta).ssr);
        }

        std::vector<double> cur = x0;
        double cur_f = HUGE_VAL;
        bool cur_tol = false;
        double scale = 0.15;
        for (int round = 0; round <= opts.restarts; ++round) {
            NmOutcome nm = nelder_mead(objective, cur, scale, opts.ftol,
                                       opts.xtol, budget);
            if (nm.fx < cur_f) {
                cur = nm.x;
                cur_f = nm.fx;
                cur_tol = nm.by_tolerance;
            }
            scale /= 5.0;
            if (budget <= 0) break;
        }
        if (cur_f < best.fx) best = {cur, cur_f, cur_tol};
    }

    double psi, alpha, beta;
    unpack(best.x.empty() ? std::vector<double>(dim, 0.5) : best.x, psi,
           alpha, beta);
    LinearFit lin = profile_linear(wk, psi, alpha, beta);
    double omega = lin.omega;
    if (problem.mode == Mode::extended && omega <= 1e-12) omega = 0.0;
    Params fitted = validate_params(lin.theta, omega, psi, alpha, beta,
                                    std::exp(lin.lng), problem.mode);

    const auto res = residuals(fitted, obs);
    double ssr = 0.0;
    for (size_t i = 0; i < res.size(); ++i)
        ssr += obs[i].weight * res[i] * res[i];

    Result result{fitted,
                  std::sqrt(ssr / wk.wsum),
                  std::sqrt(std::max(initial_best_ssr, 0.0) / wk.wsum),
                  evals,
                  best.tol,
                  launched};
    if (!result.converged) throw NoConvergence(std::move(result));
    return result;
}

std::vector<Observation> synth_data(const Params& p, const GridSpec& grid,
                                    double noise_sd, std::uint64_t seed) {
    if (!std::isfinite(noise_sd) || noise_sd < 0.0)
        throw NegativeInput("noise_sd", noise_sd);
    // Box-Muller on raw mt19937_64 draws instead of std::normal_distribution:
    // the latter's algorithm is implementation-defined, and these tables must
    // be reproducible bit for bit.
    std::mt19937_64 rng(seed);
    auto uniform01 = [&]() {
        return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    };
    std::vector<Observation> out;
    for (double k : make_grid(grid)) {
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double z = std::sqrt(-2.0 * std::log(u1)) *
                         std::cos(2.0 * std::numbers::pi * u2);
        out.push_back({k, eval_f(p, k) * std::exp(noise_sd * z), 1.0});
    }
    return out;
}

}  // namespace ves::calibrate
