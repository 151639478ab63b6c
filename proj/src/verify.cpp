#include "ves/verify.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "ves/io.hpp"

namespace ves::verify {

namespace {

// One classical RK4 step for z' = g(t, z). Every equation in this file has
// a right side independent of z (pure quadrature after the log-space
// substitution), but the stages are kept in full so the integrator is the
// textbook scheme, not a Simpson shortcut.
template <class F>
double rk4_step(F&& g, double t, double z, double dt) {
    const double s1 = g(t, z);
    const double s2 = g(t + 0.5 * dt, z + 0.5 * dt * s1);
    const double s3 = g(t + 0.5 * dt, z + 0.5 * dt * s2);
    const double s4 = g(t + dt, z + dt * s3);
    return z + dt / 6.0 * (s1 + 2.0 * s2 + 2.0 * s3 + s4);
}

// Marches z' = g(t, z) from (t0, z0) through the given t targets in order,
// `substeps` RK4 steps per leg. Targets may run in either direction.
template <class F>
std::vector<double> march(F&& g, double t0, double z0,
                          const std::vector<double>& targets, int substeps) {
    std::vector<double> out;
    out.reserve(targets.size());
    double t = t0, z = z0;
    for (double target : targets) {
        const double dt = (target - t) / substeps;
        for (int i = 0; i < substeps; ++i) z = rk4_step(g, t + i * dt, z, dt);
        t = target;
        out.push_back(z);
    }
    return out;
}

void require_range(const GridSpec& g, double lo, double hi) {
    validate_grid(g);
    if (g.k_min < lo || g.k_max > hi)
        throw GridError("check grid must lie within [" + format_sig(lo) +
                        ", " + format_sig(hi) + "]");
}

// Bigger error/tolerance ratio wins the CheckResult's headline slot.
void report_binding(CheckResult& r, const char* name_a, double err_a,
                    double tol_a, const char* name_b, double err_b,
                    double tol_b) {
    const bool a_binds = err_a * tol_b >= err_b * tol_a;
    const double err = a_binds ? err_a : err_b;
    const double tol = a_binds ? tol_a : tol_b;
    r.max_rel_error = err;
    r.tolerance = tol;
    r.passed = err <= tol;
    r.notes = std::string(name_a) + "=" + format_sig(err_a, 6) + " (tol " +
              format_sig(tol_a, 6) + ") " + name_b + "=" +
              format_sig(err_b, 6) + " (tol " + format_sig(tol_b, 6) + ")";
    if (!(err_a <= tol_a) || !(err_b <= tol_b)) r.passed = false;
}

double rel_gap(double got, double want) {
    return std::fabs(got - want) / std::fabs(want);
}

}  // namespace

void validate(const OdeConfig& cfg) {
    auto bad = [](const char* what) { throw ConfigError(what); };
    if (!std::isfinite(cfg.zeta) || !(cfg.zeta > 0.0)) bad("zeta must be > 0");
    if (!std::isfinite(cfg.k_start) || !(cfg.k_start > 0.0))
        bad("k_start must be > 0");
    if (!std::isfinite(cfg.k_end) || !(cfg.k_end > 0.0))
        bad("k_end must be > 0");
    if (!std::isfinite(cfg.y_start) || !(cfg.y_start > 0.0))
        bad("y_start must be > 0");
    if (cfg.step_count < 16) bad("step_count must be >= 16");
    if (cfg.step_count > 100000000) bad("step_count too large");
}

double central_diff(const std::function<double(double)>& fn, double k,
                    int order, double h) {
    if (!(k > 0.0)) throw NonPositiveInput("k", k);
    if (!(h > 0.0) || !(h < 0.1))
        throw Error("central_diff: relative step must lie in (0, 0.1)");
    const double dk = k * h;
    if (order == 1) return (fn(k + dk) - fn(k - dk)) / (2.0 * dk);
    if (order == 2) return (fn(k + dk) - 2.0 * fn(k) + fn(k - dk)) / (dk * dk);
    throw Error("central_diff: order must be 1 or 2");
}

CheckResult check_sigma_definition(const Params& p, const GridSpec& grid) {
    require_range(grid, 1e-4, 1e4);
    CheckResult r;
    r.name = "sigma_definition";
    double err_closed = 0.0, err_numeric = 0.0, abs_err = 0.0;
    // The numeric chain goes through eval_f only; a defect in any closed
    // derivative cannot cancel out of it.
    auto f_only = [&](double k) { return eval_f(p, k); };
    for (double k : make_grid(grid)) {
        const double sigma = eval_sigma(p, k);
        const double f = eval_f(p, k);
        const double fp = eval_fprime(p, k);
        const double fpp = eval_fsecond(p, k);
        const double closed = fp * (k * fp - f) / (k * f * fpp);
        const double yp = central_diff(f_only, k, 1, 1e-6);
        const double ypp = central_diff(f_only, k, 2, 1e-4);
        const double numeric = yp * (k * yp - f) / (k * f * ypp);
        err_closed = std::max(err_closed, rel_gap(closed, sigma));
        err_numeric = std::max(err_numeric, rel_gap(numeric, sigma));
        abs_err = std::max(abs_err, std::fabs(numeric - sigma));
        ++r.samples;
    }
    r.max_abs_error = abs_err;
    report_binding(r, "closed_chain", err_closed, 1e-6, "numeric_chain",
                   err_numeric, 1e-4);
    return r;
}

CheckResult check_mrs_identity(const Params& p, const GridSpec& grid) {
    require_range(grid, 1e-4, 1e4);
    CheckResult r;
    r.name = "mrs_identity";
    double err_ident = 0.0, err_sigma = 0.0, abs_err = 0.0;
    auto mrs_only = [&](double k) { return eval_mrs(p, k); };
    for (double k : make_grid(grid)) {
        const double mrs = eval_mrs(p, k);
        const double direct = eval_f(p, k) / eval_fprime(p, k) - k;
        const double e1 = std::fabs(mrs - direct) / (1.0 + mrs);
        const double rp = central_diff(mrs_only, k, 1, 1e-6);
        const double sigma_from_mrs = mrs / (k * rp);
        const double e2 = rel_gap(sigma_from_mrs, eval_sigma(p, k));
        err_ident = std::max(err_ident, e1);
        err_sigma = std::max(err_sigma, e2);
        abs_err = std::max(abs_err, std::fabs(mrs - direct));
        ++r.samples;
    }
    r.max_abs_error = abs_err;
    report_binding(r, "identity", err_ident, 1e-10, "sigma_chain", err_sigma,
                   1e-4);
    return r;
}

std::vector<PathPoint> integrate_reduced_ode(const Params& p,
                                             const OdeConfig& cfg) {
    validate(cfg);
    const double t0 = std::log(cfg.k_start);
    const double t1 = std::log(cfg.k_end);
    const int n = cfg.step_count;
    const double dt = (t1 - t0) / n;
    auto rhs = [&](double t, double) {
        return eval_shares(p, std::exp(t)).first;
    };
    std::vector<PathPoint> path;
    path.reserve(static_cast<size_t>(n) + 1);
    path.push_back({cfg.k_start, cfg.y_start});
    double z = std::log(cfg.y_start);
    for (int i = 0; i < n; ++i) {
        z = rk4_step(rhs, t0 + i * dt, z, dt);
        const double t = (i + 1 == n) ? t1 : t0 + (i + 1) * dt;
        path.push_back({i + 1 == n ? cfg.k_end : std::exp(t), std::exp(z)});
    }
    return path;
}

std::vector<PathPoint> reconstruct_mrs_from_sigma(
    const std::function<double(double)>& sigma_fn, double k0, double r0,
    const GridSpec& grid, int substeps) {
    if (!(k0 > 0.0)) throw NonPositiveInput("k0", k0);
    if (!(r0 > 0.0)) throw NonPositiveInput("r0", r0);
    if (substeps < 1) throw ConfigError("substeps must be >= 1");
    const auto ks = make_grid(grid);
    auto rhs = [&](double t, double) {
        const double s = sigma_fn(std::exp(t));
        if (!std::isfinite(s) || s <= 0.0)
            throw NumericalError("sigma must stay positive along the path");
        return 1.0 / s;
    };
    const double t0 = std::log(k0);
    std::vector<double> below, above;
    for (double k : ks) (std::log(k) < t0 ? below : above).push_back(std::log(k));
    std::reverse(below.begin(), below.end());
    const auto zb = march(rhs, t0, std::log(r0), below, substeps);
    const auto za = march(rhs, t0, std::log(r0), above, substeps);
    std::vector<PathPoint> out(ks.size());
    const size_t nb = below.size();
    for (size_t i = 0; i < nb; ++i)
        out[nb - 1 - i] = {ks[nb - 1 - i], std::exp(zb[i])};
    for (size_t i = 0; i < za.size(); ++i)
        out[nb + i] = {ks[nb + i], std::exp(za[i])};
    return out;
}

std::vector<PathPoint> reconstruct_y_from_mrs(
    const std::function<double(double)>& mrs_fn, double zeta, double k0,
    double y0, const GridSpec& grid, int substeps) {
    if (!std::isfinite(zeta) || !(zeta > 0.0))
        throw ConfigError("zeta must be > 0");
    if (!(k0 > 0.0)) throw NonPositiveInput("k0", k0);
    if (!(y0 > 0.0)) throw NonPositiveInput("y0", y0);
    if (substeps < 1) throw ConfigError("substeps must be >= 1");
    const auto ks = make_grid(grid);
    auto rhs = [&](double t, double) {
        const double k = std::exp(t);
        const double r = mrs_fn(k);
        if (!std::isfinite(r) || r <= 0.0)
            throw NumericalError("mrs must stay positive along the path");
        return k / (k + zeta * r);
    };
    const double t0 = std::log(k0);
    std::vector<double> below, above;
    for (double k : ks) (std::log(k) < t0 ? below : above).push_back(std::log(k));
    std::reverse(below.begin(), below.end());
    const auto zb = march(rhs, t0, std::log(y0), below, substeps);
    const auto za = march(rhs, t0, std::log(y0), above, substeps);
    std::vector<PathPoint> out(ks.size());
    const size_t nb = below.size();
    for (size_t i = 0; i < nb; ++i)
        out[nb - 1 - i] = {ks[nb - 1 - i], std::exp(zb[i])};
    for (size_t i = 0; i < za.size(); ++i)
        out[nb + i] = {ks[nb + i], std::exp(za[i])};
    return out;
}

CheckResult probe_sigma_infinity(const Params& p) {
    CheckResult r;
    r.name = "sigma_infinity_probe";
    r.tolerance = 1e-2;
    if (classify_reduction(p) == Reduction::ces) {
        r.skipped = true;
        r.passed = true;
        r.notes = "ces reduction: sigma constant 1/(1-psi), no limit claim";
        return r;
    }
    const double ks[] = {1e4, 1e6, 1e8, 1e10};
    double s[4];
    for (int i = 0; i < 4; ++i) s[i] = eval_sigma(p, ks[i]);
    r.samples = 4;
    // Aitken extrapolation of the tail; sigma-1 decays geometrically per
    // decade of k, which this accelerates well.
    const double denom = (s[3] - s[2]) - (s[2] - s[1]);
    double est = s[3];
    if (denom != 0.0) {
        const double cand = s[3] - (s[3] - s[2]) * (s[3] - s[2]) / denom;
        if (std::isfinite(cand)) est = cand;
    }
    const SigmaLimits lim = sigma_limits(p);
    const std::string values = " branch_limit=" +
                               format_sig(lim.at_infinity_paper) +
                               " numeric_estimate=" + format_sig(est) +
                               " sigma_at_1e10=" + format_sig(s[3]);
    if (lim.at_infinity_branch == SigmaInfinityBranch::two_psi_ge_one) {
        r.max_abs_error = std::fabs(est - 1.0);
        r.max_rel_error = r.max_abs_error;
        r.passed = r.max_rel_error <= r.tolerance;
        r.notes = "branch=2psi>=1" + values;
    } else {
        // The stated value for this branch contradicts the probes; record
        // both sides, assert neither.
        r.max_abs_error = std::fabs(est - lim.at_infinity_paper);
        r.max_rel_error = r.max_abs_error;
        r.skipped = true;
        r.passed = true;
        r.notes = "branch=2psi<1 reported_not_asserted" + values;
    }
    return r;
}

namespace {

CheckResult probe_inada(const Params& p) {
    CheckResult r;
    r.name = "inada_probe";
    r.tolerance = 1.0;
    if (classify_reduction(p) == Reduction::ces) {
        r.skipped = true;
        r.passed = true;
        r.notes = "ces reduction: f' tends to gamma*alpha^omega, not 0";
        return r;
    }
    // f' ~ gamma theta beta^omega k^(theta-1) at 0 and
    // ~ gamma eta alpha^omega k^(eta-1) at infinity. Pick probe points from
    // those decay laws aiming at f' = 1e4 and 1e-4 (a decade of margin on
    // the 1e3 / 1e-3 thresholds), clamped to the double range.
    const double c_lo = p.gamma() * p.theta() * std::pow(p.beta(), p.omega());
    const double c_hi = p.gamma() * p.eta() * std::pow(p.alpha(), p.omega());
    const double e_lo = (4.0 - std::log10(c_lo)) / (1.0 - p.theta());
    const double e_hi = (4.0 + std::log10(c_hi)) / (1.0 - p.eta());
    std::string skip_note;
    double metric = 0.0;
    if (e_lo > 0.0 && e_lo <= 300.0) {
        const double k_lo = std::pow(10.0, -e_lo);
        const double fp = eval_fprime(p, k_lo);
        metric = std::max(metric, 1e3 / fp);
        r.notes += "fprime(" + format_sig(k_lo, 6) + ")=" + format_sig(fp, 6);
    } else {
        skip_note += " divergence too slow to probe in double range";
    }
    if (e_hi > 0.0 && e_hi <= 300.0) {
        const double k_hi = std::pow(10.0, e_hi);
        const double fp = eval_fprime(p, k_hi);
        metric = std::max(metric, fp / 1e-3);
        if (!r.notes.empty()) r.notes += " ";
        r.notes += "fprime(" + format_sig(k_hi, 6) + ")=" + format_sig(fp, 6);
    } else {
        skip_note += " decay too slow to probe in double range";
    }
    r.samples = 2;
    r.max_rel_error = metric;
    if (!skip_note.empty()) {
        r.skipped = true;
        r.passed = true;
        r.notes += ";" + skip_note;
    } else {
        r.passed = metric <= r.tolerance;
    }
    return r;
}

CheckResult probe_shares_limit(const Params& p) {
    CheckResult r;
    r.name = "shares_limit_probe";
    r.tolerance = 1e-4;
    r.samples = 1;
    const double k = 1e8;
    const double share = eval_shares(p, k).first;
    const double eta = shares_limits(p).first;
    const double gap = std::fabs(share - eta);
    r.max_abs_error = gap;
    r.max_rel_error = gap;
    r.notes = "share_k(1e8)=" + format_sig(share) + " eta=" + format_sig(eta);
    if (gap <= r.tolerance) {
        r.passed = true;
        return r;
    }
    // Slow decay for small psi: the exact gap is beta*omega*psi/(alpha
    // k^psi + beta). Confirm the observation matches the law and skip.
    const double x = std::pow(k, p.psi());
    const double expected = p.beta() * p.omega() * p.psi() /
                            (p.alpha() * x + p.beta());
    const double mismatch = std::fabs(gap - expected) / (1.0 + expected);
    r.passed = mismatch <= 1e-12;
    r.skipped = r.passed;
    r.notes += " limit unreached at k=1e8; gap matches "
               "beta*omega*psi/(alpha*k^psi+beta)=" +
               format_sig(expected, 6);
    return r;
}

}  // namespace

CheckResult scan_shape(const Params& p, const GridSpec& grid) {
    validate_grid(grid);
    if (grid.points < 128)
        throw GridError("shape scan needs at least 128 points");
    if (!(grid.k_min > 0.0))
        throw GridError("shape scan requires k_min > 0");
    CheckResult r;
    r.name = "shape_scan";
    r.tolerance = 0.0;
    const auto ks = make_grid(grid);
    std::vector<Bundle> rows;
    rows.reserve(ks.size());
    for (double k : ks) rows.push_back(eval_bundle(p, k));
    r.samples = static_cast<long>(rows.size());

    double viol = 0.0;
    for (const Bundle& b : rows) {
        viol = std::max(viol, -b.f);
        viol = std::max(viol, -b.f_prime);
        viol = std::max(viol, b.f_second);
        viol = std::max(viol, 1.0 - b.sigma);
    }
    for (size_t i = 0; i + 1 < rows.size(); ++i) {
        const double drop = rows[i].share_capital - rows[i + 1].share_capital;
        const double slack = 1e-14 * std::max(1.0, rows[i].share_capital);
        viol = std::max(viol, drop - slack);
    }

    std::string shape_note;
    if (classify_reduction(p) != Reduction::general_ves) {
        shape_note = "sigma constant; unimodality skipped";
    } else {
        const double kstar = sigma_turning_point(p);
        size_t imax = 0;
        for (size_t i = 1; i < rows.size(); ++i)
            if (rows[i].sigma > rows[imax].sigma) imax = i;
        if (kstar < ks.front() || kstar > ks.back()) {
            shape_note = "turning point " + format_sig(kstar, 6) +
                         " outside grid; unimodality partial";
            const bool rising = kstar > ks.back();
            for (size_t i = 0; i + 1 < rows.size(); ++i) {
                const double d = rows[i + 1].sigma - rows[i].sigma;
                viol = std::max(viol, rising ? -d : d);
            }
        } else {
            shape_note = "kstar=" + format_sig(kstar, 6) + " argmax_k=" +
                         format_sig(ks[imax], 6);
            if (imax == 0 || imax + 1 == rows.size() ||
                ks[imax - 1] > kstar || ks[imax + 1] < kstar)
                viol = std::max(viol, 1.0);
            for (size_t i = 0; i + 1 < imax; ++i)
                viol = std::max(viol, rows[i].sigma - rows[i + 1].sigma);
            for (size_t i = imax; i + 1 < rows.size(); ++i)
                viol = std::max(viol, rows[i + 1].sigma - rows[i].sigma);
        }
    }
    double sig_max = rows[0].sigma;
    for (const Bundle& b : rows) sig_max = std::max(sig_max, b.sigma);
    r.max_rel_error = std::max(viol, 0.0);
    r.max_abs_error = r.max_rel_error;
    r.passed = r.max_rel_error <= r.tolerance;
    r.notes = shape_note + " sigma_max=" + format_sig(sig_max, 6);
    return r;
}

Report run_all(const Params& p) {
    Report rep{p, {}, false};
    const GridSpec check_grid{0.01, 100.0, 64, Spacing::log};

    rep.checks.push_back(check_mrs_identity(p, check_grid));
    rep.checks.push_back(check_sigma_definition(p, check_grid));

    {
        CheckResult r;
        r.name = "ode_closure";
        r.tolerance = 1e-8;
        OdeConfig cfg;
        cfg.y_start = eval_f(p, cfg.k_start);
        const auto path = integrate_reduced_ode(p, cfg);
        const double want = eval_f(p, cfg.k_end);
        r.max_abs_error = std::fabs(path.back().value - want);
        r.max_rel_error = r.max_abs_error / want;
        r.samples = cfg.step_count;
        r.passed = r.max_rel_error <= r.tolerance;
        r.notes = "y(2)=" + format_sig(path.back().value) + " f(2)=" +
                  format_sig(want);
        rep.checks.push_back(r);
    }
    {
        CheckResult r;
        r.name = "rk4_order";
        r.tolerance = 0.125;
        OdeConfig cfg;
        cfg.k_start = 0.1;
        cfg.k_end = 50.0;
        cfg.y_start = eval_f(p, cfg.k_start);
        const double want = eval_f(p, cfg.k_end);
        auto err_at = [&](int n) {
            OdeConfig c = cfg;
            c.step_count = n;
            return std::fabs(integrate_reduced_ode(p, c).back().value - want) /
                   want;
        };
        const double e_coarse = err_at(64);
        const double e_fine = err_at(128);
        r.samples = 64 + 128;
        r.notes = "err64=" + format_sig(e_coarse, 6) + " err128=" +
                  format_sig(e_fine, 6);
        if (e_coarse < 1e-13) {
            // Truncation already at round-off; the ratio measures noise.
            r.skipped = true;
            r.passed = true;
            r.notes += " order unmeasurable at round-off";
        } else {
            r.max_rel_error = e_fine / e_coarse;
            r.passed = r.max_rel_error <= r.tolerance;
        }
        rep.checks.push_back(r);
    }
    {
        CheckResult r;
        r.name = "mrs_reconstruction";
        r.tolerance = 1e-8;
        const GridSpec g{0.5, 20.0, 64, Spacing::log};
        auto path = reconstruct_mrs_from_sigma(
            [&](double k) { return eval_sigma(p, k); }, 1.0, eval_mrs(p, 1.0),
            g, 16);
        for (const PathPoint& pt : path) {
            const double want = eval_mrs(p, pt.k);
            r.max_abs_error =
                std::max(r.max_abs_error, std::fabs(pt.value - want));
            r.max_rel_error = std::max(r.max_rel_error, rel_gap(pt.value, want));
        }
        r.samples = static_cast<long>(path.size());
        r.passed = r.max_rel_error <= r.tolerance;
        rep.checks.push_back(r);
    }
    {
        CheckResult r;
        r.name = "y_reconstruction";
        r.tolerance = 1e-8;
        const GridSpec g{0.5, 20.0, 64, Spacing::log};
        auto path = reconstruct_y_from_mrs(
            [&](double k) { return eval_mrs(p, k); }, 1.0, 1.0,
            eval_f(p, 1.0), g, 16);
        for (const PathPoint& pt : path) {
            const double want = eval_f(p, pt.k);
            r.max_abs_error =
                std::max(r.max_abs_error, std::fabs(pt.value - want));
            r.max_rel_error = std::max(r.max_rel_error, rel_gap(pt.value, want));
        }
        r.samples = static_cast<long>(path.size());
        r.passed = r.max_rel_error <= r.tolerance;
        rep.checks.push_back(r);
    }
    rep.checks.push_back(probe_sigma_infinity(p));
    rep.checks.push_back(probe_inada(p));
    rep.checks.push_back(probe_shares_limit(p));
    rep.checks.push_back(scan_shape(p, GridSpec{0.1, 1000.0, 256, Spacing::log}));

    rep.overall = true;
    for (const CheckResult& c : rep.checks) rep.overall = rep.overall && c.passed;
    return rep;
}

std::string to_text(const Report& report) {
    const Params& p = report.params;
    std::string out = "params theta=" + format_sig(p.theta()) +
                      " omega=" + format_sig(p.omega()) +
                      " psi=" + format_sig(p.psi()) +
                      " alpha=" + format_sig(p.alpha()) +
                      " beta=" + format_sig(p.beta()) +
                      " gamma=" + format_sig(p.gamma()) +
                      " mode=" + to_string(p.mode()) + "\n";
    for (const CheckResult& c : report.checks) {
        out += "check=" + c.name +
               " status=" + (c.skipped ? "SKIP" : (c.passed ? "PASS" : "FAIL")) +
               " max_abs_error=" + format_sig(c.max_abs_error, 6) +
               " max_rel_error=" + format_sig(c.max_rel_error, 6) +
               " tolerance=" + format_sig(c.tolerance, 6) +
               " samples=" + std::to_string(c.samples);
        if (!c.notes.empty()) out += " note=" + c.notes;
        out += "\n";
    }
    out += std::string("overall=") + (report.overall ? "PASS" : "FAIL") + "\n";
    return out;
}

std::string to_json_string(const Report& report) {
    nlohmann::ordered_json j;
    const Params& p = report.params;
    j["params"] = {{"theta", p.theta()}, {"omega", p.omega()},
                   {"psi", p.psi()},     {"alpha", p.alpha()},
                   {"beta", p.beta()},   {"gamma", p.gamma()},
                   {"mode", to_string(p.mode())}};
    j["checks"] = nlohmann::ordered_json::array();
    for (const CheckResult& c : report.checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["status"] = c.skipped ? "SKIP" : (c.passed ? "PASS" : "FAIL");
        jc["max_abs_error"] = c.max_abs_error;
        jc["max_rel_error"] = c.max_rel_error;
        jc["tolerance"] = c.tolerance;
        jc["passed"] = c.passed;
        jc["samples"] = c.samples;
        jc["notes"] = c.notes;
        j["checks"].push_back(jc);
    }
    j["overall"] = report.overall;
    return j.dump(2) + "\n";
}

}  // namespace ves::verify
