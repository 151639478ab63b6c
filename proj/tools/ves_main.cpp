// Command line front end: eval, curve, verify, calibrate, figures.
// Exit codes: 0 success, 2 bad input, 3 I/O failure, 4 calibration did not
// converge.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ves/calibrate.hpp"
#include "ves/core.hpp"
#include "ves/io.hpp"
#include "ves/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitIo = 3;
constexpr int kExitNoConvergence = 4;

void print_bundle(std::ostream& out, const ves::Bundle& b) {
    out << "k=" << ves::format_sig(b.k) << '\n'
        << "f=" << ves::format_sig(b.f) << '\n'
        << "fprime=" << ves::format_sig(b.f_prime) << '\n'
        << "fsecond=" << ves::format_sig(b.f_second) << '\n'
        << "mrs=" << ves::format_sig(b.mrs) << '\n'
        << "sigma=" << ves::format_sig(b.sigma) << '\n'
        << "sigmaprime=" << ves::format_sig(b.sigma_prime) << '\n'
        << "share_k=" << ves::format_sig(b.share_capital) << '\n'
        << "share_l=" << ves::format_sig(b.share_labor) << '\n';
}

void print_fit(std::ostream& out, const ves::calibrate::Result& r) {
    const ves::Params& p = r.params;
    out << "converged=" << (r.converged ? "true" : "false") << '\n'
        << "theta=" << ves::format_sig(p.theta()) << '\n'
        << "omega=" << ves::format_sig(p.omega()) << '\n'
        << "psi=" << ves::format_sig(p.psi()) << '\n'
        << "alpha=" << ves::format_sig(p.alpha()) << '\n'
        << "beta=" << ves::format_sig(p.beta()) << '\n'
        << "gamma=" << ves::format_sig(p.gamma()) << '\n'
        << "eta=" << ves::format_sig(p.eta()) << '\n'
        << "rmse=" << ves::format_sig(r.rmse) << '\n'
        << "iterations=" << r.iterations << '\n'
        << "restarts_used=" << r.restarts_used << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variable elasticity of substitution production function tool"};
    app.require_subcommand(1);

    std::string params_path, data_path, out_path, outdir;
    double k_value = 1.0;
    double k_min = 0.01, k_max = 100.0;
    int points = 512;
    std::string spacing = "log", mode = "strict";
    bool no_normalize = false, as_json = false;
    std::uint64_t seed = 0;
    long budget = 40000;

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate everything at one k");
    eval_cmd->add_option("--params", params_path, "params file")->required();
    eval_cmd->add_option("--k", k_value, "capital intensity")->required();

    auto* curve_cmd = app.add_subcommand("curve", "Tabulate the curve as CSV");
    curve_cmd->add_option("--params", params_path, "params file")->required();
    curve_cmd->add_option("--kmin", k_min, "grid lower end")->required();
    curve_cmd->add_option("--kmax", k_max, "grid upper end")->required();
    curve_cmd->add_option("--points", points, "grid size")->required();
    curve_cmd->add_option("--spacing", spacing, "log or linear");
    curve_cmd->add_option("--out", out_path, "output file (default stdout)");

    auto* verify_cmd =
        app.add_subcommand("verify", "Run the numerical check battery");
    verify_cmd->add_option("--params", params_path, "params file")->required();
    verify_cmd->add_flag("--json", as_json, "emit the report as JSON");

    auto* cal_cmd = app.add_subcommand("calibrate", "Fit params to k,y data");
    cal_cmd->add_option("--data", data_path, "CSV with header k,y[,weight]")
        ->required();
    cal_cmd->add_flag("--no-normalize", no_normalize,
                      "search beta freely instead of beta = 1 - alpha");
    cal_cmd->add_option("--mode", mode, "strict or extended");
    cal_cmd->add_option("--seed", seed, "multistart seed");
    cal_cmd->add_option("--budget", budget, "objective evaluation budget");
    cal_cmd->add_option("--out", out_path, "write fitted params file");

    auto* fig_cmd =
        app.add_subcommand("figures", "Emit benchmark figure data files");
    fig_cmd->add_option("--outdir", outdir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*eval_cmd) {
            const ves::Params p = ves::load_params_file(params_path);
            print_bundle(std::cout, ves::eval_bundle(p, k_value));
        } else if (*curve_cmd) {
            const ves::Params p = ves::load_params_file(params_path);
            const ves::GridSpec grid{k_min, k_max, points,
                                     ves::spacing_from_string(spacing)};
            if (out_path.empty()) {
                ves::write_curve_csv(std::cout, p, grid);
            } else {
                std::ofstream out(out_path);
                if (!out)
                    throw ves::IoError("cannot write '" + out_path + "'");
                ves::write_curve_csv(out, p, grid);
                if (!out.flush())
                    throw ves::IoError("failed writing '" + out_path + "'");
            }
        } else if (*verify_cmd) {
            const ves::Params p = ves::load_params_file(params_path);
            const ves::verify::Report report = ves::verify::run_all(p);
            std::cout << (as_json ? ves::verify::to_json_string(report)
                                  : ves::verify::to_text(report));
            if (!report.overall) return kExitInput;
        } else if (*cal_cmd) {
            ves::calibrate::Problem problem;
            problem.observations = ves::load_observations(data_path);
            problem.normalize_alpha_beta = !no_normalize;
            problem.mode = ves::mode_from_string(mode);
            problem.seed = seed;
            ves::calibrate::Options opts;
            opts.max_evals = budget;
            try {
                const auto result = ves::calibrate::fit(problem, opts);
                print_fit(std::cout, result);
                if (!out_path.empty())
                    ves::save_params_file(result.params, out_path);
            } catch (const ves::calibrate::NoConvergence& e) {
                std::cerr << "error: " << e.what() << '\n';
                print_fit(std::cout, e.best());
                return kExitNoConvergence;
            }
        } else if (*fig_cmd) {
            // 513 points puts the midpoint node exactly on k = 1.
            const ves::GridSpec grid{0.01, 100.0, 513, ves::Spacing::log};
            ves::write_figure_files(outdir, ves::benchmark_params(), grid);
        }
    } catch (const ves::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ves::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}
