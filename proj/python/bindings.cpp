#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>
#include <vector>

#include "ves/calibrate.hpp"
#include "ves/core.hpp"
#include "ves/io.hpp"
#include "ves/verify.hpp"

namespace py = pybind11;

namespace {

std::vector<ves::Observation> to_observations(const py::sequence& rows) {
    std::vector<ves::Observation> obs;
    for (const auto& row : rows) {
        auto t = row.cast<py::sequence>();
        ves::Observation o;
        if (t.size() == 2) {
            o.k = t[0].cast<double>();
            o.y = t[1].cast<double>();
        } else if (t.size() == 3) {
            o.k = t[0].cast<double>();
            o.y = t[1].cast<double>();
            o.weight = t[2].cast<double>();
        } else {
            throw py::value_error("observation rows must be (k, y) or (k, y, weight)");
        }
        obs.push_back(o);
    }
    return obs;
}

ves::GridSpec grid_spec(double k_min, double k_max, int points,
                        const std::string& spacing) {
    return {k_min, k_max, points, ves::spacing_from_string(spacing)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Variable elasticity of substitution production function core";

    auto err = py::register_exception<ves::Error>(m, "Error");
    py::register_exception<ves::ConstraintViolation>(m, "ConstraintViolation",
                                                     err);
    py::register_exception<ves::calibrate::NoConvergence>(m, "NoConvergence",
                                                          err);

    py::class_<ves::Params>(m, "Params")
        .def_property_readonly("theta", &ves::Params::theta)
        .def_property_readonly("omega", &ves::Params::omega)
        .def_property_readonly("psi", &ves::Params::psi)
        .def_property_readonly("alpha", &ves::Params::alpha)
        .def_property_readonly("beta", &ves::Params::beta)
        .def_property_readonly("gamma", &ves::Params::gamma)
        .def_property_readonly("eta", &ves::Params::eta)
        .def_property_readonly("mu", &ves::Params::mu)
        .def_property_readonly(
            "mode", [](const ves::Params& p) { return ves::to_string(p.mode()); })
        .def("__repr__", [](const ves::Params& p) {
            return "Params(theta=" + ves::format_sig(p.theta()) +
                   ", omega=" + ves::format_sig(p.omega()) +
                   ", psi=" + ves::format_sig(p.psi()) +
                   ", alpha=" + ves::format_sig(p.alpha()) +
                   ", beta=" + ves::format_sig(p.beta()) +
                   ", gamma=" + ves::format_sig(p.gamma()) + ", mode='" +
                   ves::to_string(p.mode()) + "')";
        });

    py::class_<ves::Bundle>(m, "Bundle")
        .def_readonly("k", &ves::Bundle::k)
        .def_readonly("f", &ves::Bundle::f)
        .def_readonly("f_prime", &ves::Bundle::f_prime)
        .def_readonly("f_second", &ves::Bundle::f_second)
        .def_readonly("mrs", &ves::Bundle::mrs)
        .def_readonly("sigma", &ves::Bundle::sigma)
        .def_readonly("sigma_prime", &ves::Bundle::sigma_prime)
        .def_readonly("share_capital", &ves::Bundle::share_capital)
        .def_readonly("share_labor", &ves::Bundle::share_labor)
        .def("as_dict", [](const ves::Bundle& b) {
            py::dict d;
            d["k"] = b.k;
            d["f"] = b.f;
            d["f_prime"] = b.f_prime;
            d["f_second"] = b.f_second;
            d["mrs"] = b.mrs;
            d["sigma"] = b.sigma;
            d["sigma_prime"] = b.sigma_prime;
            d["share_capital"] = b.share_capital;
            d["share_labor"] = b.share_labor;
            return d;
        });

    py::class_<ves::SigmaLimits>(m, "SigmaLimits")
        .def_readonly("at_zero", &ves::SigmaLimits::at_zero)
        .def_readonly("at_infinity_paper", &ves::SigmaLimits::at_infinity_paper)
        .def_property_readonly("branch", [](const ves::SigmaLimits& s) {
            return s.at_infinity_branch ==
                           ves::SigmaInfinityBranch::two_psi_ge_one
                       ? "2psi>=1"
                       : "2psi<1";
        });

    py::class_<ves::verify::CheckResult>(m, "CheckResult")
        .def_readonly("name", &ves::verify::CheckResult::name)
        .def_readonly("max_abs_error", &ves::verify::CheckResult::max_abs_error)
        .def_readonly("max_rel_error", &ves::verify::CheckResult::max_rel_error)
        .def_readonly("tolerance", &ves::verify::CheckResult::tolerance)
        .def_readonly("passed", &ves::verify::CheckResult::passed)
        .def_readonly("skipped", &ves::verify::CheckResult::skipped)
        .def_readonly("samples", &ves::verify::CheckResult::samples)
        .def_readonly("notes", &ves::verify::CheckResult::notes);

    py::class_<ves::verify::Report>(m, "Report")
        .def_readonly("params", &ves::verify::Report::params)
        .def_readonly("checks", &ves::verify::Report::checks)
        .def_readonly("overall", &ves::verify::Report::overall)
        .def("to_text",
             [](const ves::verify::Report& r) { return ves::verify::to_text(r); })
        .def("to_json", [](const ves::verify::Report& r) {
            return ves::verify::to_json_string(r);
        });

    py::class_<ves::calibrate::Result>(m, "FitResult")
        .def_readonly("params", &ves::calibrate::Result::params)
        .def_readonly("rmse", &ves::calibrate::Result::rmse)
        .def_readonly("initial_rmse", &ves::calibrate::Result::initial_rmse)
        .def_readonly("iterations", &ves::calibrate::Result::iterations)
        .def_readonly("converged", &ves::calibrate::Result::converged)
        .def_readonly("restarts_used", &ves::calibrate::Result::restarts_used);

    m.def(
        "validate_params",
        [](double theta, double omega, double psi, double alpha, double beta,
           double gamma, const std::string& mode) {
            return ves::validate_params(theta, omega, psi, alpha, beta, gamma,
                                        ves::mode_from_string(mode));
        },
        py::arg("theta"), py::arg("omega"), py::arg("psi"), py::arg("alpha"),
        py::arg("beta"), py::arg("gamma"), py::arg("mode") = "strict");
    m.def("benchmark_params", &ves::benchmark_params);
    m.def("classify_reduction", [](const ves::Params& p) {
        return std::string(ves::to_string(ves::classify_reduction(p)));
    });

    m.def("eval_f", &ves::eval_f, py::arg("params"), py::arg("k"));
    m.def("eval_fprime", &ves::eval_fprime, py::arg("params"), py::arg("k"));
    m.def("eval_fsecond", &ves::eval_fsecond, py::arg("params"), py::arg("k"));
    m.def("eval_mrs", &ves::eval_mrs, py::arg("params"), py::arg("k"));
    m.def("eval_sigma", &ves::eval_sigma, py::arg("params"), py::arg("k"));
    m.def("eval_sigma_prime", &ves::eval_sigma_prime, py::arg("params"),
          py::arg("k"));
    m.def("eval_shares", &ves::eval_shares, py::arg("params"), py::arg("k"));
    m.def("eval_bundle", &ves::eval_bundle, py::arg("params"), py::arg("k"));
    m.def("sigma_turning_point", &ves::sigma_turning_point);
    m.def("sigma_limits", &ves::sigma_limits);
    m.def("shares_limits", &ves::shares_limits);
    m.def("limits_fprime", [](const ves::Params& p) {
        const auto lim = ves::limits_fprime(p);
        auto name = [](ves::LimitValue v) {
            return v == ves::LimitValue::zero ? "zero" : "positive_infinity";
        };
        return py::make_tuple(name(lim.at_zero), name(lim.at_infinity));
    });
    m.def("aggregate_output", &ves::aggregate_output, py::arg("params"),
          py::arg("capital"), py::arg("labor"));

    m.def(
        "make_grid",
        [](double k_min, double k_max, int points, const std::string& spacing) {
            return ves::make_grid(grid_spec(k_min, k_max, points, spacing));
        },
        py::arg("k_min"), py::arg("k_max"), py::arg("points"),
        py::arg("spacing") = "log");

    m.def("run_all", &ves::verify::run_all, py::arg("params"),
          "Full numerical check battery; returns a Report");
    m.def(
        "integrate_reduced_ode",
        [](const ves::Params& p, double k_start, double k_end, double y_start,
           int steps) {
            ves::verify::OdeConfig cfg;
            cfg.k_start = k_start;
            cfg.k_end = k_end;
            cfg.y_start = y_start;
            cfg.step_count = steps;
            std::vector<std::pair<double, double>> out;
            for (const auto& pt : ves::verify::integrate_reduced_ode(p, cfg))
                out.emplace_back(pt.k, pt.value);
            return out;
        },
        py::arg("params"), py::arg("k_start"), py::arg("k_end"),
        py::arg("y_start"), py::arg("steps") = 4096);

    m.def(
        "residuals",
        [](const ves::Params& p, const py::sequence& rows) {
            return ves::calibrate::residuals(p, to_observations(rows));
        },
        py::arg("params"), py::arg("observations"));
    m.def(
        "fit",
        [](const py::sequence& rows, bool normalize, const std::string& mode,
           std::uint64_t seed, int starts, long max_evals) {
            ves::calibrate::Problem problem;
            problem.observations = to_observations(rows);
            problem.normalize_alpha_beta = normalize;
            problem.mode = ves::mode_from_string(mode);
            problem.seed = seed;
            ves::calibrate::Options opts;
            opts.starts = starts;
            opts.max_evals = max_evals;
            return ves::calibrate::fit(problem, opts);
        },
        py::arg("observations"), py::arg("normalize") = true,
        py::arg("mode") = "strict", py::arg("seed") = 0,
        py::arg("starts") = 16, py::arg("max_evals") = 40000);
    m.def(
        "synth_data",
        [](const ves::Params& p, double k_min, double k_max, int points,
           double noise_sd, std::uint64_t seed, const std::string& spacing) {
            std::vector<std::tuple<double, double, double>> out;
            for (const auto& o : ves::calibrate::synth_data(
                     p, grid_spec(k_min, k_max, points, spacing), noise_sd,
                     seed))
                out.emplace_back(o.k, o.y, o.weight);
            return out;
        },
        py::arg("params"), py::arg("k_min"), py::arg("k_max"),
        py::arg("points"), py::arg("noise_sd"), py::arg("seed"),
        py::arg("spacing") = "log");
}
