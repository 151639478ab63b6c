#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ves/grid.hpp"
#include "ves/params.hpp"

namespace ves {

// Shortest decimal form with up to `digits` significant digits,
// locale-independent (std::to_chars). Negative zero prints as "0".
std::string format_sig(double v, int digits = 12);

// Params file: one "key = value" per line, '#' comments, keys theta, omega,
// psi, alpha, beta, gamma and optional mode (strict|extended). Unknown,
// duplicate or missing keys and malformed numbers raise ParseError with the
// offending line; the assembled values then go through validate_params.
Params parse_params(std::istream& in);
Params load_params_file(const std::string& path);
void save_params_file(const Params& p, const std::string& path);

struct Observation {
    double k = 0.0;
    double y = 0.0;
    double weight = 1.0;
};

// Data file: CSV with header "k,y" or "k,y,weight", '#' comments allowed.
// ParseError carries the line number; value constraints (k, y, weight > 0)
// are checked later by the calibration entry points.
std::vector<Observation> parse_observations(std::istream& in);
std::vector<Observation> load_observations(const std::string& path);

// Nine-column table, header
// k,f,fprime,fsecond,mrs,sigma,sigmaprime,share_k,share_l
// at 12 significant digits.
void write_curve_csv(std::ostream& out, const Params& p, const GridSpec& grid);

// f.csv, fprime.csv, sigma.csv, shares.csv under dir (created if missing).
void write_figure_files(const std::string& dir, const Params& p,
                        const GridSpec& grid);

}  // namespace ves
