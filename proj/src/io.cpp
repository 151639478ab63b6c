#include "ves/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "ves/core.hpp"

namespace ves {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Whole-string double parse; partial consumption is a failure.
bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* end = nullptr;
    errno = 0;
    out = std::strtod(s.c_str(), const_cast<char**>(&end));
    return end == s.c_str() + s.size() && errno == 0 && std::isfinite(out);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

}  // namespace

std::string format_sig(double v, int digits) {
    if (v == 0.0) v = 0.0;  // normalize -0
    std::array<char, 64> buf;
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                             std::chars_format::general, digits);
    return std::string(buf.data(), res.ptr);
}

Params parse_params(std::istream& in) {
    std::map<std::string, double> values;
    Mode mode = Mode::strict;
    bool mode_seen = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(lineno, "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "mode") {
            if (mode_seen) throw ParseError(lineno, "duplicate key 'mode'");
            try {
                mode = mode_from_string(value);
            } catch (const Error&) {
                throw ParseError(lineno, "mode must be strict or extended, got '" +
                                             value + "'");
            }
            mode_seen = true;
            continue;
        }
        static const char* known[] = {"theta", "omega", "psi",
                                      "alpha", "beta",  "gamma"};
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ParseError(lineno, "unknown key '" + key + "'");
        if (values.count(key))
            throw ParseError(lineno, "duplicate key '" + key + "'");
        double v;
        if (!parse_double(value, v))
            throw ParseError(lineno, "malformed number '" + value + "' for '" +
                                         key + "'");
        values[key] = v;
    }
    for (const char* k : {"theta", "omega", "psi", "alpha", "beta", "gamma"})
        if (!values.count(k))
            throw ParseError(0, std::string("missing key '") + k + "'");
    return validate_params(values["theta"], values["omega"], values["psi"],
                           values["alpha"], values["beta"], values["gamma"],
                           mode);
}

Params load_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open params file '" + path + "'");
    return parse_params(in);
}

void save_params_file(const Params& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write params file '" + path + "'");
    // 17 significant digits round-trips doubles exactly.
    out << "theta = " << format_sig(p.theta(), 17) << '\n'
        << "omega = " << format_sig(p.omega(), 17) << '\n'
        << "psi = " << format_sig(p.psi(), 17) << '\n'
        << "alpha = " << format_sig(p.alpha(), 17) << '\n'
        << "beta = " << format_sig(p.beta(), 17) << '\n'
        << "gamma = " << format_sig(p.gamma(), 17) << '\n'
        << "mode = " << to_string(p.mode()) << '\n';
    if (!out.flush()) throw IoError("failed writing '" + path + "'");
}

std::vector<Observation> parse_observations(std::istream& in) {
    std::vector<Observation> obs;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    size_t ncols = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (trim(line).empty()) continue;
        auto cols = split_csv(line);
        if (!header_seen) {
            if (cols.size() == 2 && cols[0] == "k" && cols[1] == "y")
                ncols = 2;
            else if (cols.size() == 3 && cols[0] == "k" && cols[1] == "y" &&
                     cols[2] == "weight")
                ncols = 3;
            else
                throw ParseError(lineno,
                                 "expected header 'k,y' or 'k,y,weight'");
            header_seen = true;
            continue;
        }
        if (cols.size() != ncols)
            throw ParseError(lineno, "expected " + std::to_string(ncols) +
                                         " columns, got " +
                                         std::to_string(cols.size()));
        Observation o;
        if (!parse_double(cols[0], o.k))
            throw ParseError(lineno, "malformed number '" + cols[0] + "' in column k");
        if (!parse_double(cols[1], o.y))
            throw ParseError(lineno, "malformed number '" + cols[1] + "' in column y");
        if (ncols == 3 && !parse_double(cols[2], o.weight))
            throw ParseError(lineno,
                             "malformed number '" + cols[2] + "' in column weight");
        obs.push_back(o);
    }
    if (!header_seen) throw ParseError(0, "empty data file");
    return obs;
}

std::vector<Observation> load_observations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open data file '" + path + "'");
    return parse_observations(in);
}

void write_curve_csv(std::ostream& out, const Params& p,
                     const GridSpec& grid) {
    out << "k,f,fprime,fsecond,mrs,sigma,sigmaprime,share_k,share_l\n";
    for (double k : make_grid(grid)) {
        const Bundle b = eval_bundle(p, k);
        out << format_sig(b.k) << ',' << format_sig(b.f) << ','
            << format_sig(b.f_prime) << ',' << format_sig(b.f_second) << ','
            << format_sig(b.mrs) << ',' << format_sig(b.sigma) << ','
            << format_sig(b.sigma_prime) << ',' << format_sig(b.share_capital)
            << ',' << format_sig(b.share_labor) << '\n';
    }
}

void write_figure_files(const std::string& dir, const Params& p,
                        const GridSpec& grid) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());

    const auto ks = make_grid(grid);
    std::vector<Bundle> rows;
    rows.reserve(ks.size());
    for (double k : ks) rows.push_back(eval_bundle(p, k));

    auto open = [&](const char* name) {
        fs::path path = fs::path(dir) / name;
        std::ofstream out(path);
        if (!out) throw IoError("cannot write '" + path.string() + "'");
        return out;
    };

    {
        auto out = open("f.csv");
        out << "k,f\n";
        for (const Bundle& b : rows)
            out << format_sig(b.k) << ',' << format_sig(b.f) << '\n';
    }
    {
        auto out = open("fprime.csv");
        out << "k,fprime\n";
        for (const Bundle& b : rows)
            out << format_sig(b.k) << ',' << format_sig(b.f_prime) << '\n';
    }
    {
        auto out = open("sigma.csv");
        out << "k,sigma\n";
        for (const Bundle& b : rows)
            out << format_sig(b.k) << ',' << format_sig(b.sigma) << '\n';
    }
    {
        auto out = open("shares.csv");
        out << "k,share_k,share_l\n";
        for (const Bundle& b : rows)
            out << format_sig(b.k) << ',' << format_sig(b.share_capital)
                << ',' << format_sig(b.share_labor) << '\n';
    }
}

}  // namespace ves
