// Command-line front end: verification suites, cross-section tables, and
// power-counting queries for the scalar DKP library.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdkp/cross_sections.hpp"
#include "sdkp/distributions.hpp"
#include "sdkp/version.hpp"

namespace {

using namespace sdkp;

constexpr double deg = pi / 180.0;

// ---------------------------------------------------------------------------
// Defaults, config file, environment.

struct Defaults {
    double alpha = default_alpha;
    double mass = 1.0;
    double min_angle_deg = 1.0;
    std::string format = "csv";
    std::string out_dir;  // empty: relative output paths are used as given
    double mb_per_gev2 = default_mb_per_gev2;
    double pipeline_rel_tol = dcs_pipeline_tol;
};

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double config_double(const std::string& value, std::size_t lineno) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw parse_error("config value '" + value + "' is not a number", lineno);
    }
}

// Flat key=value file; '#' lines and blanks are skipped.  Unknown keys are
// usage errors so that typos cannot silently fall back to defaults.
Defaults load_config(const std::string& path, Defaults d) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw parse_error("config line has no '='", lineno);
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key == "alpha")
            d.alpha = config_double(value, lineno);
        else if (key == "mass")
            d.mass = config_double(value, lineno);
        else if (key == "min_angle_deg")
            d.min_angle_deg = config_double(value, lineno);
        else if (key == "format")
            d.format = value;
        else if (key == "out_dir")
            d.out_dir = value;
        else if (key == "mb_per_gev2")
            d.mb_per_gev2 = config_double(value, lineno);
        else if (key == "pipeline_rel_tol")
            d.pipeline_rel_tol = config_double(value, lineno);
        else
            throw parse_error("unknown config key '" + key + "'", lineno);
    }
    return d;
}

// ---------------------------------------------------------------------------
// Output routing.  "-" means stdout; a relative path is placed under the
// configured output directory when one is set.

struct OutTarget {
    std::ofstream file;
    bool to_stdout = false;
    std::string path;

    std::ostream& stream() { return to_stdout ? std::cout : file; }
    // Progress/summary text must not contaminate data sent to stdout.
    std::ostream& chatter() { return to_stdout ? std::cerr : std::cout; }
};

OutTarget open_out(const std::string& out, const std::string& out_dir) {
    OutTarget t;
    if (out == "-") {
        t.to_stdout = true;
        t.path = "<stdout>";
        return t;
    }
    t.path = (!out_dir.empty() && out.front() != '/') ? out_dir + "/" + out : out;
    t.file.open(t.path);
    if (!t.file) throw io_error("cannot open output file: " + t.path);
    return t;
}

// ---------------------------------------------------------------------------
// verify: one self-contained check per module, fixed seed, residuals printed.

struct SuiteResult {
    std::string name;
    std::string detail;  // residual or other report text
    bool pass = false;
};

constexpr double tol_algebra = 1e-12;
constexpr double tol_trace = 1e-10;
constexpr double tol_projector = 1e-10;
constexpr double tol_propagator = 1e-10;

std::string fmt_residual(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1e", r);
    return std::string("residual ") + buf;
}

SuiteResult check_residual(const std::string& name, double r, double tol) {
    return {name, fmt_residual(r), r <= tol};
}

SuiteResult suite_algebra(const BetaSet& b) {
    const double r = std::max({algebra_residual(b), eta_residual(b), conjugation_residual(b),
                               (b.eta0 * b.eta0 - Mat5::identity()).max_abs()});
    return check_residual("algebra", r, tol_algebra);
}

SuiteResult suite_traces(const BetaSet& b, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick_idx(0, 3);
    std::uniform_int_distribution<int> pick_len(0, 3);
    double worst = 0.0;
    for (int parity = 0; parity < 2; ++parity) {
        for (int n = 0; n < 200; ++n) {
            const int len = (parity == 0 ? 1 : 2) + 2 * pick_len(rng);
            IndexString idx(static_cast<std::size_t>(len));
            for (int& i : idx) i = pick_idx(rng);
            const cplx brute = trace_product(beta_matrices(b, idx));
            worst = std::max(worst, std::abs(brute - trace_identity(idx)));
        }
    }
    return check_residual("traces", worst, tol_trace);
}

FourVector random_onshell(std::mt19937_64& rng, double m) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double gamma = 1.0 + 99.0 * u01(rng);
    const double e = gamma * m;
    const double p = std::sqrt(e * e - m * m);
    const double c = 2.0 * u01(rng) - 1.0;
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double phi = 2.0 * pi * u01(rng);
    return {e, p * s * std::cos(phi), p * s * std::sin(phi), p * c};
}

SuiteResult suite_projector(const BetaSet& b, std::mt19937_64& rng) {
    const double m = 1.0;
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
        const FourVector p = random_onshell(rng, m);
        const DkpSpinor u = solve_u(b, p, Frequency::minus, m);
        const Vec5 ub = bar(u);
        const Mat5 proj = projector(b, p, m);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                worst = std::max(worst, std::abs(u.components[i] * ub[j] - proj(i, j)));
    }
    return check_residual("projector", worst, tol_projector);
}

SuiteResult suite_singular_orders() {
    const DistributionDescriptor d0 = DistributionDescriptor::jordan_pauli(0.0);
    const DistributionDescriptor dm = DistributionDescriptor::jordan_pauli(1.0);
    const DistributionDescriptor s = DistributionDescriptor::dkp_commutator(1.0);
    const int w0 = singular_order(d0).omega;
    const int wm = singular_order(dm).omega;
    const int ws = singular_order(s).omega;
    const SplitResult r0 = split(d0), rm = split(dm), rs = split(s);
    const bool ok = w0 == -2 && wm == -2 && ws == 0 &&
                    r0.classification == SplitClass::regular && r0.free_constants == 0 &&
                    rm.classification == SplitClass::regular && rm.free_constants == 0 &&
                    rs.classification == SplitClass::singular && rs.free_constants == 1 &&
                    rs.matrix_constant && !r0.matrix_constant && !rm.matrix_constant;
    const std::string report = "omega " + std::to_string(w0) + " " + std::to_string(wm) +
                               " " + std::to_string(ws) + ", free constants " +
                               std::to_string(r0.free_constants) + " " +
                               std::to_string(rm.free_constants) + " " +
                               std::to_string(rs.free_constants);
    return {"singular-orders", report, ok};
}

SuiteResult suite_propagator(const BetaSet& b, std::mt19937_64& rng) {
    const double m = 1.0;
    double worst = (fix_gauge_constant(m) * m - Mat5::identity()).max_abs();
    std::uniform_real_distribution<double> comp(-3.0, 3.0);
    const Mat5 ident = Mat5::identity();
    int kept = 0;
    while (kept < 100) {
        const FourVector q{comp(rng), comp(rng), comp(rng), comp(rng)};
        if (std::abs(dot(q, q) - m * m) < 0.1) continue;
        ++kept;
        const Mat5 off = slash(b, q) - m * ident;
        const Mat5 with_c = dkp_feynman(b, q, m, fix_gauge_constant(m)).value;
        const Mat5 bare = dkp_feynman(b, q, m, Mat5::zero()).value;
        worst = std::max(worst, (off * with_c + ident).max_abs());
        worst = std::max(worst, (off * bare + (1.0 / m) * slash(b, q)).max_abs());
    }
    return check_residual("propagator", worst, tol_propagator);
}

SuiteResult suite_cross_sections(const BetaSet& b, double pipeline_tol) {
    const DcsPair c = coulomb_dcs(b, 1.0, 2.0, std::sqrt(3.0), pi / 2.0, default_coupling());
    const DcsPair mo = moller_dcs_cm(b, 10.0, pi / 3.0, default_alpha);
    const DcsPair co = compton_dcs_lab(b, 1.0, pi / 2.0, 1.0, 0, 0, default_alpha);
    const double worst = std::max({detail::rel_spread(c.from_amplitude, c.closed_form),
                                   detail::rel_spread(mo.from_amplitude, mo.closed_form),
                                   detail::rel_spread(co.from_amplitude, co.closed_form)});
    return check_residual("cross-sections", worst, pipeline_tol);
}

int cmd_verify(bool corrupt_beta, double pipeline_tol) {
    BetaSet b = build_beta_representation();
    if (corrupt_beta) b.beta[1](0, 2) += 0.001;  // deliberate defect, test mode only
    std::mt19937_64 rng(20260822ull);

    std::vector<SuiteResult> results;
    const auto run = [&](auto&& fn) {
        try {
            results.push_back(fn());
        } catch (const std::exception& ex) {
            results.push_back({"(exception)", ex.what(), false});
        }
    };
    run([&] { return suite_algebra(b); });
    run([&] { return suite_traces(b, rng); });
    run([&] { return suite_projector(b, rng); });
    run([&] { return suite_singular_orders(); });
    run([&] { return suite_propagator(b, rng); });
    run([&] { return suite_cross_sections(b, pipeline_tol); });

    bool all = true;
    for (const SuiteResult& r : results) {
        all = all && r.pass;
        std::printf("%-16s %-44s %s\n", r.name.c_str(), r.detail.c_str(),
                    r.pass ? "PASS" : "FAIL");
    }
    std::printf("verify: %s\n", all ? "all suites passed" : "FAILURES detected");
    return all ? 0 : 1;
}

// ---------------------------------------------------------------------------
// xsec: tabulate one process over a theta grid, or evaluate a single angle.

struct XsecArgs {
    std::string process;
    double Z = 1.0;
    double energy = 2.0;
    std::vector<double> energies;  // optional multi-energy scan (coulomb)
    double s = 10.0;
    double omega_i = 1.0;
    double mass = 1.0;
    double alpha = default_alpha;
    double theta = 0.0;  // single-angle mode when set on the command line
    bool theta_set = false;
    double theta_min = 1.0;
    double theta_max = 179.0;
    std::size_t steps = 19;
    bool unpolarized = false;
    std::size_t eps_in = 0;
    std::size_t eps_out = 0;
    bool eps_set = false;
    std::string format = "csv";
    std::string out = "-";
    bool millibarns = false;
    double min_angle = 1.0;
    double pipeline_tol = dcs_pipeline_tol;
    double mb_per_gev2 = default_mb_per_gev2;
    std::string out_dir;
};

Process parse_process(const std::string& name) {
    if (name == "coulomb") return Process::coulomb;
    if (name == "moller") return Process::moller;
    if (name == "compton") return Process::compton;
    throw domain_error("unknown process '" + name + "' (expected coulomb, moller or compton)");
}

double single_value(const BetaSet& b, const XsecArgs& a, Process proc) {
    const double theta = a.theta * deg;
    double v = 0.0;
    switch (proc) {
        case Process::coulomb: {
            if (a.energy <= a.mass) throw domain_error("energy must exceed the mass");
            const double p = std::sqrt(a.energy * a.energy - a.mass * a.mass);
            v = coulomb_dcs(b, a.Z, a.energy, p, theta, coupling_from_alpha(a.alpha))
                    .from_amplitude;
            break;
        }
        case Process::moller:
            v = moller_dcs_cm(b, a.s, theta, a.alpha, a.mass).from_amplitude;
            break;
        case Process::compton:
            v = a.eps_set && !a.unpolarized
                    ? compton_dcs_lab(b, a.omega_i, theta, a.mass, a.eps_in, a.eps_out,
                                      a.alpha)
                          .from_amplitude
                    : compton_dcs_unpolarized(b, a.omega_i, theta, a.mass, a.alpha);
            break;
    }
    return a.millibarns ? v * a.mb_per_gev2 : v;
}

TabulateConfig grid_config(const XsecArgs& a, Process proc, double energy) {
    TabulateConfig cfg;
    cfg.process = proc;
    cfg.Z = a.Z;
    cfg.energy = energy;
    cfg.s = a.s;
    cfg.omega_i = a.omega_i;
    cfg.mass = a.mass;
    cfg.alpha = a.alpha;
    cfg.unpolarized = !a.eps_set || a.unpolarized;
    cfg.eps_in = a.eps_in;
    cfg.eps_out = a.eps_out;
    cfg.theta_min = a.theta_min * deg;
    cfg.theta_max = a.theta_max * deg;
    cfg.steps = a.steps;
    cfg.min_angle = a.min_angle * deg;
    cfg.millibarns = a.millibarns;
    cfg.mb_per_gev2 = a.mb_per_gev2;
    cfg.pipeline_tol = a.pipeline_tol;
    return cfg;
}

int cmd_xsec(const BetaSet& b, const XsecArgs& a) {
    const Process proc = parse_process(a.process);
    if (a.format != "csv" && a.format != "json")
        throw domain_error("unknown format '" + a.format + "' (expected csv or json)");
    if (!a.energies.empty() && proc != Process::coulomb)
        throw domain_error("--energies applies to the coulomb process only");

    OutTarget out = open_out(a.out, a.out_dir);

    if (a.theta_set) {
        if (!a.energies.empty())
            throw domain_error("--theta and --energies cannot be combined");
        out.stream() << detail::fmt17(single_value(b, a, proc)) << '\n';
        if (!out.to_stdout && !out.file) throw io_error("write failed: " + out.path);
        return 0;
    }

    std::vector<double> energies = a.energies;
    if (energies.empty()) energies.push_back(a.energy);

    std::vector<CrossSectionTable> tables;
    tables.reserve(energies.size());
    for (double e : energies) tables.push_back(tabulate(b, grid_config(a, proc, e)));

    if (a.format == "csv") {
        for (std::size_t k = 0; k < tables.size(); ++k) {
            if (energies.size() > 1)
                out.stream() << "# energy=" << detail::fmt17(energies[k]) << '\n';
            write_csv(tables[k], out.stream());
        }
    } else if (tables.size() == 1) {
        write_json(tables[0], out.stream());
    } else {
        nlohmann::ordered_json root;
        root["process"] = process_name(proc);
        root["code_version"] = library_version;
        root["tables"] = nlohmann::ordered_json::array();
        for (const CrossSectionTable& t : tables) root["tables"].push_back(table_json(t));
        out.stream() << root.dump(2) << '\n';
    }
    if (!out.to_stdout && !out.file) throw io_error("write failed: " + out.path);

    std::size_t npoints = 0, nerrors = 0;
    double max_spread = 0.0;
    for (const CrossSectionTable& t : tables) {
        npoints += t.points.size();
        max_spread = std::max(max_spread, t.max_spread);
        for (const CrossSectionPoint& p : t.points)
            if (!p.error.empty()) ++nerrors;
    }
    out.chatter() << "summary: " << npoints << " points, max relative spread "
                  << detail::fmt17(max_spread);
    if (nerrors > 0) out.chatter() << ", " << nerrors << " points recorded errors";
    if (!out.to_stdout) out.chatter() << ", wrote " << out.path;
    out.chatter() << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// singular-order: parse "delta m=<mass> deg=<degree> sgn|step+|step-" and
// report the power-counting result.  Positions are 1-based characters in the
// joined descriptor string.

struct Token {
    std::string text;
    std::size_t pos = 0;
};

std::vector<Token> lex_descriptor(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        out.push_back({s.substr(start, i - start), start + 1});
    }
    return out;
}

double token_double(const Token& t, std::size_t skip) {
    const std::string v = t.text.substr(skip);
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw parse_error("invalid number '" + v + "'", t.pos + skip);
    }
}

int token_int(const Token& t, std::size_t skip) {
    const std::string v = t.text.substr(skip);
    try {
        std::size_t used = 0;
        const int x = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw parse_error("invalid integer '" + v + "'", t.pos + skip);
    }
}

DistributionDescriptor parse_descriptor(const std::string& s) {
    const std::vector<Token> toks = lex_descriptor(s);
    const std::size_t end_pos = s.size() + 1;
    const auto need = [&](std::size_t i, const char* what) -> const Token& {
        if (i >= toks.size()) throw parse_error(std::string("missing ") + what, end_pos);
        return toks[i];
    };

    const Token& head = need(0, "'delta'");
    if (head.text != "delta")
        throw parse_error("expected 'delta', got '" + head.text + "'", head.pos);

    const Token& tm = need(1, "mass term m=<value>");
    if (tm.text.rfind("m=", 0) != 0)
        throw parse_error("expected m=<value>, got '" + tm.text + "'", tm.pos);
    const double m = token_double(tm, 2);
    if (m < 0.0) throw parse_error("mass must be nonnegative", tm.pos + 2);

    const Token& td = need(2, "degree term deg=<value>");
    if (td.text.rfind("deg=", 0) != 0)
        throw parse_error("expected deg=<value>, got '" + td.text + "'", td.pos);
    const int degree = token_int(td, 4);
    if (degree < 0) throw parse_error("degree must be nonnegative", td.pos + 4);

    const Token& tf = need(3, "frequency tag sgn|step+|step-");
    FrequencyFactor freq;
    if (tf.text == "sgn")
        freq = FrequencyFactor::sign_p0;
    else if (tf.text == "step+")
        freq = FrequencyFactor::step_positive;
    else if (tf.text == "step-")
        freq = FrequencyFactor::step_negative;
    else
        throw parse_error("expected sgn, step+ or step-, got '" + tf.text + "'", tf.pos);

    if (toks.size() > 4)
        throw parse_error("unexpected token '" + toks[4].text + "'", toks[4].pos);

    DistributionDescriptor d;
    d.terms = {{degree, 1.0}};
    d.mass = m;
    d.frequency = freq;
    return d;
}

int cmd_singular_order(const std::vector<std::string>& words) {
    std::string joined;
    for (const std::string& w : words) {
        if (!joined.empty()) joined += ' ';
        joined += w;
    }
    const DistributionDescriptor d = parse_descriptor(joined);
    const int omega = singular_order(d).omega;
    const SplitResult r = split(d);
    std::printf("omega = %d\n", omega);
    std::printf("classification = %s\n",
                r.classification == SplitClass::regular ? "regular" : "singular");
    std::printf("free constants = %d\n", r.free_constants);
    return 0;
}

// ---------------------------------------------------------------------------

void show_config(const Defaults& d) {
    std::printf("alpha = %s\n", detail::fmt17(d.alpha).c_str());
    std::printf("mass = %s\n", detail::fmt17(d.mass).c_str());
    std::printf("min_angle_deg = %s\n", detail::fmt17(d.min_angle_deg).c_str());
    std::printf("format = %s\n", d.format.c_str());
    std::printf("out_dir = %s\n", d.out_dir.c_str());
    std::printf("mb_per_gev2 = %s\n", detail::fmt17(d.mb_per_gev2).c_str());
    std::printf("pipeline_rel_tol = %s\n", detail::fmt17(d.pipeline_rel_tol).c_str());
    std::printf("verify_algebra_tol = %s\n", detail::fmt17(tol_algebra).c_str());
    std::printf("verify_trace_tol = %s\n", detail::fmt17(tol_trace).c_str());
    std::printf("verify_projector_tol = %s\n", detail::fmt17(tol_projector).c_str());
    std::printf("verify_propagator_tol = %s\n", detail::fmt17(tol_propagator).c_str());
}

int run(int argc, char** argv) {
    // The config file must be applied before the parser binds defaults, so it
    // is located by a pre-scan; the registered option only documents it.
    std::string config_path;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc)
            config_path = argv[i + 1];
        else if (arg.rfind("--config=", 0) == 0)
            config_path = arg.substr(9);
    }
    Defaults d;
    if (const char* env = std::getenv("SDKP_OUT_DIR")) d.out_dir = env;
    if (!config_path.empty()) d = load_config(config_path, d);

    CLI::App app{"Scalar DKP electrodynamics: verification and tree-level cross sections"};
    app.set_version_flag("--version", library_version);
    bool want_show_config = false;
    app.add_flag("--show-config", want_show_config,
                 "Print the effective defaults and tolerances, then exit");
    std::string config_opt;
    app.add_option("--config", config_opt,
                   "Config file with key=value lines (alpha, mass, min_angle_deg, format, "
                   "out_dir, mb_per_gev2, pipeline_rel_tol)");

    CLI::App* verify = app.add_subcommand("verify", "Run the invariant suites of all modules");
    verify->fallthrough();
    bool corrupt_beta = false;
    verify->add_flag("--corrupt-beta", corrupt_beta,
                     "Test mode: damage one beta matrix entry to force a failure");

    XsecArgs xa;
    xa.mass = d.mass;
    xa.alpha = d.alpha;
    xa.min_angle = d.min_angle_deg;
    xa.format = d.format;
    xa.out_dir = d.out_dir;
    xa.mb_per_gev2 = d.mb_per_gev2;
    xa.pipeline_tol = d.pipeline_rel_tol;
    CLI::App* xsec = app.add_subcommand("xsec", "Tabulate a differential cross section");
    xsec->fallthrough();
    xsec->add_option("process", xa.process, "coulomb, moller or compton")->required();
    xsec->add_option("--Z", xa.Z, "Source charge number (coulomb)");
    xsec->add_option("--energy", xa.energy, "Projectile total energy (coulomb)");
    xsec->add_option("--energies", xa.energies, "Comma-separated energy list (coulomb)")
        ->delimiter(',');
    xsec->add_option("--s", xa.s, "Mandelstam s (moller)");
    xsec->add_option("--omega-i", xa.omega_i, "Incident photon energy (compton)");
    xsec->add_option("--mass", xa.mass, "Scalar mass");
    xsec->add_option("--alpha", xa.alpha, "Fine-structure constant");
    CLI::Option* theta_opt =
        xsec->add_option("--theta", xa.theta, "Single angle in degrees: print one value");
    xsec->add_option("--theta-min", xa.theta_min, "Grid start angle in degrees");
    xsec->add_option("--theta-max", xa.theta_max, "Grid end angle in degrees");
    xsec->add_option("--steps", xa.steps, "Number of grid points");
    xsec->add_flag("--unpolarized", xa.unpolarized,
                   "Average initial and sum final photon polarizations (compton)");
    CLI::Option* eps_in_opt =
        xsec->add_option("--eps-in", xa.eps_in, "Incident polarization index 0|1 (compton)");
    CLI::Option* eps_out_opt =
        xsec->add_option("--eps-out", xa.eps_out, "Final polarization index 0|1 (compton)");
    xsec->add_option("--format", xa.format, "Output format: csv or json");
    xsec->add_option("--out", xa.out, "Output path, '-' for stdout");
    xsec->add_flag("--millibarns", xa.millibarns, "Convert from 1/mass^2 to millibarns");
    xsec->add_option("--min-angle", xa.min_angle,
                     "Pole guard in degrees for divergent endpoints");
    xsec->add_option("--pipeline-tol", xa.pipeline_tol,
                     "Per-point relative tolerance between the two pipelines");

    CLI::App* sing = app.add_subcommand(
        "singular-order", "Power counting for 'delta m=<mass> deg=<degree> sgn|step+|step-'");
    sing->fallthrough();
    std::vector<std::string> words;
    sing->add_option("descriptor", words, "Descriptor tokens")->expected(-1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (want_show_config) {
        show_config(d);
        return 0;
    }
    if (*verify) return cmd_verify(corrupt_beta, d.pipeline_rel_tol);
    if (*xsec) {
        xa.theta_set = theta_opt->count() > 0;
        xa.eps_set = eps_in_opt->count() > 0 || eps_out_opt->count() > 0;
        return cmd_xsec(build_beta_representation(), xa);
    }
    if (*sing) return cmd_singular_order(words);

    std::cerr << app.help() << std::flush;
    std::cerr << "error: a subcommand is required\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const mismatch_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
