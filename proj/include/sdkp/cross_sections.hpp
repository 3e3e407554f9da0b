#pragma once
// Differential cross sections: flux/phase-space factors applied to the
// squared amplitudes, evaluated side by side with the reduced closed forms.
// Natural units (hbar = c = 1), dsigma/dOmega in 1/mass^2; an optional
// conversion reports millibarns with masses read as GeV.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sdkp/amplitudes.hpp"
#include "sdkp/errors.hpp"
#include "sdkp/kinematics.hpp"
#include "sdkp/version.hpp"

namespace sdkp {

// Relative tolerance enforced between the amplitude pipeline and the closed
// form at every evaluated point.
inline constexpr double dcs_pipeline_tol = 1e-8;

// sigma[1/GeV^2] * this = sigma[mb]; configuration value, not a high
// precision physical constant.
inline constexpr double default_mb_per_gev2 = 0.3894;

// One differential cross section evaluated two independent ways.
struct DcsPair {
    double from_amplitude = 0.0;
    double closed_form = 0.0;
};

namespace detail {

inline double rel_spread(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

inline void check_dcs(const DcsPair& v, const char* what) {
    if (rel_spread(v.from_amplitude, v.closed_form) > dcs_pipeline_tol)
        throw mismatch_error(std::string(what) + " cross-section pipelines disagree: " +
                             std::to_string(v.from_amplitude) + " vs " +
                             std::to_string(v.closed_form));
}

}  // namespace detail

// Elastic scattering off a pointlike static source of charge Z*e.
// From-amplitude: (2 pi)^2 E^2 |M|^2.  Closed form:
// Z^2 e^4 E^2 / (4 |p|^4 sin^4(theta/2)).  theta = 0 diverges and is
// rejected; theta = pi is regular and allowed.
inline DcsPair coulomb_dcs(const BetaSet& b, double Z, double energy, double p_mag,
                           double theta, double e) {
    if (p_mag <= 0.0) throw domain_error("momentum magnitude must be positive");
    if (energy <= p_mag) throw domain_error("energy must exceed momentum for a massive scalar");
    if (theta <= 0.0 || theta > pi) throw domain_error("theta outside (0, pi]");
    const double m = std::sqrt(energy * energy - p_mag * p_mag);

    const ScatterProcess proc = coulomb_elastic(p_mag, theta, m, e);
    const double msq = coulomb_msq(b, proc, coulomb_field(Z, e));
    DcsPair out;
    out.from_amplitude = std::pow(2.0 * pi, 2) * energy * energy * msq;
    const double s2 = std::sin(theta / 2.0);
    out.closed_form = Z * Z * std::pow(e, 4) * energy * energy /
                      (4.0 * std::pow(p_mag, 4) * std::pow(s2, 4));
    detail::check_dcs(out, "external-field");
    return out;
}

// Identical-scalar pair scattering in the cm frame.  From-amplitude:
// (2 pi)^2 (E^2/4) |M|^2 with E = sqrt(s)/2.  Closed form:
// (alpha^2 / 4 s) |(s - t)/u + (s - u)/t|^2.  Both angular endpoints are
// photon poles and rejected.
inline DcsPair moller_dcs_cm(const BetaSet& b, double s, double theta, double alpha,
                             double m = 1.0) {
    if (alpha <= 0.0) throw domain_error("alpha must be positive");
    if (s <= 4.0 * m * m) throw domain_error("s at or below the 4m^2 threshold");
    if (theta <= 0.0 || theta >= pi) throw domain_error("theta outside (0, pi)");
    const double e = coupling_from_alpha(alpha);

    const ScatterProcess proc = cm_elastic(s, theta, m, e);
    const double msq = moller_msq(b, proc);
    const double energy = proc.p_in.t;
    DcsPair out;
    out.from_amplitude = std::pow(2.0 * pi, 2) * (energy * energy / 4.0) * msq;
    const MandelstamSet ms = mandelstam(proc.p_in, proc.q_in, proc.p_out, proc.q_out);
    const double ratio_sum = (ms.s - ms.t) / ms.u + (ms.s - ms.u) / ms.t;
    out.closed_form = alpha * alpha / (4.0 * s) * ratio_sum * ratio_sum;
    detail::check_dcs(out, "pair-scattering");
    return out;
}

// Photon-scalar scattering in the lab frame at fixed linear polarizations,
// chosen by index (0 = in the scattering plane, 1 = normal to it) from the
// deterministic transverse basis of each photon leg.  From-amplitude:
// (2 pi)^2 (w_f^3 E_f / (m w_i)) |M|^2.  Closed form:
// (alpha^2 w_f^2 / (m^2 w_i^2)) (eps_f . eps_i)^2.
inline DcsPair compton_dcs_lab(const BetaSet& b, double omega_i, double theta, double m,
                               std::size_t eps_in, std::size_t eps_out, double alpha) {
    if (alpha <= 0.0) throw domain_error("alpha must be positive");
    if (theta < 0.0 || theta > pi) throw domain_error("theta outside [0, pi]");
    if (eps_in > 1 || eps_out > 1)
        throw domain_error("polarization index must be 0 or 1");
    const double e = coupling_from_alpha(alpha);

    const ScatterProcess proc = compton_lab(omega_i, theta, m, e);
    const PolarizationVector ei = polarization_basis(proc.q_in)[eps_in];
    const PolarizationVector ef = polarization_basis(proc.q_out)[eps_out];
    const ComptonAmplitude amp = compton_msq(b, proc, ei, ef, fix_gauge_constant(m));

    const double w_f = proc.q_out.t;
    const double e_f = proc.p_out.t;
    DcsPair out;
    out.from_amplitude =
        std::pow(2.0 * pi, 2) * (std::pow(w_f, 3) * e_f / (m * omega_i)) * amp.msq;
    const double eps_dot = dot(ei.eps, ef.eps);
    out.closed_form = alpha * alpha * w_f * w_f / (m * m * omega_i * omega_i) *
                      eps_dot * eps_dot;
    detail::check_dcs(out, "photon-scalar");
    return out;
}

// Average over the incoming and sum over the outgoing transverse basis.
inline double compton_dcs_unpolarized(const BetaSet& b, double omega_i, double theta,
                                      double m, double alpha) {
    double sum = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t f = 0; f < 2; ++f)
            sum += compton_dcs_lab(b, omega_i, theta, m, i, f, alpha).from_amplitude;
    return 0.5 * sum;
}

// --- tabulation -------------------------------------------------------------

struct TabulateConfig {
    Process process = Process::moller;
    double Z = 1.0;
    double energy = 2.0;   // external-field total energy
    double s = 10.0;       // pair-scattering invariant
    double omega_i = 1.0;  // photon energy
    double mass = 1.0;
    double alpha = default_alpha;
    bool unpolarized = true;
    std::size_t eps_in = 0;
    std::size_t eps_out = 0;
    double theta_min = pi / 180.0;
    double theta_max = pi - pi / 180.0;
    std::size_t steps = 19;
    // Pole guard: external-field and pair-scattering points closer than this
    // to a divergent endpoint are recorded as errors, not evaluated.
    double min_angle = pi / 180.0;
    bool millibarns = false;
    double mb_per_gev2 = default_mb_per_gev2;
    // Per-point acceptance tolerance for the table; the inner evaluators
    // always enforce the library constant as well, so this can only tighten
    // or annotate, never silently loosen the cross-checks.
    double pipeline_tol = dcs_pipeline_tol;
};

struct CrossSectionPoint {
    double theta = 0.0;
    double from_amplitude = 0.0;
    double closed_form = 0.0;
    double spread = 0.0;
    std::string error;  // empty when the point evaluated cleanly
};

struct CrossSectionTable {
    Process process = Process::moller;
    std::string units;  // "1/mass^2" or "mb"
    std::vector<std::pair<std::string, double>> parameters;
    std::vector<CrossSectionPoint> points;
    double max_spread = 0.0;
    double pipeline_tol = dcs_pipeline_tol;
};

inline const char* process_name(Process p) {
    switch (p) {
        case Process::coulomb: return "coulomb";
        case Process::moller: return "moller";
        case Process::compton: return "compton";
    }
    return "unknown";
}

// Evaluate dsigma/dOmega over a uniform theta grid.  Per-point failures are
// recorded in the row and do not abort the table.
inline CrossSectionTable tabulate(const BetaSet& b, const TabulateConfig& cfg) {
    if (cfg.steps < 1) throw domain_error("grid needs at least one step");
    if (cfg.theta_max < cfg.theta_min) throw domain_error("theta_max below theta_min");
    CrossSectionTable table;
    table.process = cfg.process;
    table.units = cfg.millibarns ? "mb" : "1/mass^2";
    table.pipeline_tol = cfg.pipeline_tol;
    table.parameters.emplace_back("mass", cfg.mass);
    table.parameters.emplace_back("alpha", cfg.alpha);
    switch (cfg.process) {
        case Process::coulomb:
            table.parameters.emplace_back("Z", cfg.Z);
            table.parameters.emplace_back("energy", cfg.energy);
            break;
        case Process::moller:
            table.parameters.emplace_back("s", cfg.s);
            break;
        case Process::compton:
            table.parameters.emplace_back("omega_i", cfg.omega_i);
            if (!cfg.unpolarized) {
                table.parameters.emplace_back("eps_in", double(cfg.eps_in));
                table.parameters.emplace_back("eps_out", double(cfg.eps_out));
            }
            break;
    }
    const double unit_factor = cfg.millibarns ? cfg.mb_per_gev2 : 1.0;
    const bool has_pole = cfg.process != Process::compton;

    for (std::size_t i = 0; i < cfg.steps; ++i) {
        CrossSectionPoint pt;
        const double frac = cfg.steps == 1 ? 0.0 : double(i) / double(cfg.steps - 1);
        pt.theta = cfg.theta_min + (cfg.theta_max - cfg.theta_min) * frac;
        try {
            if (has_pole && pt.theta < cfg.min_angle)
                throw domain_error("inside the minimum-angle pole guard");
            if (cfg.process == Process::moller && pt.theta > pi - cfg.min_angle)
                throw domain_error("inside the minimum-angle pole guard");
            DcsPair v;
            switch (cfg.process) {
                case Process::coulomb: {
                    const double e = coupling_from_alpha(cfg.alpha);
                    if (cfg.energy <= cfg.mass)
                        throw domain_error("energy must exceed the mass");
                    const double p_mag =
                        std::sqrt(cfg.energy * cfg.energy - cfg.mass * cfg.mass);
                    v = coulomb_dcs(b, cfg.Z, cfg.energy, p_mag, pt.theta, e);
                    break;
                }
                case Process::moller:
                    v = moller_dcs_cm(b, cfg.s, pt.theta, cfg.alpha, cfg.mass);
                    break;
                case Process::compton:
                    if (cfg.unpolarized) {
                        v.from_amplitude =
                            compton_dcs_unpolarized(b, cfg.omega_i, pt.theta, cfg.mass,
                                                    cfg.alpha);
                        // Closed-form route for the unpolarized sum.
                        const double w_f = compton_omega_f(cfg.omega_i, pt.theta, cfg.mass);
                        const double r = w_f / cfg.omega_i;
                        v.closed_form = cfg.alpha * cfg.alpha / (2.0 * cfg.mass * cfg.mass) *
                                        r * r * (1.0 + std::cos(pt.theta) * std::cos(pt.theta));
                    } else {
                        v = compton_dcs_lab(b, cfg.omega_i, pt.theta, cfg.mass, cfg.eps_in,
                                            cfg.eps_out, cfg.alpha);
                    }
                    break;
            }
            pt.from_amplitude = v.from_amplitude * unit_factor;
            pt.closed_form = v.closed_form * unit_factor;
            pt.spread = detail::rel_spread(v.from_amplitude, v.closed_form);
            if (pt.spread > cfg.pipeline_tol)
                throw mismatch_error("cross-section pipelines disagree beyond tolerance");
            table.max_spread = std::max(table.max_spread, pt.spread);
        } catch (const error& ex) {
            pt.from_amplitude = 0.0;
            pt.closed_form = 0.0;
            pt.spread = 0.0;
            pt.error = ex.what();
        }
        table.points.push_back(pt);
    }
    return table;
}

// --- serialization ----------------------------------------------------------

namespace detail {

// Shortest exact decimal form; stable across runs by construction.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

inline void write_csv(const CrossSectionTable& table, std::ostream& out) {
    out << "theta_rad,dcs_from_amplitude,dcs_closed_form,rel_spread,error\n";
    for (const CrossSectionPoint& pt : table.points) {
        std::string err = pt.error;
        for (char& ch : err)
            if (ch == ',' || ch == '\n') ch = ';';
        out << detail::fmt17(pt.theta) << ',' << detail::fmt17(pt.from_amplitude) << ','
            << detail::fmt17(pt.closed_form) << ',' << detail::fmt17(pt.spread) << ','
            << err << '\n';
    }
}

inline nlohmann::ordered_json table_json(const CrossSectionTable& table) {
    nlohmann::ordered_json doc;
    doc["process"] = process_name(table.process);
    doc["code_version"] = library_version;
    doc["units"] = table.units;
    doc["tolerances"] = {{"pipeline_rel", table.pipeline_tol}};
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.parameters) params[key] = value;
    doc["parameters"] = params;
    doc["max_rel_spread"] = table.max_spread;
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const CrossSectionPoint& pt : table.points) {
        nlohmann::ordered_json row;
        row["theta_rad"] = pt.theta;
        row["dcs_from_amplitude"] = pt.from_amplitude;
        row["dcs_closed_form"] = pt.closed_form;
        row["rel_spread"] = pt.spread;
        if (!pt.error.empty()) row["error"] = pt.error;
        pts.push_back(row);
    }
    doc["points"] = pts;
    return doc;
}

inline void write_json(const CrossSectionTable& table, std::ostream& out) {
    out << table_json(table).dump(2) << '\n';
}

}  // namespace sdkp
