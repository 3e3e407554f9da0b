#pragma once

// Momentum and polarization configurations for the three tree-level
// processes, in the frames where their closed-form cross sections live.
// Conventions: incoming beam along +z, scattering in the x-z plane,
// natural units, metric (+,-,-,-).

#include <array>
#include <cmath>
#include <optional>

#include "sdkp/errors.hpp"
#include "sdkp/four_vector.hpp"

namespace sdkp {

inline constexpr double pi = 3.14159265358979323846;

// alpha = e^2 / (4 pi)
inline constexpr double default_alpha = 1.0 / 137.035999;

inline double coupling_from_alpha(double alpha) { return std::sqrt(4.0 * pi * alpha); }

inline double default_coupling() { return coupling_from_alpha(default_alpha); }

enum class Process { coulomb, moller, compton };
enum class Frame { lab, cm };

// Real linear photon polarization: eps = (0, e) with e.k = 0, |e| = 1.
struct PolarizationVector {
    FourVector eps;
    FourVector k;
};

inline PolarizationVector make_polarization(FourVector eps, FourVector k) {
    if (eps.t != 0.0) throw domain_error("polarization time component must vanish");
    const double scale = std::max(1.0, max_component(k));
    if (std::abs(spatial_dot(eps, k)) > 1e-12 * scale)
        throw domain_error("polarization not transverse to k");
    if (std::abs(spatial_norm2(eps) - 1.0) > 1e-12) throw domain_error("polarization not unit norm");
    return {eps, k};
}

struct MandelstamSet {
    double s = 0.0, t = 0.0, u = 0.0;
};

// One 2->2 (or external-field 1->1) scattering configuration.  The q legs
// hold the second scalar for Moller, the photon for Compton, and are unused
// for scattering off a static external field.
struct ScatterProcess {
    Process process = Process::moller;
    FourVector p_in, q_in, p_out, q_out;
    std::optional<PolarizationVector> pol_in, pol_out;
    double mass = 1.0;
    double coupling = default_coupling();
    Frame frame = Frame::lab;
};

namespace detail {

// Tolerances are relative to the squared component scale: constructions at
// large s/m^2 lose exactly that many digits to cancellation in p^2 - m^2.
inline double shell_scale(FourVector p, double m) {
    const double c = max_component(p);
    return std::max(m * m, c * c);
}

inline void require_onshell(FourVector p, double m, const char* leg) {
    if (std::abs(dot(p, p) - m * m) > 1e-12 * shell_scale(p, m))
        throw domain_error(std::string("massive leg off shell: ") + leg);
}

inline void require_null(FourVector k, const char* leg) {
    if (std::abs(dot(k, k)) > 1e-12 * std::max(1.0, k.t * k.t))
        throw domain_error(std::string("photon leg not null: ") + leg);
}

inline void require_conserved(FourVector in, FourVector out) {
    const double scale = std::max(1.0, std::max(max_component(in), max_component(out)));
    if (max_component(in - out) > 1e-12 * scale)
        throw domain_error("four-momentum not conserved");
}

}  // namespace detail

inline void validate(const ScatterProcess& sp) {
    switch (sp.process) {
        case Process::coulomb: {
            // Static external field: energy conserved, 3-momentum magnitude elastic.
            detail::require_onshell(sp.p_in, sp.mass, "p_in");
            detail::require_onshell(sp.p_out, sp.mass, "p_out");
            const double scale = std::max(1.0, max_component(sp.p_in));
            if (std::abs(sp.p_in.t - sp.p_out.t) > 1e-12 * scale)
                throw domain_error("energy not conserved off the static field");
            if (std::abs(spatial_norm(sp.p_in) - spatial_norm(sp.p_out)) > 1e-12 * scale)
                throw domain_error("elastic momentum magnitude not conserved");
            break;
        }
        case Process::moller:
            detail::require_onshell(sp.p_in, sp.mass, "p_in");
            detail::require_onshell(sp.q_in, sp.mass, "q_in");
            detail::require_onshell(sp.p_out, sp.mass, "p_out");
            detail::require_onshell(sp.q_out, sp.mass, "q_out");
            detail::require_conserved(sp.p_in + sp.q_in, sp.p_out + sp.q_out);
            break;
        case Process::compton:
            detail::require_onshell(sp.p_in, sp.mass, "p_in");
            detail::require_onshell(sp.p_out, sp.mass, "p_out");
            detail::require_null(sp.q_in, "k_in");
            detail::require_null(sp.q_out, "k_out");
            detail::require_conserved(sp.p_in + sp.q_in, sp.p_out + sp.q_out);
            break;
    }
}

inline MandelstamSet mandelstam(FourVector p_i, FourVector q_i, FourVector p_f, FourVector q_f) {
    const FourVector in = p_i + q_i;
    const FourVector out = p_f + q_f;
    const double scale = std::max(1.0, std::max(max_component(in), max_component(out)));
    if (max_component(in - out) > 1e-9 * scale)
        throw domain_error("momentum conservation violated in mandelstam()");
    return {dot(in, in), dot(p_i - p_f, p_i - p_f), dot(p_i - q_f, p_i - q_f)};
}

// Equal-mass elastic pair in the cm frame; theta endpoints are legal here,
// consumers with 1/t or 1/u poles reject them.
inline ScatterProcess cm_elastic(double s, double theta, double m,
                                 double e = default_coupling()) {
    if (m <= 0.0) throw domain_error("mass must be positive");
    if (s < 4.0 * m * m) throw domain_error("s below the 4m^2 threshold");
    if (theta < 0.0 || theta > pi) throw domain_error("theta outside [0, pi]");
    const double energy = std::sqrt(s) / 2.0;
    const double pmag = std::sqrt(s / 4.0 - m * m);
    ScatterProcess sp;
    sp.process = Process::moller;
    sp.frame = Frame::cm;
    sp.mass = m;
    sp.coupling = e;
    sp.p_in = {energy, 0.0, 0.0, pmag};
    sp.q_in = {energy, 0.0, 0.0, -pmag};
    sp.p_out = {energy, pmag * std::sin(theta), 0.0, pmag * std::cos(theta)};
    sp.q_out = {energy, -pmag * std::sin(theta), 0.0, -pmag * std::cos(theta)};
    validate(sp);
    return sp;
}

// Photon frequency after scattering through theta off a target at rest.
inline double compton_omega_f(double omega_i, double theta, double m) {
    return omega_i / (1.0 + (omega_i / m) * (1.0 - std::cos(theta)));
}

inline ScatterProcess compton_lab(double omega_i, double theta, double m,
                                  double e = default_coupling()) {
    if (omega_i <= 0.0) throw domain_error("omega_i must be positive");
    if (m <= 0.0) throw domain_error("mass must be positive");
    const double omega_f = compton_omega_f(omega_i, theta, m);
    ScatterProcess sp;
    sp.process = Process::compton;
    sp.frame = Frame::lab;
    sp.mass = m;
    sp.coupling = e;
    sp.p_in = {m, 0.0, 0.0, 0.0};
    sp.q_in = {omega_i, 0.0, 0.0, omega_i};
    sp.q_out = {omega_f, omega_f * std::sin(theta), 0.0, omega_f * std::cos(theta)};
    sp.p_out = sp.p_in + sp.q_in - sp.q_out;
    validate(sp);
    return sp;
}

// Elastic deflection off a static external field, lab frame.
inline ScatterProcess coulomb_elastic(double p_mag, double theta, double m,
                                      double e = default_coupling()) {
    if (p_mag <= 0.0) throw domain_error("momentum magnitude must be positive");
    if (m <= 0.0) throw domain_error("mass must be positive");
    const double energy = std::sqrt(m * m + p_mag * p_mag);
    ScatterProcess sp;
    sp.process = Process::coulomb;
    sp.frame = Frame::lab;
    sp.mass = m;
    sp.coupling = e;
    sp.p_in = {energy, 0.0, 0.0, p_mag};
    sp.p_out = {energy, p_mag * std::sin(theta), 0.0, p_mag * std::cos(theta)};
    validate(sp);
    return sp;
}

// Deterministic transverse pair: for k ∝ z the pair is (x-hat, y-hat);
// otherwise eps2 ∝ z × k-hat and eps1 = eps2 × k-hat (in-plane first).
inline std::array<PolarizationVector, 2> polarization_basis(FourVector k) {
    const double kn = spatial_norm(k);
    if (kn == 0.0) throw domain_error("photon momentum has zero spatial part");
    detail::require_null(k, "k");
    const double kx = k.x / kn, ky = k.y / kn, kz = k.z / kn;
    FourVector e1, e2;
    const double perp = std::hypot(kx, ky);
    if (perp < 1e-12) {
        e1 = {0.0, 1.0, 0.0, 0.0};
        e2 = {0.0, 0.0, 1.0, 0.0};
    } else {
        e2 = {0.0, -ky / perp, kx / perp, 0.0};
        e1 = {0.0, e2.y * kz - e2.z * ky, e2.z * kx - e2.x * kz, e2.x * ky - e2.y * kx};
    }
    return {make_polarization(e1, k), make_polarization(e2, k)};
}

}  // namespace sdkp
