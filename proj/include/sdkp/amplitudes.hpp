#pragma once
// Squared matrix elements for the three supported processes.  Every process
// is evaluated along independent pipelines (explicit spinor/matrix
// contraction against reduced trace or closed forms) and the pipelines are
// cross-checked at runtime before a value is returned.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sdkp/dkp_algebra.hpp"
#include "sdkp/distributions.hpp"
#include "sdkp/errors.hpp"
#include "sdkp/four_vector.hpp"
#include "sdkp/kinematics.hpp"
#include "sdkp/matrix.hpp"
#include "sdkp/spinors.hpp"

namespace sdkp {

enum class Pipeline { spinor, closed_form };

// One amplitude M for a fixed polarization/kinematic configuration.
struct AmplitudeValue {
    cplx value;
    Pipeline pipeline;
};

inline AmplitudeValue make_amplitude(cplx v, Pipeline p) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw error("amplitude value is not finite");
    return {v, p};
}

// --- external static field -------------------------------------------------

// One sampled Fourier component of a static external field: the spatial
// momentum transfer (time slot ignored) and the four covariant components
// A_mu at that momentum.
struct FieldSample {
    FourVector q;
    std::array<cplx, 4> a;
};

// Fourier profile A_mu over spatial momentum transfer.  Either analytic
// (pointlike Coulomb source of strength Z*e, only the time component
// nonzero) or a finite sample table.  A profile describing a real field
// obeys A_mu(-q) = conj(A_mu(q)); tabulated profiles are validated against
// that relation on construction and missing partners are filled in by it.
struct ExternalFieldProfile {
    bool analytic = true;
    double strength = 0.0;
    std::vector<FieldSample> samples;

    std::array<cplx, 4> operator()(FourVector q) const {
        if (analytic) {
            const double qn2 = spatial_norm2(q);
            if (qn2 == 0.0) throw domain_error("field queried at zero momentum transfer");
            return {cplx(std::sqrt(2.0 / pi) * strength / qn2), cplx(0.0), cplx(0.0), cplx(0.0)};
        }
        const double tol = 1e-9 * std::max(1.0, max_component(q));
        for (const FieldSample& s : samples) {
            if (std::abs(s.q.x - q.x) <= tol && std::abs(s.q.y - q.y) <= tol &&
                std::abs(s.q.z - q.z) <= tol)
                return s.a;
        }
        throw domain_error("no field sample at the requested momentum transfer");
    }
};

inline ExternalFieldProfile coulomb_field(double Z, double e) {
    ExternalFieldProfile f;
    f.analytic = true;
    f.strength = Z * e;
    return f;
}

// Build a tabulated profile: reject samples violating the real-field
// conjugation relation, append the mirror sample where it is absent.
inline ExternalFieldProfile make_field_table(std::vector<FieldSample> samples) {
    const auto matches = [](const FourVector& a, const FourVector& b) {
        const double tol = 1e-9 * std::max({1.0, max_component(a), max_component(b)});
        return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol &&
               std::abs(a.z - b.z) <= tol;
    };
    const std::size_t given = samples.size();
    for (std::size_t i = 0; i < given; ++i) {
        const FourVector mq = {0.0, -samples[i].q.x, -samples[i].q.y, -samples[i].q.z};
        bool found = false;
        for (std::size_t j = 0; j < samples.size(); ++j) {
            if (i == j && spatial_norm2(samples[i].q) != 0.0) continue;
            if (!matches(samples[j].q, mq)) continue;
            found = true;
            for (std::size_t mu = 0; mu < 4; ++mu) {
                const cplx want = std::conj(samples[i].a[mu]);
                if (std::abs(samples[j].a[mu] - want) >
                    1e-10 * std::max(1.0, std::abs(want)))
                    throw error("field table violates A_mu(-q) = conj(A_mu(q))");
            }
        }
        if (!found) samples.push_back({mq, {std::conj(samples[i].a[0]), std::conj(samples[i].a[1]),
                                            std::conj(samples[i].a[2]), std::conj(samples[i].a[3])}});
    }
    ExternalFieldProfile f;
    f.analytic = false;
    f.samples = std::move(samples);
    return f;
}

// Text table, one sample per line: qx qy qz then four re/im pairs,
// whitespace separated.  Blank lines and lines starting with '#' skipped.
inline ExternalFieldProfile load_field_profile(std::istream& in) {
    std::vector<FieldSample> samples;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream row(line);
        double v[11];
        for (double& x : v) {
            if (!(row >> x))
                throw parse_error(
                    "field table line needs 11 numeric fields: qx qy qz then four re/im pairs",
                    lineno);
        }
        std::string extra;
        if (row >> extra)
            throw parse_error("field table line has trailing fields", lineno);
        FieldSample s;
        s.q = {0.0, v[0], v[1], v[2]};
        for (std::size_t mu = 0; mu < 4; ++mu) s.a[mu] = cplx(v[3 + 2 * mu], v[4 + 2 * mu]);
        samples.push_back(s);
    }
    if (samples.empty()) throw parse_error("field table has no samples", lineno);
    return make_field_table(std::move(samples));
}

inline ExternalFieldProfile load_field_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open field table: " + path);
    return load_field_profile(in);
}

// --- shared helpers --------------------------------------------------------

namespace detail {

inline void check_agree(double a, double b, double rel_tol, const char* what) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    if (std::abs(a - b) > rel_tol * scale)
        throw mismatch_error(std::string(what) + " disagree: " + std::to_string(a) +
                             " vs " + std::to_string(b));
}

// slash(p) (slash(p) + m), the projector numerator; used by the trace
// pipelines so the trace chains carry explicit 5x5 products only.
inline Mat5 onshell_numerator(const BetaSet& b, const FourVector& p, double m) {
    const Mat5 s = slash(b, p);
    return s * (s + m * Mat5::identity());
}

}  // namespace detail

// --- scattering off a static external field --------------------------------

// |M|^2 for elastic deflection off an external field, with
// M = (i e / sqrt(2 pi)) ubar(p_f) beta^mu u(p_i) A_mu(p_f - p_i).
// Evaluated twice: spinor contraction with solve_u, and the trace form built
// from projector numerators.  The two must agree to 1e-10 relative; the
// spinor value is returned.
inline double coulomb_msq(const BetaSet& b, const ScatterProcess& proc,
                          const ExternalFieldProfile& field) {
    if (proc.process != Process::coulomb)
        throw domain_error("coulomb_msq needs an external-field process");
    validate(proc);
    const double m = proc.mass;
    const double e = proc.coupling;

    const FourVector q = proc.p_out - proc.p_in;
    const std::array<cplx, 4> a = field({0.0, q.x, q.y, q.z});

    // Spinor pipeline.
    const DkpSpinor ui = solve_u(b, proc.p_in, Frequency::minus, m);
    const DkpSpinor uf = solve_u(b, proc.p_out, Frequency::minus, m);
    const Vec5 ubar_f = bar(uf);
    cplx contraction(0.0);
    for (std::size_t mu = 0; mu < 4; ++mu)
        contraction += bilinear(ubar_f, b.beta[mu], ui.components) * a[mu];
    const AmplitudeValue amp =
        make_amplitude(cplx(0.0, e / std::sqrt(2.0 * pi)) * contraction, Pipeline::spinor);
    const double msq_spinor = std::norm(amp.value);

    // Trace pipeline: |sum_mu A_mu ubar beta^mu u|^2 =
    // sum_{mu,nu} A_mu conj(A_nu) Tr[beta^mu N(p_i) beta^nu N(p_f)] / (4 m^2 E_i E_f).
    const Mat5 ni = detail::onshell_numerator(b, proc.p_in, m);
    const Mat5 nf = detail::onshell_numerator(b, proc.p_out, m);
    cplx quad(0.0);
    for (std::size_t mu = 0; mu < 4; ++mu) {
        if (a[mu] == cplx(0.0)) continue;
        for (std::size_t nu = 0; nu < 4; ++nu) {
            if (a[nu] == cplx(0.0)) continue;
            quad += a[mu] * std::conj(a[nu]) * (b.beta[mu] * ni * b.beta[nu] * nf).trace();
        }
    }
    const double msq_trace = (e * e / (2.0 * pi)) * quad.real() /
                             (4.0 * m * m * proc.p_in.t * proc.p_out.t);

    detail::check_agree(msq_spinor, msq_trace, 1e-10, "external-field pipelines");
    return msq_spinor;
}

// --- identical-scalar pair scattering --------------------------------------

// |M|^2 for equal-mass scalar pair scattering in the cm frame.  Three
// routes: (a) explicit spinor bilinears through the photon propagator for
// both channels, (b) the four-term trace expression over metric-contracted
// beta chains, (c) the closed form
//   (e^4/(2 pi)^4) (1/16E^4) |(s-t)/u + (s-u)/t|^2.
// Pairwise agreement to 1e-8 relative is enforced; the spinor value is
// returned.  Angular endpoints (t = 0 or u = 0) are rejected.
inline double moller_msq(const BetaSet& b, const ScatterProcess& proc) {
    if (proc.process != Process::moller)
        throw domain_error("moller_msq needs a pair-scattering process");
    if (proc.frame != Frame::cm) throw domain_error("moller_msq needs cm-frame kinematics");
    validate(proc);
    const FourVector total = proc.p_in + proc.q_in;
    if (std::max({std::abs(total.x), std::abs(total.y), std::abs(total.z)}) >
        1e-9 * std::max(1.0, total.t))
        throw domain_error("moller_msq needs cm-frame kinematics");

    const double m = proc.mass;
    const double e = proc.coupling;
    const MandelstamSet ms = mandelstam(proc.p_in, proc.q_in, proc.p_out, proc.q_out);
    const double pole_tol = pole_guard_scale * std::max(1.0, std::abs(ms.s));
    if (std::abs(ms.t) < pole_tol || std::abs(ms.u) < pole_tol)
        throw domain_error("angular endpoint: photon pole at t = 0 or u = 0");

    const double prefactor = std::pow(e, 4) / std::pow(2.0 * pi, 4);

    // (a) spinor pipeline.
    const DkpSpinor u_pi = solve_u(b, proc.p_in, Frequency::minus, m);
    const DkpSpinor u_qi = solve_u(b, proc.q_in, Frequency::minus, m);
    const Vec5 ubar_pf = bar(solve_u(b, proc.p_out, Frequency::minus, m));
    const Vec5 ubar_qf = bar(solve_u(b, proc.q_out, Frequency::minus, m));
    cplx bt(0.0), bu(0.0);
    for (std::size_t mu = 0; mu < 4; ++mu) {
        const double g = metric(mu, mu);
        bt += g * bilinear(ubar_pf, b.beta[mu], u_pi.components) *
              bilinear(ubar_qf, b.beta[mu], u_qi.components);
        bu += g * bilinear(ubar_qf, b.beta[mu], u_pi.components) *
              bilinear(ubar_pf, b.beta[mu], u_qi.components);
    }
    const cplx reduced = bt * photon_feynman(proc.p_in - proc.p_out) +
                         bu * photon_feynman(proc.p_in - proc.q_out);
    const AmplitudeValue amp = make_amplitude(reduced, Pipeline::spinor);
    const double msq_spinor = prefactor * std::norm(amp.value);

    // (b) trace pipeline: squared direct and exchange channels as products
    // of two four-factor traces, interference as one eight-factor trace.
    const Mat5 n_pi = detail::onshell_numerator(b, proc.p_in, m);
    const Mat5 n_qi = detail::onshell_numerator(b, proc.q_in, m);
    const Mat5 n_pf = detail::onshell_numerator(b, proc.p_out, m);
    const Mat5 n_qf = detail::onshell_numerator(b, proc.q_out, m);
    cplx tt(0.0), uu(0.0), cross(0.0);
    for (std::size_t mu = 0; mu < 4; ++mu) {
        for (std::size_t nu = 0; nu < 4; ++nu) {
            const double g = metric(mu, mu) * metric(nu, nu);
            const Mat5& bm = b.beta[mu];
            const Mat5& bn = b.beta[nu];
            tt += g * (bm * n_pi * bn * n_pf).trace() * (bm * n_qi * bn * n_qf).trace();
            uu += g * (bm * n_pi * bn * n_qf).trace() * (bm * n_qi * bn * n_pf).trace();
            cross += g * (bm * n_pi * bn * n_qf * bm * n_qi * bn * n_pf).trace();
        }
    }
    const double norm4 =
        16.0 * std::pow(m, 4) * proc.p_in.t * proc.q_in.t * proc.p_out.t * proc.q_out.t;
    const double msq_trace =
        prefactor *
        (tt / (ms.t * ms.t) + uu / (ms.u * ms.u) + 2.0 * cross / (ms.t * ms.u)).real() / norm4;

    // (c) closed form.
    const double energy = proc.p_in.t;
    const double ratio_sum = (ms.s - ms.t) / ms.u + (ms.s - ms.u) / ms.t;
    const double msq_closed =
        prefactor / (16.0 * std::pow(energy, 4)) * ratio_sum * ratio_sum;

    detail::check_agree(msq_spinor, msq_trace, 1e-8, "pair-scattering pipelines (spinor vs trace)");
    detail::check_agree(msq_spinor, msq_closed, 1e-8,
                        "pair-scattering pipelines (spinor vs closed form)");
    return msq_spinor;
}

// --- photon-scalar scattering ----------------------------------------------

// Squared amplitude split for photon-scalar scattering at fixed linear
// polarizations: the seagull piece M_a (carrying the constant c of the
// gauge-fixed propagator), the propagator piece M_b, their interference,
// and the total.
struct ComptonAmplitude {
    AmplitudeValue amp_a;
    AmplitudeValue amp_b;
    double msq_a = 0.0;
    double msq_b = 0.0;
    double cross = 0.0;
    double msq = 0.0;
};

// M_a = (i e^2 / ((2 pi)^2 sqrt(4 w_i w_f))) ubar(p_f)[eslash_f c eslash_i +
//       eslash_i c eslash_f]u(p_i),
// M_b = same prefactor with c replaced by the pole part of the gauge-fixed
//       propagator at p_i - k_f (ordering eslash_i ... eslash_f) and at
//       p_i + k_i (ordering eslash_f ... eslash_i).
// The propagator denominators are cross-checked against their reductions
// (p_i - k_f)^2 - m^2 = -2 m w_f and (p_i + k_i)^2 - m^2 = +2 m w_i.  With
// the canonical c = identity/m the total is additionally checked against the
// closed form e^4 (eps_i.eps_f)^2 / (2^6 pi^4 w_i w_f m E_f).
// c must be a scalar multiple of the identity (0 is allowed and isolates the
// propagator piece, which vanishes at these kinematics).
inline ComptonAmplitude compton_msq(const BetaSet& b, const ScatterProcess& proc,
                                    const PolarizationVector& eps_i,
                                    const PolarizationVector& eps_f, const Mat5& c) {
    if (proc.process != Process::compton)
        throw domain_error("compton_msq needs a photon-scalar process");
    if (proc.frame != Frame::lab)
        throw domain_error("compton_msq needs lab-frame kinematics");
    validate(proc);
    const double m = proc.mass;
    if (std::max({std::abs(proc.p_in.x), std::abs(proc.p_in.y), std::abs(proc.p_in.z)}) >
        1e-9 * m)
        throw domain_error("compton_msq needs the scalar initially at rest");

    const auto leg_matches = [](const FourVector& a, const FourVector& k) {
        const double tol = 1e-9 * std::max({1.0, max_component(a), max_component(k)});
        return max_component(a - k) <= tol;
    };
    if (!leg_matches(eps_i.k, proc.q_in))
        throw domain_error("eps_i is not attached to the incoming photon leg");
    if (!leg_matches(eps_f.k, proc.q_out))
        throw domain_error("eps_f is not attached to the outgoing photon leg");

    const cplx c00 = c(0, 0);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            const cplx want = (i == j) ? c00 : cplx(0.0);
            if (std::abs(c(i, j) - want) > 1e-12 * std::max(1.0, std::abs(c00)))
                throw domain_error("seagull constant must be a scalar multiple of the identity");
        }

    const double w_i = proc.q_in.t;
    const double w_f = proc.q_out.t;
    const double e_f = proc.p_out.t;
    const double e = proc.coupling;

    // Denominator reductions, checked against direct four-vector arithmetic.
    const FourVector q_after_emit = proc.p_in - proc.q_out;
    const FourVector q_after_absorb = proc.p_in + proc.q_in;
    detail::check_agree(dot(q_after_emit, q_after_emit) - m * m, -2.0 * m * w_f, 1e-10,
                        "emission-first propagator denominators");
    detail::check_agree(dot(q_after_absorb, q_after_absorb) - m * m, 2.0 * m * w_i, 1e-10,
                        "absorption-first propagator denominators");

    const DkpSpinor ui = solve_u(b, proc.p_in, Frequency::minus, m);
    const DkpSpinor uf = solve_u(b, proc.p_out, Frequency::minus, m);
    const Vec5 ubar_f = bar(uf);
    const Mat5 se_i = slash(b, eps_i.eps);
    const Mat5 se_f = slash(b, eps_f.eps);

    const cplx pref = cplx(0.0, e * e) /
                      (std::pow(2.0 * pi, 2) * std::sqrt(4.0 * w_i * w_f));

    const Mat5 mat_a = se_f * c * se_i + se_i * c * se_f;
    const AmplitudeValue amp_a =
        make_amplitude(pref * bilinear(ubar_f, mat_a, ui.components), Pipeline::spinor);

    const Mat5 zero = Mat5::zero();
    const Mat5 prop_emit = dkp_feynman(b, q_after_emit, m, zero).value;
    const Mat5 prop_absorb = dkp_feynman(b, q_after_absorb, m, zero).value;
    const Mat5 mat_b = se_i * prop_emit * se_f + se_f * prop_absorb * se_i;
    const AmplitudeValue amp_b =
        make_amplitude(pref * bilinear(ubar_f, mat_b, ui.components), Pipeline::spinor);

    ComptonAmplitude out;
    out.amp_a = amp_a;
    out.amp_b = amp_b;
    out.msq_a = std::norm(amp_a.value);
    out.msq_b = std::norm(amp_b.value);
    out.cross = 2.0 * (std::conj(amp_a.value) * amp_b.value).real();
    out.msq = std::norm(amp_a.value + amp_b.value);

    const bool canonical = std::abs(c00 - cplx(1.0 / m)) <= 1e-12 / m;
    if (canonical) {
        const double eps_dot = dot(eps_i.eps, eps_f.eps);
        const double closed = std::pow(e, 4) * eps_dot * eps_dot /
                              (64.0 * std::pow(pi, 4) * w_i * w_f * m * e_f);
        const double scale = std::max(std::abs(out.msq), std::abs(closed));
        if (scale > 1e-280 && std::abs(out.msq - closed) > 1e-8 * scale)
            throw mismatch_error("photon-scalar pipelines disagree: spinor " +
                                 std::to_string(out.msq) + " vs closed form " +
                                 std::to_string(closed));
    }
    return out;
}

}  // namespace sdkp
