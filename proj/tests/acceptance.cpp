// Acceptance gate: one check per release criterion, one PASS/FAIL line each,
// nonzero exit when anything fails.  Kept free of the unit-test framework so
// the output is exactly one line per criterion plus a summary.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sdkp/cross_sections.hpp"
#include "sdkp/distributions.hpp"

using namespace sdkp;

namespace {

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& note) {
    if (!pass) ++failures;
    std::printf("criterion %d %-24s %s%s%s\n", id, name, pass ? "PASS" : "FAIL",
                note.empty() ? "" : "  ", note.c_str());
}

template <typename Fn>
void criterion(int id, const char* name, Fn&& fn) {
    try {
        std::string note;
        const bool pass = fn(note);
        report(id, name, pass, note);
    } catch (const std::exception& ex) {
        report(id, name, false, std::string("exception: ") + ex.what());
    }
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1e", v);
    return buf;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

FourVector random_onshell(std::mt19937_64& rng, double m) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double e = m * (1.0 + 99.0 * u01(rng));
    const double p = std::sqrt(e * e - m * m);
    const double c = 2.0 * u01(rng) - 1.0;
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double phi = 2.0 * pi * u01(rng);
    return {e, p * s * std::cos(phi), p * s * std::sin(phi), p * c};
}

}  // namespace

int main() {
    const BetaSet b = build_beta_representation();
    std::mt19937_64 rng(97531ull);

    criterion(1, "dkp-algebra", [&](std::string& note) {
        const auto t0 = std::chrono::steady_clock::now();
        const double alg = algebra_residual(b);
        const bool exact = eta_residual(b) == 0.0 && conjugation_residual(b) == 0.0;
        const double ms = elapsed_ms(t0);
        note = "residual " + fmt(alg) + ", " + fmt(ms) + " ms";
        return alg < 1e-12 && exact && ms < 1000.0;
    });

    criterion(2, "trace-oracle", [&](std::string& note) {
        const auto t0 = std::chrono::steady_clock::now();
        std::uniform_int_distribution<int> pick_idx(0, 3);
        std::uniform_int_distribution<int> pick_len(0, 3);
        double worst_odd = 0.0, worst_even = 0.0;
        for (int n = 0; n < 500; ++n) {
            IndexString odd(static_cast<std::size_t>(1 + 2 * pick_len(rng)));
            for (int& i : odd) i = pick_idx(rng);
            worst_odd = std::max(worst_odd, std::abs(trace_product(beta_matrices(b, odd))));

            IndexString even(static_cast<std::size_t>(2 + 2 * pick_len(rng)));
            for (int& i : even) i = pick_idx(rng);
            const cplx brute = trace_product(beta_matrices(b, even));
            worst_even = std::max(worst_even, std::abs(brute - trace_identity(even)));
        }
        const double ms = elapsed_ms(t0);
        note = "odd " + fmt(worst_odd) + ", even " + fmt(worst_even) + ", " + fmt(ms) + " ms";
        return worst_odd < 1e-12 && worst_even < 1e-10 && ms < 10000.0;
    });

    criterion(3, "projector-oracle", [&](std::string& note) {
        const double masses[] = {0.5, 1.0, 2.0, 5.0};
        double worst = 0.0;
        for (int n = 0; n < 200; ++n) {
            const double m = masses[n % 4];
            const FourVector p = random_onshell(rng, m);
            const DkpSpinor u = solve_u(b, p, Frequency::minus, m);
            const Vec5 ub = bar(u);
            const Mat5 proj = projector(b, p, m);
            for (std::size_t i = 0; i < 5; ++i)
                for (std::size_t j = 0; j < 5; ++j)
                    worst = std::max(worst, std::abs(u.components[i] * ub[j] - proj(i, j)));
        }
        note = "entrywise " + fmt(worst);
        return worst < 1e-10;
    });

    criterion(4, "singular-orders", [&](std::string& note) {
        const DistributionDescriptor d0 = DistributionDescriptor::jordan_pauli(0.0);
        const DistributionDescriptor dm = DistributionDescriptor::jordan_pauli(1.0);
        const DistributionDescriptor s = DistributionDescriptor::dkp_commutator(1.0);
        const int w0 = singular_order(d0).omega;
        const int wm = singular_order(dm).omega;
        const int ws = singular_order(s).omega;
        const SplitResult r0 = split(d0), rm = split(dm), rs = split(s);
        note = "omega " + std::to_string(w0) + " " + std::to_string(wm) + " " +
               std::to_string(ws);
        return w0 == -2 && wm == -2 && ws == 0 && r0.free_constants == 0 &&
               rm.free_constants == 0 && rs.free_constants == 1 && rs.matrix_constant &&
               !r0.matrix_constant && !rm.matrix_constant &&
               rs.classification == SplitClass::singular &&
               r0.classification == SplitClass::regular &&
               rm.classification == SplitClass::regular;
    });

    criterion(5, "gauge-constant", [&](std::string& note) {
        for (double m : {1.0, 2.0})
            if ((fix_gauge_constant(m) * m - Mat5::identity()).max_abs() != 0.0) {
                note = "constant times mass not exactly the identity";
                return false;
            }
        std::uniform_real_distribution<double> comp(-3.0, 3.0);
        const double m = 1.0;
        double worst = 0.0;
        int kept = 0;
        while (kept < 200) {
            const FourVector q{comp(rng), comp(rng), comp(rng), comp(rng)};
            if (std::abs(dot(q, q) - m * m) < 0.1) continue;
            ++kept;
            const Mat5 target = (-1.0 / m) * slash(b, q);
            const Mat5 got =
                (slash(b, q) - m * Mat5::identity()) * dkp_feynman(b, q, m, Mat5::zero()).value;
            worst = std::max(worst, (got - target).max_abs() / target.max_abs());
        }
        note = "propagator identity " + fmt(worst);
        return worst < 1e-10;
    });

    criterion(6, "coulomb-closed-form", [&](std::string& note) {
        const double m = 1.0, e = default_coupling();
        double worst = 0.0;
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 10; ++j) {
                const double energy = m * (1.1 + (10.0 - 1.1) * i / 9.0);
                const double theta = (10.0 + 160.0 * j / 9.0) * pi / 180.0;
                const double p = std::sqrt(energy * energy - m * m);
                const DcsPair v = coulomb_dcs(b, 1.0, energy, p, theta, e);
                worst = std::max(worst, detail::rel_spread(v.from_amplitude, v.closed_form));
            }
        note = "spread " + fmt(worst);
        return worst < 1e-8;
    });

    criterion(7, "moller-closed-form", [&](std::string& note) {
        const double m = 1.0;
        double worst = 0.0;
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 10; ++j) {
                const double s = m * m * (5.0 + 95.0 * i / 9.0);
                const double theta = (10.0 + 160.0 * j / 9.0) * pi / 180.0;
                const DcsPair v = moller_dcs_cm(b, s, theta, default_alpha, m);
                worst = std::max(worst, detail::rel_spread(v.from_amplitude, v.closed_form));
            }
        const double s_big = 1e6 * m * m;
        const DcsPair spot = moller_dcs_cm(b, s_big, pi / 2.0, default_alpha, m);
        const double target = 9.0 * default_alpha * default_alpha / s_big;
        const double spot_err = std::abs(spot.from_amplitude - target) / target;
        note = "spread " + fmt(worst) + ", 9a^2/s " + fmt(spot_err);
        return worst < 1e-8 && spot_err < 1e-4;
    });

    criterion(8, "compton-seagull", [&](std::string& note) {
        const double m = 1.0, alpha = default_alpha;
        const Mat5 c = fix_gauge_constant(m);
        double worst_pole = 0.0, worst_cross = 0.0, worst_closed = 0.0;
        int checked = 0;
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                const double omega = 0.1 * std::pow(50.0, i / 7.0);
                const double theta = 0.1 + (pi - 0.2) * j / 7.0;
                const ScatterProcess proc = compton_lab(omega, theta, m);
                const auto basis_i = polarization_basis(proc.q_in);
                const auto basis_f = polarization_basis(proc.q_out);
                const ComptonAmplitude amp =
                    compton_msq(b, proc, basis_i[0], basis_f[0], c);
                if (amp.msq_a > 1e-20) {
                    ++checked;
                    worst_pole = std::max(worst_pole, amp.msq_b / amp.msq_a);
                    worst_cross = std::max(worst_cross, std::abs(amp.cross) / amp.msq_a);
                }
                const DcsPair v = compton_dcs_lab(b, omega, theta, m, 0, 0, alpha);
                worst_closed =
                    std::max(worst_closed, detail::rel_spread(v.from_amplitude, v.closed_form));
            }
        // Low-energy limit: the fractional deviation from the pointlike
        // scattering value grows like 2(omega/m)(1 - cos theta), so the
        // 1e-4 budget at omega = 1e-4 m constrains angles up to 45 degrees.
        double worst_thomson = 0.0;
        for (double theta_deg : {5.0, 15.0, 30.0, 45.0}) {
            const double theta = theta_deg * pi / 180.0;
            const double got = compton_dcs_unpolarized(b, 1e-4 * m, theta, m, alpha);
            const double want = alpha * alpha / (2.0 * m * m) *
                                (1.0 + std::cos(theta) * std::cos(theta));
            worst_thomson = std::max(worst_thomson, std::abs(got - want) / want);
        }
        note = "pole " + fmt(worst_pole) + ", cross " + fmt(worst_cross) + ", closed " +
               fmt(worst_closed) + ", low-energy " + fmt(worst_thomson) + ", points " +
               std::to_string(checked);
        return checked >= 50 && worst_pole < 1e-10 && worst_cross < 1e-10 &&
               worst_closed < 1e-8 && worst_thomson < 1e-4;
    });

    criterion(9, "cli-determinism", [&](std::string& note) {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() /
                             ("sdkp_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        const auto run = [&](const fs::path& out) {
            const std::string cmd = "\"" SDKP_CLI_BIN
                                    "\" xsec moller --s 10 --theta-min 10 --theta-max 170 "
                                    "--steps 33 --out \"" +
                                    out.string() + "\" > /dev/null 2>&1";
            const int rc = std::system(cmd.c_str());
            return WIFEXITED(rc) && WEXITSTATUS(rc) == 0;
        };
        const auto slurp = [](const fs::path& p) {
            std::ifstream in(p, std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        };
        if (!run(dir / "a.csv") || !run(dir / "b.csv")) {
            note = "cli invocation failed";
            return false;
        }
        const std::string a = slurp(dir / "a.csv"), bb = slurp(dir / "b.csv");
        note = "bytes " + std::to_string(a.size());
        return !a.empty() && a == bb;
    });

    std::printf("acceptance: %s\n", failures == 0 ? "all criteria passed"
                                                  : "FAILURES detected");
    return failures == 0 ? 0 : 1;
}
