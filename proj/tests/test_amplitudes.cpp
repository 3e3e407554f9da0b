#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "sdkp/amplitudes.hpp"

using namespace sdkp;

namespace {

const BetaSet& beta_set() {
    static const BetaSet b = build_beta_representation();
    return b;
}

double dcs_free_msq_coulomb(double Z, double e, double p_mag, double theta) {
    // Reference squared amplitude for the pointlike static source:
    // Z^2 e^4 / (16 pi^2 |p|^4 sin^4(theta/2)).
    const double s2 = std::sin(theta / 2.0);
    return Z * Z * std::pow(e, 4) / (16.0 * pi * pi * std::pow(p_mag, 4) * std::pow(s2, 4));
}

}  // namespace

TEST_CASE("analytic pointlike field profile") {
    const ExternalFieldProfile f = coulomb_field(1.0, 1.0);
    const auto a1 = f({0.0, 1.0, 0.0, 0.0});
    CHECK(a1[0].real() == Catch::Approx(std::sqrt(2.0 / pi)).epsilon(1e-14));
    CHECK(a1[0].imag() == 0.0);
    CHECK(a1[1] == cplx(0.0));
    CHECK(a1[2] == cplx(0.0));
    CHECK(a1[3] == cplx(0.0));

    const ExternalFieldProfile f2 = coulomb_field(2.0, 1.0);
    const auto a2 = f2({0.0, 0.0, 2.0, 0.0});
    CHECK(a2[0].real() == Catch::Approx(std::sqrt(2.0 / pi) / 2.0).epsilon(1e-14));

    CHECK_THROWS_AS(f({0.0, 0.0, 0.0, 0.0}), domain_error);
}

TEST_CASE("field table parsing and conjugation closure") {
    SECTION("round trip with explicit mirror samples") {
        std::istringstream in(
            "# static field samples\n"
            "\n"
            "1 0 0  0.5 0.25  0 0  0 0  0 0\n"
            "-1 0 0  0.5 -0.25  0 0  0 0  0 0\n");
        const ExternalFieldProfile f = load_field_profile(in);
        const auto a = f({0.0, 1.0, 0.0, 0.0});
        CHECK(a[0] == cplx(0.5, 0.25));
        const auto am = f({0.0, -1.0, 0.0, 0.0});
        CHECK(am[0] == cplx(0.5, -0.25));
    }
    SECTION("missing mirror sample is filled in by conjugation") {
        std::istringstream in("0.25 0 0  0.5 0.25  0 0.125  0 0  0 0\n");
        const ExternalFieldProfile f = load_field_profile(in);
        const auto am = f({0.0, -0.25, 0.0, 0.0});
        CHECK(am[0] == cplx(0.5, -0.25));
        CHECK(am[1] == cplx(0.0, -0.125));
    }
    SECTION("conjugation violation is rejected") {
        std::istringstream in(
            "1 0 0  0.5 0.25  0 0  0 0  0 0\n"
            "-1 0 0  0.5 0.25  0 0  0 0  0 0\n");
        CHECK_THROWS_AS(load_field_profile(in), error);
    }
    SECTION("zero-momentum sample must be real") {
        std::istringstream in("0 0 0  1.0 0.5  0 0  0 0  0 0\n");
        CHECK_THROWS_AS(load_field_profile(in), error);
        std::istringstream ok("0 0 0  1.0 0  0 0  0 0  0 0\n");
        const ExternalFieldProfile f = load_field_profile(ok);
        CHECK(f({0.0, 0.0, 0.0, 0.0})[0] == cplx(1.0));
    }
    SECTION("malformed rows carry the line number") {
        std::istringstream in("# header\n1 0 0  0.5 0  0 0  0 0  0 bad\n");
        try {
            load_field_profile(in);
            FAIL("expected a parse error");
        } catch (const parse_error& e) {
            CHECK(e.position == 2);
        }
        std::istringstream extra("1 0 0  0.5 0  0 0  0 0  0 0  99\n");
        CHECK_THROWS_AS(load_field_profile(extra), parse_error);
        std::istringstream empty("# nothing\n");
        CHECK_THROWS_AS(load_field_profile(empty), parse_error);
    }
    SECTION("unknown momentum transfer is rejected at query time") {
        std::istringstream in("1 0 0  0.5 0  0 0  0 0  0 0\n");
        const ExternalFieldProfile f = load_field_profile(in);
        CHECK_THROWS_AS(f({0.0, 0.0, 3.0, 0.0}), domain_error);
    }
    SECTION("missing file") {
        CHECK_THROWS_AS(load_field_profile(std::string("/nonexistent/field.tbl")), io_error);
    }
}

TEST_CASE("external-field squared amplitude") {
    const BetaSet& b = beta_set();
    const double Z = 1.0, e = 1.0, m = 1.0;

    SECTION("matches the reduced closed form on a grid") {
        for (double p_mag : {0.25, 1.0, 4.0}) {
            for (double theta : {0.15, 0.7, pi / 2, 2.4, 3.0}) {
                const ScatterProcess proc = coulomb_elastic(p_mag, theta, m, e);
                const double got = coulomb_msq(b, proc, coulomb_field(Z, e));
                const double want = dcs_free_msq_coulomb(Z, e, p_mag, theta);
                CHECK(got == Catch::Approx(want).epsilon(1e-10));
            }
        }
    }
    SECTION("inverse quartic growth toward the forward direction") {
        const ExternalFieldProfile f = coulomb_field(Z, e);
        double prev = 0.0;
        for (double theta : {0.4, 0.2, 0.1, 0.05}) {
            const double v = coulomb_msq(b, coulomb_elastic(1.0, theta, m, e), f);
            CHECK(v > prev);
            const double scaled = v * std::pow(std::sin(theta / 2.0), 4);
            CHECK(scaled == Catch::Approx(std::pow(e, 4) / (16.0 * pi * pi)).epsilon(1e-10));
            prev = v;
        }
    }
    SECTION("no forward/backward symmetry") {
        const ExternalFieldProfile f = coulomb_field(Z, e);
        const double a = coulomb_msq(b, coulomb_elastic(1.0, pi / 4, m, e), f);
        const double c = coulomb_msq(b, coulomb_elastic(1.0, 3 * pi / 4, m, e), f);
        CHECK(a > 10.0 * c);
    }
    SECTION("tabulated profile reproduces the analytic one") {
        const ScatterProcess proc = coulomb_elastic(1.0, pi / 2, m, e);
        const FourVector q = proc.p_out - proc.p_in;
        FieldSample s;
        s.q = {0.0, q.x, q.y, q.z};
        s.a = {cplx(std::sqrt(2.0 / pi) * Z * e / spatial_norm2(q)), cplx(0.0), cplx(0.0),
               cplx(0.0)};
        const ExternalFieldProfile table = make_field_table({s});
        const double via_table = coulomb_msq(b, proc, table);
        const double via_analytic = coulomb_msq(b, proc, coulomb_field(Z, e));
        CHECK(via_table == Catch::Approx(via_analytic).epsilon(1e-12));
    }
    SECTION("slow projectile: current trace is carried by the time slots") {
        const double p_mag = 1e-3 * m;
        const ScatterProcess proc = coulomb_elastic(p_mag, pi / 3, m, e);
        const Mat5 ni = slash(b, proc.p_in) * (slash(b, proc.p_in) + m * Mat5::identity());
        const Mat5 nf = slash(b, proc.p_out) * (slash(b, proc.p_out) + m * Mat5::identity());
        cplx bracket[4][4];
        for (std::size_t mu = 0; mu < 4; ++mu)
            for (std::size_t nu = 0; nu < 4; ++nu)
                bracket[mu][nu] = trace_product({nf, b.beta[mu], ni, b.beta[nu]});
        const double b00 = bracket[0][0].real();
        CHECK(b00 / (m * m) ==
              Catch::Approx(4.0 * proc.p_in.t * proc.p_out.t).epsilon(1e-10));
        double max_spatial = 0.0;
        for (std::size_t j = 1; j < 4; ++j)
            for (std::size_t k = 1; k < 4; ++k)
                max_spatial = std::max(max_spatial, std::abs(bracket[j][k]));
        CHECK(max_spatial < 1e-5 * b00);
    }
    SECTION("rejects a pair-scattering process") {
        const ScatterProcess wrong = cm_elastic(10.0, pi / 3, m, e);
        CHECK_THROWS_AS(coulomb_msq(b, wrong, coulomb_field(Z, e)), domain_error);
    }
}

TEST_CASE("pair-scattering squared amplitude") {
    const BetaSet& b = beta_set();
    const double m = 1.0;
    const double e = default_coupling();

    SECTION("ultra-relativistic right angle approaches 36 units") {
        const double s = 1e8;
        const ScatterProcess proc = cm_elastic(s, pi / 2, m, e);
        const double energy4 = std::pow(s / 4.0, 2);
        const double want = std::pow(e, 4) / std::pow(2.0 * pi, 4) * 36.0 / (16.0 * energy4);
        CHECK(moller_msq(b, proc) == Catch::Approx(want).epsilon(2e-7));
    }
    SECTION("symmetric under theta -> pi - theta") {
        for (double theta : {0.3, 0.9, 1.2}) {
            const double a = moller_msq(b, cm_elastic(12.0, theta, m, e));
            const double c = moller_msq(b, cm_elastic(12.0, pi - theta, m, e));
            CHECK(a == Catch::Approx(c).epsilon(1e-10));
        }
    }
    SECTION("symmetric under exchanging the outgoing legs") {
        ScatterProcess proc = cm_elastic(17.5, 0.8, m, e);
        const double direct = moller_msq(b, proc);
        std::swap(proc.p_out, proc.q_out);
        CHECK(moller_msq(b, proc) == Catch::Approx(direct).epsilon(1e-10));
    }
    SECTION("pipelines agree across a 20x20 grid") {
        for (int i = 0; i < 20; ++i) {
            const double s = 4.5 * m * m * std::pow(100.0 / 4.5, i / 19.0);
            for (int j = 0; j < 20; ++j) {
                const double theta = (5.0 + 170.0 * j / 19.0) * pi / 180.0;
                const double v = moller_msq(b, cm_elastic(s, theta, m, e));
                CHECK(v > 0.0);
                CHECK(std::isfinite(v));
            }
        }
    }
    SECTION("angular endpoints are rejected") {
        CHECK_THROWS_AS(moller_msq(b, cm_elastic(10.0, 0.0, m, e)), domain_error);
        CHECK_THROWS_AS(moller_msq(b, cm_elastic(10.0, pi, m, e)), domain_error);
    }
    SECTION("rejects non-cm input") {
        ScatterProcess proc = cm_elastic(10.0, pi / 3, m, e);
        proc.frame = Frame::lab;
        CHECK_THROWS_AS(moller_msq(b, proc), domain_error);
    }
}

TEST_CASE("sandwich contraction identity") {
    // slash(a) slash(b) slash(a) = (a.b) slash(a): the workhorse behind the
    // vanishing trace screens below.
    const BetaSet& b = beta_set();
    std::mt19937_64 rng(517);
    std::uniform_real_distribution<double> comp(-2.0, 2.0);
    for (int n = 0; n < 50; ++n) {
        const FourVector a = {comp(rng), comp(rng), comp(rng), comp(rng)};
        const FourVector c = {comp(rng), comp(rng), comp(rng), comp(rng)};
        const Mat5 sa = slash(b, a);
        const Mat5 lhs = sa * slash(b, c) * sa;
        const Mat5 rhs = sa * cplx(dot(a, c));
        CHECK((lhs - rhs).max_abs() < 1e-12 * std::max(1.0, rhs.max_abs()));
    }
}

TEST_CASE("photon-scalar squared amplitude") {
    const BetaSet& b = beta_set();
    const double m = 1.0;
    const double e = default_coupling();
    const Mat5 c = fix_gauge_constant(m);

    SECTION("propagator piece and interference vanish; seagull matches the closed form") {
        int checked = 0;
        for (int i = 0; i < 20; ++i) {
            const double w_i = 0.1 * std::pow(50.0, i / 19.0);
            for (int j = 0; j < 20; ++j) {
                const double theta = 0.05 + (pi - 0.1) * j / 19.0;
                const ScatterProcess proc = compton_lab(w_i, theta, m, e);
                const auto basis_i = polarization_basis(proc.q_in);
                const auto basis_f = polarization_basis(proc.q_out);
                for (const auto& ei : basis_i) {
                    for (const auto& ef : basis_f) {
                        const ComptonAmplitude amp = compton_msq(b, proc, ei, ef, c);
                        const double eps_dot = dot(ei.eps, ef.eps);
                        const double closed = std::pow(e, 4) * eps_dot * eps_dot /
                                              (64.0 * std::pow(pi, 4) * w_i * proc.q_out.t *
                                               m * proc.p_out.t);
                        if (amp.msq_a > 0.0) {
                            CHECK(amp.msq_b / amp.msq_a < 1e-10);
                            CHECK(std::abs(amp.cross) / amp.msq_a < 1e-10);
                            CHECK(amp.msq == Catch::Approx(closed).epsilon(1e-8));
                            ++checked;
                        } else {
                            CHECK(amp.msq <= 1e-30);
                        }
                    }
                }
            }
        }
        CHECK(checked >= 50);
    }
    SECTION("orthogonal polarizations kill the amplitude") {
        const ScatterProcess proc = compton_lab(1.0, pi / 3, m, e);
        const auto basis_i = polarization_basis(proc.q_in);
        const auto basis_f = polarization_basis(proc.q_out);
        // In-plane with out-of-plane: spatial dot is exactly zero.
        const ComptonAmplitude amp = compton_msq(b, proc, basis_i[0], basis_f[1], c);
        CHECK(std::abs(dot(basis_i[0].eps, basis_f[1].eps)) < 1e-14);
        CHECK(amp.msq < 1e-12);
    }
    SECTION("removing the contact constant removes the whole amplitude") {
        const ScatterProcess proc = compton_lab(m, pi / 2, m, e);
        const auto ei = polarization_basis(proc.q_in)[1];
        const auto ef = polarization_basis(proc.q_out)[1];
        const ComptonAmplitude full = compton_msq(b, proc, ei, ef, c);
        const ComptonAmplitude off = compton_msq(b, proc, ei, ef, Mat5::zero());
        REQUIRE(full.msq > 0.0);
        CHECK(std::abs(full.msq - off.msq) / full.msq > 1e-3);
        CHECK(off.msq < 1e-20 * full.msq);
    }
    SECTION("vanishing trace screens at these kinematics") {
        const ScatterProcess proc = compton_lab(1.0, pi / 3, m, e);
        const auto ei = polarization_basis(proc.q_in)[0];
        const auto ef = polarization_basis(proc.q_out)[0];
        const Mat5 sei = slash(b, ei.eps);
        const Mat5 sef = slash(b, ef.eps);
        const Mat5 spi = slash(b, proc.p_in);
        const Mat5 spf = slash(b, proc.p_out);
        const Mat5 ident = Mat5::identity();
        const Mat5 numer_f = spf * (spf + m * ident);
        CHECK(std::abs(trace_product({sei, spi, sei, spi + m * ident})) < 1e-12);
        CHECK(std::abs(trace_product({numer_f, sef, sei, spi, sei, sef})) < 1e-12);
        CHECK(std::abs(trace_product({sef, spi, sef, numer_f, sei, sei})) < 1e-12);
    }
    SECTION("input validation") {
        const ScatterProcess proc = compton_lab(1.0, pi / 3, m, e);
        const auto ei = polarization_basis(proc.q_in)[0];
        const auto ef = polarization_basis(proc.q_out)[0];
        CHECK_THROWS_AS(compton_msq(b, proc, ef, ei, c), domain_error);
        CHECK_THROWS_AS(compton_msq(b, proc, ei, ef, b.beta[0]), domain_error);
        ScatterProcess wrong_frame = proc;
        wrong_frame.frame = Frame::cm;
        CHECK_THROWS_AS(compton_msq(b, wrong_frame, ei, ef, c), domain_error);
        const ScatterProcess moller_proc = cm_elastic(10.0, pi / 3, m, e);
        CHECK_THROWS_AS(compton_msq(b, moller_proc, ei, ef, c), domain_error);
    }
}
