#pragma once

// Momentum-space DKP amplitudes u±(p) and the projector that replaces
// spinor sums by traces.  u- solves (slash(p) - m) u = 0, u+ solves
// (slash(p) + m) u = 0; both are one-dimensional null spaces for on-shell
// massive p.  Normalization: ubar beta0 u = +1 for u-, -1 for u+.  That
// sign pair is forced: Tr[beta0 u- ubar-] equals Tr[beta0 projector] = +1,
// and no rescaling of u flips the sign of ubar beta0 u.

#include <cmath>

#include "sdkp/dkp_algebra.hpp"
#include "sdkp/errors.hpp"
#include "sdkp/four_vector.hpp"
#include "sdkp/matrix.hpp"

namespace sdkp {

enum class Frequency { minus, plus };

struct DkpSpinor {
    Vec5 components;
    FourVector p;
    double mass = 0.0;
    Frequency freq = Frequency::minus;
};

// ubar = u† eta0, as a row vector.
inline Vec5 bar(const DkpSpinor& u) {
    Vec5 row;
    for (std::size_t i = 0; i < 5; ++i) row[i] = std::conj(u.components[i]) * (i < 2 ? 1.0 : -1.0);
    return row;
}

namespace detail {

// One-dimensional null space of a 5x5 complex matrix by row-pivoted
// elimination.  Throws if the null space is empty (off-shell momentum) or
// has dimension > 1 (degenerate; signals a representation or input bug).
inline Vec5 null_space_1d(Mat5 a) {
    const double tol = 1e-7 * std::max(1.0, a.max_abs());
    int pivot_row[5], pivot_col[5], n_piv = 0;
    int free_col[5], n_free = 0;
    int r = 0;
    for (int c = 0; c < 5; ++c) {
        int rmax = -1;
        double vmax = tol;
        for (int i = r; i < 5; ++i)
            if (std::abs(a(static_cast<std::size_t>(i), static_cast<std::size_t>(c))) > vmax) {
                vmax = std::abs(a(static_cast<std::size_t>(i), static_cast<std::size_t>(c)));
                rmax = i;
            }
        if (rmax < 0) {
            free_col[n_free++] = c;
            continue;
        }
        if (rmax != r)
            for (int j = 0; j < 5; ++j)
                std::swap(a(static_cast<std::size_t>(r), static_cast<std::size_t>(j)),
                          a(static_cast<std::size_t>(rmax), static_cast<std::size_t>(j)));
        for (int i = r + 1; i < 5; ++i) {
            const cplx f = a(static_cast<std::size_t>(i), static_cast<std::size_t>(c)) /
                           a(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
            if (f == cplx{}) continue;
            for (int j = c; j < 5; ++j)
                a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) -=
                    f * a(static_cast<std::size_t>(r), static_cast<std::size_t>(j));
        }
        pivot_row[n_piv] = r;
        pivot_col[n_piv] = c;
        ++n_piv;
        ++r;
    }
    if (n_free == 0) throw domain_error("no nontrivial null space: momentum off shell");
    if (n_free > 1) throw error("degenerate null space (dimension > 1)");

    Vec5 x;
    x[static_cast<std::size_t>(free_col[0])] = 1.0;
    for (int k = n_piv - 1; k >= 0; --k) {
        const int pr = pivot_row[k], pc = pivot_col[k];
        cplx s{};
        for (int j = pc + 1; j < 5; ++j)
            s += a(static_cast<std::size_t>(pr), static_cast<std::size_t>(j)) *
                 x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(pc)] =
            -s / a(static_cast<std::size_t>(pr), static_cast<std::size_t>(pc));
    }
    return x;
}

}  // namespace detail

inline DkpSpinor solve_u(const BetaSet& b, FourVector p, Frequency freq, double m) {
    if (m <= 0.0) throw domain_error("mass must be positive");
    if (p.t <= 0.0) throw domain_error("p0 must be positive");
    const double sign = (freq == Frequency::minus) ? -1.0 : 1.0;
    const Mat5 op = slash(b, p) + sign * m * Mat5::identity();
    Vec5 v = detail::null_space_1d(op);

    // ubar beta0 u is real and sign-definite per frequency; normalize to +-1.
    DkpSpinor raw{v, p, m, freq};
    const double n = std::real(bilinear(bar(raw), b.beta[0], v));
    const double expect = (freq == Frequency::minus) ? 1.0 : -1.0;
    if (n * expect <= 0.0) throw error("beta0 norm has the wrong sign for this frequency");
    v *= cplx(1.0 / std::sqrt(std::abs(n)));

    // Phase convention: scalar-slot component real positive.
    const cplx v0 = v[0];
    if (std::abs(v0) == 0.0) throw error("scalar-slot component vanished; phase undefined");
    v *= std::conj(v0) / std::abs(v0);

    DkpSpinor u{v, p, m, freq};
    if ((op * v).max_abs() > 1e-10 * std::max(1.0, op.max_abs()))
        throw error("null-space residual too large");
    return u;
}

// slash(p) (slash(p) + m) / (2 m p0) == u-(p) ⊗ ubar-(p) for on-shell p.
inline Mat5 projector(const BetaSet& b, FourVector p, double m) {
    if (m <= 0.0) throw domain_error("mass must be positive");
    if (p.t <= 0.0) throw domain_error("p0 must be positive");
    const double c = max_component(p);
    if (std::abs(dot(p, p) - m * m) > 1e-10 * std::max(m * m, c * c))
        throw domain_error("projector requires on-shell momentum");
    const Mat5 s = slash(b, p);
    return s * (s + m * Mat5::identity()) * (1.0 / (2.0 * m * p.t));
}

}  // namespace sdkp
