#pragma once

// Spin-0 Duffin-Kemmer-Petiau algebra in the 5-dimensional representation.
//
// The defining relation is
//     beta^mu beta^nu beta^rho + beta^rho beta^nu beta^mu
//         = beta^mu g^{nu rho} + beta^rho g^{mu nu},
// with g = diag(+,-,-,-).  Basis ordering of the multiplet is
// (phi, psi^0, psi^1, psi^2, psi^3): slot 0 is the scalar component, slots
// 1..4 the vector components.  Each beta^mu then has exactly two nonzero
// entries, linking the scalar slot to the psi^mu slot.

#include <cstddef>
#include <vector>

#include "sdkp/errors.hpp"
#include "sdkp/four_vector.hpp"
#include "sdkp/matrix.hpp"

namespace sdkp {

// Lorentz index list addressing a product beta^{mu1} ... beta^{mun}.
using IndexString = std::vector<int>;

inline void validate_indices(const IndexString& idx) {
    if (idx.empty()) throw domain_error("index string must be nonempty");
    for (int mu : idx)
        if (mu < 0 || mu > 3) throw domain_error("Lorentz index out of range 0..3");
}

struct BetaSet {
    std::array<Mat5, 4> beta;  // beta^0 .. beta^3, contravariant index
    Mat5 eta0;                 // 2*(beta^0)^2 - 1
};

// Worst entry of beta^mu beta^nu beta^rho + beta^rho beta^nu beta^mu
// - beta^mu g^{nu rho} - beta^rho g^{mu nu} over all 64 index triples.
inline double algebra_residual(const BetaSet& b) {
    double worst = 0.0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            for (int rho = 0; rho < 4; ++rho) {
                Mat5 lhs = b.beta[mu] * b.beta[nu] * b.beta[rho] +
                           b.beta[rho] * b.beta[nu] * b.beta[mu];
                Mat5 rhs = metric(nu, rho) * b.beta[mu] + metric(mu, nu) * b.beta[rho];
                worst = std::max(worst, (lhs - rhs).max_abs());
            }
    return worst;
}

// Worst entry of eta0 - (2*(beta^0)^2 - 1); zero exactly for a valid set.
inline double eta_residual(const BetaSet& b) {
    Mat5 expect = 2.0 * (b.beta[0] * b.beta[0]) - Mat5::identity();
    return (b.eta0 - expect).max_abs();
}

// Worst entry of beta^mu{dagger} - eta0 beta^mu eta0 over mu.
inline double conjugation_residual(const BetaSet& b) {
    double worst = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        Mat5 lhs = b.beta[mu].adjoint();
        Mat5 rhs = b.eta0 * b.beta[mu] * b.eta0;
        worst = std::max(worst, (lhs - rhs).max_abs());
    }
    return worst;
}

// Conventional 5-dim basis: (beta^mu)_{0,mu+1} = g^{mu mu}, (beta^mu)_{mu+1,0} = 1.
// All entries are 0 or +-1, so the invariants below hold exactly in doubles.
inline BetaSet build_beta_representation() {
    BetaSet b;
    for (int mu = 0; mu < 4; ++mu) {
        b.beta[mu] = Mat5::zero();
        b.beta[mu](0, static_cast<std::size_t>(mu) + 1) = metric(mu, mu);
        b.beta[mu](static_cast<std::size_t>(mu) + 1, 0) = 1.0;
    }
    b.eta0 = 2.0 * (b.beta[0] * b.beta[0]) - Mat5::identity();

    if (algebra_residual(b) > 1e-12 || eta_residual(b) != 0.0 || conjugation_residual(b) != 0.0 ||
        (b.eta0 * b.eta0 - Mat5::identity()).max_abs() != 0.0)
        throw error("beta representation failed its defining invariants");
    return b;
}

// slash(p) = beta^mu p_mu.  The index on p is lowered: slash((0,1,0,0)) = -beta^1.
inline Mat5 slash(const BetaSet& b, FourVector p) {
    Mat5 r;
    for (int mu = 0; mu < 4; ++mu) r += covariant(p, mu) * b.beta[mu];
    return r;
}

// Brute-force trace of an ordered matrix product by explicit multiplication.
// Ground truth for the closed-form identity below.
inline cplx trace_product(const std::vector<Mat5>& ms) {
    if (ms.empty()) throw domain_error("trace_product needs at least one matrix");
    Mat5 prod = ms[0];
    for (std::size_t k = 1; k < ms.size(); ++k) prod = prod * ms[k];
    return prod.trace();
}

// The beta matrices addressed by an index string, ready for trace_product.
inline std::vector<Mat5> beta_matrices(const BetaSet& b, const IndexString& idx) {
    validate_indices(idx);
    std::vector<Mat5> ms;
    ms.reserve(idx.size());
    for (int mu : idx) ms.push_back(b.beta[static_cast<std::size_t>(mu)]);
    return ms;
}

// Closed-form trace, no matrices: zero for an odd number of factors; for an
// even number the two cyclic pairing chains of metric factors,
//     g^{mu1 mu2} g^{mu3 mu4} ... + g^{mu2 mu3} g^{mu4 mu5} ... g^{mu2n mu1}.
inline double trace_identity(const IndexString& idx) {
    validate_indices(idx);
    const std::size_t n = idx.size();
    if (n % 2 != 0) return 0.0;
    double total = 0.0;
    for (std::size_t start : {std::size_t{0}, std::size_t{1}}) {
        double chain = 1.0;
        for (std::size_t k = 0; k < n; k += 2)
            chain *= metric(idx[(start + k) % n], idx[(start + k + 1) % n]);
        total += chain;
    }
    return total;
}

}  // namespace sdkp
