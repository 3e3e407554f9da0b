#pragma once

// Causal distributions in momentum space, kept symbolic: every object in
// scope is a (matrix-valued) polynomial times an on-shell delta factor
// delta(p^2 - m^2) with a frequency weight Sgn(p0) or a step theta(+-p0).
// Power counting in 4 dimensions gives the singular order omega = degree - 2;
// splitting is classified (regular vs singular, free-constant slots), never
// numerically integrated.  The Feynman propagators the amplitudes need are
// evaluated here, and the delta-term cancellation that gauge invariance
// imposes fixes the undetermined matrix constant to identity/m.

#include <cmath>
#include <vector>

#include "sdkp/dkp_algebra.hpp"
#include "sdkp/errors.hpp"
#include "sdkp/four_vector.hpp"
#include "sdkp/matrix.hpp"

namespace sdkp {

enum class FrequencyFactor { sign_p0, step_positive, step_negative };

// One monomial block of the polynomial part.  The degree pattern is what
// power counting consumes; the scalar coefficient keeps the descriptors of
// the in-scope family faithful (matrix structure such as slash(p)(slash(p)+m)
// is carried by the matrix_valued flag and realized in dkp_feynman).
struct PolyTerm {
    int degree = 0;
    cplx coefficient = 1.0;
};

struct DistributionDescriptor {
    std::vector<PolyTerm> terms;
    double mass = 0.0;
    FrequencyFactor frequency = FrequencyFactor::sign_p0;
    cplx prefactor = 1.0;
    bool matrix_valued = false;
    bool heaviside_split = false;  // set on retarded parts produced by split()

    int degree() const {
        if (terms.empty()) throw domain_error("descriptor outside the supported family: no terms");
        int d = -1;
        for (const PolyTerm& t : terms) {
            if (t.degree < 0) throw domain_error("descriptor outside the supported family: negative degree");
            d = std::max(d, t.degree);
        }
        return d;
    }

    // Jordan-Pauli commutator function, scalar case: (i/2pi) delta(p^2-m^2) Sgn(p0).
    static DistributionDescriptor jordan_pauli(double m) {
        if (m < 0.0) throw domain_error("mass must be nonnegative");
        DistributionDescriptor d;
        d.terms = {{0, 1.0}};
        d.mass = m;
        d.prefactor = cplx(0.0, 1.0 / (2.0 * 3.14159265358979323846));
        return d;
    }

    // Positive/negative frequency part: step weight instead of Sgn.
    static DistributionDescriptor jordan_pauli_part(double m, bool positive) {
        DistributionDescriptor d = jordan_pauli(m);
        d.frequency = positive ? FrequencyFactor::step_positive : FrequencyFactor::step_negative;
        if (!positive) d.prefactor = -d.prefactor;
        return d;
    }

    // DKP field commutator: (1/m) slash(p)(slash(p)+m) times the Jordan-Pauli
    // factor; degree pattern {2, 1}, matrix valued.
    static DistributionDescriptor dkp_commutator(double m) {
        if (m <= 0.0) throw domain_error("mass must be positive");
        DistributionDescriptor d = jordan_pauli(m);
        d.terms = {{2, cplx(1.0 / m)}, {1, 1.0}};
        d.matrix_valued = true;
        return d;
    }
};

struct SingularOrder {
    int omega = 0;
};

// omega = degree - 2: each delta(p^2 - m^2) scales as a^2 under p -> p/a,
// each polynomial power as a^-1, in 4 dimensions.
inline SingularOrder singular_order(const DistributionDescriptor& d) {
    if (d.mass < 0.0) throw domain_error("descriptor outside the supported family: negative mass");
    return {d.degree() - 2};
}

enum class SplitClass { regular, singular };

struct SplitResult {
    SplitClass classification = SplitClass::regular;
    int free_constants = 0;        // scalar slots l = 0..omega, collapsed to 1 matrix slot
    bool matrix_constant = false;  // true when the one slot is a full 5x5 matrix
    DistributionDescriptor retarded;
};

// Regular (omega < 0): the retarded part is the Heaviside-weighted original,
// no freedom.  Singular (omega >= 0): dispersion splitting leaves one free
// constant per power l = 0..omega; for the matrix-valued descriptor at
// omega = 0 that is exactly one undetermined 5x5 matrix.
inline SplitResult split(const DistributionDescriptor& d) {
    const int omega = singular_order(d).omega;
    SplitResult r;
    r.retarded = d;
    r.retarded.heaviside_split = true;
    if (omega < 0) {
        r.classification = SplitClass::regular;
        r.free_constants = 0;
        r.matrix_constant = false;
    } else {
        r.classification = SplitClass::singular;
        r.free_constants = omega + 1;
        r.matrix_constant = d.matrix_valued;
    }
    return r;
}

inline constexpr double pole_guard_scale = 1e-9;

// -1/(q.q).  The +i0 prescription is bookkeeping only at tree level; inside
// the guard band the evaluation errors out instead of inventing an epsilon.
inline cplx photon_feynman(FourVector q) {
    const double q2 = dot(q, q);
    if (std::abs(q2) < pole_guard_scale) throw pole_error("photon propagator evaluated at the pole");
    return cplx(-1.0 / q2);
}

struct PropagatorValue {
    Mat5 value;
    FourVector momentum;
};

// -(1/m) slash(q)(slash(q)+m)/(q.q - m^2) + c.  This is the momentum-space
// combination entering the second-order two-point term (-S_Feynman + C delta);
// the overall sign is pinned by demanding the Compton closed form emerge,
// and the delta-cancellation condition below is (-1/m + c) slash = 0.
inline PropagatorValue dkp_feynman(const BetaSet& b, FourVector q, double m, const Mat5& c) {
    if (m <= 0.0) throw domain_error("mass must be positive");
    const double denom = dot(q, q) - m * m;
    if (std::abs(denom) < pole_guard_scale * std::max(1.0, m * m))
        throw pole_error("massive propagator evaluated on shell");
    const Mat5 s = slash(b, q);
    return {s * (s + m * Mat5::identity()) * (-1.0 / (m * denom)) + c, q};
}

// The unique constant killing the slash(q)-linear (delta-derivative) term of
// (slash(q) - m) * dkp_feynman(q, m, C): C = identity/m.
inline Mat5 fix_gauge_constant(double m) {
    if (m <= 0.0) throw domain_error("mass must be positive");
    return Mat5::identity() * (1.0 / m);
}

}  // namespace sdkp
