#pragma once

#include <cmath>
#include <cstddef>

#include "sdkp/errors.hpp"

namespace sdkp {

// Metric convention: g = diag(+1, -1, -1, -1), natural units throughout.
struct MetricTensor {
    static constexpr double diag(int mu) { return mu == 0 ? 1.0 : -1.0; }
    static constexpr double operator_at(int mu, int nu) { return mu == nu ? diag(mu) : 0.0; }
};

inline constexpr double metric(int mu, int nu) { return MetricTensor::operator_at(mu, nu); }

struct FourVector {
    double t = 0.0, x = 0.0, y = 0.0, z = 0.0;

    friend constexpr FourVector operator+(FourVector a, FourVector b) {
        return {a.t + b.t, a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend constexpr FourVector operator-(FourVector a, FourVector b) {
        return {a.t - b.t, a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend constexpr FourVector operator-(FourVector a) { return {-a.t, -a.x, -a.y, -a.z}; }
    friend constexpr FourVector operator*(double s, FourVector a) {
        return {s * a.t, s * a.x, s * a.y, s * a.z};
    }
    friend constexpr bool operator==(FourVector a, FourVector b) {
        return a.t == b.t && a.x == b.x && a.y == b.y && a.z == b.z;
    }
};

// Contravariant component p^mu.
inline double component(FourVector p, int mu) {
    switch (mu) {
        case 0: return p.t;
        case 1: return p.x;
        case 2: return p.y;
        case 3: return p.z;
        default: throw domain_error("Lorentz index out of range");
    }
}

// Covariant component p_mu.
inline double covariant(FourVector p, int mu) { return MetricTensor::diag(mu) * component(p, mu); }

inline constexpr double dot(FourVector a, FourVector b) {
    return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z;
}

inline constexpr double spatial_dot(FourVector a, FourVector b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline constexpr double spatial_norm2(FourVector a) { return spatial_dot(a, a); }

inline double spatial_norm(FourVector a) { return std::sqrt(spatial_norm2(a)); }

// Largest component magnitude; scale reference for relative comparisons.
inline double max_component(FourVector a) {
    return std::max(std::max(std::abs(a.t), std::abs(a.x)), std::max(std::abs(a.y), std::abs(a.z)));
}

}  // namespace sdkp
