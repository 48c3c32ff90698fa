// geometry.hpp
// Spacetime points in 2+1 dimensions, the interior light-cone region
// K = {t > r + 1} and the hyperboloids H_s = {t = sqrt(s^2 + r^2)}.
#pragma once

#include <cmath>
#include <stdexcept>

namespace hyperlab {

// Index convention: alpha in {0,1,2}, 0 = time, signature (+,-,-).
// The d'Alembertian is dtt - (d11 + d22).

struct SpacetimePoint {
    double t = 2.0;
    double x1 = 0.0;
    double x2 = 0.0;

    double r() const { return std::hypot(x1, x2); }

    // Hyperbolic radius s = sqrt(t^2 - r^2); requires t > r.
    double s() const {
        const double rr = r();
        if (t <= rr) throw std::domain_error("SpacetimePoint::s: t <= r, point outside the hyperboloidal region");
        return std::sqrt((t - rr) * (t + rr));
    }

    // s/t, the foliation lapse factor; requires t > r.
    double s_over_t() const { return s() / t; }

    // Interior-cone membership: t > r + 1.
    bool in_cone() const { return t > r() + 1.0; }
};

inline SpacetimePoint point_on_hyperboloid(double s, double x1, double x2) {
    const double r2 = x1 * x1 + x2 * x2;
    return SpacetimePoint{std::sqrt(s * s + r2), x1, x2};
}

inline double hyperbolic_radius(const SpacetimePoint& p) { return p.s(); }

} // namespace hyperlab
