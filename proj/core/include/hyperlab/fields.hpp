// fields.hpp
// Analytic scalar fields with exact partial derivatives up to order 3:
// radial polynomial bumps, time envelopes, products and sums. These drive
// manufactured-solution forcing, slice oracles and convergence studies.
#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>

#include "hyperlab/geometry.hpp"
#include "hyperlab/frame.hpp"

namespace hyperlab {

// A field with evaluable partials d_t^a d_1^b d_2^c for a+b+c <= 3.
class AnalyticField {
public:
    using DerivFn = std::function<double(int, int, int, double, double, double)>;

    AnalyticField() = default;
    explicit AnalyticField(DerivFn f) : f_(std::move(f)) {}

    double deriv(int a, int b, int c, double t, double x1, double x2) const {
        return f_(a, b, c, t, x1, x2);
    }
    double operator()(double t, double x1, double x2) const { return f_(0, 0, 0, t, x1, x2); }

    ScalarFieldFn as_fn() const {
        auto f = f_;
        return [f](double t, double x1, double x2) { return f(0, 0, 0, t, x1, x2); };
    }

    bool valid() const { return static_cast<bool>(f_); }

    static AnalyticField zero();
    static AnalyticField constant(double c);

    // Compactly supported radial profile (1 - r^2/R^2)^p for r < R, else 0.
    // Polynomial in (x1, x2) inside the support, C^{p-1} across the edge.
    static AnalyticField radial_bump(double radius, int power);
    // Ring profile (1 - z)^p * z with z = r^2/R^2: vanishes at the origin.
    static AnalyticField radial_ring(double radius, int power);
    // cos(w (t - t0) + phase), constant in space.
    static AnalyticField cosine_in_t(double w, double t0, double phase);
    // Monomial t^a x1^b x2^c (for exact stencil tests).
    static AnalyticField monomial(int a, int b, int c, double coef = 1.0);

    AnalyticField scaled(double c) const;
    friend AnalyticField operator+(const AnalyticField& f, const AnalyticField& g);
    friend AnalyticField operator*(const AnalyticField& f, const AnalyticField& g);

private:
    DerivFn f_;
};

// d'Alembertian dtt - d11 - d22 of an analytic field at a point.
double box_of(const AnalyticField& f, double t, double x1, double x2);

// --- Cauchy data -------------------------------------------------------------

// Initial data on the flat slice t = 2, compactly supported in the unit
// disc: u|_{t=2} = eps*u0, dt u|_{t=2} = eps*u1, same for v.
struct CauchyData {
    AnalyticField u0, u1, v0, v1; // unscaled profiles
    double epsilon = 0.01;
    double support_radius = 1.0;

    void validate() const; // support radius must not exceed the unit disc
};

// Named profile families for configuration files: "bump4", "bump6", "ring4".
CauchyData make_cauchy_data(const std::string& profile, double epsilon,
                            double support_radius);

// --- manufactured solutions --------------------------------------------------

struct ManufacturedPair {
    AnalyticField u;
    AnalyticField v;
};

// Oscillating bump pair supported in r <= radius, smooth enough for clean
// second-order convergence of the interior scheme.
ManufacturedPair make_manufactured_pair(double amplitude, double radius = 0.8);

} // namespace hyperlab
