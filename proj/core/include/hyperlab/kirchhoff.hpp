// kirchhoff.hpp
// The retarded integral for the 2D wave equation and the normalized
// disc-intersection integral that controls it near the light cone.
//
// With observation point (t, x), x = (r, 0) after rotation, lambda = tau/t,
// the inner integral is
//   I(lambda) = int_{|y| <= 1-lambda} 1{|y + x/t| <= lambda - 1/t}
//               / sqrt((1-lambda)^2 - |y|^2) dy,
// the integration region being the intersection of the disc D_0 (center O,
// radius 1-lambda) with the disc D_1 (center (-r/t, 0), radius
// lambda - 1/t). The relative position of the discs is classified IA..IIIB
// and drives the radial bounds.
#pragma once

#include <cstdint>
#include <optional>

#include "hyperlab/frame.hpp"
#include "hyperlab/geometry.hpp"

namespace hyperlab {

enum class DiscCase { IA, IB, IIA, IIB, IIIB };

const char* disc_case_name(DiscCase c);

// Case thresholds in lambda for fixed (t, r):
//   I  / II  at (t-r+1)/(2t)   (D_1 contained in D_0 below)
//   A  / B   at (r+1)/t        (origin enters D_1 above)
//   II / III at (t+r+1)/(2t)   (D_0 contained in D_1 above)
// Threshold values map to the higher case.
DiscCase classify_case(double lambda, double t, double r);

struct DiscGeometry {
    double lambda = 0.0, t = 0.0, r = 0.0;
    DiscCase case_label = DiscCase::IA;
    double rho0 = 0.0, rho1 = 0.0;       // radial bounds of D_0 cap D_1
    std::optional<double> lambda_minus;  // right-angle threshold, when real
};

DiscGeometry disc_geometry(double lambda, double t, double r);

// lambda_- solves (lambda - 1/t)^2 + (1 - lambda)^2 = (r/t)^2 (closed form,
// smaller root). Throws a domain error when the discriminant is negative;
// the near-cone regime (t-r)/t < 1/10 always admits a root.
double lambda_minus(double t, double r);

// I(lambda): polar quadrature with the angular bound from the law of
// cosines; the square-root singularity at |y| = 1-lambda is removed by the
// substitution rho = (1-lambda) sin(phi). Returns 0 for an empty
// intersection.
double I_lambda(double lambda, double t, double r, double rel_tol = 1e-8);

// Stratified Monte-Carlo evaluation of I(lambda) with the radial weight
// sampled exactly; deterministic for a fixed seed.
double mc_I_lambda(double lambda, double t, double r, std::uint64_t n_samples,
                   std::uint64_t seed);

// J(t, r) = int_{t0/t}^{1} lambda^{-2} I(lambda) dlambda, adaptive with
// forced subdivision at the case thresholds and at lambda_-.
double integral_J(double t, double r, double t0 = 2.0, double rel_tol = 1e-6);

// Largest alpha0 in (0, pi) with alpha <= 2 sqrt(1 - cos alpha) on
// [0, alpha0]; bisection on the boundary equation.
double alpha_inequality_root();

// Source / data constants of the pointwise bound |u| <= C*C_F*(s/t) + C_0/s.
struct SourceBound {
    double C_F = 0.0;
    double C_0 = 0.0;
};

// Direct quadrature of the retarded integral
//   u(t,x) = (1/2pi) int_{t0}^{t} int_{|y| < t - tau}
//            f(tau, x + y) / sqrt((t-tau)^2 - |y|^2) dy dtau
// for zero data at t0, with the same singularity substitution.
struct KirchhoffParams {
    int n_tau = 48;    // Simpson panels per unit time (scaled by range)
    int n_phi = 32;    // Simpson panels in the radial substitution angle
    int n_theta = 64;  // periodic trapezoid nodes
    double t0 = 2.0;
};

double kirchhoff_solve(const ScalarFieldFn& f, double t, double x1, double x2,
                       const KirchhoffParams& params = {});

} // namespace hyperlab
