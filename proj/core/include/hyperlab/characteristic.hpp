// characteristic.hpp
// Integral curves of L = d_t + (2rt/(t^2+r^2)) d_r inside the cone, the
// damped transport equation they carry for w = (t-r)^{1/2} t^{1/2} d_t u,
// and the ray-transport oscillator for the Klein-Gordon component.
#pragma once

#include <cstdint>
#include <vector>

#include "hyperlab/geometry.hpp"

namespace hyperlab {

enum class CurveExit { ConeBoundary, InitialHyperboloid, None };

struct CurvePoint {
    double t = 0.0;
    double r = 0.0;
    double s() const { return std::sqrt((t - r) * (t + r)); }
};

// Integral curve of dr/dt = 2rt/(t^2+r^2) through (t0, r0); curves are
// radial. Along the forward direction s is strictly increasing; backward
// curves from K_{[2,inf)} terminate on {t = r+1} or on {s = 2}.
struct CharCurve {
    double t0 = 0.0, r0 = 0.0;
    std::vector<CurvePoint> samples; // ordered in increasing t
    CurveExit exit = CurveExit::None;
    CurvePoint exit_point{};
};

enum class CurveDirection { Forward, Backward };

struct CurveOptions {
    double dt = 0.01;
    double t_max = 0.0;        // forward horizon; 0 means t0 + 20
    double event_tol = 1e-10;  // bisection tolerance on the exit events
};

CharCurve integrate_curve(double t0, double r0, CurveDirection direction,
                          const CurveOptions& opts = {});

// P(t, r) = (t-r)/(2t^2) * (2 + 3r/t) / (1 + (r/t)^2); positive in K and
// bounded below by (t-r)/t^2.
double potential_value(double t, double r);

// y' + A(t) y = B(t) on a sample grid, solved by the variation-of-constants
// formula with trapezoidal accumulation of int A.
struct TransportProblem {
    std::vector<double> t;  // strictly increasing
    std::vector<double> A;  // nonnegative along curves inside K
    std::vector<double> B;
    double y0 = 0.0;
};

std::vector<double> solve_transport(const TransportProblem& prob);

// Reference RK4 integration of the same ODE (oracle for solve_transport);
// samples of A and B are linearly interpolated between nodes.
std::vector<double> solve_transport_rk4(const TransportProblem& prob);

// Entry rule for Klein-Gordon rays through (t, x): the ray {r/t = const}
// enters the region through the cone boundary at s0 = sqrt((t+r)/(t-r))
// when r/t > 3/5, and through the initial hyperboloid (s0 = 2) otherwise.
double kg_ray_entry_s0(double t, double r);

// W'' + W = F on [s0, s1] with samples of F (linear interpolation), RK4.
struct KgRaySolution {
    std::vector<double> s;
    std::vector<double> W;
    std::vector<double> Wp;
};

KgRaySolution kg_ray_transport(double W0, double W0p, double s0, double s1,
                               const std::vector<double>& F_s,
                               const std::vector<double>& F_values,
                               double ds = 1e-3);

// --- sharp gradient bound ----------------------------------------------------

// Field samples along a backward curve through `target`, gathered during an
// evolution run: the potential P, the transport source
// R_w = (1+(r/t)^2)^{-1} (t-r)^{1/2} t^{1/2} (sum_a db_a db_a u + Box u),
// the measured w at the curve entry and dt u at the target.
struct GradientBoundData {
    SpacetimePoint target;
    CurveExit exit = CurveExit::None;
    std::vector<double> tau;  // ascending, entry .. target time
    std::vector<double> r;
    std::vector<double> P;
    std::vector<double> R_w;
    double w_entry = 0.0;
    double dtu_target = 0.0;
};

struct GradientBoundReport {
    double measured = 0.0;  // |dt u(target)|
    double bound = 0.0;     // reconstructed right-hand side
    double ratio = 0.0;     // measured / bound (0 when both vanish)
};

// Evaluates s^{-1} sqrt((t+r)/t) (|w(entry)| e^{-int P} + int e^{-int P} |R_w|)
// against the measured |dt u(target)|.
GradientBoundReport sharp_gradient_bound(const GradientBoundData& data);

// CSV export: columns t,r,s,P.
std::string curve_to_csv(const CharCurve& curve);

} // namespace hyperlab
