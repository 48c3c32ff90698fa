// evolution.hpp
// Explicit leapfrog evolver for the coupled system on a Cartesian slab:
//   dtt u = Lap u + f(v, dv) + F_u
//   dtt v = Lap v - v + P^{ab} d_a u d_b u + F_v
// Centered spatial differences; the first-order time derivatives in the
// nonlinear sources are centered at the middle level through an explicit
// predictor/corrector pass, so the scheme stays second order without an
// implicit solve. Cells outside the expanding support radius
// r <= support + (t - t0) are pinned to zero (compact data propagate at
// unit speed, so the clipped region carries no field).
#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hyperlab/characteristic.hpp"
#include "hyperlab/fields.hpp"
#include "hyperlab/foliation.hpp"
#include "hyperlab/slab.hpp"
#include "hyperlab/system.hpp"

namespace hyperlab {

struct ForcingPair {
    ScalarFieldFn u;
    ScalarFieldFn v;
    bool valid() const { return static_cast<bool>(u) && static_cast<bool>(v); }
};

// Forcing that turns (u_ex, v_ex) into an exact solution:
//   F_u = Box u_ex - f(v_ex, dv_ex),  F_v = Box v_ex + v_ex - P du_ex du_ex.
ForcingPair manufactured_forcing(const ManufacturedPair& exact,
                                 const SystemCoefficients& coeffs);

// Cauchy data matching a manufactured pair at t = t0 (epsilon = 1, profiles
// carry their own amplitude).
CauchyData manufactured_cauchy_data(const ManufacturedPair& exact, double t0 = 2.0,
                                    double support_radius = 0.8);

struct InstabilityError : std::runtime_error {
    InstabilityError(double t, double sup)
        : std::runtime_error("evolution unstable at t = " + std::to_string(t) +
                             ", sup-norm " + std::to_string(sup)),
          t_fail(t), sup_norm(sup) {}
    double t_fail;
    double sup_norm;
};

// Two time levels of both fields; the unit the stepper advances and the
// checkpoint format stores.
struct SlabState {
    GridSpec grid;
    double t = 2.0;          // time of the newest level
    double t0 = 2.0;         // initial time (mask anchor)
    double support_radius = 1.0;
    double instability_threshold = 1e6;
    Field u_prev, u_curr, v_prev, v_curr;
};

struct StepOptions {
    int threads = 1;
    bool cone_mask = true;
};

// Initial state via a Taylor half-start: level t0 from the data, level
// t0+dt from u0 + dt u1 + (dt^2/2)(Lap u0 + sources at t0).
SlabState make_initial_state(const CauchyData& data, const SystemCoefficients& coeffs,
                             const GridSpec& grid, double t0 = 2.0,
                             const ForcingPair* forcing = nullptr);

// One leapfrog step; throws InstabilityError past the sup-norm threshold.
void step(SlabState& state, const SystemCoefficients& coeffs,
          const ForcingPair* forcing = nullptr, const StepOptions& opts = {});

// --- evolve with observers ----------------------------------------------------

struct EvolveParams {
    GridSpec grid;
    double t0 = 2.0;
    double t_end = 12.0;
    int threads = 1;
    bool cone_mask = true;
    double instability_factor = 1e6; // threshold = factor * epsilon
};

struct ProbeResult {
    SpacetimePoint p;
    RawPartials values; // raw partials (order <= 2) at p
};

struct EvolveRequest {
    std::vector<SliceJob> slices;
    std::vector<SpacetimePoint> gradient_targets; // sharp-gradient-bound probes
    std::vector<SpacetimePoint> probes;           // pointwise field probes
    bool record_history = false;
    double sup_series_stride = 0.1; // time spacing of the sup-norm series
};

struct SupSeriesPoint {
    double t = 0.0;
    double sup_u = 0.0;
    double sup_v = 0.0;
};

struct Trajectory {
    GridSpec grid;
    SystemCoefficients coeffs;
    double t0 = 2.0, t_end = 0.0;
    double epsilon = 0.0;
    int steps = 0;
    std::vector<SliceReport> slices;
    std::vector<GradientBoundData> gradient_data;
    std::vector<ProbeResult> probes;
    std::vector<SupSeriesPoint> sup_series;
    std::shared_ptr<SlabHistory> history;

    const SliceReport& slice_at(double s) const;
};

Trajectory evolve(const CauchyData& data, const SystemCoefficients& coeffs,
                  const EvolveParams& params, const EvolveRequest& request = {},
                  const ForcingPair* forcing = nullptr);

// --- hessian decomposition diagnostic ------------------------------------------

// Residual of (s/t)^2 dtt u = Box u - R_1[u] with
// R_1[u] = t^{-1}( 2(x^a/t) L_a dt u - sum_a L_a db_a u - (r/t)^2 dt u + 2 dt u ).
// The left side and Box u use direct second-derivative stencils; the R_1
// terms are evaluated by nested first-order stencils, so the residual
// reflects the stencil truncation error on smooth fields.
double hessian_identity_residual(const ScalarFieldFn& u, const SpacetimePoint& p,
                                 const StencilSettings& st = {});

} // namespace hyperlab
