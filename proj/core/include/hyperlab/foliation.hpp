// foliation.hpp
// Hyperboloid slices H_s = {t = sqrt(s^2 + r^2)} sampled on the slab
// lattice, the three equivalent energy functionals, L^2 norms of
// d^I L^J-derived fields, the energy inequality bookkeeping and the
// Klainerman-Sobolev ratio. All integrals use the flat spatial measure dx
// and deterministic pairwise summation.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperlab/diffop.hpp"
#include "hyperlab/slab.hpp"
#include "hyperlab/summation.hpp"
#include "hyperlab/system.hpp"

namespace hyperlab {

enum class EnergyForm { A, B, C };
enum class SliceField { U, V };

struct EnergyValue {
    double value = 0.0;
    double c2 = 0.0;
    EnergyForm form = EnergyForm::A;
};

struct SlicePointSample {
    int ix = 0, iy = 0;
    double t = 0.0;
    double weight = 0.0;
};

// Materialized slice: lattice samples with raw partials of u (and v) up to
// deriv_order. Samples vanish outside the cone interior by construction.
struct HyperboloidSlice {
    double s = 0.0;
    GridSpec grid;
    int deriv_order = 1;
    bool has_v = false;
    std::vector<SlicePointSample> points;
    std::vector<RawPartials> values;
};

// Sample H_s from recorded slab levels out to the largest radius the
// history covers (bounded further by r_max if positive).
HyperboloidSlice sample_hyperboloid(const SlabHistory& history, double s,
                                    int deriv_order = 1, double r_max = 0.0);

// Sample H_s of analytic fields on the given lattice (v may be invalid).
HyperboloidSlice sample_hyperboloid_analytic(const AnalyticField& u,
                                             const AnalyticField& v, double s,
                                             const GridSpec& grid,
                                             int deriv_order = 1,
                                             double r_max = 0.0);

// E_{c2}(s, field) in one of the three algebraically equal forms:
//   A: |dt w|^2 + sum_a |d_a w|^2 + 2 (x^a/t) dt w d_a w + c2 w^2
//   B: sum_a |db_a w|^2 + |(s/t) dt w|^2 + c2 w^2
//   C: |db_perp w|^2 + sum_a |(s/t) d_a w|^2 + |t^{-1} Om_{12} w|^2 + c2 w^2
EnergyValue energy(const HyperboloidSlice& slice, double c2, EnergyForm form,
                   SliceField field = SliceField::U);

// ||op(field)||_{L^2(H_s)}; the slice must hold partials of order
// >= op.max_order().
double slice_l2_norm(const HyperboloidSlice& slice, const DiffOp& op,
                     SliceField field = SliceField::U);

// Klainerman-Sobolev ratio t|u(p)| / sum_{|I|+|J|<=2} ||d^I L^J u||_{L^2(H_s)}
// with p on H_s (nearest lattice sample).
struct KsRatio {
    enum class Status { Ok, ZeroField };
    Status status = Status::Ok;
    double ratio = 0.0;
    double numerator = 0.0;
    double denominator = 0.0;
};

KsRatio klainerman_sobolev_ratio(const HyperboloidSlice& slice, const SpacetimePoint& p);
KsRatio klainerman_sobolev_ratio(const SlabHistory& history, double s,
                                 const SpacetimePoint& p);

// --- streaming slice diagnostics --------------------------------------------

// What to compute on one hyperboloid during a march.
struct SliceJob {
    double s = 3.0;
    int op_order = 0;        // d^I L^J table order for energies (0..2)
    bool energies = true;    // E(s, op u), E_1(s, op v), ||op u||_{L^2}
    bool sources = false;    // ||f||, ||P du du||, weighted sups of B and T
    bool energy_law = false; // ||Box u||, ||Box v + v|| for the energy inequality
    bool sup_norms = true;   // sup |dt u|, sup |u|, sup (t/s)|v|
    std::optional<SpacetimePoint> ks_point;
    double delta = 0.1;      // decay weight in the B/T sup reports
};

struct SliceReport {
    double s = 0.0;
    std::uint64_t n_points = 0;
    int op_order = 0;
    std::vector<std::string> op_names;
    std::vector<double> e_u_sqrt; // E(s, op u)^{1/2}, c2 = 0
    std::vector<double> e_v_sqrt; // E_1(s, op v)^{1/2}, c2 = 1
    std::vector<double> l2_u;     // ||op u||_{L^2(H_s)}
    double l2_f = 0.0;            // ||f(v, dv)||_{L^2(H_s)}
    double l2_null_quad = 0.0;    // ||P^{ab} d_a u d_b u||_{L^2(H_s)}
    double l2_box_u = 0.0;        // ||Box u||
    double l2_box_v_kg = 0.0;     // ||Box v + v||
    double e_u0_sqrt = 0.0;       // E_0(s,u)^{1/2}
    double e_v0_sqrt = 0.0;       // E_1(s,v)^{1/2}
    double sup_dtu = 0.0;
    double sup_u = 0.0;
    double sup_v_t_over_s = 0.0;
    double sup_B_weighted = 0.0; // sup |B| (t/s) s^{4-4 delta}
    double sup_T_weighted = 0.0; // sup |T| (t/s)^2 s^{3-3 delta}
    std::optional<double> ks_numerator; // t |u(p)|
    double ks_denominator = 0.0;
};

// Per-point accumulation shared by the streaming assembler and the
// materialized-slice convenience path.
class SliceAccumulator {
public:
    SliceAccumulator(const SliceJob& job, const SystemCoefficients& coeffs,
                     const GridSpec& grid);

    int raw_order() const { return raw_order_; }
    void add_point(double t, double x1, double x2, double weight, const RawPartials& rp,
                   int ix = -1, int iy = -1);
    SliceReport finalize() const;

private:
    SliceJob job_;
    SystemCoefficients coeffs_;
    int raw_order_ = 1;
    const std::vector<OpTableEntry>* ops_ = nullptr;
    std::vector<PairwiseAccumulator> e_u_, e_v_, l2_u_;
    PairwiseAccumulator l2_f_, l2_pduu_, l2_box_u_, l2_box_v_kg_, e_u0_, e_v0_;
    MaxTracker sup_dtu_, sup_u_, sup_vts_, sup_B_, sup_T_;
    std::optional<double> ks_numer_;
    int ks_ix_ = -1, ks_iy_ = -1;
};

// Streaming assembler: consumes level windows as the march advances and
// feeds annuli of finalized lattice points to the accumulator.
class SliceAssembler {
public:
    SliceAssembler(const SliceJob& job, const SystemCoefficients& coeffs,
                   const GridSpec& grid, double support_radius_at_t0, double t0);

    // Process all points whose slice time falls in the newly safe interval
    // of this window. `final_flush` permits sampling up to the last level.
    void process_window(const LevelWindow& win, bool final_flush = false);
    bool done() const { return done_; }
    SliceReport finalize() const { return acc_.finalize(); }
    double s() const { return job_s_; }

private:
    void process_annulus(const LevelWindow& win, double t_lo, double t_hi);

    double job_s_;
    GridSpec grid_;
    SliceAccumulator acc_;
    double t_processed_;
    double r_cutoff_;
    bool done_ = false;
    int raw_order_;
};

// Convenience: run the accumulator over a materialized slice.
SliceReport slice_report_from(const HyperboloidSlice& slice, const SliceJob& job,
                              const SystemCoefficients& coeffs);

// --- energy inequality --------------------------------------------------------

// E_{c2}(s1, field)^{1/2} <= E_{c2}(s0, field)^{1/2} + int_{s0}^{s1} ||f|| ds
// assembled from energy-law slice reports (trapezoid in s); slack =
// rhs - lhs.
struct EnergyInequalityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    double initial = 0.0;
    double source_integral = 0.0;
};

EnergyInequalityReport check_energy_inequality(const std::vector<SliceReport>& law,
                                               double c2, double s0, double s1,
                                               SliceField field = SliceField::U);

} // namespace hyperlab
