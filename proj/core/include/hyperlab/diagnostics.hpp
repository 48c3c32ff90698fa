// diagnostics.hpp
// Decay-exponent fitting, the bootstrap energy-bound check, the auxiliary
// unknown w = v - P^{ab} d_a u d_b u with its bilinear/trilinear sources,
// and L^2 source-norm reports across hyperboloids.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperlab/foliation.hpp"
#include "hyperlab/slab.hpp"
#include "hyperlab/system.hpp"

namespace hyperlab {

struct DecayFit {
    double exponent = 0.0;
    double residual_rms = 0.0;
};

// Least-squares slope of log(value) against log(s); needs >= 4 positive
// samples with strictly increasing s.
DecayFit fit_decay_exponent(const std::vector<double>& s,
                            const std::vector<double>& values);

struct DecaySeries {
    std::string label;
    std::vector<double> s;
    std::vector<double> values;
};

struct BootstrapParams {
    double C0 = 1.0;
    double C1 = 10.0;
    double epsilon = 0.01;
    double delta = 0.1;
    void validate() const; // C1 > C0, C1*epsilon <= 1, 0 < delta <= 1/10
};

struct BootstrapViolation {
    double s = 0.0;
    std::string op;
    bool kg_side = false; // violated bound on the v energies
    double lhs = 0.0, rhs = 0.0;
};

struct BootstrapReport {
    bool passed = true;
    int max_order = 0;
    std::optional<BootstrapViolation> first_violation;
    std::size_t checks = 0;
};

// E(s, d^I L^J u)^{1/2} <= C1 eps s^delta and the same for E_1 of v, over
// every slice report and every operator of order <= max_order.
BootstrapReport bootstrap_check(const std::vector<SliceReport>& slices,
                                const BootstrapParams& params, int max_order);

// --- the substitution w = v - P^{ab} d_a u d_b u ------------------------------

struct KatayamaResult {
    Field w;                    // on the lattice, at the requested time
    double sup_residual = 0.0;  // sup |w + P du du - v| (pointwise identity)
    double sup_B = 0.0;         // sup |B| over the lattice
    double sup_T = 0.0;         // sup |T|
};

KatayamaResult katayama_substitution(const SlabHistory& history, double t,
                                     const QuadraticForm& P,
                                     const SystemCoefficients& coeffs);

// --- source norms ---------------------------------------------------------------

struct SourceL2Row {
    double s = 0.0;
    double l2_f = 0.0;         // ||f(v, dv)||_{L^2(H_s)}
    double l2_null_quad = 0.0; // ||P^{ab} d_a u d_b u||_{L^2(H_s)}
};

struct SourceL2Report {
    std::vector<SourceL2Row> rows;
    DecayFit f_fit;
    DecayFit null_quad_fit;
};

SourceL2Report source_l2_report(const std::vector<SliceReport>& slices);

} // namespace hyperlab
