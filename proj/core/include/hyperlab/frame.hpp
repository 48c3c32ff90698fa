// frame.hpp
// Semi-hyperboloidal frame algebra: the transition matrices between the
// natural frame {d_t, d_1, d_2} and the frame {d_t, db_1, db_2} with
// db_a = (x^a/t) d_t + d_a, tensor component transforms, null-form tests,
// and first-order vector fields (boosts L_a = x^a d_t + t d_a) applied to
// scalar fields through finite-difference stencils.
#pragma once

#include <array>
#include <functional>

#include "hyperlab/geometry.hpp"

namespace hyperlab {

using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 mat3_identity();
Mat3 mat3_mul(const Mat3& a, const Mat3& b);

enum class FrameKind { Phi, Psi };

// Transition matrix at a point. Entries are indexed [frame index][natural
// index], so the first column is (1, +-x^1/t, +-x^2/t) and the rest is the
// identity block. Phi carries +x^a/t (frame -> natural), Psi carries -x^a/t.
struct FrameMatrix {
    Mat3 entries{};
    FrameKind kind = FrameKind::Phi;
};

FrameMatrix transition(const SpacetimePoint& p, FrameKind kind);

// Symmetric quadratic form with spacetime indices in {0,1,2}.
// Construction symmetrizes its input: coeffs[a][b] = coeffs[b][a].
class QuadraticForm {
public:
    QuadraticForm() = default;
    static QuadraticForm from_entries(const Mat3& raw);
    static QuadraticForm diagonal(double d0, double d1, double d2);
    static QuadraticForm minkowski(); // diag(1,-1,-1)
    static QuadraticForm zero();

    double operator()(int a, int b) const { return coeffs_[a][b]; }
    const Mat3& coeffs() const { return coeffs_; }

    // Frobenius norm.
    double norm() const;

    // Evaluate P^{ab} xi_a xi_b.
    double apply(const std::array<double, 3>& xi) const;

    QuadraticForm scaled(double c) const;

private:
    Mat3 coeffs_{};
};

// Frame components Tb^{ab} = Psi_{a'}^{a} Psi_{b'}^{b} T^{a'b'} of a
// two-tensor at p; to_natural is the inverse transform (with Phi).
QuadraticForm to_frame(const QuadraticForm& T, const SpacetimePoint& p);
QuadraticForm to_natural(const QuadraticForm& Tb, const SpacetimePoint& p);

// Sampled null-form test: true iff |P(xi,xi)| <= 1e-12 * |P| for
// xi = (1, cos th_k, sin th_k) over n_samples uniformly spaced angles.
// Quadratic in xi, so a few samples already determine the form; 64 default.
bool is_null_form(const QuadraticForm& P, int n_samples = 64);

// |Pb^{00}(p)| / (s/t)^2. For null P this is bounded on K; for P = m it is
// exactly 1 since mb^{00} = s^2/t^2. Throws outside K.
double null00_bound_ratio(const QuadraticForm& P, const SpacetimePoint& p);

// --- first-order vector fields on scalar fields -----------------------------

// A scalar field u(t, x1, x2).
using ScalarFieldFn = std::function<double(double, double, double)>;

enum class VectorFieldTag {
    Dt,   // d_t
    D1,   // d_1
    D2,   // d_2
    L1,   // x^1 d_t + t d_1
    L2,   // x^2 d_t + t d_2
    Db1,  // (x^1/t) d_t + d_1
    Db2,  // (x^2/t) d_t + d_2
};

// Centered 4th-order finite-difference stencil spacing for vector-field
// application; commutator checks need truncation well below the assertion
// tolerances, which 4th order delivers on smooth fields.
struct StencilSettings {
    double h = 0.05;
};

double apply_vector_field(const ScalarFieldFn& field, VectorFieldTag v,
                          const SpacetimePoint& p,
                          const StencilSettings& st = {});

// [V1,V2]f(p) evaluated by nested stencils, minus the closed-form
// commutator ([d_t,L_a] = d_a, [d_b,L_a] = delta_ab d_t, [L_a,L_b] =
// rotation x^a d_b - x^b d_a, [d_a,d_b] = 0). Vanishes to truncation error.
double commutator_residual(VectorFieldTag v1, VectorFieldTag v2,
                           const ScalarFieldFn& field, const SpacetimePoint& p,
                           const StencilSettings& st = {});

} // namespace hyperlab
