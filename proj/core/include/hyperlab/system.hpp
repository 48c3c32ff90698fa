// system.hpp
// The coupled semi-linear wave/Klein-Gordon system
//   Box u       = v (A^a d_a v + R v) + Q^{ab} d_a v d_b v
//   Box v + v   = P^{ab} d_a u d_b u
// with constant coefficients and P a null form. Pointwise source
// evaluators operate on raw-partial arrays as produced by slab.hpp.
#pragma once

#include <array>

#include "hyperlab/diffop.hpp"
#include "hyperlab/frame.hpp"

namespace hyperlab {

struct SystemCoefficients {
    std::array<double, 3> A{0.0, 0.0, 0.0};
    double R = 0.0;
    QuadraticForm Q = QuadraticForm::zero();
    QuadraticForm P = QuadraticForm::zero();

    // Enforces the null condition on P (sampled test).
    void validate() const;

    // A = (1,0,0), R = 1, Q = P = minkowski: the canonical test choice.
    static SystemCoefficients canonical(double = 0.0);
    static SystemCoefficients zero();
};

namespace raw {
// Raw-partial indices for first and second derivatives.
inline double d(const std::array<double, 20>& f, int a, int b, int c) {
    return f[raw_index(a, b, c)];
}
inline double d_alpha(const std::array<double, 20>& f, int alpha) {
    switch (alpha) {
        case 0: return f[raw_index(1, 0, 0)];
        case 1: return f[raw_index(0, 1, 0)];
        default: return f[raw_index(0, 0, 1)];
    }
}
inline double d2(const std::array<double, 20>& f, int alpha, int beta) {
    int a = 0, b = 0, c = 0;
    for (int idx : {alpha, beta}) {
        if (idx == 0) ++a;
        else if (idx == 1) ++b;
        else ++c;
    }
    return f[raw_index(a, b, c)];
}
} // namespace raw

// f(v, dv) = v (A^a d_a v + R v) + Q^{ab} d_a v d_b v.
double source_f(const SystemCoefficients& c, const std::array<double, 20>& v_raw);

// P^{ab} d_a u d_b u.
double null_quadratic(const QuadraticForm& P, const std::array<double, 20>& u_raw);

// Bilinear hessian source B = P^{ab} m^{a'b'} d_{a'} d_a u d_{b'} d_b u,
// m = diag(1,-1,-1).
double bilinear_B(const QuadraticForm& P, const std::array<double, 20>& u_raw);

// Trilinear source T = P^{ab} d_a u d_b( f(v, dv) ).
double trilinear_T(const SystemCoefficients& c, const std::array<double, 20>& u_raw,
                   const std::array<double, 20>& v_raw);

// Box f = dtt - d11 - d22 from raw partials.
double box_value(const std::array<double, 20>& f_raw);

} // namespace hyperlab
