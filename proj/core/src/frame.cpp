#include "hyperlab/frame.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperlab {

Mat3 mat3_identity() {
    Mat3 m{};
    for (int i = 0; i < 3; ++i) m[i][i] = 1.0;
    return m;
}

Mat3 mat3_mul(const Mat3& a, const Mat3& b) {
    Mat3 c{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            const double aik = a[i][k];
            for (int j = 0; j < 3; ++j) c[i][j] += aik * b[k][j];
        }
    return c;
}

FrameMatrix transition(const SpacetimePoint& p, FrameKind kind) {
    if (p.t == 0.0) throw std::domain_error("transition: t = 0");
    const double sgn = (kind == FrameKind::Phi) ? 1.0 : -1.0;
    FrameMatrix f;
    f.kind = kind;
    f.entries = mat3_identity();
    f.entries[1][0] = sgn * p.x1 / p.t;
    f.entries[2][0] = sgn * p.x2 / p.t;
    return f;
}

QuadraticForm QuadraticForm::from_entries(const Mat3& raw) {
    QuadraticForm q;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) q.coeffs_[a][b] = 0.5 * (raw[a][b] + raw[b][a]);
    return q;
}

QuadraticForm QuadraticForm::diagonal(double d0, double d1, double d2) {
    QuadraticForm q;
    q.coeffs_[0][0] = d0;
    q.coeffs_[1][1] = d1;
    q.coeffs_[2][2] = d2;
    return q;
}

QuadraticForm QuadraticForm::minkowski() { return diagonal(1.0, -1.0, -1.0); }

QuadraticForm QuadraticForm::zero() { return QuadraticForm{}; }

double QuadraticForm::norm() const {
    double s = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) s += coeffs_[a][b] * coeffs_[a][b];
    return std::sqrt(s);
}

double QuadraticForm::apply(const std::array<double, 3>& xi) const {
    double s = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) s += coeffs_[a][b] * xi[a] * xi[b];
    return s;
}

QuadraticForm QuadraticForm::scaled(double c) const {
    QuadraticForm q = *this;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) q.coeffs_[a][b] *= c;
    return q;
}

namespace {

// Tb[a][b] = M[a'][a] M[b'][b] T[a'][b'] for a transition matrix M indexed
// [lower][upper], i.e. Tb = M^T T M.
QuadraticForm transform_with(const QuadraticForm& T, const Mat3& m) {
    Mat3 out{};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            double s = 0.0;
            for (int ap = 0; ap < 3; ++ap)
                for (int bp = 0; bp < 3; ++bp) s += m[ap][a] * m[bp][b] * T(ap, bp);
            out[a][b] = s;
        }
    return QuadraticForm::from_entries(out);
}

} // namespace

QuadraticForm to_frame(const QuadraticForm& T, const SpacetimePoint& p) {
    return transform_with(T, transition(p, FrameKind::Psi).entries);
}

QuadraticForm to_natural(const QuadraticForm& Tb, const SpacetimePoint& p) {
    return transform_with(Tb, transition(p, FrameKind::Phi).entries);
}

bool is_null_form(const QuadraticForm& P, int n_samples) {
    if (n_samples < 8) throw std::invalid_argument("is_null_form: n_samples must be >= 8");
    const double tol = 1e-12 * P.norm();
    for (int k = 0; k < n_samples; ++k) {
        const double th = 2.0 * M_PI * static_cast<double>(k) / n_samples;
        const std::array<double, 3> xi{1.0, std::cos(th), std::sin(th)};
        if (std::abs(P.apply(xi)) > tol) return false;
    }
    return true;
}

double null00_bound_ratio(const QuadraticForm& P, const SpacetimePoint& p) {
    if (!p.in_cone()) throw std::domain_error("null00_bound_ratio: point outside K = {t > r + 1}");
    const QuadraticForm Pb = to_frame(P, p);
    const double st = p.s_over_t();
    return std::abs(Pb(0, 0)) / (st * st);
}

namespace {

// 4th-order centered first derivative along one coordinate axis.
double fd_axis(const ScalarFieldFn& f, int axis, double t, double x1, double x2, double h) {
    auto at = [&](double d) {
        switch (axis) {
            case 0: return f(t + d, x1, x2);
            case 1: return f(t, x1 + d, x2);
            default: return f(t, x1, x2 + d);
        }
    };
    return (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12.0 * h);
}

} // namespace

double apply_vector_field(const ScalarFieldFn& field, VectorFieldTag v,
                          const SpacetimePoint& p, const StencilSettings& st) {
    const double t = p.t, x1 = p.x1, x2 = p.x2, h = st.h;
    switch (v) {
        case VectorFieldTag::Dt: return fd_axis(field, 0, t, x1, x2, h);
        case VectorFieldTag::D1: return fd_axis(field, 1, t, x1, x2, h);
        case VectorFieldTag::D2: return fd_axis(field, 2, t, x1, x2, h);
        case VectorFieldTag::L1:
            return x1 * fd_axis(field, 0, t, x1, x2, h) + t * fd_axis(field, 1, t, x1, x2, h);
        case VectorFieldTag::L2:
            return x2 * fd_axis(field, 0, t, x1, x2, h) + t * fd_axis(field, 2, t, x1, x2, h);
        case VectorFieldTag::Db1:
            if (t == 0.0) throw std::domain_error("apply_vector_field: Db1 needs t != 0");
            return (x1 / t) * fd_axis(field, 0, t, x1, x2, h) + fd_axis(field, 1, t, x1, x2, h);
        case VectorFieldTag::Db2:
            if (t == 0.0) throw std::domain_error("apply_vector_field: Db2 needs t != 0");
            return (x2 / t) * fd_axis(field, 0, t, x1, x2, h) + fd_axis(field, 2, t, x1, x2, h);
    }
    throw std::logic_error("apply_vector_field: unknown tag");
}

namespace {

ScalarFieldFn apply_as_field(const ScalarFieldFn& field, VectorFieldTag v, StencilSettings st) {
    return [field, v, st](double t, double x1, double x2) {
        return apply_vector_field(field, v, SpacetimePoint{t, x1, x2}, st);
    };
}

// Closed-form commutator [V1,V2] applied to f at p. Returns 0 contribution
// for commuting pairs.
double closed_form_commutator(VectorFieldTag v1, VectorFieldTag v2,
                              const ScalarFieldFn& f, const SpacetimePoint& p,
                              const StencilSettings& st) {
    using V = VectorFieldTag;
    auto d = [&](VectorFieldTag v) { return apply_vector_field(f, v, p, st); };
    auto swap_sign = [&](double val) { return -val; };

    // [d_t, L_a] = d_a
    if (v1 == V::Dt && v2 == V::L1) return d(V::D1);
    if (v1 == V::L1 && v2 == V::Dt) return swap_sign(d(V::D1));
    if (v1 == V::Dt && v2 == V::L2) return d(V::D2);
    if (v1 == V::L2 && v2 == V::Dt) return swap_sign(d(V::D2));
    // [d_b, L_a] = delta_ab d_t
    if (v1 == V::D1 && v2 == V::L1) return d(V::Dt);
    if (v1 == V::L1 && v2 == V::D1) return swap_sign(d(V::Dt));
    if (v1 == V::D2 && v2 == V::L2) return d(V::Dt);
    if (v1 == V::L2 && v2 == V::D2) return swap_sign(d(V::Dt));
    if ((v1 == V::D1 && v2 == V::L2) || (v1 == V::L2 && v2 == V::D1)) return 0.0;
    if ((v1 == V::D2 && v2 == V::L1) || (v1 == V::L1 && v2 == V::D2)) return 0.0;
    // [L_1, L_2] = x^1 d_2 - x^2 d_1 (rotation)
    if (v1 == V::L1 && v2 == V::L2) return p.x1 * d(V::D2) - p.x2 * d(V::D1);
    if (v1 == V::L2 && v2 == V::L1) return -(p.x1 * d(V::D2) - p.x2 * d(V::D1));
    // partial derivatives commute
    const bool p1 = (v1 == V::Dt || v1 == V::D1 || v1 == V::D2);
    const bool p2 = (v2 == V::Dt || v2 == V::D1 || v2 == V::D2);
    if (p1 && p2) return 0.0;
    if (v1 == v2) return 0.0;
    throw std::invalid_argument("commutator_residual: unsupported vector-field pair");
}

} // namespace

double commutator_residual(VectorFieldTag v1, VectorFieldTag v2,
                           const ScalarFieldFn& field, const SpacetimePoint& p,
                           const StencilSettings& st) {
    const ScalarFieldFn v2f = apply_as_field(field, v2, st);
    const ScalarFieldFn v1f = apply_as_field(field, v1, st);
    const double nested = apply_vector_field(v2f, v1, p, st) - apply_vector_field(v1f, v2, p, st);
    return nested - closed_form_commutator(v1, v2, field, p, st);
}

} // namespace hyperlab
