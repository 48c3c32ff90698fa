#include "hyperlab/system.hpp"

#include <stdexcept>

namespace hyperlab {

void SystemCoefficients::validate() const {
    if (!is_null_form(P))
        throw std::invalid_argument(
            "SystemCoefficients: P fails the null-form condition "
            "P^{ab} xi_a xi_b = 0 on null covectors xi");
}

SystemCoefficients SystemCoefficients::canonical(double) {
    SystemCoefficients c;
    c.A = {1.0, 0.0, 0.0};
    c.R = 1.0;
    c.Q = QuadraticForm::minkowski();
    c.P = QuadraticForm::minkowski();
    return c;
}

SystemCoefficients SystemCoefficients::zero() { return SystemCoefficients{}; }

double source_f(const SystemCoefficients& c, const std::array<double, 20>& v_raw) {
    const double v = v_raw[raw_index(0, 0, 0)];
    double adv = c.R * v;
    for (int a = 0; a < 3; ++a) adv += c.A[a] * raw::d_alpha(v_raw, a);
    double q = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            q += c.Q(a, b) * raw::d_alpha(v_raw, a) * raw::d_alpha(v_raw, b);
    return v * adv + q;
}

double null_quadratic(const QuadraticForm& P, const std::array<double, 20>& u_raw) {
    double s = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            s += P(a, b) * raw::d_alpha(u_raw, a) * raw::d_alpha(u_raw, b);
    return s;
}

double bilinear_B(const QuadraticForm& P, const std::array<double, 20>& u_raw) {
    const double m[3] = {1.0, -1.0, -1.0};
    double s = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            if (P(a, b) == 0.0) continue;
            double inner = 0.0;
            for (int g = 0; g < 3; ++g)
                inner += m[g] * raw::d2(u_raw, g, a) * raw::d2(u_raw, g, b);
            s += P(a, b) * inner;
        }
    return s;
}

namespace {

// d_beta of f(v, dv).
double source_f_deriv(const SystemCoefficients& c, const std::array<double, 20>& v_raw,
                      int beta) {
    const double v = v_raw[raw_index(0, 0, 0)];
    const double dbv = raw::d_alpha(v_raw, beta);
    double adv = c.R * v;
    for (int a = 0; a < 3; ++a) adv += c.A[a] * raw::d_alpha(v_raw, a);
    double d_adv = c.R * dbv;
    for (int a = 0; a < 3; ++a) d_adv += c.A[a] * raw::d2(v_raw, beta, a);
    double dq = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            dq += 2.0 * c.Q(a, b) * raw::d2(v_raw, beta, a) * raw::d_alpha(v_raw, b);
    return dbv * adv + v * d_adv + dq;
}

} // namespace

double trilinear_T(const SystemCoefficients& c, const std::array<double, 20>& u_raw,
                   const std::array<double, 20>& v_raw) {
    double s = 0.0;
    for (int a = 0; a < 3; ++a) {
        double pa = 0.0;
        for (int b = 0; b < 3; ++b) {
            if (c.P(a, b) == 0.0) continue;
            pa += c.P(a, b) * source_f_deriv(c, v_raw, b);
        }
        if (pa != 0.0) s += raw::d_alpha(u_raw, a) * pa;
    }
    return s;
}

double box_value(const std::array<double, 20>& f_raw) {
    return f_raw[raw_index(2, 0, 0)] - f_raw[raw_index(0, 2, 0)] - f_raw[raw_index(0, 0, 2)];
}

} // namespace hyperlab
