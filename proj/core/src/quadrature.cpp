#include "hyperlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyperlab {

namespace {

// Kronrod-15 abscissae/weights on [-1,1] and the embedded Gauss-7 weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkEstimate {
    double k15;
    double err;
};

GkEstimate gk15(const std::function<double(double)>& fn, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = fn(c);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double f1 = fn(c - x);
        const double f2 = fn(c + x);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double k15 = resk * h;
    const double g7 = resg * h;
    double err = std::abs(k15 - g7);
    // standard conservative rescaling of the embedded estimate
    err = std::pow(200.0 * err, 1.5);
    err = std::min(err, std::abs(k15 - g7) * 200.0);
    if (err == 0.0) err = std::abs(k15) * 1e-16;
    return {k15, err};
}

void adapt(const std::function<double(double)>& fn, double a, double b, double tol,
           int depth, int max_depth, QuadratureResult& out) {
    const GkEstimate e = gk15(fn, a, b);
    out.evaluations += 15;
    if (depth >= max_depth || e.err <= tol) {
        out.value += e.k15;
        out.error_estimate += e.err;
        return;
    }
    const double m = 0.5 * (a + b);
    adapt(fn, a, m, 0.5 * tol, depth + 1, max_depth, out);
    adapt(fn, m, b, 0.5 * tol, depth + 1, max_depth, out);
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& fn, double a,
                                    double b, double rel_tol, double abs_tol,
                                    int max_depth) {
    QuadratureResult out;
    if (a == b) return out;
    const GkEstimate coarse = gk15(fn, a, b);
    const double tol = std::max(abs_tol, rel_tol * std::abs(coarse.k15));
    adapt(fn, a, b, tol, 0, max_depth, out);
    return out;
}

QuadratureResult integrate_adaptive_split(const std::function<double(double)>& fn,
                                          double a, double b,
                                          std::vector<double> breakpoints,
                                          double rel_tol, double abs_tol, int max_depth) {
    breakpoints.push_back(a);
    breakpoints.push_back(b);
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::remove_if(breakpoints.begin(), breakpoints.end(),
                                     [&](double x) { return x < a || x > b; }),
                      breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end(),
                                  [](double p, double q) { return std::abs(p - q) < 1e-15; }),
                      breakpoints.end());
    QuadratureResult out;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const QuadratureResult part =
            integrate_adaptive(fn, breakpoints[i], breakpoints[i + 1], rel_tol, abs_tol,
                               max_depth);
        out.value += part.value;
        out.error_estimate += part.error_estimate;
        out.evaluations += part.evaluations;
    }
    return out;
}

double integrate_simpson(const std::function<double(double)>& fn, double a, double b,
                         int n) {
    if (n < 2) n = 2;
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = fn(a) + fn(b);
    for (int i = 1; i < n; ++i) s += fn(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return s * h / 3.0;
}

double integrate_periodic(const std::function<double(double)>& fn, int n) {
    if (n < 4) n = 4;
    double s = 0.0;
    const double h = 2.0 * M_PI / n;
    for (int i = 0; i < n; ++i) s += fn(i * h);
    return s * h;
}

} // namespace hyperlab
