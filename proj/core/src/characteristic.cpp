#include "hyperlab/characteristic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hyperlab/csv.hpp"

namespace hyperlab {

namespace {

double drdt(double t, double r) { return 2.0 * r * t / (t * t + r * r); }

double rk4_step(double t, double r, double h) {
    const double k1 = drdt(t, r);
    const double k2 = drdt(t + 0.5 * h, r + 0.5 * h * k1);
    const double k3 = drdt(t + 0.5 * h, r + 0.5 * h * k2);
    const double k4 = drdt(t + h, r + h * k3);
    return r + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Event functions for backward termination: g1 = t - r - 1 (cone boundary),
// g2 = s - 2 (initial hyperboloid). Both are positive strictly inside
// K_{[2,inf)}.
double g_cone(double t, double r) { return t - r - 1.0; }
double g_init(double t, double r) { return std::sqrt(std::max(t * t - r * r, 0.0)) - 2.0; }

} // namespace

CharCurve integrate_curve(double t0, double r0, CurveDirection direction,
                          const CurveOptions& opts) {
    const SpacetimePoint origin{t0, r0, 0.0};
    if (!origin.in_cone() || origin.s() < 2.0)
        throw std::domain_error("integrate_curve: origin must lie in K_{[2,inf)}");

    CharCurve curve;
    curve.t0 = t0;
    curve.r0 = r0;

    if (direction == CurveDirection::Forward) {
        const double t_max = (opts.t_max > t0) ? opts.t_max : t0 + 20.0;
        double t = t0, r = r0;
        curve.samples.push_back({t, r});
        while (t < t_max - 1e-14) {
            const double h = std::min(opts.dt, t_max - t);
            r = rk4_step(t, r, h);
            t += h;
            curve.samples.push_back({t, r});
        }
        curve.exit = CurveExit::None;
        return curve;
    }

    // Backward: integrate with negative steps until one of the event
    // functions crosses zero, then refine the crossing by bisection on the
    // step fraction.
    std::vector<CurvePoint> back;
    double t = t0, r = r0;
    back.push_back({t, r});
    const int max_steps = static_cast<int>(std::ceil((t0 - 1.0) / opts.dt)) * 4 + 64;
    bool exited = false;
    for (int step = 0; step < max_steps && !exited; ++step) {
        // Halve the step when an exit boundary is within two steps.
        double h = opts.dt;
        const double margin = std::min(g_cone(t, r), g_init(t, r));
        if (margin < 2.0 * opts.dt) h = 0.5 * opts.dt;
        const double t_new = t - h;
        if (t_new <= 1.0) throw std::runtime_error("integrate_curve: backward march left K");
        const double r_new = rk4_step(t, r, -h);
        if (g_cone(t_new, r_new) <= 0.0 || g_init(t_new, r_new) <= 0.0) {
            // Bisect the fraction a in (0,1] of the step at which the first
            // event vanishes.
            const bool cone_first = g_cone(t_new, r_new) <= 0.0;
            auto g_at = [&](double a) {
                const double tt = t - a * h;
                const double rr = rk4_step(t, r, -a * h);
                return cone_first ? g_cone(tt, rr) : g_init(tt, rr);
            };
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (g_at(mid) > 0.0) lo = mid;
                else hi = mid;
                if ((hi - lo) * h < opts.event_tol) break;
            }
            const double a = hi;
            const double te = t - a * h;
            const double re = rk4_step(t, r, -a * h);
            back.push_back({te, re});
            curve.exit = cone_first ? CurveExit::ConeBoundary : CurveExit::InitialHyperboloid;
            curve.exit_point = {te, re};
            exited = true;
        } else {
            t = t_new;
            r = r_new;
            back.push_back({t, r});
        }
    }
    if (!exited)
        throw std::runtime_error("integrate_curve: backward curve failed to reach the boundary");
    std::reverse(back.begin(), back.end());
    curve.samples = std::move(back);
    return curve;
}

double potential_value(double t, double r) {
    if (!(t > r) || r < 0.0) throw std::domain_error("potential_value: need t > r >= 0");
    const double rho = r / t;
    return (t - r) / (2.0 * t * t) * (2.0 + 3.0 * rho) / (1.0 + rho * rho);
}

std::vector<double> solve_transport(const TransportProblem& prob) {
    const std::size_t n = prob.t.size();
    if (n == 0 || prob.A.size() != n || prob.B.size() != n)
        throw std::invalid_argument("solve_transport: inconsistent sample arrays");
    // cumulative integral of A by trapezoid
    std::vector<double> IA(n, 0.0);
    for (std::size_t k = 1; k < n; ++k)
        IA[k] = IA[k - 1] + 0.5 * (prob.A[k] + prob.A[k - 1]) * (prob.t[k] - prob.t[k - 1]);
    // y_k = y_{k-1} e^{-(IA_k - IA_{k-1})} + trapezoid of B e^{IA - IA_k}
    // over [t_{k-1}, t_k]; unrolling the recursion reproduces the
    // variation-of-constants formula with trapezoidal quadrature.
    std::vector<double> y(n, 0.0);
    y[0] = prob.y0;
    for (std::size_t k = 1; k < n; ++k) {
        const double decay = std::exp(IA[k - 1] - IA[k]);
        const double w0 = prob.B[k - 1] * decay;
        const double w1 = prob.B[k];
        y[k] = y[k - 1] * decay + 0.5 * (w0 + w1) * (prob.t[k] - prob.t[k - 1]);
    }
    return y;
}

std::vector<double> solve_transport_rk4(const TransportProblem& prob) {
    const std::size_t n = prob.t.size();
    if (n == 0 || prob.A.size() != n || prob.B.size() != n)
        throw std::invalid_argument("solve_transport_rk4: inconsistent sample arrays");
    auto interp = [&](const std::vector<double>& f, double t) {
        auto it = std::upper_bound(prob.t.begin(), prob.t.end(), t);
        std::size_t k = std::clamp<std::size_t>(it - prob.t.begin(), 1, n - 1);
        const double a = (t - prob.t[k - 1]) / (prob.t[k] - prob.t[k - 1]);
        return f[k - 1] * (1.0 - a) + f[k] * a;
    };
    auto rhs = [&](double t, double y) { return -interp(prob.A, t) * y + interp(prob.B, t); };
    std::vector<double> y(n);
    y[0] = prob.y0;
    for (std::size_t k = 1; k < n; ++k) {
        // a few RK4 substeps per sample interval
        const int sub = 4;
        const double h = (prob.t[k] - prob.t[k - 1]) / sub;
        double t = prob.t[k - 1], val = y[k - 1];
        for (int j = 0; j < sub; ++j) {
            const double k1 = rhs(t, val);
            const double k2 = rhs(t + 0.5 * h, val + 0.5 * h * k1);
            const double k3 = rhs(t + 0.5 * h, val + 0.5 * h * k2);
            const double k4 = rhs(t + h, val + h * k3);
            val += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
            t += h;
        }
        y[k] = val;
    }
    return y;
}

double kg_ray_entry_s0(double t, double r) {
    if (!(t > r)) throw std::domain_error("kg_ray_entry_s0: need t > r");
    if (r / t > 0.6) return std::sqrt((t + r) / (t - r));
    return 2.0;
}

KgRaySolution kg_ray_transport(double W0, double W0p, double s0, double s1,
                               const std::vector<double>& F_s,
                               const std::vector<double>& F_values, double ds) {
    if (F_s.size() != F_values.size())
        throw std::invalid_argument("kg_ray_transport: inconsistent source samples");
    auto F = [&](double s) -> double {
        if (F_s.empty()) return 0.0;
        if (s <= F_s.front()) return F_values.front();
        if (s >= F_s.back()) return F_values.back();
        auto it = std::upper_bound(F_s.begin(), F_s.end(), s);
        std::size_t k = it - F_s.begin();
        const double a = (s - F_s[k - 1]) / (F_s[k] - F_s[k - 1]);
        return F_values[k - 1] * (1.0 - a) + F_values[k] * a;
    };
    const int n = std::max(2, static_cast<int>(std::ceil((s1 - s0) / ds)));
    const double h = (s1 - s0) / n;
    KgRaySolution sol;
    sol.s.reserve(n + 1);
    sol.W.reserve(n + 1);
    sol.Wp.reserve(n + 1);
    double s = s0, W = W0, Wp = W0p;
    sol.s.push_back(s);
    sol.W.push_back(W);
    sol.Wp.push_back(Wp);
    for (int k = 0; k < n; ++k) {
        // RK4 on (W, W')' = (W', F - W)
        auto f1 = [&](double ss, double w, double wp) { (void)ss; (void)w; return wp; };
        auto f2 = [&](double ss, double w, double wp) { (void)wp; return F(ss) - w; };
        const double a1 = f1(s, W, Wp), b1 = f2(s, W, Wp);
        const double a2 = f1(s + 0.5 * h, W + 0.5 * h * a1, Wp + 0.5 * h * b1);
        const double b2 = f2(s + 0.5 * h, W + 0.5 * h * a1, Wp + 0.5 * h * b1);
        const double a3 = f1(s + 0.5 * h, W + 0.5 * h * a2, Wp + 0.5 * h * b2);
        const double b3 = f2(s + 0.5 * h, W + 0.5 * h * a2, Wp + 0.5 * h * b2);
        const double a4 = f1(s + h, W + h * a3, Wp + h * b3);
        const double b4 = f2(s + h, W + h * a3, Wp + h * b3);
        W += h / 6.0 * (a1 + 2 * a2 + 2 * a3 + a4);
        Wp += h / 6.0 * (b1 + 2 * b2 + 2 * b3 + b4);
        s = s0 + (k + 1) * h;
        sol.s.push_back(s);
        sol.W.push_back(W);
        sol.Wp.push_back(Wp);
    }
    return sol;
}

GradientBoundReport sharp_gradient_bound(const GradientBoundData& data) {
    GradientBoundReport rep;
    rep.measured = std::abs(data.dtu_target);
    const std::size_t n = data.tau.size();
    if (n < 2) throw std::invalid_argument("sharp_gradient_bound: need curve samples");

    // cumulative int of P from tau_k to the target time
    std::vector<double> IP(n, 0.0);
    for (std::size_t k = 1; k < n; ++k)
        IP[k] = IP[k - 1] + 0.5 * (data.P[k] + data.P[k - 1]) * (data.tau[k] - data.tau[k - 1]);
    const double IP_total = IP[n - 1];
    double integral = 0.0;
    std::vector<double> g(n);
    for (std::size_t k = 0; k < n; ++k)
        g[k] = std::abs(data.R_w[k]) * std::exp(IP[k] - IP_total);
    for (std::size_t k = 1; k < n; ++k)
        integral += 0.5 * (g[k] + g[k - 1]) * (data.tau[k] - data.tau[k - 1]);

    const double t = data.target.t, r = data.target.r();
    const double s = data.target.s();
    rep.bound = std::sqrt((t + r) / t) / s *
                (std::abs(data.w_entry) * std::exp(-IP_total) + integral);
    rep.ratio = (rep.bound > 0.0) ? rep.measured / rep.bound
                                  : (rep.measured > 0.0 ? std::numeric_limits<double>::infinity()
                                                        : 0.0);
    return rep;
}

std::string curve_to_csv(const CharCurve& curve) {
    CsvWriter csv({"t", "r", "s", "P"});
    for (const auto& p : curve.samples)
        csv.row({p.t, p.r, p.s(), potential_value(p.t, p.r)});
    return csv.str();
}

} // namespace hyperlab
