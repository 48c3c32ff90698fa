#include "hyperlab/kirchhoff.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "hyperlab/quadrature.hpp"

namespace hyperlab {

const char* disc_case_name(DiscCase c) {
    switch (c) {
        case DiscCase::IA: return "IA";
        case DiscCase::IB: return "IB";
        case DiscCase::IIA: return "IIA";
        case DiscCase::IIB: return "IIB";
        case DiscCase::IIIB: return "IIIB";
    }
    return "?";
}

DiscCase classify_case(double lambda, double t, double r) {
    if (!(lambda > 0.0) || lambda > 1.0 || !(t > r + 1.0) || !(r + 1.0 >= 1.0))
        throw std::domain_error("classify_case: need 0 < lambda <= 1 and t > r + 1 >= 1");
    const double b_contain1 = (t - r + 1.0) / (2.0 * t); // D_1 in D_0 below this
    const double b_origin = (r + 1.0) / t;               // O in D_1 above this
    const double b_contain0 = (t + r + 1.0) / (2.0 * t); // D_0 in D_1 above this
    const bool contained1 = lambda < b_contain1;  // case I
    const bool contained0 = lambda >= b_contain0; // case III
    const bool origin_in = lambda >= b_origin;    // case B
    if (contained0) return DiscCase::IIIB;
    if (contained1) return origin_in ? DiscCase::IB : DiscCase::IA;
    return origin_in ? DiscCase::IIB : DiscCase::IIA;
}

double lambda_minus(double t, double r) {
    const double a = 1.0 / t;
    const double d = r / t;
    const double disc = (1.0 + a) * (1.0 + a) - 2.0 * (1.0 - d * d + a * a);
    if (disc < 0.0)
        throw std::domain_error("lambda_minus: negative discriminant outside the near-cone regime");
    return 0.5 * ((1.0 + a) - std::sqrt(disc));
}

DiscGeometry disc_geometry(double lambda, double t, double r) {
    DiscGeometry g;
    g.lambda = lambda;
    g.t = t;
    g.r = r;
    g.case_label = classify_case(lambda, t, r);
    const double R0 = 1.0 - lambda;
    const double R1 = lambda - 1.0 / t;
    const double d = r / t;
    if (R1 <= 0.0) {
        g.rho0 = g.rho1 = 0.0;
    } else {
        g.rho0 = std::max(0.0, d - R1);
        g.rho1 = std::min(R0, d + R1);
        if (g.rho1 < g.rho0) g.rho1 = g.rho0;
    }
    try {
        g.lambda_minus = lambda_minus(t, r);
    } catch (const std::domain_error&) {
        g.lambda_minus = std::nullopt;
    }
    return g;
}

namespace {

// Angular measure of {theta : rho e_theta in D_1}, D_1 centered at
// (-d, 0) with radius R1.
double angular_measure(double rho, double d, double R1) {
    if (R1 <= 0.0) return 0.0;
    if (rho + d <= R1) return 2.0 * M_PI;
    if (rho < d - R1 || rho > d + R1) return 0.0;
    if (rho <= 0.0 || d <= 0.0) return 0.0;
    const double q = (R1 * R1 - rho * rho - d * d) / (2.0 * rho * d);
    const double theta_min = std::acos(std::clamp(q, -1.0, 1.0));
    return 2.0 * (M_PI - theta_min);
}

} // namespace

double I_lambda(double lambda, double t, double r, double rel_tol) {
    if (!(t > r + 1.0)) throw std::domain_error("I_lambda: point outside K");
    const double R0 = 1.0 - lambda;
    const double R1 = lambda - 1.0 / t;
    if (R0 <= 0.0 || R1 <= 0.0) return 0.0;
    const double d = r / t;

    // rho = R0 sin(phi) removes the singular factor:
    // I = int_0^{pi/2} measure(R0 sin phi) * R0 sin phi dphi.
    auto integrand = [&](double phi) {
        const double rho = R0 * std::sin(phi);
        return angular_measure(rho, d, R1) * R0 * std::sin(phi);
    };
    std::vector<double> breaks;
    for (double rho_star : {d - R1, R1 - d, d + R1}) {
        if (rho_star > 0.0 && rho_star < R0) breaks.push_back(std::asin(rho_star / R0));
    }
    return integrate_adaptive_split(integrand, 0.0, 0.5 * M_PI, breaks, rel_tol, 1e-14)
        .value;
}

double mc_I_lambda(double lambda, double t, double r, std::uint64_t n_samples,
                   std::uint64_t seed) {
    const double R0 = 1.0 - lambda;
    const double R1 = lambda - 1.0 / t;
    if (R0 <= 0.0 || R1 <= 0.0) return 0.0;
    const double d = r / t;
    const double R1sq = R1 * R1;

    // Stratified over the radial quantile U and the angle V; the radial
    // density rho / (R0 sqrt(R0^2 - rho^2)) is inverted exactly, so the
    // estimator is 2 pi R0 times the hit fraction.
    const std::uint64_t m = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(n_samples)))));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < m; ++i) {
        for (std::uint64_t j = 0; j < m; ++j) {
            const double U = (static_cast<double>(i) + unit(rng)) / static_cast<double>(m);
            const double V = (static_cast<double>(j) + unit(rng)) / static_cast<double>(m);
            const double rho = R0 * std::sqrt(U * (2.0 - U));
            const double th = 2.0 * M_PI * V;
            const double y1 = rho * std::cos(th) + d; // distance to center (-d, 0)
            const double y2 = rho * std::sin(th);
            if (y1 * y1 + y2 * y2 <= R1sq) ++hits;
        }
    }
    return 2.0 * M_PI * R0 * static_cast<double>(hits) /
           static_cast<double>(m * m);
}

double integral_J(double t, double r, double t0, double rel_tol) {
    if (!(t > r + 1.0)) throw std::domain_error("integral_J: point outside K");
    const double lo = t0 / t;
    std::vector<double> breaks{(t - r + 1.0) / (2.0 * t), (r + 1.0) / t,
                               (t + r + 1.0) / (2.0 * t)};
    try {
        breaks.push_back(lambda_minus(t, r));
    } catch (const std::domain_error&) {
    }
    auto integrand = [&](double lambda) {
        return I_lambda(lambda, t, r, 0.01 * rel_tol) / (lambda * lambda);
    };
    return integrate_adaptive_split(integrand, lo, 1.0, breaks, rel_tol, 1e-14, 24).value;
}

double alpha_inequality_root() {
    auto g = [](double a) { return 2.0 * std::sqrt(1.0 - std::cos(a)) - a; };
    double lo = 2.0, hi = M_PI;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double kirchhoff_solve(const ScalarFieldFn& f, double t, double x1, double x2,
                       const KirchhoffParams& params) {
    const double t0 = params.t0;
    if (t <= t0) return 0.0;
    // inner disc in polar around x with rho = (t - tau) sin(phi):
    // u = (1/2pi) int f * rho drho dtheta / sqrt(...) -> bounded integrand.
    auto inner = [&](double tau) {
        const double R = t - tau;
        auto over_phi = [&](double phi) {
            const double rho = R * std::sin(phi);
            auto over_theta = [&](double th) {
                return f(tau, x1 + rho * std::cos(th), x2 + rho * std::sin(th));
            };
            return std::sin(phi) * integrate_periodic(over_theta, params.n_theta);
        };
        return R * integrate_simpson(over_phi, 0.0, 0.5 * M_PI, params.n_phi);
    };
    const int n_tau = std::max(params.n_tau,
                               static_cast<int>(std::ceil((t - t0) * params.n_tau / 4.0)));
    return integrate_simpson(inner, t0, t, n_tau) / (2.0 * M_PI);
}

} // namespace hyperlab
