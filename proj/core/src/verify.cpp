#include "hyperlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "hyperlab/characteristic.hpp"
#include "hyperlab/csv.hpp"
#include "hyperlab/diagnostics.hpp"
#include "hyperlab/frame.hpp"
#include "hyperlab/kirchhoff.hpp"

namespace hyperlab {

namespace {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

SpacetimePoint random_cone_point(std::mt19937_64& rng, double t_lo = 2.0,
                                 double t_hi = 1e6, double rho_max = 0.999) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double t = t_lo * std::pow(t_hi / t_lo, u(rng));
    const double rho = rho_max * u(rng);
    double r = rho * t;
    if (r > t - 1.0 - 1e-9) r = std::max(0.0, (t - 1.0) * u(rng)); // keep inside K
    const double th = 2.0 * M_PI * u(rng);
    return SpacetimePoint{t, r * std::cos(th), r * std::sin(th)};
}

// Fixed corpus of polynomials of degree <= 3 in (t, x1, x2).
std::vector<ScalarFieldFn> polynomial_corpus(std::uint64_t seed, int count = 8) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<ScalarFieldFn> fields;
    for (int k = 0; k < count; ++k) {
        std::vector<std::array<double, 4>> terms; // (c, a, b, cdeg)
        for (int a = 0; a <= 3; ++a)
            for (int b = 0; a + b <= 3; ++b)
                for (int c = 0; a + b + c <= 3; ++c)
                    terms.push_back({coef(rng), double(a), double(b), double(c)});
        fields.push_back([terms](double t, double x1, double x2) {
            double s = 0.0;
            for (const auto& tm : terms)
                s += tm[0] * std::pow(t, tm[1]) * std::pow(x1, tm[2]) * std::pow(x2, tm[3]);
            return s;
        });
    }
    return fields;
}

CheckResult gate_below(const std::string& name, double value, double limit,
                       std::string detail = "") {
    return CheckResult{name, value <= limit, value, limit, std::move(detail)};
}

CheckResult gate_between(const std::string& name, double value, double lo, double hi,
                         std::string detail = "") {
    CheckResult r{name, value >= lo && value <= hi, value, hi, std::move(detail)};
    return r;
}

} // namespace

CheckSuite verify_frame_suite(std::uint64_t seed) {
    Stopwatch watch;
    CheckSuite suite;
    suite.name = "frame";
    std::mt19937_64 rng(seed);

    // transition matrices invert each other
    double worst_inv = 0.0;
    for (int k = 0; k < 10'000; ++k) {
        const SpacetimePoint p = random_cone_point(rng);
        const Mat3 prod =
            mat3_mul(transition(p, FrameKind::Phi).entries, transition(p, FrameKind::Psi).entries);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                worst_inv = std::max(worst_inv, std::abs(prod[a][b] - (a == b ? 1.0 : 0.0)));
    }
    suite.checks.push_back(gate_below("transition.inverse_pair", worst_inv, 1e-12,
                                      "max |Phi Psi - I| over 1e4 cone points"));

    // db_a = t^{-1} L_a on the polynomial corpus
    const auto polys = polynomial_corpus(seed + 1);
    double worst_tangent = 0.0;
    {
        std::mt19937_64 rng2(seed + 2);
        for (int k = 0; k < 1'250; ++k) {
            const SpacetimePoint p = random_cone_point(rng2, 2.0, 50.0, 0.9);
            for (const auto& f : polys) {
                const double scale = 1.0 + std::abs(f(p.t, p.x1, p.x2));
                const double a1 =
                    apply_vector_field(f, VectorFieldTag::Db1, p) -
                    apply_vector_field(f, VectorFieldTag::L1, p) / p.t;
                const double a2 =
                    apply_vector_field(f, VectorFieldTag::Db2, p) -
                    apply_vector_field(f, VectorFieldTag::L2, p) / p.t;
                worst_tangent = std::max(worst_tangent, std::abs(a1) / scale);
                worst_tangent = std::max(worst_tangent, std::abs(a2) / scale);
            }
        }
    }
    suite.checks.push_back(gate_below("tangent.equals_boost_over_t", worst_tangent, 1e-12,
                                      "relative residual on the polynomial corpus"));

    // commutators on the polynomial corpus
    double worst_comm = 0.0;
    {
        using V = VectorFieldTag;
        const std::vector<std::pair<V, V>> pairs{
            {V::Dt, V::L1}, {V::Dt, V::L2}, {V::D1, V::L1}, {V::D2, V::L2},
            {V::D1, V::L2}, {V::D2, V::L1}, {V::L1, V::L2}, {V::Dt, V::D1}};
        std::mt19937_64 rng3(seed + 3);
        for (int k = 0; k < 40; ++k) {
            const SpacetimePoint p = random_cone_point(rng3, 2.0, 30.0, 0.9);
            for (const auto& f : polys)
                for (const auto& [v1, v2] : pairs) {
                    const double scale = 1.0 + std::abs(f(p.t, p.x1, p.x2));
                    worst_comm = std::max(
                        worst_comm, std::abs(commutator_residual(v1, v2, f, p)) / scale);
                }
        }
    }
    suite.checks.push_back(gate_below("commutators.closed_form", worst_comm, 1e-8,
                                      "relative residual on the polynomial corpus"));

    // null bound ratio for the Minkowski form
    double worst_null = 0.0;
    {
        std::mt19937_64 rng4(seed + 4);
        const QuadraticForm m = QuadraticForm::minkowski();
        for (int k = 0; k < 10'000; ++k) {
            const SpacetimePoint p = random_cone_point(rng4);
            worst_null = std::max(worst_null, std::abs(null00_bound_ratio(m, p) - 1.0));
        }
    }
    suite.checks.push_back(gate_below("null.minkowski_ratio_one", worst_null, 1e-12,
                                      "max |ratio - 1| over 1e4 cone points"));

    // homogeneity of s/t under boosts and partials
    const ScalarFieldFn s_over_t = [](double t, double x1, double x2) {
        return std::sqrt(std::max(t * t - x1 * x1 - x2 * x2, 0.0)) / t;
    };
    double worst_boost_ratio = 0.0, worst_partial_c = 0.0;
    {
        std::mt19937_64 rng5(seed + 5);
        for (int k = 0; k < 2'000; ++k) {
            const SpacetimePoint p = random_cone_point(rng5, 2.5, 1e3, 0.85);
            const double st = p.s_over_t();
            const double l1 = apply_vector_field(s_over_t, VectorFieldTag::L1, p);
            const double l2 = apply_vector_field(s_over_t, VectorFieldTag::L2, p);
            worst_boost_ratio = std::max(worst_boost_ratio,
                                         std::max(std::abs(l1), std::abs(l2)) / st);
            for (auto v : {VectorFieldTag::Dt, VectorFieldTag::D1, VectorFieldTag::D2}) {
                const double d = apply_vector_field(s_over_t, v, p);
                worst_partial_c = std::max(worst_partial_c, std::abs(d) * p.s());
            }
        }
    }
    suite.checks.push_back(gate_below("homogeneity.boost_of_s_over_t", worst_boost_ratio,
                                      1.0 + 1e-6, "max |L_a(s/t)| / (s/t)"));
    suite.checks.push_back(gate_below("homogeneity.partial_of_s_over_t", worst_partial_c,
                                      3.0, "measured constant in |d(s/t)| <= C/s"));

    suite.seconds = watch.seconds();
    return suite;
}

CheckSuite verify_characteristics_suite(std::uint64_t seed) {
    Stopwatch watch;
    CheckSuite suite;
    suite.name = "characteristics";
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    // forward monotonicity of s
    bool monotone = true;
    double worst_ds = 1e300;
    for (int k = 0; k < 100; ++k) {
        const double t0 = 2.0 + 8.0 * u(rng);
        const double r0 = u(rng) * (t0 - 1.2);
        if (std::sqrt(t0 * t0 - r0 * r0) < 2.0) continue;
        CurveOptions opts;
        opts.t_max = t0 + 5.0;
        const CharCurve c = integrate_curve(t0, r0, CurveDirection::Forward, opts);
        for (std::size_t i = 1; i < c.samples.size(); ++i) {
            const double ds = c.samples[i].s() - c.samples[i - 1].s();
            worst_ds = std::min(worst_ds, ds);
            if (ds <= 0.0) monotone = false;
        }
    }
    suite.checks.push_back(CheckResult{"curves.s_strictly_increasing", monotone, worst_ds,
                                       0.0, "min forward increment of s"});

    // backward exit dichotomy
    double worst_exit = 0.0;
    bool all_exited = true;
    for (int k = 0; k < 100; ++k) {
        const double t0 = 2.5 + 17.5 * u(rng);
        const double rho = 0.98 * u(rng);
        double r0 = rho * t0;
        if (r0 > t0 - 1.1) r0 = t0 - 1.1;
        if (std::sqrt(t0 * t0 - r0 * r0) < 2.01) {
            r0 = std::sqrt(t0 * t0 - 4.1);
        }
        const CharCurve c = integrate_curve(t0, r0, CurveDirection::Backward);
        if (c.exit == CurveExit::None) {
            all_exited = false;
            continue;
        }
        const double te = c.exit_point.t, re = c.exit_point.r;
        const double miss = (c.exit == CurveExit::ConeBoundary)
                                ? std::abs(te - re - 1.0)
                                : std::abs(std::sqrt(te * te - re * re) - 2.0);
        worst_exit = std::max(worst_exit, miss);
    }
    suite.checks.push_back(CheckResult{"curves.exit_dichotomy", all_exited && worst_exit <= 1e-8,
                                       worst_exit, 1e-8,
                                       "max event residual at 100 backward exits"});

    // potential lower bound P t^2/(t-r) >= 1, measured upper bound
    double lo = 1e300, hi = 0.0;
    for (int k = 0; k < 10'000; ++k) {
        const double t = 2.0 + 100.0 * u(rng);
        const double r = u(rng) * (t - 1.0);
        const double ratio = potential_value(t, r) * t * t / (t - r);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    suite.checks.push_back(CheckResult{"potential.normalized_range",
                                       lo >= 1.0 - 1e-12 && hi <= 2.5, lo, 1.0,
                                       "min of P t^2/(t-r) (max " + format_double(hi) + ")"});

    // transport solver against the RK4 oracle on stored curves
    double worst_transport = 0.0;
    for (int k = 0; k < 10; ++k) {
        const double t0 = 6.0 + 10.0 * u(rng);
        const double r0 = (0.3 + 0.5 * u(rng)) * (t0 - 1.5);
        const CharCurve c = integrate_curve(t0, r0, CurveDirection::Backward);
        TransportProblem prob;
        for (const auto& p : c.samples) {
            prob.t.push_back(p.t);
            prob.A.push_back(potential_value(p.t, p.r));
            prob.B.push_back(std::sin(0.7 * p.t) / (1.0 + p.t));
        }
        prob.y0 = 0.5;
        const auto y_vc = solve_transport(prob);
        const auto y_rk = solve_transport_rk4(prob);
        for (std::size_t i = 0; i < y_vc.size(); ++i)
            worst_transport = std::max(worst_transport, std::abs(y_vc[i] - y_rk[i]));
    }
    suite.checks.push_back(gate_below("transport.rk4_oracle", worst_transport, 1e-6,
                                      "max deviation from the RK4 route"));

    // Klein-Gordon ray oscillator: closed form and a-priori bound
    double worst_ray = 0.0;
    {
        const auto sol = kg_ray_transport(0.3, -0.2, 2.0, 10.0, {}, {});
        for (std::size_t i = 0; i < sol.s.size(); ++i) {
            const double sref = 0.3 * std::cos(sol.s[i] - 2.0) - 0.2 * std::sin(sol.s[i] - 2.0);
            worst_ray = std::max(worst_ray, std::abs(sol.W[i] - sref));
        }
    }
    suite.checks.push_back(gate_below("kg_ray.harmonic_closed_form", worst_ray, 1e-9,
                                      "free oscillator against cos/sin"));

    double worst_bound = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double W0 = 2.0 * u(rng) - 1.0;
        const double W0p = 2.0 * u(rng) - 1.0;
        const double s0 = 2.0 + 3.0 * u(rng);
        const double s1 = s0 + 1.0 + 6.0 * u(rng);
        std::vector<double> fs, fv;
        double int_f = 0.0;
        const int m = 40;
        for (int i = 0; i <= m; ++i) {
            const double s = s0 + (s1 - s0) * i / m;
            fs.push_back(s);
            fv.push_back(std::sin(1.3 * s + k) * (0.5 + u(rng)));
        }
        for (int i = 1; i <= m; ++i)
            int_f += 0.5 * (std::abs(fv[i]) + std::abs(fv[i - 1])) * (fs[i] - fs[i - 1]);
        const auto sol = kg_ray_transport(W0, W0p, s0, s1, fs, fv);
        const double lhs = std::abs(sol.W.back()) + std::abs(sol.Wp.back());
        const double rhs = 2.0 * (std::abs(W0) + std::abs(W0p)) + 2.0 * int_f;
        worst_bound = std::max(worst_bound, lhs / rhs);
    }
    suite.checks.push_back(gate_below("kg_ray.apriori_bound", worst_bound, 1.0,
                                      "max (|W|+|W'|) / (2(|W0|+|W0'|) + 2 int |F|)"));

    suite.seconds = watch.seconds();
    return suite;
}

std::vector<KirchhoffSweepRow> kirchhoff_sweep(double t, const std::vector<double>& fracs) {
    std::vector<KirchhoffSweepRow> rows;
    for (double f : fracs) {
        KirchhoffSweepRow row;
        row.t = t;
        row.tmr_over_t = f;
        row.r = t * (1.0 - f);
        row.J = integral_J(t, row.r);
        row.J_over_sqrt = row.J / std::sqrt(f);
        rows.push_back(row);
    }
    return rows;
}

CheckSuite verify_kirchhoff_suite(const KirchhoffVerifyOptions& opts) {
    Stopwatch watch;
    CheckSuite suite;
    suite.name = "kirchhoff";
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    // case table spot values and monotone label order along lambda
    {
        bool ok = classify_case(0.2, 10, 6) == DiscCase::IA &&
                  classify_case(0.35, 10, 2) == DiscCase::IB &&
                  classify_case(0.9, 10, 6) == DiscCase::IIIB;
        int worst_order = 0;
        for (int k = 0; k < 200 && ok; ++k) {
            const double t = 3.0 + 200.0 * u(rng);
            const double r = u(rng) * (t - 1.2);
            int prev = -1;
            for (int i = 1; i <= 400; ++i) {
                const double lambda = static_cast<double>(i) / 401.0;
                const int rank = static_cast<int>(classify_case(lambda, t, r));
                if (rank < prev) {
                    ok = false;
                    worst_order = i;
                    break;
                }
                prev = rank;
            }
        }
        suite.checks.push_back(CheckResult{"case.table_and_monotone", ok,
                                           static_cast<double>(worst_order), 0,
                                           "spot labels and label order along lambda"});
    }

    // full-disc closed form in case IIIB
    {
        const double val = I_lambda(0.9, 10.0, 6.0);
        const double ref = 2.0 * M_PI * 0.1;
        suite.checks.push_back(gate_below("I.full_disc_closed_form",
                                          std::abs(val - ref), 1e-6,
                                          "IIIB value against 2 pi (1 - lambda)"));
    }

    // containment I <= 2 pi (1 - lambda) and continuity across thresholds
    {
        double worst_contain = 0.0, worst_jump = 0.0;
        for (int k = 0; k < 60; ++k) {
            const double t = 3.0 + 100.0 * u(rng);
            const double r = u(rng) * (t - 1.2);
            for (int i = 1; i < 20; ++i) {
                const double lambda = i / 20.0;
                const double val = I_lambda(lambda, t, r);
                worst_contain = std::max(worst_contain, val - 2.0 * M_PI * (1.0 - lambda));
            }
            for (double thr : {(t - r + 1.0) / (2.0 * t), (r + 1.0) / t, (t + r + 1.0) / (2.0 * t)}) {
                if (thr <= 2e-6 || thr >= 1.0 - 2e-6) continue;
                const double jump =
                    std::abs(I_lambda(thr + 1e-7, t, r) - I_lambda(thr - 1e-7, t, r));
                worst_jump = std::max(worst_jump, jump);
            }
        }
        suite.checks.push_back(gate_below("I.containment", worst_contain, 1e-10,
                                          "max of I - 2 pi (1 - lambda)"));
        suite.checks.push_back(gate_below("I.continuity_at_thresholds", worst_jump, 1e-6,
                                          "max jump across case thresholds"));
    }

    // Monte-Carlo oracle agreement on random configurations
    {
        double worst_rel = 0.0;
        int accepted = 0;
        std::uint64_t attempt = 0;
        while (accepted < opts.n_configs && attempt < 100000) {
            ++attempt;
            const double t = 4.0 * std::pow(50.0, u(rng)); // t in [4, 200]
            const double r = u(rng) * (t - 1.5);
            const double lambda = 1.2 / t + (0.98 - 1.2 / t) * u(rng);
            if (lambda <= 1.05 / t || lambda >= 0.99) continue;
            // pilot occupancy filter keeps the Bernoulli noise well under
            // the comparison tolerance
            const double pilot = mc_I_lambda(lambda, t, r, 100'000, opts.seed + attempt);
            const double occupancy = pilot / (2.0 * M_PI * (1.0 - lambda));
            if (occupancy < 0.03) continue;
            ++accepted;
            const double mc = mc_I_lambda(lambda, t, r, opts.mc_samples, opts.seed + 7919 * attempt);
            const double quad = I_lambda(lambda, t, r);
            worst_rel = std::max(worst_rel, std::abs(quad - mc) / std::max(mc, 1e-300));
        }
        suite.checks.push_back(gate_below(
            "I.monte_carlo_oracle", worst_rel, opts.mc_rel_tol,
            "max relative deviation over " + std::to_string(accepted) + " configs"));
    }

    // lambda_- closed form: defining residual and near-cone bracketing
    {
        double worst_resid = 0.0;
        bool bracket_ok = true;
        for (int k = 0; k < 500; ++k) {
            const double t = 20.0 + 2000.0 * u(rng);
            const double frac = 0.001 + 0.098 * u(rng); // (t-r)/t < 1/10
            const double r = t * (1.0 - frac);
            const double lm = lambda_minus(t, r);
            const double resid = std::abs((lm - 1.0 / t) * (lm - 1.0 / t) +
                                          (1.0 - lm) * (1.0 - lm) - (r / t) * (r / t));
            worst_resid = std::max(worst_resid, resid);
            if (!(0.5 * frac <= lm && lm <= 3.0 * frac)) bracket_ok = false;
        }
        suite.checks.push_back(gate_below("lambda_minus.defining_residual", worst_resid,
                                          1e-12, "residual of the right-angle equation"));
        suite.checks.push_back(CheckResult{"lambda_minus.bracketing", bracket_ok, 0, 0,
                                           "(1-r/t)/2 <= lambda_- <= 3(1-r/t) near the cone"});
    }

    // near-cone scaling of J
    {
        const auto rows = kirchhoff_sweep(opts.sweep_t, opts.sweep_fracs);
        std::vector<double> xs, ys, scaled;
        for (const auto& row : rows) {
            xs.push_back(1.0 / row.tmr_over_t); // increasing for the fit
            ys.push_back(row.J);
            scaled.push_back(row.J_over_sqrt);
        }
        // slope of log J against log((t-r)/t)
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int n = static_cast<int>(rows.size());
        for (const auto& row : rows) {
            const double x = std::log(row.tmr_over_t), y = std::log(row.J);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        double med;
        {
            std::vector<double> tmp = scaled;
            std::sort(tmp.begin(), tmp.end());
            med = tmp[tmp.size() / 2];
        }
        double worst_factor = 1.0;
        for (double v : scaled)
            worst_factor = std::max(worst_factor, std::max(v / med, med / v));
        suite.checks.push_back(gate_between("J.near_cone_slope", slope, 0.4, 0.6,
                                            "log-log slope over the sweep"));
        suite.checks.push_back(gate_below("J.scaled_spread", worst_factor, 2.0,
                                          "max factor of J/sqrt((t-r)/t) from its median"));
    }

    // the angular inequality alpha <= 2 sqrt(1 - cos alpha)
    {
        const double root = alpha_inequality_root();
        bool grid_ok = true;
        for (int i = 0; i <= 10'000; ++i) {
            const double a = 2.7 * i / 10'000.0;
            if (a > 2.0 * std::sqrt(1.0 - std::cos(a)) + 1e-12) grid_ok = false;
        }
        suite.checks.push_back(CheckResult{"alpha.inequality_grid", grid_ok, 0, 0,
                                           "alpha <= 2 sqrt(1 - cos alpha) on [0, 2.7]"});
        suite.checks.push_back(gate_between("alpha.root", root, 2.7, 2.9,
                                            "largest alpha0 with the inequality on [0, alpha0]"));
    }

    suite.seconds = watch.seconds();
    return suite;
}

} // namespace hyperlab
