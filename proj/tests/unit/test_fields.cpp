#include "doctest.h"

#include <cmath>

#include "hyperlab/fields.hpp"

using namespace hyperlab;

namespace {

// Central-difference oracle for analytic derivatives.
double fd_deriv(const AnalyticField& f, int a, int b, int c, double t, double x1,
                double x2, double h = 1e-3) {
    if (a > 0) {
        auto g = [&](double tt) { return f.deriv(a - 1, b, c, tt, x1, x2); };
        return (g(t + h) - g(t - h)) / (2 * h);
    }
    if (b > 0) {
        auto g = [&](double y) { return f.deriv(a, b - 1, c, t, y, x2); };
        return (g(x1 + h) - g(x1 - h)) / (2 * h);
    }
    auto g = [&](double y) { return f.deriv(a, b, c - 1, t, x1, y); };
    return (g(x2 + h) - g(x2 - h)) / (2 * h);
}

} // namespace

TEST_CASE("radial bump derivatives match finite differences") {
    const AnalyticField f = AnalyticField::radial_bump(0.8, 6);
    CHECK(f(0.0, 0.0, 0.0) == doctest::Approx(1.0));
    CHECK(f(0.0, 0.8, 0.0) == doctest::Approx(0.0));
    CHECK(f(0.0, 0.9, 0.3) == 0.0);
    for (double x1 : {0.1, 0.35, 0.6}) {
        for (double x2 : {-0.2, 0.25}) {
            for (int b = 0; b <= 2; ++b)
                for (int c = 0; b + c <= 2; ++c) {
                    if (b + c == 0) continue;
                    const double fd = fd_deriv(f, 0, b, c, 0.0, x1, x2);
                    CHECK(f.deriv(0, b, c, 0.0, x1, x2) ==
                          doctest::Approx(fd).epsilon(1e-4));
                }
        }
    }
}

TEST_CASE("time envelope and products") {
    const AnalyticField g = AnalyticField::cosine_in_t(1.3, 2.0, 0.4);
    CHECK(g(2.0, 0, 0) == doctest::Approx(std::cos(0.4)));
    CHECK(g.deriv(1, 0, 0, 2.0, 0, 0) == doctest::Approx(-1.3 * std::sin(0.4)));
    CHECK(g.deriv(2, 0, 0, 2.0, 0, 0) == doctest::Approx(-1.3 * 1.3 * std::cos(0.4)));

    const AnalyticField prod = g * AnalyticField::radial_bump(0.8, 6);
    const double fd = fd_deriv(prod, 1, 1, 0, 2.7, 0.3, -0.1);
    CHECK(prod.deriv(1, 1, 0, 2.7, 0.3, -0.1) == doctest::Approx(fd).epsilon(1e-5));
}

TEST_CASE("box of a separable field") {
    // u = cos(w(t-2)) * bump: Box u = -w^2 u - Lap(bump) * cos(...)
    const AnalyticField bump = AnalyticField::radial_bump(0.8, 6);
    const AnalyticField u = AnalyticField::cosine_in_t(1.3, 2.0, 0.0) * bump;
    const double t = 2.4, x1 = 0.2, x2 = 0.1;
    const double lap_bump =
        bump.deriv(0, 2, 0, t, x1, x2) + bump.deriv(0, 0, 2, t, x1, x2);
    const double expected =
        -1.3 * 1.3 * std::cos(1.3 * (t - 2.0)) * bump(t, x1, x2) -
        std::cos(1.3 * (t - 2.0)) * lap_bump;
    CHECK(box_of(u, t, x1, x2) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("cauchy data profiles") {
    const CauchyData d = make_cauchy_data("bump4", 0.01, 1.0);
    CHECK(d.u0(2.0, 0.0, 0.0) == doctest::Approx(1.0));
    CHECK(d.u0(2.0, 1.1, 0.0) == 0.0);
    CHECK(d.u1(2.0, 0.3, 0.2) == 0.0);
    CHECK_THROWS_AS(make_cauchy_data("bump4", 0.01, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(make_cauchy_data("nope", 0.01, 1.0), std::invalid_argument);
    const CauchyData ring = make_cauchy_data("ring4", 0.01, 0.9);
    CHECK(ring.v0(2.0, 0.0, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("manufactured pair support") {
    const ManufacturedPair mp = make_manufactured_pair(0.01, 0.8);
    CHECK(mp.u(2.0, 0.0, 0.0) == doctest::Approx(0.01));
    CHECK(mp.u(3.7, 0.85, 0.0) == 0.0);
    CHECK(mp.v(2.5, 0.0, 0.0) == doctest::Approx(0.0)); // ring vanishes at the origin
}
