#include "doctest.h"

#include <cmath>
#include <random>

#include "hyperlab/frame.hpp"

using namespace hyperlab;

TEST_CASE("hyperbolic radius") {
    CHECK(hyperbolic_radius({2.0, 0.0, 0.0}) == doctest::Approx(2.0));
    CHECK(hyperbolic_radius({5.0, 4.0, 0.0}) == doctest::Approx(3.0));
    // sqrt(2.6^2 - 1.0^2) = sqrt(5.76) = 2.4
    CHECK(hyperbolic_radius({2.6, 1.0, 0.0}) == doctest::Approx(2.4).epsilon(1e-14));
    CHECK_THROWS_AS(hyperbolic_radius({1.0, 2.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(hyperbolic_radius({1.0, 1.0, 0.0}), std::domain_error);
}

TEST_CASE("cone membership") {
    CHECK(SpacetimePoint{2.0, 0.0, 0.0}.in_cone());
    CHECK(!SpacetimePoint{2.0, 1.5, 0.0}.in_cone());
    CHECK(!SpacetimePoint{2.0, 1.0, 0.0}.in_cone()); // boundary excluded
}

TEST_CASE("transition matrices") {
    SUBCASE("identity at the spatial origin") {
        for (auto kind : {FrameKind::Phi, FrameKind::Psi}) {
            const auto f = transition({3.0, 0.0, 0.0}, kind);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    CHECK(f.entries[a][b] == doctest::Approx(a == b ? 1.0 : 0.0));
        }
    }
    SUBCASE("displayed Psi rows at t=2, x=(1,1)") {
        const auto f = transition({2.0, 1.0, 1.0}, FrameKind::Psi);
        const Mat3 expected{{{1.0, 0.0, 0.0}, {-0.5, 1.0, 0.0}, {-0.5, 0.0, 1.0}}};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                CHECK(f.entries[a][b] == doctest::Approx(expected[a][b]));
    }
    SUBCASE("Phi and Psi invert each other at random interior points") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const double t = 2.0 * std::pow(10.0, 6.0 * u(rng));
            const double r = u(rng) * 0.999 * t;
            const double th = 2.0 * M_PI * u(rng);
            const SpacetimePoint p{t, r * std::cos(th), r * std::sin(th)};
            const auto prod = mat3_mul(transition(p, FrameKind::Phi).entries,
                                       transition(p, FrameKind::Psi).entries);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    worst = std::max(worst, std::abs(prod[a][b] - (a == b ? 1.0 : 0.0)));
        }
        CHECK(worst <= 1e-14);
    }
    CHECK_THROWS_AS(transition({0.0, 0.0, 0.0}, FrameKind::Phi), std::domain_error);
}

TEST_CASE("frame components of quadratic forms") {
    const QuadraticForm m = QuadraticForm::minkowski();
    SUBCASE("mb00 = (s/t)^2") {
        // at r = 0 the frame is the natural one
        CHECK(to_frame(m, {2.0, 0.0, 0.0})(0, 0) == doctest::Approx(1.0));
        // (s/t)^2 = 9/25 at (t,r) = (5,4)
        CHECK(to_frame(m, {5.0, 4.0, 0.0})(0, 0) == doctest::Approx(0.36).epsilon(1e-14));
        CHECK(to_frame(m, {5.0, 0.0, 4.0})(0, 0) == doctest::Approx(0.36).epsilon(1e-14));
    }
    SUBCASE("zero form stays zero") {
        const auto z = to_frame(QuadraticForm::zero(), {3.0, 1.0, 0.5});
        CHECK(z.norm() == 0.0);
    }
    SUBCASE("round trip recovers the natural components") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int k = 0; k < 100; ++k) {
            Mat3 raw{};
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) raw[a][b] = u(rng);
            const QuadraticForm T = QuadraticForm::from_entries(raw);
            const SpacetimePoint p{2.0 + 10.0 * std::abs(u(rng)), u(rng), u(rng)};
            const QuadraticForm back = to_natural(to_frame(T, p), p);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    CHECK(back(a, b) == doctest::Approx(T(a, b)).epsilon(1e-12));
        }
    }
}

TEST_CASE("null form test") {
    CHECK(is_null_form(QuadraticForm::minkowski()));
    CHECK(!is_null_form(QuadraticForm::diagonal(1.0, 0.0, 0.0)));
    // construction symmetrizes: a pure antisymmetric part collapses to zero
    Mat3 anti{};
    anti[0][1] = 1.0;
    anti[1][0] = -1.0;
    CHECK(is_null_form(QuadraticForm::from_entries(anti)));
    CHECK_THROWS_AS(is_null_form(QuadraticForm::minkowski(), 4), std::invalid_argument);
}

TEST_CASE("null00 bound ratio") {
    const QuadraticForm m = QuadraticForm::minkowski();
    CHECK(null00_bound_ratio(m, {5.0, 3.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(null00_bound_ratio(m, {100.0, 99.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(null00_bound_ratio(m.scaled(2.0), {7.0, 2.0, 4.0}) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(null00_bound_ratio(m, {2.0, 1.5, 0.0}), std::domain_error);
}

TEST_CASE("vector field application") {
    SUBCASE("L_1 t = x^1") {
        const ScalarFieldFn f = [](double t, double, double) { return t; };
        const SpacetimePoint p{4.0, 1.25, -0.5};
        CHECK(apply_vector_field(f, VectorFieldTag::L1, p) ==
              doctest::Approx(1.25).epsilon(1e-12));
    }
    SUBCASE("L_1 (s/t) = -(x^1/t)(s/t)") {
        const ScalarFieldFn f = [](double t, double x1, double x2) {
            return std::sqrt(t * t - x1 * x1 - x2 * x2) / t;
        };
        const SpacetimePoint p{6.0, 2.0, 1.0};
        const double expected = -(p.x1 / p.t) * p.s_over_t();
        CHECK(apply_vector_field(f, VectorFieldTag::L1, p) ==
              doctest::Approx(expected).epsilon(1e-8));
    }
    SUBCASE("db_a agrees with t^{-1} L_a on a random polynomial") {
        const ScalarFieldFn f = [](double t, double x1, double x2) {
            return 0.3 * t * t * x1 - 1.2 * x1 * x2 + 0.7 * t * x2 * x2 + x1 * x1 * x1;
        };
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int k = 0; k < 50; ++k) {
            const SpacetimePoint p{3.0 + 5.0 * std::abs(u(rng)), u(rng), u(rng)};
            for (auto [db, l] : {std::pair{VectorFieldTag::Db1, VectorFieldTag::L1},
                                 std::pair{VectorFieldTag::Db2, VectorFieldTag::L2}}) {
                const double lhs = apply_vector_field(f, db, p);
                const double rhs = apply_vector_field(f, l, p) / p.t;
                CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
            }
        }
    }
}

TEST_CASE("commutator residuals") {
    const SpacetimePoint p{3.0, 0.8, -0.4};
    SUBCASE("[d_1, L_2] vanishes on quadratics") {
        const ScalarFieldFn f = [](double t, double x1, double x2) {
            return t * t - 2.0 * x1 * x2 + 3.0 * x2 * x2 + x1;
        };
        // the closed form is zero, so the residual is the nested commutator itself
        CHECK(std::abs(commutator_residual(VectorFieldTag::D1, VectorFieldTag::L2, f, p)) <=
              1e-9);
    }
    SUBCASE("[d_t, L_1] f = d_1 f on f = t x^1") {
        const ScalarFieldFn f = [](double t, double x1, double) { return t * x1; };
        CHECK(std::abs(commutator_residual(VectorFieldTag::Dt, VectorFieldTag::L1, f, p)) <=
              1e-9);
    }
    SUBCASE("[d_1, L_1] f = d_t f on f = t^2") {
        const ScalarFieldFn f = [](double t, double, double) { return t * t; };
        CHECK(std::abs(commutator_residual(VectorFieldTag::D1, VectorFieldTag::L1, f, p)) <=
              1e-9);
    }
    SUBCASE("[L_1, L_2] is the rotation") {
        const ScalarFieldFn f = [](double t, double x1, double x2) {
            return x1 * x1 * x2 + t * x2;
        };
        CHECK(std::abs(commutator_residual(VectorFieldTag::L1, VectorFieldTag::L2, f, p)) <=
              1e-8);
    }
}

TEST_CASE("homogeneity bounds for s/t") {
    const ScalarFieldFn s_over_t = [](double t, double x1, double x2) {
        return std::sqrt(t * t - x1 * x1 - x2 * x2) / t;
    };
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 500; ++k) {
        const double t = 2.5 + 40.0 * u(rng);
        const double r = 0.85 * t * u(rng);
        const double th = 2.0 * M_PI * u(rng);
        const SpacetimePoint p{t, r * std::cos(th), r * std::sin(th)};
        const double st = p.s_over_t();
        CHECK(std::abs(apply_vector_field(s_over_t, VectorFieldTag::L1, p)) <=
              st * (1.0 + 1e-6));
        CHECK(std::abs(apply_vector_field(s_over_t, VectorFieldTag::L2, p)) <=
              st * (1.0 + 1e-6));
        for (auto v : {VectorFieldTag::Dt, VectorFieldTag::D1, VectorFieldTag::D2})
            CHECK(std::abs(apply_vector_field(s_over_t, v, p)) * p.s() <= 3.0);
    }
}
