#include "doctest.h"

#include <cmath>

#include "hyperlab/slab.hpp"

using namespace hyperlab;

TEST_CASE("grid spec") {
    const GridSpec g = GridSpec::make(0.1, 2.0, 0.45);
    CHECK(g.n == 41);
    CHECK(g.coord(0) == doctest::Approx(-2.0));
    CHECK(g.coord(g.n - 1) == doctest::Approx(2.0));
    CHECK(g.index_of(0.0) == 20);
    CHECK(g.dt() == doctest::Approx(0.045));
    CHECK_THROWS_AS(GridSpec::make(0.1, 2.0, 0.9), std::invalid_argument);
}

TEST_CASE("fornberg weights reproduce standard stencils") {
    const double nodes[5] = {-2, -1, 0, 1, 2};
    std::vector<std::array<double, 8>> w;
    fornberg_weights(nodes, 5, 0.0, 2, w);
    // 4th-order first derivative: (1/12)(f_{-2} - 8 f_{-1} + 8 f_1 - f_2)
    CHECK(w[0][1] == doctest::Approx(1.0 / 12));
    CHECK(w[1][1] == doctest::Approx(-8.0 / 12));
    CHECK(w[2][1] == doctest::Approx(0.0));
    CHECK(w[3][1] == doctest::Approx(8.0 / 12));
    CHECK(w[4][1] == doctest::Approx(-1.0 / 12));
    // 4th-order second derivative
    CHECK(w[2][2] == doctest::Approx(-30.0 / 12));
    CHECK(w[0][0] == doctest::Approx(0.0));
    CHECK(w[2][0] == doctest::Approx(1.0));
}

TEST_CASE("raw partials of a polynomial slab") {
    // u = t^2 x1 + x2^3 - 2 t x1 x2, v = t + x1 x2: all partials of order
    // <= 3 are exact for the stencils in play.
    const AnalyticField u = AnalyticField::monomial(2, 1, 0) +
                            AnalyticField::monomial(0, 0, 3) +
                            AnalyticField::monomial(1, 1, 1, -2.0);
    const AnalyticField v = AnalyticField::monomial(1, 0, 0) + AnalyticField::monomial(0, 1, 1);
    const GridSpec g = GridSpec::make(0.1, 2.0, 0.45);
    const SlabHistory h = SlabHistory::from_fields(g, 2.0, 3.0, u, v);

    const double t = 2.431;
    const int ix = g.index_of(0.7), iy = g.index_of(-0.5);
    const double x1 = g.coord(ix), x2 = g.coord(iy);
    RawPartials rp;
    raw_partials_at(h.window_around(t), t, ix, iy, 3, rp);
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b)
            for (int c = 0; a + b + c <= 3; ++c) {
                CHECK(rp.u[raw_index(a, b, c)] ==
                      doctest::Approx(u.deriv(a, b, c, t, x1, x2)).epsilon(1e-9));
                CHECK(rp.v[raw_index(a, b, c)] ==
                      doctest::Approx(v.deriv(a, b, c, t, x1, x2)).epsilon(1e-9));
            }
}

TEST_CASE("raw partials converge at second order on smooth fields") {
    const AnalyticField u =
        AnalyticField::cosine_in_t(0.9, 2.0, 0.3) * AnalyticField::radial_bump(1.0, 6);
    const double t = 2.21, x1 = 0.31, x2 = -0.22;
    double err[2];
    int k = 0;
    for (double dx : {0.05, 0.025}) {
        const GridSpec g = GridSpec::make(dx, 2.0, 0.45);
        const SlabHistory h = SlabHistory::from_fields(g, 2.0, 2.5, u, AnalyticField::zero());
        RawPartials rp;
        raw_partials_bilinear(h.window_around(t), t, x1, x2, 3, rp);
        double worst = 0.0;
        for (int a = 0; a <= 2; ++a)
            for (int b = 0; a + b <= 2; ++b)
                for (int c = 0; a + b + c <= 2; ++c)
                    worst = std::max(worst, std::abs(rp.u[raw_index(a, b, c)] -
                                                     u.deriv(a, b, c, t, x1, x2)));
        err[k++] = worst;
    }
    CHECK(err[1] < err[0]);
    const double order = std::log2(err[0] / err[1]);
    CHECK(order > 1.5);
}

TEST_CASE("edge points return zeros") {
    const GridSpec g = GridSpec::make(0.1, 1.0, 0.45);
    const SlabHistory h = SlabHistory::from_fields(g, 2.0, 2.3, AnalyticField::constant(1.0),
                                                   AnalyticField::zero());
    RawPartials rp;
    raw_partials_at(h.window_around(2.1), 2.1, 0, 5, 2, rp);
    CHECK(rp.u[0] == 0.0);
}
