#include "doctest.h"

#include <cmath>
#include <random>

#include "hyperlab/foliation.hpp"
#include "hyperlab/summation.hpp"

using namespace hyperlab;

TEST_CASE("pairwise accumulator") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> xs(1'000'000);
    for (auto& x : xs) x = u(rng);

    PairwiseAccumulator acc;
    long double ref = 0.0L;
    for (double x : xs) {
        acc.add(x);
        ref += static_cast<long double>(x);
    }
    CHECK(std::abs(acc.sum() - static_cast<double>(ref)) <=
          1e-12 * std::max(1.0, std::abs(static_cast<double>(ref))));

    // determinism: same order, same bits
    PairwiseAccumulator acc2;
    for (double x : xs) acc2.add(x);
    CHECK(acc.sum() == acc2.sum());
}

namespace {

AnalyticField spacetime_bump() {
    return AnalyticField::cosine_in_t(1.1, 2.0, 0.2) * AnalyticField::radial_bump(2.0, 6);
}

} // namespace

TEST_CASE("energy forms agree and are positive") {
    const GridSpec g = GridSpec::make(0.05, 3.0, 0.45);
    SUBCASE("zero field") {
        const auto slice = sample_hyperboloid_analytic(AnalyticField::zero(),
                                                       AnalyticField::zero(), 3.0, g);
        for (auto form : {EnergyForm::A, EnergyForm::B, EnergyForm::C})
            CHECK(energy(slice, 1.0, form).value == 0.0);
    }
    SUBCASE("compact bump") {
        const auto slice =
            sample_hyperboloid_analytic(spacetime_bump(), AnalyticField::zero(), 3.0, g);
        for (double c2 : {0.0, 1.0}) {
            const double eA = energy(slice, c2, EnergyForm::A).value;
            const double eB = energy(slice, c2, EnergyForm::B).value;
            const double eC = energy(slice, c2, EnergyForm::C).value;
            CHECK(eA >= 0.0);
            CHECK(eB >= 0.0);
            CHECK(eC >= 0.0);
            CHECK(std::abs(eA - eB) + std::abs(eA - eC) <= 1e-10 * (1.0 + eA));
        }
    }
}

TEST_CASE("energy quadrature refines at second order") {
    // windowed x^1 profile with c2 = 1 on H_3; the two-resolution defect
    // brackets the quadrature error.
    const AnalyticField u =
        AnalyticField::monomial(0, 1, 0) * AnalyticField::radial_bump(2.0, 6);
    double vals[3];
    int k = 0;
    for (double dx : {0.1, 0.05, 0.025}) {
        const GridSpec g = GridSpec::make(dx, 3.0, 0.45);
        const auto slice = sample_hyperboloid_analytic(u, AnalyticField::zero(), 3.0, g);
        vals[k++] = energy(slice, 1.0, EnergyForm::A).value;
    }
    const double d1 = std::abs(vals[1] - vals[0]);
    const double d2 = std::abs(vals[2] - vals[1]);
    CHECK(d2 < d1);
    CHECK(std::log2(d1 / d2) > 1.5);
}

TEST_CASE("history slice sampling") {
    // u(t,x) = t: the sample on H_3 at x = (4,0) is t = sqrt(9+16) = 5.
    const AnalyticField u = AnalyticField::monomial(1, 0, 0);
    const GridSpec g = GridSpec::make(0.1, 4.5, 0.45);
    const SlabHistory h = SlabHistory::from_fields(g, 2.0, 5.3, u, AnalyticField::zero());
    const auto slice = sample_hyperboloid(h, 3.0);
    bool found = false;
    for (std::size_t k = 0; k < slice.points.size(); ++k) {
        if (slice.points[k].ix == g.index_of(4.0) && slice.points[k].iy == g.index_of(0.0)) {
            CHECK(slice.values[k].u[raw_index(0, 0, 0)] == doctest::Approx(5.0).epsilon(1e-10));
            CHECK(slice.points[k].t == doctest::Approx(5.0));
            found = true;
        }
    }
    CHECK(found);
    CHECK_THROWS_AS(sample_hyperboloid(h, 6.0), std::out_of_range);
}

TEST_CASE("history slice error refines at second order") {
    const AnalyticField u = spacetime_bump();
    double errs[2];
    int k = 0;
    for (double dx : {0.08, 0.04}) {
        const GridSpec g = GridSpec::make(dx, 3.0, 0.45);
        const SlabHistory h = SlabHistory::from_fields(g, 2.0, 4.2, u, AnalyticField::zero());
        const auto num = sample_hyperboloid(h, 3.0, 1);
        double worst = 0.0;
        for (std::size_t i = 0; i < num.points.size(); ++i) {
            const auto& p = num.points[i];
            const double x1 = g.coord(p.ix), x2 = g.coord(p.iy);
            for (auto [a, b, c] : {std::array{0, 0, 0}, std::array{1, 0, 0},
                                   std::array{0, 1, 0}, std::array{0, 0, 1}})
                worst = std::max(worst, std::abs(num.values[i].u[raw_index(a, b, c)] -
                                                 u.deriv(a, b, c, p.t, x1, x2)));
        }
        errs[k++] = worst;
    }
    CHECK(errs[1] < errs[0]);
    CHECK(std::log2(errs[0] / errs[1]) > 1.5);
}

TEST_CASE("klainerman-sobolev ratio") {
    const GridSpec g = GridSpec::make(0.1, 3.0, 0.45);
    SUBCASE("zero field reports zero-field status") {
        const auto slice = sample_hyperboloid_analytic(AnalyticField::zero(),
                                                       AnalyticField::zero(), 3.0, g, 2);
        const auto ks = klainerman_sobolev_ratio(slice, point_on_hyperboloid(3.0, 0.0, 0.0));
        CHECK(ks.status == KsRatio::Status::ZeroField);
    }
    SUBCASE("bump ratio is positive and stable under refinement") {
        const AnalyticField u = spacetime_bump();
        double ratios[2];
        int k = 0;
        for (double dx : {0.1, 0.05}) {
            const GridSpec gg = GridSpec::make(dx, 3.0, 0.45);
            const auto slice = sample_hyperboloid_analytic(u, AnalyticField::zero(), 3.0, gg, 2);
            const auto ks = klainerman_sobolev_ratio(slice, point_on_hyperboloid(3.0, 0.0, 0.0));
            CHECK(ks.status == KsRatio::Status::Ok);
            CHECK(ks.ratio > 0.0);
            ratios[k++] = ks.ratio;
        }
        CHECK(std::abs(ratios[1] - ratios[0]) / ratios[0] < 0.1);
    }
    SUBCASE("translated bump family stays within a factor 2") {
        double lo = 1e300, hi = 0.0;
        for (double shift : {-0.8, -0.4, 0.0, 0.4, 0.8}) {
            const AnalyticField u =
                AnalyticField::cosine_in_t(1.1, 2.0, 0.2) *
                AnalyticField([shift](int a, int b, int c, double t, double x1, double x2) {
                    const AnalyticField bump = AnalyticField::radial_bump(1.2, 6);
                    (void)t;
                    return bump.deriv(a, b, c, 0.0, x1 - shift, x2);
                });
            const auto slice = sample_hyperboloid_analytic(u, AnalyticField::zero(), 3.0, g, 2);
            const auto ks =
                klainerman_sobolev_ratio(slice, point_on_hyperboloid(3.0, shift, 0.0));
            lo = std::min(lo, ks.ratio);
            hi = std::max(hi, ks.ratio);
        }
        CHECK(hi / lo < 2.0);
    }
}

TEST_CASE("slice report matches the direct energy route") {
    const GridSpec g = GridSpec::make(0.05, 3.0, 0.45);
    const auto slice = sample_hyperboloid_analytic(spacetime_bump(), spacetime_bump(), 3.0,
                                                   g, 3);
    SliceJob job;
    job.s = 3.0;
    job.op_order = 1;
    const auto rep = slice_report_from(slice, job, SystemCoefficients::canonical());
    CHECK(rep.e_u0_sqrt ==
          doctest::Approx(std::sqrt(energy(slice, 0.0, EnergyForm::B).value)).epsilon(1e-12));
    CHECK(rep.e_v0_sqrt ==
          doctest::Approx(std::sqrt(energy(slice, 1.0, EnergyForm::B, SliceField::V).value))
              .epsilon(1e-12));
    // the id-operator column reproduces the order-0 energies
    CHECK(rep.e_u_sqrt[0] == doctest::Approx(rep.e_u0_sqrt).epsilon(1e-12));
    // l2 of the id op equals the plain L2 norm
    CHECK(rep.l2_u[0] ==
          doctest::Approx(slice_l2_norm(slice, DiffOp::identity())).epsilon(1e-12));
}

TEST_CASE("energy inequality bookkeeping") {
    SUBCASE("zero solution") {
        std::vector<SliceReport> law(3);
        law[0].s = 2.2;
        law[1].s = 2.6;
        law[2].s = 3.0;
        const auto rep = check_energy_inequality(law, 0.0, 2.2, 3.0);
        CHECK(rep.lhs == 0.0);
        CHECK(rep.rhs == 0.0);
        CHECK(rep.slack == 0.0);
    }
    SUBCASE("needs two slices") {
        std::vector<SliceReport> law(1);
        law[0].s = 2.2;
        CHECK_THROWS_AS(check_energy_inequality(law, 0.0, 2.0, 3.0), std::invalid_argument);
    }
}
