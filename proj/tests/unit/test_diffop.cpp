#include "doctest.h"

#include <cmath>

#include "hyperlab/diffop.hpp"
#include "hyperlab/fields.hpp"

using namespace hyperlab;

namespace {

// Evaluate an operator on an analytic field through exact partials.
double apply_op(const DiffOp& op, const AnalyticField& f, double t, double x1, double x2) {
    std::array<double, 20> raw{};
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b)
            for (int c = 0; a + b + c <= 3; ++c)
                raw[raw_index(a, b, c)] = f.deriv(a, b, c, t, x1, x2);
    return op.evaluate(t, x1, x2, raw.data(), 3);
}

} // namespace

TEST_CASE("raw index is a graded bijection") {
    CHECK(raw_partial_count(3) == 20);
    std::array<bool, 20> seen{};
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b)
            for (int c = 0; a + b + c <= 3; ++c) {
                const int idx = raw_index(a, b, c);
                CHECK(idx >= 0);
                CHECK(idx < 20);
                CHECK(!seen[idx]);
                seen[idx] = true;
            }
    CHECK(raw_index(0, 0, 0) == 0);
    CHECK(raw_index(1, 0, 0) == 1); // order-1 block starts with dt
}

TEST_CASE("operator algebra reproduces the closed-form commutators") {
    const DiffOp dt = DiffOp::d_t();
    const DiffOp d1 = DiffOp::d_x(1);
    const DiffOp d2 = DiffOp::d_x(2);
    const DiffOp L1 = DiffOp::boost(1);
    const DiffOp L2 = DiffOp::boost(2);

    // [d_t, L_a] = d_a
    CHECK((dt * L1 - L1 * dt - d1).empty());
    CHECK((dt * L2 - L2 * dt - d2).empty());
    // [d_b, L_a] = delta_ab d_t
    CHECK((d1 * L1 - L1 * d1 - dt).empty());
    CHECK((d2 * L2 - L2 * d2 - dt).empty());
    CHECK((d1 * L2 - L2 * d1).empty());
    CHECK((d2 * L1 - L1 * d2).empty());
    // [L_1, L_2] = rotation
    CHECK((L1 * L2 - L2 * L1 - DiffOp::rotation()).empty());
}

TEST_CASE("tangent fields factor through the boosts") {
    // db_a = t^{-1} L_a as an exact operator identity
    for (int a : {1, 2}) {
        const DiffOp lhs = DiffOp::tangent(a);
        const DiffOp t_inv_boost =
            DiffOp({DiffTerm{1.0, -1, 0, 0, 0, 0, 0}}) * DiffOp::boost(a);
        CHECK((lhs - t_inv_boost).empty());
    }
}

TEST_CASE("word expansion matches nested application on analytic fields") {
    const AnalyticField f = AnalyticField::monomial(2, 1, 0) +
                            AnalyticField::monomial(0, 1, 2, -0.5) +
                            AnalyticField::monomial(1, 1, 1, 2.0);
    const double t = 3.2, x1 = 0.7, x2 = -1.1;

    // L_1 L_1 f via the expansion table against a hand expansion:
    // L_1 L_1 = x1^2 dtt + 2 t x1 dt d1 + t^2 d11 + x1 dt + t d1
    const DiffOp L1L1 = op_from_word({WordLetter::L1, WordLetter::L1});
    const double direct =
        x1 * x1 * f.deriv(2, 0, 0, t, x1, x2) + 2.0 * t * x1 * f.deriv(1, 1, 0, t, x1, x2) +
        t * t * f.deriv(0, 2, 0, t, x1, x2) + x1 * f.deriv(1, 0, 0, t, x1, x2) +
        t * f.deriv(0, 1, 0, t, x1, x2);
    CHECK(apply_op(L1L1, f, t, x1, x2) == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("operator table shape") {
    const auto& t0 = op_table(0);
    CHECK(t0.size() == 1);
    const auto& t1 = op_table(1);
    CHECK(t1.size() == 6); // id, dt, d1, d2, L1, L2
    const auto& t2 = op_table(2);
    CHECK(t2.size() == 22);
    for (const auto& e : t2) {
        CHECK(e.op.max_order() <= 2);
        CHECK(e.d_t_op.max_order() <= 3);
    }
    CHECK(t2.front().name == "id");
}

TEST_CASE("boost of s/t from the expansion") {
    // L_1 (s/t) = -(x1/t)(s/t); check the expansion route on the exact
    // partials of s/t packed to order 1.
    const double t = 5.0, x1 = 1.0, x2 = 2.0;
    const double r2 = x1 * x1 + x2 * x2;
    const double s = std::sqrt(t * t - r2);
    std::array<double, 20> raw{};
    raw[raw_index(0, 0, 0)] = s / t;
    raw[raw_index(1, 0, 0)] = (t * t / s - s) / (t * t) - 0.0; // d_t (s/t)
    // d_t(s/t) = (t/s)/t - s/t^2 = (t^2 - s^2)/(s t^2) = r^2/(s t^2)
    raw[raw_index(1, 0, 0)] = r2 / (s * t * t);
    raw[raw_index(0, 1, 0)] = -x1 / (s * t);
    raw[raw_index(0, 0, 1)] = -x2 / (s * t);
    const DiffOp L1 = DiffOp::boost(1);
    CHECK(L1.evaluate(t, x1, x2, raw.data(), 1) ==
          doctest::Approx(-(x1 / t) * (s / t)).epsilon(1e-13));
}
