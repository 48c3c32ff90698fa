#include "hyperlab/fields.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace hyperlab {

AnalyticField AnalyticField::zero() {
    return AnalyticField([](int, int, int, double, double, double) { return 0.0; });
}

AnalyticField AnalyticField::constant(double c) {
    return AnalyticField([c](int a, int b, int cc, double, double, double) {
        return (a == 0 && b == 0 && cc == 0) ? c : 0.0;
    });
}

namespace {

// Spatial profile W(z) with z = (x1^2 + x2^2)/R^2, W polynomial on z<1 and
// zero outside. Derivatives in x via the chain rule on z; the profile and
// enough z-derivatives vanish at z=1 so the pieces join smoothly.
struct RadialPoly {
    double radius;
    // poly(z) coefficients, ascending powers.
    std::vector<double> c;

    double poly_deriv(int k, double z) const {
        double s = 0.0;
        for (std::size_t n = k; n < c.size(); ++n) {
            double fall = 1.0;
            for (int j = 0; j < k; ++j) fall *= static_cast<double>(n - j);
            s += c[n] * fall * std::pow(z, static_cast<double>(n - k));
        }
        return s;
    }

    // d_1^b d_2^c of W(z(x)) for b + c <= 3, via Faa di Bruno on the
    // quadratic z. Implemented by nesting first derivatives symbolically in
    // the small basis {W^{(k)}(z) * x1^i * x2^j}.
    double deriv(int b, int cc, double x1, double x2) const {
        const double R2 = radius * radius;
        const double z = (x1 * x1 + x2 * x2) / R2;
        if (z >= 1.0) return 0.0;
        // Represent the current expression as sum of terms
        // coef * W^{(k)}(z) * x1^i * x2^j, then differentiate repeatedly.
        struct Term { double coef; int k, i, j; };
        std::vector<Term> terms{{1.0, 0, 0, 0}};
        auto differentiate = [&](int axis) {
            std::vector<Term> out;
            for (const auto& t : terms) {
                // d/dx of W^{(k)}: W^{(k+1)} * 2 x / R2
                Term t1{t.coef * 2.0 / R2, t.k + 1, t.i + (axis == 1), t.j + (axis == 2)};
                out.push_back(t1);
                // d/dx of x-power factor
                const int p = (axis == 1) ? t.i : t.j;
                if (p > 0) {
                    Term t2 = t;
                    t2.coef *= p;
                    if (axis == 1) t2.i -= 1; else t2.j -= 1;
                    out.push_back(t2);
                }
            }
            terms = std::move(out);
        };
        for (int n = 0; n < b; ++n) differentiate(1);
        for (int n = 0; n < cc; ++n) differentiate(2);
        double s = 0.0;
        for (const auto& t : terms)
            s += t.coef * poly_deriv(t.k, z) * std::pow(x1, t.i) * std::pow(x2, t.j);
        return s;
    }
};

std::vector<double> expand_bump(int power, bool ring) {
    // (1-z)^p or (1-z)^p * z as coefficients in z.
    std::vector<double> c(power + 1, 0.0);
    double binom = 1.0;
    for (int k = 0; k <= power; ++k) {
        c[k] = ((k % 2) ? -1.0 : 1.0) * binom;
        binom = binom * static_cast<double>(power - k) / static_cast<double>(k + 1);
    }
    if (!ring) return c;
    std::vector<double> shifted(power + 2, 0.0);
    for (int k = 0; k <= power; ++k) shifted[k + 1] = c[k];
    return shifted;
}

} // namespace

AnalyticField AnalyticField::radial_bump(double radius, int power) {
    auto rp = std::make_shared<RadialPoly>(RadialPoly{radius, expand_bump(power, false)});
    return AnalyticField([rp](int a, int b, int c, double, double x1, double x2) {
        if (a > 0) return 0.0;
        return rp->deriv(b, c, x1, x2);
    });
}

AnalyticField AnalyticField::radial_ring(double radius, int power) {
    auto rp = std::make_shared<RadialPoly>(RadialPoly{radius, expand_bump(power, true)});
    return AnalyticField([rp](int a, int b, int c, double, double x1, double x2) {
        if (a > 0) return 0.0;
        return rp->deriv(b, c, x1, x2);
    });
}

AnalyticField AnalyticField::cosine_in_t(double w, double t0, double phase) {
    return AnalyticField([w, t0, phase](int a, int b, int c, double t, double, double) {
        if (b > 0 || c > 0) return 0.0;
        const double arg = w * (t - t0) + phase + 0.5 * M_PI * a;
        return std::pow(w, a) * std::cos(arg);
    });
}

AnalyticField AnalyticField::monomial(int a, int b, int c, double coef) {
    return AnalyticField([a, b, c, coef](int da, int db, int dc, double t, double x1, double x2) {
        auto pow_deriv = [](int p, int d, double x) {
            double fall = 1.0;
            for (int j = 0; j < d; ++j) fall *= static_cast<double>(p - j);
            if (fall == 0.0) return 0.0;
            return fall * std::pow(x, p - d);
        };
        return coef * pow_deriv(a, da, t) * pow_deriv(b, db, x1) * pow_deriv(c, dc, x2);
    });
}

AnalyticField AnalyticField::scaled(double c) const {
    auto f = f_;
    return AnalyticField([f, c](int a, int b, int cc, double t, double x1, double x2) {
        return c * f(a, b, cc, t, x1, x2);
    });
}

AnalyticField operator+(const AnalyticField& f, const AnalyticField& g) {
    auto ff = f.f_, gg = g.f_;
    return AnalyticField([ff, gg](int a, int b, int c, double t, double x1, double x2) {
        return ff(a, b, c, t, x1, x2) + gg(a, b, c, t, x1, x2);
    });
}

AnalyticField operator*(const AnalyticField& f, const AnalyticField& g) {
    auto ff = f.f_, gg = g.f_;
    // Leibniz in all three directions, orders <= 3.
    return AnalyticField([ff, gg](int a, int b, int c, double t, double x1, double x2) {
        auto binom = [](int n, int k) {
            double r = 1.0;
            for (int j = 0; j < k; ++j) r = r * (n - j) / (j + 1);
            return r;
        };
        double s = 0.0;
        for (int ia = 0; ia <= a; ++ia)
            for (int ib = 0; ib <= b; ++ib)
                for (int ic = 0; ic <= c; ++ic) {
                    const double w = binom(a, ia) * binom(b, ib) * binom(c, ic);
                    s += w * ff(ia, ib, ic, t, x1, x2) *
                         gg(a - ia, b - ib, c - ic, t, x1, x2);
                }
        return s;
    });
}

double box_of(const AnalyticField& f, double t, double x1, double x2) {
    return f.deriv(2, 0, 0, t, x1, x2) - f.deriv(0, 2, 0, t, x1, x2) -
           f.deriv(0, 0, 2, t, x1, x2);
}

void CauchyData::validate() const {
    if (!(epsilon >= 0.0)) throw std::invalid_argument("CauchyData: epsilon must be >= 0");
    if (!(support_radius > 0.0) || support_radius > 1.0)
        throw std::invalid_argument(
            "CauchyData: support must be contained in the unit disc (0 < radius <= 1)");
}

CauchyData make_cauchy_data(const std::string& profile, double epsilon,
                            double support_radius) {
    CauchyData d;
    d.epsilon = epsilon;
    d.support_radius = support_radius;
    if (profile == "bump4") {
        d.u0 = AnalyticField::radial_bump(support_radius, 4);
        d.v0 = AnalyticField::radial_bump(support_radius, 4);
    } else if (profile == "bump6") {
        d.u0 = AnalyticField::radial_bump(support_radius, 6);
        d.v0 = AnalyticField::radial_bump(support_radius, 6);
    } else if (profile == "ring4") {
        d.u0 = AnalyticField::radial_ring(support_radius, 4);
        d.v0 = AnalyticField::radial_ring(support_radius, 4);
    } else {
        throw std::invalid_argument("make_cauchy_data: unknown profile '" + profile +
                                    "' (expected bump4, bump6 or ring4)");
    }
    d.u1 = AnalyticField::zero();
    d.v1 = AnalyticField::zero();
    d.validate();
    return d;
}

ManufacturedPair make_manufactured_pair(double amplitude, double radius) {
    ManufacturedPair mp;
    mp.u = AnalyticField::cosine_in_t(1.3, 2.0, 0.0) *
           AnalyticField::radial_bump(radius, 6).scaled(amplitude);
    mp.v = AnalyticField::cosine_in_t(0.9, 2.0, -0.5 * M_PI + 0.4) *
           AnalyticField::radial_ring(radius, 6).scaled(0.8 * amplitude);
    return mp;
}

} // namespace hyperlab
