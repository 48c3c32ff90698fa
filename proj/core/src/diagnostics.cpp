#include "hyperlab/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperlab {

DecayFit fit_decay_exponent(const std::vector<double>& s,
                            const std::vector<double>& values) {
    if (s.size() != values.size() || s.size() < 4)
        throw std::invalid_argument("fit_decay_exponent: need at least 4 samples");
    const std::size_t n = s.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (!(s[k] > 0.0) || (k > 0 && s[k] <= s[k - 1]))
            throw std::invalid_argument("fit_decay_exponent: s must be positive and increasing");
        if (!(values[k] > 0.0))
            throw std::invalid_argument("fit_decay_exponent: values must be positive");
        const double x = std::log(s[k]);
        const double y = std::log(values[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    DecayFit fit;
    fit.exponent = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - fit.exponent * sx) / n;
    double rss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double resid = std::log(values[k]) - (intercept + fit.exponent * std::log(s[k]));
        rss += resid * resid;
    }
    fit.residual_rms = std::sqrt(rss / n);
    return fit;
}

void BootstrapParams::validate() const {
    if (!(C1 > C0))
        throw std::invalid_argument("BootstrapParams: C1 must exceed C0");
    if (!(C1 * epsilon <= 1.0))
        throw std::invalid_argument("BootstrapParams: C1 * epsilon must be <= 1");
    if (!(delta > 0.0) || delta > 0.1)
        throw std::invalid_argument("BootstrapParams: delta must lie in (0, 1/10]");
}

BootstrapReport bootstrap_check(const std::vector<SliceReport>& slices,
                                const BootstrapParams& params, int max_order) {
    params.validate();
    if (max_order > 2)
        throw std::invalid_argument("bootstrap_check: orders above 2 are not exercised");
    BootstrapReport rep;
    rep.max_order = max_order;
    for (const auto& sl : slices) {
        if (sl.op_names.empty()) continue;
        const double bound = params.C1 * params.epsilon * std::pow(sl.s, params.delta);
        const auto& ops = op_table(sl.op_order);
        for (std::size_t i = 0; i < sl.op_names.size(); ++i) {
            if (ops[i].order > max_order) continue;
            ++rep.checks;
            if (sl.e_u_sqrt[i] > bound && rep.passed) {
                rep.passed = false;
                rep.first_violation =
                    BootstrapViolation{sl.s, sl.op_names[i], false, sl.e_u_sqrt[i], bound};
            }
            if (sl.e_v_sqrt[i] > bound && rep.passed) {
                rep.passed = false;
                rep.first_violation =
                    BootstrapViolation{sl.s, sl.op_names[i], true, sl.e_v_sqrt[i], bound};
            }
        }
    }
    return rep;
}

KatayamaResult katayama_substitution(const SlabHistory& history, double t,
                                     const QuadraticForm& P,
                                     const SystemCoefficients& coeffs) {
    const GridSpec& g = history.grid();
    KatayamaResult out;
    out.w.assign(g.cells(), 0.0);
    const LevelWindow win = history.window_around(t);
    RawPartials rp;
    for (int iy = 2; iy < g.n - 2; ++iy) {
        for (int ix = 2; ix < g.n - 2; ++ix) {
            raw_partials_at(win, t, ix, iy, 2, rp);
            const double v = rp.v[raw_index(0, 0, 0)];
            const double pduu = null_quadratic(P, rp.u);
            const double w = v - pduu;
            out.w[g.at(ix, iy)] = w;
            out.sup_residual = std::max(out.sup_residual, std::abs(w + pduu - v));
            out.sup_B = std::max(out.sup_B, std::abs(bilinear_B(P, rp.u)));
            out.sup_T = std::max(out.sup_T, std::abs(trilinear_T(coeffs, rp.u, rp.v)));
        }
    }
    return out;
}

SourceL2Report source_l2_report(const std::vector<SliceReport>& slices) {
    SourceL2Report rep;
    std::vector<double> s, f, q;
    for (const auto& sl : slices) {
        rep.rows.push_back(SourceL2Row{sl.s, sl.l2_f, sl.l2_null_quad});
        s.push_back(sl.s);
        f.push_back(sl.l2_f);
        q.push_back(sl.l2_null_quad);
    }
    if (s.size() >= 4) {
        bool positive = true;
        for (std::size_t k = 0; k < s.size(); ++k)
            if (!(f[k] > 0.0) || !(q[k] > 0.0)) positive = false;
        if (positive) {
            rep.f_fit = fit_decay_exponent(s, f);
            rep.null_quad_fit = fit_decay_exponent(s, q);
        }
    }
    return rep;
}

} // namespace hyperlab
