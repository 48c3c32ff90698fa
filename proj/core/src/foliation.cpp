#include "hyperlab/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyperlab {

namespace {

double support_limit(double s) {
    // Fields from unit-disc data vanish on H_s beyond r = (s^2 - 1)/2,
    // where the slice crosses the cone boundary t = r + 1.
    return 0.5 * (s * s - 1.0);
}

} // namespace

HyperboloidSlice sample_hyperboloid(const SlabHistory& history, double s,
                                    int deriv_order, double r_max) {
    const GridSpec& g = history.grid();
    if (s < 2.0) throw std::invalid_argument("sample_hyperboloid: s must be >= 2");
    const double t_hi = history.t_back();
    if (t_hi < s)
        throw std::out_of_range("sample_hyperboloid: slab does not reach the slice vertex t = s");
    double cover = std::sqrt(std::max(t_hi * t_hi - s * s, 0.0));
    cover = std::min(cover, g.extent - 3.0 * g.dx);
    if (r_max > 0.0) cover = std::min(cover, r_max);

    HyperboloidSlice slice;
    slice.s = s;
    slice.grid = g;
    slice.deriv_order = deriv_order;
    slice.has_v = true;
    const double w = g.dx * g.dx;
    for (int iy = 0; iy < g.n; ++iy) {
        const double x2 = g.coord(iy);
        if (std::abs(x2) > cover) continue;
        for (int ix = 0; ix < g.n; ++ix) {
            const double x1 = g.coord(ix);
            const double r2 = x1 * x1 + x2 * x2;
            if (r2 > cover * cover) continue;
            const double t = std::sqrt(s * s + r2);
            if (t < history.t_front() - 1e-12) continue;
            SlicePointSample p{ix, iy, t, w};
            RawPartials rp;
            raw_partials_at(history.window_around(t), t, ix, iy, deriv_order, rp);
            slice.points.push_back(p);
            slice.values.push_back(rp);
        }
    }
    return slice;
}

HyperboloidSlice sample_hyperboloid_analytic(const AnalyticField& u,
                                             const AnalyticField& v, double s,
                                             const GridSpec& grid, int deriv_order,
                                             double r_max) {
    HyperboloidSlice slice;
    slice.s = s;
    slice.grid = grid;
    slice.deriv_order = deriv_order;
    slice.has_v = v.valid();
    double cover = grid.extent - grid.dx;
    if (r_max > 0.0) cover = std::min(cover, r_max);
    const double w = grid.dx * grid.dx;
    for (int iy = 0; iy < grid.n; ++iy) {
        const double x2 = grid.coord(iy);
        if (std::abs(x2) > cover) continue;
        for (int ix = 0; ix < grid.n; ++ix) {
            const double x1 = grid.coord(ix);
            const double r2 = x1 * x1 + x2 * x2;
            if (r2 > cover * cover) continue;
            const double t = std::sqrt(s * s + r2);
            SlicePointSample p{ix, iy, t, w};
            RawPartials rp;
            for (int a = 0; a <= deriv_order; ++a)
                for (int b = 0; a + b <= deriv_order; ++b)
                    for (int c = 0; a + b + c <= deriv_order; ++c) {
                        rp.u[raw_index(a, b, c)] = u.deriv(a, b, c, t, x1, x2);
                        if (slice.has_v) rp.v[raw_index(a, b, c)] = v.deriv(a, b, c, t, x1, x2);
                    }
            slice.points.push_back(p);
            slice.values.push_back(rp);
        }
    }
    return slice;
}

namespace {

double energy_integrand(const std::array<double, 20>& f, double c2, EnergyForm form,
                        double t, double x1, double x2, double s) {
    const double w = f[raw_index(0, 0, 0)];
    const double dt = f[raw_index(1, 0, 0)];
    const double d1 = f[raw_index(0, 1, 0)];
    const double d2 = f[raw_index(0, 0, 1)];
    const double st = s / t;
    switch (form) {
        case EnergyForm::A:
            return dt * dt + d1 * d1 + d2 * d2 +
                   2.0 * (x1 / t) * dt * d1 + 2.0 * (x2 / t) * dt * d2 + c2 * w * w;
        case EnergyForm::B: {
            const double db1 = (x1 / t) * dt + d1;
            const double db2 = (x2 / t) * dt + d2;
            return db1 * db1 + db2 * db2 + st * st * dt * dt + c2 * w * w;
        }
        case EnergyForm::C: {
            const double dperp = dt + (x1 / t) * d1 + (x2 / t) * d2;
            const double rot = (x1 * d2 - x2 * d1) / t;
            return dperp * dperp + st * st * (d1 * d1 + d2 * d2) + rot * rot + c2 * w * w;
        }
    }
    return 0.0;
}

} // namespace

EnergyValue energy(const HyperboloidSlice& slice, double c2, EnergyForm form,
                   SliceField field) {
    if (slice.deriv_order < 1)
        throw std::invalid_argument("energy: slice lacks first-derivative samples");
    if (field == SliceField::V && !slice.has_v)
        throw std::invalid_argument("energy: slice carries no v samples");
    PairwiseAccumulator acc;
    for (std::size_t k = 0; k < slice.points.size(); ++k) {
        const auto& p = slice.points[k];
        const auto& f = (field == SliceField::U) ? slice.values[k].u : slice.values[k].v;
        const double x1 = slice.grid.coord(p.ix), x2 = slice.grid.coord(p.iy);
        acc.add(p.weight * energy_integrand(f, c2, form, p.t, x1, x2, slice.s));
    }
    return EnergyValue{acc.sum(), c2, form};
}

double slice_l2_norm(const HyperboloidSlice& slice, const DiffOp& op, SliceField field) {
    if (op.max_order() > slice.deriv_order)
        throw std::invalid_argument("slice_l2_norm: slice derivative order too low for operator");
    PairwiseAccumulator acc;
    for (std::size_t k = 0; k < slice.points.size(); ++k) {
        const auto& p = slice.points[k];
        const auto& f = (field == SliceField::U) ? slice.values[k].u : slice.values[k].v;
        const double x1 = slice.grid.coord(p.ix), x2 = slice.grid.coord(p.iy);
        const double val = op.evaluate(p.t, x1, x2, f.data(), slice.deriv_order);
        acc.add(p.weight * val * val);
    }
    return std::sqrt(acc.sum());
}

KsRatio klainerman_sobolev_ratio(const HyperboloidSlice& slice, const SpacetimePoint& p) {
    if (slice.deriv_order < 2)
        throw std::invalid_argument("klainerman_sobolev_ratio: needs order-2 slice samples");
    double denom = 0.0;
    for (const auto& e : op_table(2)) denom += slice_l2_norm(slice, e.op, SliceField::U);

    // nearest lattice sample to p
    const GridSpec& g = slice.grid;
    const int ix = g.index_of(p.x1);
    const int iy = g.index_of(p.x2);
    double numer = 0.0;
    bool found = false;
    for (std::size_t k = 0; k < slice.points.size(); ++k) {
        if (slice.points[k].ix == ix && slice.points[k].iy == iy) {
            numer = slice.points[k].t * std::abs(slice.values[k].u[raw_index(0, 0, 0)]);
            found = true;
            break;
        }
    }
    if (!found)
        throw std::out_of_range("klainerman_sobolev_ratio: point not on the sampled slice");

    KsRatio out;
    out.numerator = numer;
    out.denominator = denom;
    if (denom <= 1e-300) {
        out.status = KsRatio::Status::ZeroField;
        return out;
    }
    out.ratio = numer / denom;
    return out;
}

KsRatio klainerman_sobolev_ratio(const SlabHistory& history, double s,
                                 const SpacetimePoint& p) {
    return klainerman_sobolev_ratio(sample_hyperboloid(history, s, 2), p);
}

// --- accumulator --------------------------------------------------------------

SliceAccumulator::SliceAccumulator(const SliceJob& job, const SystemCoefficients& coeffs,
                                   const GridSpec& grid)
    : job_(job), coeffs_(coeffs) {
    raw_order_ = 1;
    if (job.energies) {
        ops_ = &op_table(job.op_order);
        raw_order_ = std::max(raw_order_, job.op_order + 1);
        e_u_.resize(ops_->size());
        e_v_.resize(ops_->size());
        l2_u_.resize(ops_->size());
    }
    if (job.sources || job.energy_law) raw_order_ = std::max(raw_order_, 2);
    if (job.ks_point) {
        ks_ix_ = grid.index_of(job.ks_point->x1);
        ks_iy_ = grid.index_of(job.ks_point->x2);
        if (job.op_order < 2 && job.energies)
            throw std::invalid_argument("SliceAccumulator: KS probe needs op_order = 2");
    }
}

void SliceAccumulator::add_point(double t, double x1, double x2, double weight,
                                 const RawPartials& rp, int ix, int iy) {
    const double s = job_.s;
    if (ix == ks_ix_ && iy == ks_iy_ && ix >= 0)
        ks_numer_ = t * std::abs(rp.u[raw_index(0, 0, 0)]);
    if (job_.energies) {
        for (std::size_t i = 0; i < ops_->size(); ++i) {
            const auto& e = (*ops_)[i];
            const double wu = e.op.evaluate(t, x1, x2, rp.u.data(), 3);
            const double dtu = e.d_t_op.evaluate(t, x1, x2, rp.u.data(), 3);
            const double d1u = e.d_1_op.evaluate(t, x1, x2, rp.u.data(), 3);
            const double d2u = e.d_2_op.evaluate(t, x1, x2, rp.u.data(), 3);
            const double db1 = (x1 / t) * dtu + d1u;
            const double db2 = (x2 / t) * dtu + d2u;
            const double st = s / t;
            e_u_[i].add(weight * (db1 * db1 + db2 * db2 + st * st * dtu * dtu));
            l2_u_[i].add(weight * wu * wu);

            const double wv = e.op.evaluate(t, x1, x2, rp.v.data(), 3);
            const double dtv = e.d_t_op.evaluate(t, x1, x2, rp.v.data(), 3);
            const double d1v = e.d_1_op.evaluate(t, x1, x2, rp.v.data(), 3);
            const double d2v = e.d_2_op.evaluate(t, x1, x2, rp.v.data(), 3);
            const double db1v = (x1 / t) * dtv + d1v;
            const double db2v = (x2 / t) * dtv + d2v;
            e_v_[i].add(weight *
                        (db1v * db1v + db2v * db2v + st * st * dtv * dtv + wv * wv));
        }
    }
    if (job_.sources) {
        const double f = source_f(coeffs_, rp.v);
        const double pduu = null_quadratic(coeffs_.P, rp.u);
        l2_f_.add(weight * f * f);
        l2_pduu_.add(weight * pduu * pduu);
        const double B = bilinear_B(coeffs_.P, rp.u);
        const double T = trilinear_T(coeffs_, rp.u, rp.v);
        const double ts = t / s;
        sup_B_.add_abs(B * ts * std::pow(s, 4.0 - 4.0 * job_.delta));
        sup_T_.add_abs(T * ts * ts * std::pow(s, 3.0 - 3.0 * job_.delta));
    }
    if (job_.energy_law) {
        const double box_u = box_value(rp.u);
        const double box_v_kg = box_value(rp.v) + rp.v[raw_index(0, 0, 0)];
        l2_box_u_.add(weight * box_u * box_u);
        l2_box_v_kg_.add(weight * box_v_kg * box_v_kg);
    }
    // order-0 energies always tracked (energy law / bootstrap baselines)
    e_u0_.add(weight * energy_integrand(rp.u, 0.0, EnergyForm::B, t, x1, x2, s));
    e_v0_.add(weight * energy_integrand(rp.v, 1.0, EnergyForm::B, t, x1, x2, s));
    if (job_.sup_norms) {
        sup_u_.add_abs(rp.u[raw_index(0, 0, 0)]);
        sup_dtu_.add_abs(rp.u[raw_index(1, 0, 0)]);
        sup_vts_.add_abs(rp.v[raw_index(0, 0, 0)] * t / s);
    }
}

SliceReport SliceAccumulator::finalize() const {
    SliceReport rep;
    rep.s = job_.s;
    rep.op_order = job_.op_order;
    std::uint64_t n = e_u0_.count();
    rep.n_points = n;
    if (job_.energies) {
        for (const auto& e : *ops_) rep.op_names.push_back(e.name);
        for (std::size_t i = 0; i < ops_->size(); ++i) {
            rep.e_u_sqrt.push_back(std::sqrt(std::max(0.0, e_u_[i].sum())));
            rep.e_v_sqrt.push_back(std::sqrt(std::max(0.0, e_v_[i].sum())));
            rep.l2_u.push_back(std::sqrt(std::max(0.0, l2_u_[i].sum())));
        }
    }
    rep.l2_f = std::sqrt(std::max(0.0, l2_f_.sum()));
    rep.l2_null_quad = std::sqrt(std::max(0.0, l2_pduu_.sum()));
    rep.l2_box_u = std::sqrt(std::max(0.0, l2_box_u_.sum()));
    rep.l2_box_v_kg = std::sqrt(std::max(0.0, l2_box_v_kg_.sum()));
    rep.e_u0_sqrt = std::sqrt(std::max(0.0, e_u0_.sum()));
    rep.e_v0_sqrt = std::sqrt(std::max(0.0, e_v0_.sum()));
    rep.sup_dtu = sup_dtu_.value();
    rep.sup_u = sup_u_.value();
    rep.sup_v_t_over_s = sup_vts_.value();
    rep.sup_B_weighted = sup_B_.value();
    rep.sup_T_weighted = sup_T_.value();
    rep.ks_numerator = ks_numer_;
    if (job_.energies && job_.ks_point) {
        double d = 0.0;
        for (std::size_t i = 0; i < ops_->size(); ++i)
            if ((*ops_)[i].order <= 2) d += rep.l2_u[i];
        rep.ks_denominator = d;
    }
    return rep;
}

// --- streaming assembler -------------------------------------------------------

SliceAssembler::SliceAssembler(const SliceJob& job, const SystemCoefficients& coeffs,
                               const GridSpec& grid, double support_radius_at_t0,
                               double t0)
    : job_s_(job.s), grid_(grid), acc_(job, coeffs, grid), t_processed_(job.s) {
    // Fields vanish on H_s beyond the cone crossing of the expanding
    // support r = support_radius + (t - t0): r_cut solves
    // sqrt(s^2 + r^2) = t0 - support_radius + r.
    const double c = t0 - support_radius_at_t0;
    double r_sup = (c > 0.0) ? (job.s * job.s - c * c) / (2.0 * c) : grid.extent;
    if (r_sup < 0.0) r_sup = 0.0;
    r_cutoff_ = std::min({r_sup + 2.0 * grid.dx, grid_.extent - 3.0 * grid.dx});
    raw_order_ = acc_.raw_order();
}

void SliceAssembler::process_window(const LevelWindow& win, bool final_flush) {
    if (done_) return;
    const int nl = win.count();
    if (nl < 4) return;
    // Safe upper time: two levels of forward margin for interpolation, or
    // the last level on the final flush.
    const double t_hi = final_flush ? win.levels[nl - 1].t + 1e-12 : win.levels[nl - 3].t;
    if (t_hi <= t_processed_) return;
    process_annulus(win, t_processed_, t_hi);
    t_processed_ = t_hi;
    const double r_done = std::sqrt(std::max(t_processed_ * t_processed_ - job_s_ * job_s_, 0.0));
    if (r_done >= r_cutoff_) done_ = true;
}

void SliceAssembler::process_annulus(const LevelWindow& win, double t_lo, double t_hi) {
    // A lattice point belongs to this annulus iff its slice time
    // t* = sqrt(s^2 + r^2) lies in [t_lo, t_hi); successive intervals are
    // disjoint, so every point is visited exactly once.
    const double s = job_s_;
    const double r_hi_sq = t_hi * t_hi - s * s;
    if (r_hi_sq <= 0.0) return;
    const double r_hi = std::min(std::sqrt(r_hi_sq), r_cutoff_);
    const double r_lo = (t_lo > s) ? std::sqrt(t_lo * t_lo - s * s) : 0.0;
    if (r_hi <= r_lo) return;

    const GridSpec& g = grid_;
    const double w = g.dx * g.dx;
    const int ic = (g.n - 1) / 2; // lattice center (x = 0)
    const int half_hi = static_cast<int>(std::floor(r_hi / g.dx)) + 1;
    RawPartials rp;
    for (int iy = std::max(0, ic - half_hi); iy <= std::min(g.n - 1, ic + half_hi); ++iy) {
        const double x2 = g.coord(iy);
        const double row_hi_sq = r_hi * r_hi - x2 * x2;
        if (row_hi_sq <= 0.0) continue;
        const double row_lo_sq = r_lo * r_lo - x2 * x2;
        const int span_hi = static_cast<int>(std::floor(std::sqrt(row_hi_sq) / g.dx)) + 1;
        const int span_lo =
            (row_lo_sq > 0.0)
                ? std::max(0, static_cast<int>(std::floor(std::sqrt(row_lo_sq) / g.dx)) - 1)
                : 0;
        // two symmetric index bands; membership decided by the exact t* test
        auto scan = [&](int ix_begin, int ix_end) {
            for (int ix = std::max(0, ix_begin); ix <= std::min(g.n - 1, ix_end); ++ix) {
                const double x1 = g.coord(ix);
                const double r2 = x1 * x1 + x2 * x2;
                if (r2 > r_cutoff_ * r_cutoff_) continue;
                const double t = std::sqrt(s * s + r2);
                if (t < t_lo || t >= t_hi) continue;
                raw_partials_at(win, t, ix, iy, raw_order_, rp);
                acc_.add_point(t, x1, x2, w, rp, ix, iy);
            }
        };
        if (span_lo == 0) {
            scan(ic - span_hi, ic + span_hi);
        } else {
            scan(ic - span_hi, ic - span_lo);
            scan(ic + span_lo, ic + span_hi);
        }
    }
}

SliceReport slice_report_from(const HyperboloidSlice& slice, const SliceJob& job,
                              const SystemCoefficients& coeffs) {
    SliceAccumulator acc(job, coeffs, slice.grid);
    if (acc.raw_order() > slice.deriv_order)
        throw std::invalid_argument("slice_report_from: slice derivative order too low");
    for (std::size_t k = 0; k < slice.points.size(); ++k) {
        const auto& p = slice.points[k];
        acc.add_point(p.t, slice.grid.coord(p.ix), slice.grid.coord(p.iy), p.weight,
                      slice.values[k], p.ix, p.iy);
    }
    return acc.finalize();
}

EnergyInequalityReport check_energy_inequality(const std::vector<SliceReport>& law,
                                               double c2, double s0, double s1,
                                               SliceField field) {
    std::vector<const SliceReport*> rows;
    for (const auto& r : law)
        if (r.s >= s0 - 1e-12 && r.s <= s1 + 1e-12) rows.push_back(&r);
    if (rows.size() < 2)
        throw std::invalid_argument("check_energy_inequality: need at least two law slices in [s0, s1]");
    std::sort(rows.begin(), rows.end(),
              [](const SliceReport* a, const SliceReport* b) { return a->s < b->s; });

    auto e_of = [&](const SliceReport* r) {
        if (field == SliceField::U) return (c2 == 0.0) ? r->e_u0_sqrt : 0.0;
        return (c2 == 1.0) ? r->e_v0_sqrt : 0.0;
    };
    auto f_of = [&](const SliceReport* r) {
        return (field == SliceField::U) ? r->l2_box_u : r->l2_box_v_kg;
    };

    EnergyInequalityReport rep;
    rep.initial = e_of(rows.front());
    rep.lhs = e_of(rows.back());
    double integral = 0.0;
    for (std::size_t k = 1; k < rows.size(); ++k)
        integral += 0.5 * (f_of(rows[k]) + f_of(rows[k - 1])) * (rows[k]->s - rows[k - 1]->s);
    rep.source_integral = integral;
    rep.rhs = rep.initial + integral;
    rep.slack = rep.rhs - rep.lhs;
    return rep;
}

} // namespace hyperlab
