#include "hyperlab/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <thread>

namespace hyperlab {

namespace {

std::array<double, 20> analytic_raw(const AnalyticField& f, double t, double x1,
                                    double x2, int max_order) {
    std::array<double, 20> out{};
    for (int a = 0; a <= max_order; ++a)
        for (int b = 0; a + b <= max_order; ++b)
            for (int c = 0; a + b + c <= max_order; ++c)
                out[raw_index(a, b, c)] = f.deriv(a, b, c, t, x1, x2);
    return out;
}

} // namespace

ForcingPair manufactured_forcing(const ManufacturedPair& exact,
                                 const SystemCoefficients& coeffs) {
    const AnalyticField u = exact.u, v = exact.v;
    const SystemCoefficients c = coeffs;
    ForcingPair fp;
    fp.u = [u, v, c](double t, double x1, double x2) {
        const auto v_raw = analytic_raw(v, t, x1, x2, 1);
        return box_of(u, t, x1, x2) - source_f(c, v_raw);
    };
    fp.v = [u, v, c](double t, double x1, double x2) {
        const auto u_raw = analytic_raw(u, t, x1, x2, 1);
        return box_of(v, t, x1, x2) + v(t, x1, x2) - null_quadratic(c.P, u_raw);
    };
    return fp;
}

CauchyData manufactured_cauchy_data(const ManufacturedPair& exact, double t0,
                                    double support_radius) {
    auto freeze = [t0](const AnalyticField& f, int dt_order) {
        return AnalyticField([f, t0, dt_order](int a, int b, int c, double, double x1,
                                               double x2) {
            return f.deriv(a + dt_order, b, c, t0, x1, x2);
        });
    };
    CauchyData d;
    d.u0 = freeze(exact.u, 0);
    d.u1 = freeze(exact.u, 1);
    d.v0 = freeze(exact.v, 0);
    d.v1 = freeze(exact.v, 1);
    d.epsilon = 1.0;
    d.support_radius = support_radius;
    d.validate();
    return d;
}

namespace {

// Active half-width of row iy for mask radius R; [lo, hi] inclusive, empty
// when lo > hi. Rows stay one cell away from the lattice edge (Dirichlet).
struct RowBounds {
    int lo = 1, hi = -1;
};

RowBounds row_bounds(const GridSpec& g, int iy, double R, bool mask) {
    RowBounds b;
    if (!mask) {
        b.lo = 1;
        b.hi = g.n - 2;
        return b;
    }
    const double x2 = g.coord(iy);
    const double span_sq = R * R - x2 * x2;
    if (span_sq <= 0.0) return b;
    const double span = std::sqrt(span_sq);
    const int ic = (g.n - 1) / 2;
    const int k = static_cast<int>(std::floor(span / g.dx));
    b.lo = std::max(1, ic - k);
    b.hi = std::min(g.n - 2, ic + k);
    return b;
}

struct KernelContext {
    const GridSpec* g;
    const SystemCoefficients* coeffs;
    const double* Fu = nullptr; // per-cell forcing at the middle level
    const double* Fv = nullptr;
    double dt;
    double mask_R;
    bool mask;
};

// One pass over rows [iy0, iy1): predictor (corrector = false) writes the
// three-level leapfrog update with one-sided time derivatives in the
// sources; the corrector re-evaluates the sources with time derivatives
// centered at the middle level using the predicted new values, which it
// overwrites in place. Returns the pass sup-norm over the touched cells.
double kernel_rows(const KernelContext& ctx, bool corrector, int iy0, int iy1,
                   const double* up, const double* uc, double* un, const double* vp,
                   const double* vc, double* vn) {
    const GridSpec& g = *ctx.g;
    const int n = g.n;
    const double dt = ctx.dt;
    const double dt2 = dt * dt;
    const double inv_dx2 = 1.0 / (g.dx * g.dx);
    const double inv_2dx = 0.5 / g.dx;
    const SystemCoefficients& c = *ctx.coeffs;
    const double A0 = c.A[0], A1 = c.A[1], A2 = c.A[2], R = c.R;
    const double q00 = c.Q(0, 0), q11 = c.Q(1, 1), q22 = c.Q(2, 2);
    const double q01 = c.Q(0, 1), q02 = c.Q(0, 2), q12 = c.Q(1, 2);
    const double p00 = c.P(0, 0), p11 = c.P(1, 1), p22 = c.P(2, 2);
    const double p01 = c.P(0, 1), p02 = c.P(0, 2), p12 = c.P(1, 2);

    double sup = 0.0;
    for (int iy = iy0; iy < iy1; ++iy) {
        const RowBounds b = row_bounds(g, iy, ctx.mask_R, ctx.mask);
        if (b.lo > b.hi) continue;
        const std::size_t row = g.at(0, iy);
        for (int ix = b.lo; ix <= b.hi; ++ix) {
            const std::size_t i = row + ix;
            const double lap_u =
                (uc[i + 1] + uc[i - 1] + uc[i + n] + uc[i - n] - 4.0 * uc[i]) * inv_dx2;
            const double lap_v =
                (vc[i + 1] + vc[i - 1] + vc[i + n] + vc[i - n] - 4.0 * vc[i]) * inv_dx2;
            const double d1u = (uc[i + 1] - uc[i - 1]) * inv_2dx;
            const double d2u = (uc[i + n] - uc[i - n]) * inv_2dx;
            const double d1v = (vc[i + 1] - vc[i - 1]) * inv_2dx;
            const double d2v = (vc[i + n] - vc[i - n]) * inv_2dx;
            double dtu, dtv;
            if (corrector) {
                dtu = (un[i] - up[i]) * 0.5 / dt;
                dtv = (vn[i] - vp[i]) * 0.5 / dt;
            } else {
                dtu = (uc[i] - up[i]) / dt;
                dtv = (vc[i] - vp[i]) / dt;
            }
            const double f_src =
                vc[i] * (A0 * dtv + A1 * d1v + A2 * d2v + R * vc[i]) +
                q00 * dtv * dtv + q11 * d1v * d1v + q22 * d2v * d2v +
                2.0 * (q01 * dtv * d1v + q02 * dtv * d2v + q12 * d1v * d2v);
            const double p_src =
                p00 * dtu * dtu + p11 * d1u * d1u + p22 * d2u * d2u +
                2.0 * (p01 * dtu * d1u + p02 * dtu * d2u + p12 * d1u * d2u);
            const double fu = ctx.Fu ? ctx.Fu[i] : 0.0;
            const double fv = ctx.Fv ? ctx.Fv[i] : 0.0;
            const double u_new = 2.0 * uc[i] - up[i] + dt2 * (lap_u + f_src + fu);
            const double v_new = 2.0 * vc[i] - vp[i] + dt2 * (lap_v - vc[i] + p_src + fv);
            un[i] = u_new;
            vn[i] = v_new;
            const double a = std::abs(u_new), bb = std::abs(v_new);
            if (a > sup) sup = a;
            if (bb > sup) sup = bb;
        }
    }
    return sup;
}

double run_pass(const KernelContext& ctx, bool corrector, int threads, const double* up,
                const double* uc, double* un, const double* vp, const double* vc,
                double* vn) {
    const int n = ctx.g->n;
    int iy0 = 1, iy1 = n - 1;
    if (ctx.mask) {
        const int ic = (n - 1) / 2;
        const int k = static_cast<int>(std::floor(ctx.mask_R / ctx.g->dx)) + 1;
        iy0 = std::max(1, ic - k);
        iy1 = std::min(n - 1, ic + k + 1);
    }
    if (threads <= 1 || iy1 - iy0 < 4 * threads) {
        return kernel_rows(ctx, corrector, iy0, iy1, up, uc, un, vp, vc, vn);
    }
    std::vector<double> sups(threads, 0.0);
    std::vector<std::thread> pool;
    const int rows = iy1 - iy0;
    for (int k = 0; k < threads; ++k) {
        const int a = iy0 + rows * k / threads;
        const int b = iy0 + rows * (k + 1) / threads;
        pool.emplace_back([&, k, a, b] {
            sups[k] = kernel_rows(ctx, corrector, a, b, up, uc, un, vp, vc, vn);
        });
    }
    for (auto& th : pool) th.join();
    double sup = 0.0;
    for (double s : sups) sup = std::max(sup, s);
    return sup;
}

// Forcing sampled at the middle time level, restricted to its support.
void fill_forcing(const GridSpec& g, const ForcingPair& f, double t, double radius,
                  Field& Fu, Field& Fv) {
    const int ic = (g.n - 1) / 2;
    const int k = (radius > 0.0)
                      ? std::min((g.n - 1) / 2,
                                 static_cast<int>(std::floor(radius / g.dx)) + 2)
                      : (g.n - 1) / 2;
    for (int iy = ic - k; iy <= ic + k; ++iy) {
        const double x2 = g.coord(iy);
        for (int ix = ic - k; ix <= ic + k; ++ix) {
            const double x1 = g.coord(ix);
            const std::size_t i = g.at(ix, iy);
            Fu[i] = f.u(t, x1, x2);
            Fv[i] = f.v(t, x1, x2);
        }
    }
}

double mask_radius(const SlabState& st, double t_next) {
    return st.support_radius + (t_next - st.t0) + 2.0 * st.grid.dx;
}

} // namespace

SlabState make_initial_state(const CauchyData& data, const SystemCoefficients& coeffs_for_init,
                             const GridSpec& grid, double t0,
                             const ForcingPair* forcing) {
    data.validate();
    SlabState st;
    st.grid = grid;
    st.t0 = t0;
    st.support_radius = data.support_radius;
    st.instability_threshold = 1e6 * (data.epsilon > 0.0 ? data.epsilon : 1.0);
    st.u_prev.assign(grid.cells(), 0.0);
    st.v_prev.assign(grid.cells(), 0.0);
    st.u_curr.assign(grid.cells(), 0.0);
    st.v_curr.assign(grid.cells(), 0.0);

    const double eps = data.epsilon;
    const double dt = grid.dt();
    const int ic = (grid.n - 1) / 2;
    const int k = std::min((grid.n - 1) / 2,
                           static_cast<int>(std::floor(data.support_radius / grid.dx)) + 2);
    for (int iy = ic - k; iy <= ic + k; ++iy) {
        const double x2 = grid.coord(iy);
        for (int ix = ic - k; ix <= ic + k; ++ix) {
            const double x1 = grid.coord(ix);
            const std::size_t i = grid.at(ix, iy);
            const double u0 = eps * data.u0(t0, x1, x2);
            const double u1 = eps * data.u1(t0, x1, x2);
            const double v0 = eps * data.v0(t0, x1, x2);
            const double v1 = eps * data.v1(t0, x1, x2);
            st.u_prev[i] = u0;
            st.v_prev[i] = v0;

            // sources at t0 from the data themselves
            std::array<double, 20> u_raw{}, v_raw{};
            u_raw[raw_index(0, 0, 0)] = u0;
            u_raw[raw_index(1, 0, 0)] = u1;
            u_raw[raw_index(0, 1, 0)] = eps * data.u0.deriv(0, 1, 0, t0, x1, x2);
            u_raw[raw_index(0, 0, 1)] = eps * data.u0.deriv(0, 0, 1, t0, x1, x2);
            v_raw[raw_index(0, 0, 0)] = v0;
            v_raw[raw_index(1, 0, 0)] = v1;
            v_raw[raw_index(0, 1, 0)] = eps * data.v0.deriv(0, 1, 0, t0, x1, x2);
            v_raw[raw_index(0, 0, 1)] = eps * data.v0.deriv(0, 0, 1, t0, x1, x2);

            const double lap_u0 = eps * (data.u0.deriv(0, 2, 0, t0, x1, x2) +
                                         data.u0.deriv(0, 0, 2, t0, x1, x2));
            const double lap_v0 = eps * (data.v0.deriv(0, 2, 0, t0, x1, x2) +
                                         data.v0.deriv(0, 0, 2, t0, x1, x2));
            // ddt u = Lap u + f(v,dv) + F_u ; ddt v = Lap v - v + P du du + F_v
            const double fu = forcing ? forcing->u(t0, x1, x2) : 0.0;
            const double fv = forcing ? forcing->v(t0, x1, x2) : 0.0;
            const double ddt_u = lap_u0 + source_f(coeffs_for_init, v_raw) + fu;
            const double ddt_v = lap_v0 - v0 + null_quadratic(coeffs_for_init.P, u_raw) + fv;
            st.u_curr[i] = u0 + dt * u1 + 0.5 * dt * dt * ddt_u;
            st.v_curr[i] = v0 + dt * v1 + 0.5 * dt * dt * ddt_v;
        }
    }
    st.t = t0 + dt;
    return st;
}

void step(SlabState& state, const SystemCoefficients& coeffs, const ForcingPair* forcing,
          const StepOptions& opts) {
    const GridSpec& g = state.grid;
    const double dt = g.dt();
    const double t_mid = state.t;
    const double t_next = state.t + dt;

    static thread_local Field Fu, Fv, un, vn;
    un.assign(g.cells(), 0.0);
    vn.assign(g.cells(), 0.0);
    const double* fu_ptr = nullptr;
    const double* fv_ptr = nullptr;
    if (forcing && forcing->valid()) {
        Fu.assign(g.cells(), 0.0);
        Fv.assign(g.cells(), 0.0);
        fill_forcing(g, *forcing, t_mid, 0.0, Fu, Fv);
        fu_ptr = Fu.data();
        fv_ptr = Fv.data();
    }

    KernelContext ctx{&g, &coeffs, fu_ptr, fv_ptr, dt, mask_radius(state, t_next),
                      opts.cone_mask};
    run_pass(ctx, false, opts.threads, state.u_prev.data(), state.u_curr.data(), un.data(),
             state.v_prev.data(), state.v_curr.data(), vn.data());
    const double sup =
        run_pass(ctx, true, opts.threads, state.u_prev.data(), state.u_curr.data(),
                 un.data(), state.v_prev.data(), state.v_curr.data(), vn.data());
    if (sup > state.instability_threshold) throw InstabilityError(t_next, sup);

    state.u_prev.swap(state.u_curr);
    state.u_curr.swap(un);
    state.v_prev.swap(state.v_curr);
    state.v_curr.swap(vn);
    state.t = t_next;
}

const SliceReport& Trajectory::slice_at(double s) const {
    for (const auto& r : slices)
        if (std::abs(r.s - s) < 1e-9) return r;
    throw std::out_of_range("Trajectory::slice_at: no report for requested s");
}

namespace {

// Tracks pending field samples along a backward characteristic curve.
struct CurveTracker {
    GradientBoundData data;
    double dir1 = 1.0, dir2 = 0.0; // radial direction of the curve
    std::vector<CurvePoint> pending;
    std::size_t cursor = 0;
};

} // namespace

Trajectory evolve(const CauchyData& data, const SystemCoefficients& coeffs,
                  const EvolveParams& params, const EvolveRequest& request,
                  const ForcingPair* forcing) {
    data.validate();
    coeffs.validate();
    const GridSpec& g = params.grid;
    g.validate();
    const double dt = g.dt();
    const int n_steps = static_cast<int>(std::lround((params.t_end - params.t0) / dt));
    if (n_steps < 6) throw std::invalid_argument("evolve: t_end too close to t0");

    Trajectory traj;
    traj.grid = g;
    traj.coeffs = coeffs;
    traj.t0 = params.t0;
    traj.t_end = params.t0 + n_steps * dt;
    traj.epsilon = data.epsilon;

    // --- initial two levels
    SlabState st = make_initial_state(data, coeffs, g, params.t0, forcing);
    st.instability_threshold =
        params.instability_factor * (data.epsilon > 0.0 ? data.epsilon : 1.0);

    // ring of the last 6 levels
    constexpr int kWindow = 6;
    std::vector<Field> u_ring(kWindow), v_ring(kWindow);
    std::vector<double> level_times;
    u_ring[0] = st.u_prev;
    v_ring[0] = st.v_prev;
    u_ring[1] = st.u_curr;
    v_ring[1] = st.v_curr;
    for (int l = 2; l < kWindow; ++l) {
        u_ring[l].assign(g.cells(), 0.0);
        v_ring[l].assign(g.cells(), 0.0);
    }
    level_times.push_back(params.t0);
    level_times.push_back(params.t0 + dt);
    int count = 2;

    // --- observers
    std::vector<SliceAssembler> assemblers;
    for (const auto& job : request.slices)
        assemblers.emplace_back(job, coeffs, g, data.support_radius, params.t0);

    std::vector<CurveTracker> curves;
    for (const auto& target : request.gradient_targets) {
        CurveTracker ct;
        ct.data.target = target;
        const double r0 = target.r();
        if (r0 > 1e-12) {
            ct.dir1 = target.x1 / r0;
            ct.dir2 = target.x2 / r0;
        }
        CharCurve curve = integrate_curve(target.t, r0, CurveDirection::Backward);
        ct.data.exit = curve.exit;
        ct.pending = curve.samples;
        curves.push_back(std::move(ct));
    }

    std::vector<ProbeResult> probes;
    std::vector<std::size_t> probe_order; // by time
    for (const auto& p : request.probes) probes.push_back(ProbeResult{p, {}});
    for (std::size_t i = 0; i < probes.size(); ++i) probe_order.push_back(i);
    std::sort(probe_order.begin(), probe_order.end(), [&](std::size_t a, std::size_t b) {
        return probes[a].p.t < probes[b].p.t;
    });
    std::size_t probe_cursor = 0;

    std::shared_ptr<SlabHistory> history;
    if (request.record_history) {
        history = std::make_shared<SlabHistory>(g);
        history->push_level(level_times[0], u_ring[0], v_ring[0]);
        history->push_level(level_times[1], u_ring[1], v_ring[1]);
    }

    double next_sup_t = params.t0;
    double processed_hi = params.t0;

    auto make_window = [&](int upto) {
        LevelWindow win;
        win.grid = &g;
        const int first = std::max(0, upto - kWindow);
        for (int l = first; l < upto; ++l)
            win.levels.push_back(LevelView{level_times[l], u_ring[l % kWindow].data(),
                                           v_ring[l % kWindow].data()});
        return win;
    };

    auto consume = [&](const LevelWindow& win, bool final_flush) {
        for (auto& a : assemblers) a.process_window(win, final_flush);
        const int nl = win.count();
        const double t_hi =
            final_flush ? win.levels[nl - 1].t + 1e-12 : win.levels[nl - 3].t;
        if (t_hi <= processed_hi) return;
        // curve samples with tau in [processed_hi, t_hi)
        for (auto& ct : curves) {
            while (ct.cursor < ct.pending.size()) {
                const CurvePoint& cp = ct.pending[ct.cursor];
                if (cp.t >= t_hi) break;
                if (cp.t >= processed_hi - 1e-15) {
                    RawPartials rp;
                    raw_partials_bilinear(win, cp.t, cp.r * ct.dir1, cp.r * ct.dir2, 2, rp);
                    const double t = cp.t, r = cp.r;
                    // R_w = (1+(r/t)^2)^{-1} (t-r)^{1/2} t^{1/2}
                    //        (sum_a db_a db_a u + Box u)
                    const double rho = r / t;
                    const double dtt = rp.u[raw_index(2, 0, 0)];
                    const double d11 = rp.u[raw_index(0, 2, 0)];
                    const double d22 = rp.u[raw_index(0, 0, 2)];
                    const double d1t = rp.u[raw_index(1, 1, 0)];
                    const double d2t = rp.u[raw_index(1, 0, 1)];
                    const double dtu = rp.u[raw_index(1, 0, 0)];
                    const double x1 = r * ct.dir1, x2 = r * ct.dir2;
                    const double tangent2 =
                        (rho * rho) * dtt + 2.0 * (x1 * d1t + x2 * d2t) / t + d11 + d22 +
                        (2.0 / t) * dtu - (rho * rho / t) * dtu;
                    const double box_u = dtt - d11 - d22;
                    const double rw = (1.0 / (1.0 + rho * rho)) *
                                      std::sqrt((t - r) * t) * (tangent2 + box_u);
                    ct.data.tau.push_back(t);
                    ct.data.r.push_back(r);
                    ct.data.P.push_back(potential_value(t, r));
                    ct.data.R_w.push_back(rw);
                    if (ct.data.tau.size() == 1)
                        ct.data.w_entry = std::sqrt((t - r) * t) * dtu;
                    if (ct.cursor + 1 == ct.pending.size()) ct.data.dtu_target = dtu;
                }
                ++ct.cursor;
            }
        }
        // pointwise probes
        while (probe_cursor < probe_order.size()) {
            ProbeResult& pr = probes[probe_order[probe_cursor]];
            if (pr.p.t >= t_hi) break;
            if (pr.p.t >= processed_hi - 1e-15)
                raw_partials_bilinear(win, pr.p.t, pr.p.x1, pr.p.x2, 2, pr.values);
            ++probe_cursor;
        }
        processed_hi = t_hi;
    };

    // --- march
    StepOptions sopts{params.threads, params.cone_mask};
    for (int stp = 0; stp + 1 < n_steps; ++stp) {
        const double t_mid = level_times.back();
        const double t_next = t_mid + dt;
        Field& un = u_ring[count % kWindow];
        Field& vn = v_ring[count % kWindow];
        const Field& up = u_ring[(count - 2) % kWindow];
        const Field& uc = u_ring[(count - 1) % kWindow];
        const Field& vp = v_ring[(count - 2) % kWindow];
        const Field& vc = v_ring[(count - 1) % kWindow];

        static thread_local Field Fu, Fv;
        const double* fu_ptr = nullptr;
        const double* fv_ptr = nullptr;
        if (forcing && forcing->valid()) {
            Fu.assign(g.cells(), 0.0);
            Fv.assign(g.cells(), 0.0);
            fill_forcing(g, *forcing, t_mid, data.support_radius + 2.0 * g.dx, Fu, Fv);
            fu_ptr = Fu.data();
            fv_ptr = Fv.data();
        }
        const double mask_R = data.support_radius + (t_next - params.t0) + 2.0 * g.dx;
        KernelContext ctx{&g, &coeffs, fu_ptr, fv_ptr, dt, mask_R, params.cone_mask};
        run_pass(ctx, false, params.threads, up.data(), uc.data(), un.data(), vp.data(),
                 vc.data(), vn.data());
        const double sup = run_pass(ctx, true, params.threads, up.data(), uc.data(),
                                    un.data(), vp.data(), vc.data(), vn.data());
        if (sup > st.instability_threshold) throw InstabilityError(t_next, sup);

        level_times.push_back(t_next);
        ++count;
        ++traj.steps;
        if (history) history->push_level(t_next, un, vn);

        if (t_next >= next_sup_t - 1e-12) {
            traj.sup_series.push_back(SupSeriesPoint{t_next, 0.0, 0.0});
            // sup over active cells of the two fields separately
            double su = 0.0, sv = 0.0;
            for (std::size_t i = 0; i < un.size(); ++i) {
                su = std::max(su, std::abs(un[i]));
                sv = std::max(sv, std::abs(vn[i]));
            }
            traj.sup_series.back().sup_u = su;
            traj.sup_series.back().sup_v = sv;
            next_sup_t += request.sup_series_stride;
        }

        if (count >= 4) consume(make_window(count), false);
    }
    consume(make_window(count), true);

    for (auto& a : assemblers) traj.slices.push_back(a.finalize());
    for (auto& ct : curves) traj.gradient_data.push_back(std::move(ct.data));
    traj.probes = std::move(probes);
    traj.history = history;
    return traj;
}

double hessian_identity_residual(const ScalarFieldFn& u, const SpacetimePoint& p,
                                 const StencilSettings& st) {
    const double t = p.t, x1 = p.x1, x2 = p.x2, h = st.h;
    const double r2 = x1 * x1 + x2 * x2;

    auto second_axis = [&](int axis) {
        auto at = [&](double d) {
            switch (axis) {
                case 0: return u(t + d, x1, x2);
                case 1: return u(t, x1 + d, x2);
                default: return u(t, x1, x2 + d);
            }
        };
        return (-at(2 * h) + 16 * at(h) - 30 * at(0) + 16 * at(-h) - at(-2 * h)) /
               (12.0 * h * h);
    };
    const double dtt = second_axis(0);
    const double box_u = dtt - second_axis(1) - second_axis(2);

    // R_1 pieces by nested first-order stencils
    auto dt_field = [&u, st](double tt, double y1, double y2) {
        return apply_vector_field(u, VectorFieldTag::Dt, SpacetimePoint{tt, y1, y2}, st);
    };
    auto db1_field = [&u, st](double tt, double y1, double y2) {
        return apply_vector_field(u, VectorFieldTag::Db1, SpacetimePoint{tt, y1, y2}, st);
    };
    auto db2_field = [&u, st](double tt, double y1, double y2) {
        return apply_vector_field(u, VectorFieldTag::Db2, SpacetimePoint{tt, y1, y2}, st);
    };
    const double La_dt_u = p.x1 * apply_vector_field(dt_field, VectorFieldTag::L1, p, st) +
                           p.x2 * apply_vector_field(dt_field, VectorFieldTag::L2, p, st);
    const double sum_La_db =
        apply_vector_field(db1_field, VectorFieldTag::L1, p, st) +
        apply_vector_field(db2_field, VectorFieldTag::L2, p, st);
    const double dtu = apply_vector_field(u, VectorFieldTag::Dt, p, st);
    const double R1 = (1.0 / t) * ((2.0 / t) * La_dt_u - sum_La_db -
                                   (r2 / (t * t)) * dtu + 2.0 * dtu);

    const double st2 = (t * t - r2) / (t * t);
    return st2 * dtt - (box_u - R1);
}

} // namespace hyperlab
