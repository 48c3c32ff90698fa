#include "hyperlab/slab.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperlab {

GridSpec GridSpec::make(double dx, double extent, double cfl_factor) {
    GridSpec g;
    g.dx = dx;
    g.cfl_factor = cfl_factor;
    g.n = 2 * static_cast<int>(std::lround(extent / dx)) + 1;
    g.extent = 0.5 * dx * (g.n - 1);
    g.validate();
    return g;
}

void GridSpec::validate() const {
    if (!(dx > 0.0)) throw std::invalid_argument("GridSpec: dx must be positive");
    if (!(extent > 0.0)) throw std::invalid_argument("GridSpec: extent must be positive");
    if (!(cfl_factor > 0.0) || cfl_factor > 1.0 / std::sqrt(2.0) + 1e-15)
        throw std::invalid_argument("GridSpec: cfl_factor must lie in (0, 1/sqrt(2)]");
    if (n < 9) throw std::invalid_argument("GridSpec: lattice too small");
}

void fornberg_weights(const double* x, int n, double z, int max_order,
                      std::vector<std::array<double, 8>>& w) {
    // Fornberg (1988); w[i][k] = weight of node i for derivative k.
    w.assign(n, {});
    w[0][0] = 1.0;
    double c1 = 1.0;
    double c4 = x[0] - z;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, max_order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    w[i][k] = c1 * (k * w[i - 1][k - 1] - c5 * w[i - 1][k]) / c2;
                w[i][0] = -c1 * c5 * w[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                w[j][k] = (c4 * w[j][k] - k * w[j][k - 1]) / c3;
            w[j][0] = c4 * w[j][0] / c3;
        }
        c1 = c2;
    }
}

namespace {

// Spatial partials (b,c) with b+c <= 3 of one field at lattice (ix,iy),
// written into sp[] indexed by raw_index(0,b,c). Assumes 2 <= ix,iy <= n-3.
void spatial_partials(const double* f, const GridSpec& g, int ix, int iy, int max_order,
                      double* sp) {
    const int n = g.n;
    const double h = g.dx;
    auto F = [&](int dx_, int dy_) { return f[g.at(ix + dx_, iy + dy_)]; };

    sp[raw_index(0, 0, 0)] = F(0, 0);
    if (max_order < 1) return;

    const double inv12h = 1.0 / (12.0 * h);
    sp[raw_index(0, 1, 0)] = (-F(2, 0) + 8 * F(1, 0) - 8 * F(-1, 0) + F(-2, 0)) * inv12h;
    sp[raw_index(0, 0, 1)] = (-F(0, 2) + 8 * F(0, 1) - 8 * F(0, -1) + F(0, -2)) * inv12h;
    if (max_order < 2) return;

    const double inv12h2 = 1.0 / (12.0 * h * h);
    sp[raw_index(0, 2, 0)] =
        (-F(2, 0) + 16 * F(1, 0) - 30 * F(0, 0) + 16 * F(-1, 0) - F(-2, 0)) * inv12h2;
    sp[raw_index(0, 0, 2)] =
        (-F(0, 2) + 16 * F(0, 1) - 30 * F(0, 0) + 16 * F(0, -1) - F(0, -2)) * inv12h2;
    // d1 d2: 4th-order cross stencil (tensor product of the 1st-derivative
    // stencils).
    {
        double acc = 0.0;
        const double wts[4] = {-1.0, 8.0, -8.0, 1.0};
        const int off[4] = {2, 1, -1, -2};
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) acc += wts[a] * wts[b] * F(off[a], off[b]);
        sp[raw_index(0, 1, 1)] = acc / (144.0 * h * h);
    }
    if (max_order < 3) return;

    const double inv2h3 = 1.0 / (2.0 * h * h * h);
    sp[raw_index(0, 3, 0)] = (F(2, 0) - 2 * F(1, 0) + 2 * F(-1, 0) - F(-2, 0)) * inv2h3;
    sp[raw_index(0, 0, 3)] = (F(0, 2) - 2 * F(0, 1) + 2 * F(0, -1) - F(0, -2)) * inv2h3;
    // d1^2 d2 and d1 d2^2: 2nd-order composition.
    const double inv2h = 1.0 / (2.0 * h);
    const double invh2 = 1.0 / (h * h);
    auto dxx = [&](int dy_) { return (F(1, dy_) - 2 * F(0, dy_) + F(-1, dy_)) * invh2; };
    auto dyy = [&](int dx_) { return (F(dx_, 1) - 2 * F(dx_, 0) + F(dx_, -1)) * invh2; };
    sp[raw_index(0, 2, 1)] = (dxx(1) - dxx(-1)) * inv2h;
    sp[raw_index(0, 1, 2)] = (dyy(1) - dyy(-1)) * inv2h;
}

constexpr int kSpatialCount = 10; // (b,c) with b+c <= 3

// Indices of the spatial-only partials inside the raw ordering.
const std::array<std::pair<int, int>, kSpatialCount>& spatial_list() {
    static const std::array<std::pair<int, int>, kSpatialCount> v{{
        {0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3}}};
    return v;
}

void raw_from_levels(const LevelWindow& win, double t, int max_order,
                     const std::array<std::array<double, kSpatialCount>, 8>& su,
                     const std::array<std::array<double, kSpatialCount>, 8>& sv,
                     RawPartials& out) {
    const int nl = win.count();
    std::array<double, 8> nodes{};
    for (int l = 0; l < nl; ++l) nodes[l] = win.levels[l].t;
    static thread_local std::vector<std::array<double, 8>> w;
    fornberg_weights(nodes.data(), nl, t, max_order, w);

    out.u.fill(0.0);
    out.v.fill(0.0);
    for (const auto& [b, c] : spatial_list()) {
        if (b + c > max_order) continue;
        for (int a = 0; a + b + c <= max_order; ++a) {
            double accu = 0.0, accv = 0.0;
            const int sidx = raw_index(0, b, c);
            for (int l = 0; l < nl; ++l) {
                accu += w[l][a] * su[l][sidx];
                accv += w[l][a] * sv[l][sidx];
            }
            out.u[raw_index(a, b, c)] = accu;
            out.v[raw_index(a, b, c)] = accv;
        }
    }
}

} // namespace

void raw_partials_at(const LevelWindow& win, double t, int ix, int iy,
                     int max_order, RawPartials& out) {
    const GridSpec& g = *win.grid;
    if (ix < 2 || iy < 2 || ix > g.n - 3 || iy > g.n - 3) {
        out.u.fill(0.0);
        out.v.fill(0.0);
        return;
    }
    std::array<std::array<double, kSpatialCount>, 8> su{}, sv{};
    for (int l = 0; l < win.count(); ++l) {
        spatial_partials(win.levels[l].u, g, ix, iy, max_order, su[l].data());
        spatial_partials(win.levels[l].v, g, ix, iy, max_order, sv[l].data());
    }
    raw_from_levels(win, t, max_order, su, sv, out);
}

void raw_partials_bilinear(const LevelWindow& win, double t, double x1,
                           double x2, int max_order, RawPartials& out) {
    const GridSpec& g = *win.grid;
    const double fx = (x1 + g.extent) / g.dx;
    const double fy = (x2 + g.extent) / g.dx;
    const int ix = static_cast<int>(std::floor(fx));
    const int iy = static_cast<int>(std::floor(fy));
    const double ax = fx - ix, ay = fy - iy;

    RawPartials p00, p10, p01, p11;
    raw_partials_at(win, t, ix, iy, max_order, p00);
    raw_partials_at(win, t, ix + 1, iy, max_order, p10);
    raw_partials_at(win, t, ix, iy + 1, max_order, p01);
    raw_partials_at(win, t, ix + 1, iy + 1, max_order, p11);

    const double w00 = (1 - ax) * (1 - ay), w10 = ax * (1 - ay);
    const double w01 = (1 - ax) * ay, w11 = ax * ay;
    for (std::size_t k = 0; k < out.u.size(); ++k) {
        out.u[k] = w00 * p00.u[k] + w10 * p10.u[k] + w01 * p01.u[k] + w11 * p11.u[k];
        out.v[k] = w00 * p00.v[k] + w10 * p10.v[k] + w01 * p01.v[k] + w11 * p11.v[k];
    }
}

void SlabHistory::push_level(double t, Field u, Field v) {
    if (!times_.empty() && t <= times_.back())
        throw std::invalid_argument("SlabHistory: levels must be pushed in increasing time");
    times_.push_back(t);
    u_levels_.push_back(std::move(u));
    v_levels_.push_back(std::move(v));
}

LevelWindow SlabHistory::window_around(double t, int width) const {
    if (times_.empty() || t < times_.front() - 1e-12 || t > times_.back() + 1e-12)
        throw std::out_of_range("SlabHistory: requested time not covered by the recorded levels");
    width = std::min<int>(width, level_count());
    // position so that t sits between levels j and j+1 with two levels of
    // margin below when available.
    int j = 0;
    while (j + 1 < level_count() && times_[j + 1] <= t) ++j;
    int first = std::clamp(j - 2, 0, level_count() - width);
    LevelWindow win;
    win.grid = &grid_;
    win.levels.reserve(width);
    for (int l = first; l < first + width; ++l)
        win.levels.push_back(LevelView{times_[l], u_levels_[l].data(), v_levels_[l].data()});
    return win;
}

SlabHistory SlabHistory::from_fields(const GridSpec& grid, double t0, double t1,
                                     const AnalyticField& u, const AnalyticField& v) {
    SlabHistory h(grid);
    const double dt = grid.dt();
    const int nsteps = static_cast<int>(std::ceil((t1 - t0) / dt)) + 1;
    for (int k = 0; k < nsteps; ++k) {
        const double t = t0 + k * dt;
        Field fu(grid.cells(), 0.0), fv(grid.cells(), 0.0);
        for (int iy = 0; iy < grid.n; ++iy)
            for (int ix = 0; ix < grid.n; ++ix) {
                const double x1 = grid.coord(ix), x2 = grid.coord(iy);
                fu[grid.at(ix, iy)] = u(t, x1, x2);
                if (v.valid()) fv[grid.at(ix, iy)] = v(t, x1, x2);
            }
        h.push_level(t, std::move(fu), std::move(fv));
    }
    return h;
}

} // namespace hyperlab
