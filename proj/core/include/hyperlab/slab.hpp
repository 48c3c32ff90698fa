// slab.hpp
// Cartesian slab discretization of the cone interior: the lattice, time
// levels, and finite-difference extraction of raw partial derivatives
// d_t^a d_1^b d_2^c (a+b+c <= 3) at points on or between time levels.
// Spatial stencils are centered (4th order for orders 1-2, 2nd order for
// order 3); time interpolation uses polynomial collocation across the
// level window with weights generated by Fornberg's algorithm.
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "hyperlab/diffop.hpp"
#include "hyperlab/fields.hpp"
#include "hyperlab/geometry.hpp"

namespace hyperlab {

struct GridSpec {
    double dx = 0.02;
    double extent = 12.0;      // box [-extent, extent]^2
    double cfl_factor = 0.45;  // dt = cfl_factor * dx, must be <= 1/sqrt(2)
    int n = 0;                 // lattice points per side

    static GridSpec make(double dx, double extent, double cfl_factor);

    double dt() const { return cfl_factor * dx; }
    double coord(int i) const { return -extent + dx * i; }
    // Nearest lattice index; caller checks range.
    int index_of(double x) const { return static_cast<int>(std::lround((x + extent) / dx)); }
    std::size_t cells() const { return static_cast<std::size_t>(n) * n; }
    std::size_t at(int ix, int iy) const { return static_cast<std::size_t>(iy) * n + ix; }
    void validate() const;
};

using Field = std::vector<double>;

// Readonly view of consecutive time levels, oldest first.
struct LevelView {
    double t = 0.0;
    const double* u = nullptr;
    const double* v = nullptr;
};

struct LevelWindow {
    const GridSpec* grid = nullptr;
    std::vector<LevelView> levels;

    int count() const { return static_cast<int>(levels.size()); }
    double t_front() const { return levels.front().t; }
    double t_back() const { return levels.back().t; }
};

// Fornberg finite-difference weights: nodes x[0..n-1], evaluation point z,
// derivatives 0..max_order. w[k][i] multiplies the sample at x[i] for the
// k-th derivative.
void fornberg_weights(const double* x, int n, double z, int max_order,
                      std::vector<std::array<double, 8>>& w);

// Raw partials of u and v at (t, lattice point), up to total order
// max_order <= 3, indexed by raw_index(). Points within two cells of the
// lattice edge return zeros (fields vanish there by construction).
struct RawPartials {
    std::array<double, 20> u{};
    std::array<double, 20> v{};
};

void raw_partials_at(const LevelWindow& win, double t, int ix, int iy,
                     int max_order, RawPartials& out);

// Same at an off-lattice spatial point, bilinear across the four
// surrounding lattice points.
void raw_partials_bilinear(const LevelWindow& win, double t, double x1,
                           double x2, int max_order, RawPartials& out);

// Retained time levels of a run (small slabs only); provides windows for
// slice sampling and pointwise queries after the march has finished.
class SlabHistory {
public:
    SlabHistory(GridSpec grid) : grid_(grid) {}

    void push_level(double t, Field u, Field v);
    const GridSpec& grid() const { return grid_; }
    int level_count() const { return static_cast<int>(times_.size()); }
    double t_front() const { return times_.front(); }
    double t_back() const { return times_.back(); }

    // Window of `width` levels positioned so that t is interior; clamped at
    // the history ends. Throws if t is outside the covered range.
    LevelWindow window_around(double t, int width = 6) const;

    // Synthesize a history by sampling analytic fields on the lattice.
    static SlabHistory from_fields(const GridSpec& grid, double t0, double t1,
                                   const AnalyticField& u, const AnalyticField& v);

private:
    GridSpec grid_;
    std::vector<double> times_;
    std::vector<Field> u_levels_;
    std::vector<Field> v_levels_;
};

} // namespace hyperlab
