#include "hyperlab/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace hyperlab {

namespace {

// This writer targets little-endian hosts; the format itself is defined
// little-endian.
void put_u64(std::ostream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
void put_f64(std::ostream& out, double v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
std::uint64_t get_u64(std::istream& in) {
    std::uint64_t v;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}
double get_f64(std::istream& in) {
    double v;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

void put_field(std::ostream& out, const Field& f) {
    out.write(reinterpret_cast<const char*>(f.data()),
              static_cast<std::streamsize>(f.size() * sizeof(double)));
}

void get_field(std::istream& in, Field& f, std::size_t n) {
    f.resize(n);
    in.read(reinterpret_cast<char*>(f.data()), static_cast<std::streamsize>(n * sizeof(double)));
}

} // namespace

void save_checkpoint(const SlabState& state, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_checkpoint: cannot open " + path);
    put_u64(out, kCheckpointMagic);
    put_u64(out, kCheckpointVersion);
    put_u64(out, static_cast<std::uint64_t>(state.grid.n));
    put_f64(out, state.grid.dx);
    put_f64(out, state.grid.extent);
    put_f64(out, state.grid.cfl_factor);
    put_f64(out, state.t);
    put_f64(out, state.t0);
    put_f64(out, state.support_radius);
    put_f64(out, state.instability_threshold);
    put_field(out, state.u_prev);
    put_field(out, state.u_curr);
    put_field(out, state.v_prev);
    put_field(out, state.v_curr);
    if (!out) throw std::runtime_error("save_checkpoint: write failed for " + path);
}

SlabState load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_checkpoint: cannot open " + path);
    if (get_u64(in) != kCheckpointMagic)
        throw std::runtime_error("load_checkpoint: bad magic in " + path);
    const std::uint64_t version = get_u64(in);
    if (version != kCheckpointVersion)
        throw std::runtime_error("load_checkpoint: unsupported version in " + path);
    SlabState st;
    st.grid.n = static_cast<int>(get_u64(in));
    st.grid.dx = get_f64(in);
    st.grid.extent = get_f64(in);
    st.grid.cfl_factor = get_f64(in);
    st.t = get_f64(in);
    st.t0 = get_f64(in);
    st.support_radius = get_f64(in);
    st.instability_threshold = get_f64(in);
    st.grid.validate();
    const std::size_t n = st.grid.cells();
    get_field(in, st.u_prev, n);
    get_field(in, st.u_curr, n);
    get_field(in, st.v_prev, n);
    get_field(in, st.v_curr, n);
    if (!in) throw std::runtime_error("load_checkpoint: truncated file " + path);
    return st;
}

} // namespace hyperlab
