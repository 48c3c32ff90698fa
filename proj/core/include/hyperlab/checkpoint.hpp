// checkpoint.hpp
// Flat binary slab checkpoints: a little-endian header of 64-bit fields
// (magic, version, lattice size, grid reals, times) followed by the four
// field arrays (u_prev, u_curr, v_prev, v_curr) row-major as f64.
// Layout is documented in the README.
#pragma once

#include <string>

#include "hyperlab/evolution.hpp"

namespace hyperlab {

inline constexpr std::uint64_t kCheckpointMagic = 0x48595045524C4142ull; // "HYPERLAB"
inline constexpr std::uint64_t kCheckpointVersion = 1;

void save_checkpoint(const SlabState& state, const std::string& path);
SlabState load_checkpoint(const std::string& path);

} // namespace hyperlab
