#pragma once

#include <array>
#include <cstdint>

namespace lowmach {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011). The draw at
// a given (key, counter) is a pure function, so noise fields can be evaluated
// in any order and reproduced exactly on restart.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

// Stream identifiers for the per-site normal variates.
enum class NoiseField : std::uint32_t {
    mass_x = 0,
    mass_y = 1,
    mom_xx = 2,
    mom_yy = 3,
    mom_node = 4,
    init = 200,
};

// Standard normal variate keyed by (seed, step, stage, field, site index).
double normal_variate(std::uint64_t seed, std::uint64_t step, std::uint32_t stage,
                      NoiseField field, std::uint64_t index);

}  // namespace lowmach
