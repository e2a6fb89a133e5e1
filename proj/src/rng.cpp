#include "lowmach/rng.hpp"

#include <cmath>

namespace lowmach {

namespace {

constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;
constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    return ctr;
}

double normal_variate(std::uint64_t seed, std::uint64_t step, std::uint32_t stage,
                      NoiseField field, std::uint64_t index) {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(index >> 1),
        static_cast<std::uint32_t>(static_cast<std::uint32_t>(field) | (stage << 16)),
        static_cast<std::uint32_t>(step),
        static_cast<std::uint32_t>(step >> 32),
    };
    const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed),
                                              static_cast<std::uint32_t>(seed >> 32)};
    const auto r = philox4x32(ctr, key);

    // Box-Muller on two of the four output words; each counter yields a pair
    // of normals consumed by consecutive site indices.
    const double u1 = (static_cast<double>(r[0]) + 1.0) * 0x1p-32;  // (0, 1]
    const double u2 = (static_cast<double>(r[1]) + 0.5) * 0x1p-32;
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 6.283185307179586476925286766559 * u2;
    return (index & 1u) ? rad * std::sin(ang) : rad * std::cos(ang);
}

}  // namespace lowmach
