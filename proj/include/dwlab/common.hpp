#pragma once
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace dwlab {

inline void ensure(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

// Uniform [0,1) from the top 53 bits of one engine draw. The standard
// distributions are implementation-defined sequences; this mapping keeps
// seeded runs bit-identical across standard libraries.
inline double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double symmetric_uniform(std::mt19937_64& rng) {
    return 2.0 * unit_uniform(rng) - 1.0;
}

}  // namespace dwlab
