#pragma once

// Transcription of Vigna's public-domain splitmix64.c reference, kept
// separate from qmm::RandomStream so the two can be compared.

#include <cstdint>

namespace oracle {

struct SplitMixReference {
    std::uint64_t x;

    std::uint64_t next() {
        std::uint64_t z = (x += UINT64_C(0x9E3779B97F4A7C15));
        z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
        return z ^ (z >> 31);
    }
};

}  // namespace oracle
