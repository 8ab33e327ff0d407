#pragma once

// Counter-based deterministic generator (splitmix64 finalizer over a keyed
// counter). Sample i is a pure function of (seed, stream, i), so partitioning
// work across threads cannot change any draw.

#include <cstdint>

namespace hitchin {

namespace detail {
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace detail

class CounterRng {
  public:
    CounterRng(uint64_t seed, uint64_t stream) : key_(detail::splitmix64(seed ^ (stream * 0xd1342543de82ef95ULL))) {}

    uint64_t word(uint64_t counter) const { return detail::splitmix64(key_ ^ (counter * 0x2545f4914f6cdd1dULL)); }

    // Unbiased residue in [0, m) via rejection on 64-bit words; the rejection
    // walk is part of the counter stream so results stay reproducible.
    uint32_t below(uint64_t counter, uint32_t m) const {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % m;
        uint64_t sub = 0;
        for (;;) {
            uint64_t w = detail::splitmix64(word(counter) ^ (sub * 0x9e3779b97f4a7c15ULL));
            if (w < limit) return static_cast<uint32_t>(w % m);
            ++sub;
        }
    }

  private:
    uint64_t key_;
};

}  // namespace hitchin
