#pragma once
/* Deterministic randomness. mt19937_64 output is pinned by the standard;
 * the distributions are not, so bounded draws are done here by rejection. */

#include <cstdint>
#include <random>

namespace barfill {

class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    /* uniform in [0, n), n >= 1 */
    uint64_t below(uint64_t n) {
        if (n <= 1)
            return 0;
        uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        for (;;) {
            uint64_t x = eng_();
            if (x < limit)
                return x % n;
        }
    }

    /* uniform in [lo, hi] inclusive */
    uint64_t range(uint64_t lo, uint64_t hi) { return lo + below(hi - lo + 1); }

    double unit() { return double(eng_() >> 11) * (1.0 / 9007199254740992.0); }

private:
    std::mt19937_64 eng_;
};

} // namespace barfill
