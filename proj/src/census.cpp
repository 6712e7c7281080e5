#include "barfill/census.hpp"

#include "barfill/config.hpp"

namespace barfill {

uint64_t binom_sat(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 acc = 1;
    for (uint64_t i = 1; i <= k; ++i) {
        if (acc > UINT64_MAX) return UINT64_MAX; /* monotone, safe to saturate early */
        acc = acc * (n - k + i) / i;             /* exact at each step */
    }
    return acc > UINT64_MAX ? UINT64_MAX : static_cast<uint64_t>(acc);
}

uint64_t census_count(uint64_t N, uint32_t l, uint32_t w) {
    uint64_t c = binom_sat(N, w);
    unsigned __int128 acc = c;
    for (uint32_t i = 0; i < w; ++i) {
        acc *= (l - 1);
        if (acc > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<uint64_t>(acc);
}

std::vector<uint64_t> comb_unrank(uint64_t N, uint32_t w, uint64_t idx) {
    if (idx >= binom_sat(N, w)) throw PreconditionError("comb_unrank: rank out of range");
    std::vector<uint64_t> sup(w);
    uint64_t x = 0;
    for (uint32_t i = 0; i < w; ++i) {
        /* count combinations starting at each candidate first element */
        while (true) {
            uint64_t below = binom_sat(N - x - 1, w - i - 1);
            if (idx < below) break;
            idx -= below;
            ++x;
        }
        sup[i] = x++;
    }
    return sup;
}

bool comb_next(std::vector<uint64_t>& sup, uint64_t N) {
    uint32_t w = static_cast<uint32_t>(sup.size());
    uint32_t pos = w;
    while (pos > 0 && sup[pos - 1] == N - w + pos - 1) --pos;
    if (pos == 0) return false;
    ++sup[pos - 1];
    for (uint32_t i = pos; i < w; ++i) sup[i] = sup[i - 1] + 1;
    return true;
}

bool coeff_next(std::vector<uint32_t>& coeff, uint32_t l) {
    size_t pos = 0;
    while (pos < coeff.size() && coeff[pos] == l - 1) coeff[pos++] = 1;
    if (pos == coeff.size()) return false;
    ++coeff[pos];
    return true;
}

} // namespace barfill
