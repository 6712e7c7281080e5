#pragma once
/* Canonical enumeration of weight-w chains over N tuple ranks: supports
 * run in lexicographic order, and for each support the coefficient
 * odometer over 1..l-1 advances its leftmost position fastest. */

#include <cstdint>
#include <vector>

namespace barfill {

/* C(n, k), saturating at UINT64_MAX */
uint64_t binom_sat(uint64_t n, uint64_t k);

/* C(N, w) * (l-1)^w, saturating */
uint64_t census_count(uint64_t N, uint32_t l, uint32_t w);

/* the combination of lexicographic rank idx among the C(N, w) supports */
std::vector<uint64_t> comb_unrank(uint64_t N, uint32_t w, uint64_t idx);

/* advance to the next support; false when sup was the last one */
bool comb_next(std::vector<uint64_t>& sup, uint64_t N);

/* advance the coefficient odometer; false when it wraps to all ones */
bool coeff_next(std::vector<uint32_t>& coeff, uint32_t l);

} // namespace barfill
