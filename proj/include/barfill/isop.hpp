#pragma once
/* Filler norms and the isoperimetric sentences.
 *
 * The filler norm of a boundary is the least chain size among its
 * preimages under the boundary map, found by iterative deepening with
 * the elimination filler as the upper bound.  Censuses over all chains
 * up to a given size are gated by census_cap and refuse rather than
 * sample silently; sampling is a separate, clearly labeled mode.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "barfill/homology.hpp"
#include "barfill/session.hpp"

namespace barfill {

struct FillerResult {
    uint64_t value = 0;
    Chain witness; /* degree n+1, boundary equals the input */
    bool exact = true;
    uint64_t nodes = 0;
    bool budget_hit = false;
};

/* least size of a chain whose boundary is b; b must be a boundary */
FillerResult filler_norm(Session& s, const Group& g, const Chain& b);

/* filler norm of z1 - z2; the cycles must be homologous */
FillerResult filler_distance(Session& s, const Group& g, const Chain& z1, const Chain& z2);

struct IsopResult {
    uint32_t K = 0;
    uint64_t value = 0;
    std::string mode;        /* "exhaustive" or "sampled" */
    uint64_t boundaries = 0; /* size-K boundaries the census visited */
    bool exact = false;      /* exhaustive census with every filler certified */
    uint64_t nodes = 0;
};

/* max filler norm over boundaries of size exactly K, zero when none
 * exist.  exhaustive mode refuses when the census exceeds census_cap;
 * sampled mode draws `samples` random size-K chains and reports a
 * lower bound */
IsopResult isop(Session& s, const Group& g, uint32_t n, uint32_t l, uint32_t K,
                const std::string& mode, uint64_t samples);

struct IsopProfile {
    std::vector<IsopResult> values; /* index K, 0..k_max */
    std::vector<uint64_t> k1;       /* k1[K] = max isop(1..2K), defined while 2K <= k_max */
};
IsopProfile isop_profile(Session& s, const Group& g, uint32_t n, uint32_t l, uint32_t k_max,
                         const std::string& mode, uint64_t samples);

struct PhiResult {
    bool holds = true;
    uint64_t boundaries = 0;    /* size-K boundaries examined */
    std::string counterexample; /* formatted chain when holds is false */
};
/* every boundary of size K with a filler of size exactly K1 must
 * have filler norm <= K2 */
PhiResult check_phi(Session& s, const Group& g, uint32_t n, uint32_t l, uint32_t K, uint32_t K1,
                    uint32_t K2);

struct PsiResult {
    bool holds = true;
    uint64_t classes = 0; /* homology classes among cycles of size <= K */
    uint64_t cycles = 0;  /* census size, zero chain included */
};
/* among cycles of size <= K, any H_bound+1 of them contain a homologous
 * pair at filler distance <= K1 */
PsiResult check_psi(Session& s, const Group& g, uint32_t n, uint32_t l, uint32_t K, uint32_t K1,
                    uint64_t H_bound);

/* distinct homology classes among cycles of size <= K (zero chain included) */
uint64_t cycle_class_count(Session& s, const Group& g, uint32_t n, uint32_t l, uint32_t K);

} // namespace barfill
