#pragma once
/* Built-in invariant battery.
 *
 * Eight suites exercise the library against independent oracles:
 * differential identities, homology dimensions, brute-force filler
 * norms, isoperimetry micro-values, the finitary sentences, torus
 * surjectivity, metric axioms, and the family round trip.  The battery
 * runs under fixed internal caps so its output depends only on the
 * seed and the suite selection; the JSON report carries no clocks or
 * machine state and is byte-identical across runs with the same seed.
 */

#include <cstdint>
#include <string>
#include <vector>

namespace barfill {

struct SuiteResult {
    std::string name;
    bool pass = true;    /* no failures (skips do not fail a suite) */
    uint64_t checks = 0; /* individual assertions that ran */
    uint64_t failures = 0;
    uint64_t skips = 0;               /* combos refused by the battery caps */
    std::vector<std::string> notes;   /* every skip and the first failures */
};

/* suite names, in execution order */
const std::vector<std::string>& selftest_suites();

/* run one suite by name, or all of them ("" or "all") */
std::vector<SuiteResult> run_selftest(uint64_t seed, const std::string& which);

std::string selftest_json(uint64_t seed, const std::vector<SuiteResult>& suites);

} // namespace barfill
