#pragma once
/* Chains in the bar complex of a finite group with Z/l coefficients.
 *
 * A degree-n basis element is an n-tuple of group elements, encoded as a
 * single rank in [0, |G|^n) with the leftmost entry most significant, so
 * rank order equals lexicographic tuple order.  A chain is a sorted term
 * list (rank, coeff) with coefficients in 1..l-1; the zero chain is the
 * empty list, and the term count is the norm used throughout.
 */

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "barfill/group.hpp"
#include "barfill/rng.hpp"

namespace barfill {

using Rank = uint64_t;

struct Chain {
    uint32_t n = 0; /* tuple length */
    uint32_t l = 2; /* coefficient modulus */
    std::vector<std::pair<Rank, uint32_t>> terms;

    uint64_t weight() const { return terms.size(); }
    bool is_zero() const { return terms.empty(); }
    bool operator==(const Chain& o) const { return n == o.n && l == o.l && terms == o.terms; }
};

uint64_t chain_space_dim(const Group& g, uint32_t n);
Rank tuple_rank(const Group& g, std::span<const uint32_t> tuple);
void tuple_unrank(const Group& g, uint32_t n, Rank r, uint32_t* out);
std::vector<uint32_t> tuple_of(const Group& g, uint32_t n, Rank r);

/* sort, merge duplicates, reduce mod l, drop zeros */
Chain make_chain(const Group& g, uint32_t n, uint32_t l,
                 std::vector<std::pair<Rank, uint32_t>> terms);
Chain zero_chain(uint32_t n, uint32_t l);

Chain chain_scale(const Chain& a, uint32_t c);
Chain chain_add(const Chain& a, const Chain& b);
Chain chain_sub(const Chain& a, const Chain& b);

/* bar differential, degree n -> n-1; degree 0 is an error */
Chain boundary(const Group& g, const Chain& c);

/* exactly `weight` distinct uniformly chosen tuples, coefficients in 1..l-1 */
Chain random_chain(const Group& g, uint32_t n, uint32_t l, uint64_t weight, Rng& rng);

/* "2*<3,5> + <0,1>" with element indices; "0" for the zero chain */
std::string format_chain(const Chain& c, const Group& g);

std::string chain_to_json(const Group& g, const Chain& c);

struct ParsedChain {
    Group group;
    Chain chain;
};
ParsedChain parse_chain_json(const std::string& text, const RunConfig& cfg);
Chain chain_from_json(const Group& g, const std::string& text);

} // namespace barfill
