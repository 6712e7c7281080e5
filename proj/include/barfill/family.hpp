#pragma once
/* Families of groups indexed by prime powers q: diagonal embeddings of
 * a base chain, the coordinates decomposition with plurality semantics,
 * uniform filler bounds across a family, and growth probes driven by a
 * small recipe language.
 *
 * A recipe names one boundary per index in terms of the member group:
 *
 *   recipe := "d(" chain ")" | chain        bare chains must be boundaries
 *   chain  := ["-"] term (("+"|"-") term)*
 *   term   := [INT "*"] tuple
 *   tuple  := "<" word ("," word)* ">"
 *   word   := atom ("*" atom)*
 *   atom   := base ["^" exp]
 *   base   := "e" | "g" INT | "u" DIGIT DIGIT   identity, torus generator
 *                                               slot k, elementary unipotent
 *   exp    := ["-"] INT | "(q-1)" ["/" INT]     evaluated per index
 *
 * Malformed text is a ParseError; an atom that does not exist in some
 * member (a unipotent in a torus, a non-dividing exponent denominator)
 * skips that index and the verdict reports the mix. */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "barfill/isop.hpp"
#include "barfill/session.hpp"

namespace barfill {

struct FamilyMember {
    std::string label; /* distinct; the q value for q-indexed families */
    std::string spec;
    uint32_t q = 0; /* 0 when the index carries no field size */
};

struct GroupFamily {
    std::vector<FamilyMember> members;
    uint32_t n = 1; /* shared degree */
    uint32_t l = 2; /* shared modulus */
};

/* gl:<k>, sl:<k> or torus:<k> over prime powers q_lo..q_hi; keeps q
 * with q % mod_filter == 1 when mod_filter >= 2.  Every member group is
 * built eagerly so bad specs fail here, not mid-run. */
GroupFamily make_family(Session& s, const std::string& pattern, uint32_t q_lo, uint32_t q_hi,
                        uint32_t mod_filter, uint32_t n, uint32_t l);

/* image of each base element, one entry per base index */
using Embedding = std::vector<uint32_t>;

/* base into itself at every index; members must match the base order */
std::vector<Embedding> identity_embeddings(const Group& base, const GroupFamily& f);

/* cyclic:m into the torus:1:q members through the index-(q-1)/m power
 * of a field generator; requires q == 1 (mod m) at every index */
std::vector<Embedding> cyclic_torus_embeddings(Session& s, const Group& base,
                                               const GroupFamily& f);

/* entrywise image chains; sizes shrink only via coefficient collision.
 * Every embedding is checked to be a homomorphism into its member. */
std::vector<Chain> diagonal_embed(Session& s, const Group& base, const Chain& c,
                                  const GroupFamily& f, const std::vector<Embedding>& embs);

/* preimage of an image chain under an injective embedding */
Chain pull_back(const Group& base, const Embedding& emb, const Group& target, const Chain& image);

struct CooDecomposition {
    std::vector<uint32_t> t0;                    /* plurality coefficient pattern */
    std::vector<size_t> member_set;              /* indices whose pattern is t0 */
    std::vector<size_t> dissent;                 /* the rest */
    std::vector<std::vector<uint32_t>> patterns; /* per-index coefficient pattern */
    std::vector<std::vector<Rank>> supports;     /* per-index ranks, aligned with it */
};

/* canonical pattern per index: coefficients ascending, ties by rank,
 * so any injective embedding leaves the pattern alone.  Ties between
 * patterns break lexicographically.  Chains above size K are refused. */
CooDecomposition coordinate_decompose(const std::vector<Chain>& chains, uint32_t K);

/* chain at one index rebuilt from the plurality pattern and that
 * index's support list; faithful exactly on member_set indices */
Chain reassemble(const Group& g, const CooDecomposition& d, size_t index, uint32_t n, uint32_t l);

struct FamilyIndexResult {
    std::string label;
    uint64_t order = 0; /* member group order */
    uint64_t value = 0; /* filler norm or its upper bound */
    bool exact = false;
    bool skipped = false;
    std::string note; /* why the index was skipped */
    Chain b;          /* the boundary probed at this index */
    Chain witness;    /* verified filler of b */
};

struct FamilyReport {
    std::vector<FamilyIndexResult> rows; /* family order */
    uint64_t K = 0;                      /* max probed boundary size */
    uint64_t max_value = 0;              /* max filler bound over unskipped rows */
    std::string star_verdict;            /* bounded | exceeded-budget | mixed */
    bool growth = false;                 /* last three exact values strictly rise */
};

/* exact filler norm per index where node_budget allows; verdict is
 * bounded only when every index settled exactly */
FamilyReport check_star(Session& s, const GroupFamily& f, const std::vector<Chain>& boundaries);

/* evaluates the recipe at every index and bounds the fillers; recipe
 * failures skip their index and turn the verdict mixed.  Boundaries
 * above size K are treated as recipe failures. */
FamilyReport asymp_probe(Session& s, const GroupFamily& f, const std::string& recipe, uint32_t K);

/* true when the last three exact unskipped values strictly increase */
bool growth_suspected(const std::vector<FamilyIndexResult>& rows);

/* growth table: q,order,filler,exact; skipped rows keep the verdict column */
std::string family_csv(const FamilyReport& r);

} // namespace barfill
