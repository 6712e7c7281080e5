#pragma once
/* Bar homology of a finite group with prime-field coefficients.
 *
 * dim H_n = dim Z_n - rank d_{n+1}, both sides from column echelons of
 * the boundary matrices.  Class representatives are found by an
 * ascending-weight census of cycles keyed by their canonical coset
 * residue, so each kept representative is a minimal-size cycle in its
 * class; when the census budget runs out the basis is completed with
 * nullspace vectors and flagged as not size-minimal.
 */

#include <cstdint>
#include <memory>
#include <vector>

#include "barfill/session.hpp"

namespace barfill {

struct HomologyResult {
    std::string group_spec;
    uint32_t n = 0, l = 2;
    uint64_t dim = 0;
    uint64_t cycle_dim = 0;     /* dim Z_n */
    uint64_t boundary_rank = 0; /* rank d_{n+1} */
    std::vector<Chain> reps;    /* basis of classes, one cycle per class */
    bool reps_minimal = true;   /* every rep is lightest in its class */
};

/* cached per (group, n, l); degree caps: n<=3 needs |G|<=50, n<=2 needs
 * |G|<=400, n<=1 needs |G|<=20000 */
std::shared_ptr<const HomologyResult> homology(Session& s, const Group& g, uint32_t n, uint32_t l);

bool is_cycle(Session& s, const Group& g, const Chain& c);

struct BoundaryCheck {
    bool boundary = false;
    std::optional<Chain> witness; /* filler from elimination, not minimal */
};
BoundaryCheck is_boundary(Session& s, const Group& g, const Chain& c, bool want_witness = false);

/* both chains must be cycles of the same degree and modulus */
bool homologous(Session& s, const Group& g, const Chain& z1, const Chain& z2);

/* coordinates of the class of cycle z over the homology basis */
std::vector<uint32_t> classify(Session& s, const Group& g, const Chain& z);

struct MinimalRepBound {
    uint64_t bound = 0;
    bool exact = true; /* false when the census budget stopped short */
};
/* max over nonzero classes of the minimal cycle size in the class */
MinimalRepBound minimal_representative_bound(Session& s, const Group& g, uint32_t n, uint32_t l);

struct InducedMap {
    uint64_t dim_source = 0, dim_target = 0;
    std::vector<std::vector<uint32_t>> matrix; /* dim_target rows, dim_source cols */
    bool surjective = false, injective = false;
};
/* map on H_n induced by an inclusion of groups */
InducedMap induced_map(Session& s, const SubgroupEmbedding& emb, const Group& parent, uint32_t n,
                       uint32_t l);

struct IndexPrime {
    uint64_t index = 0;
    bool prime_to_l = false;
};
IndexPrime index_prime_to_l(const Group& g, const Group& subgroup, uint32_t l);

struct TorusCheck {
    std::string group_spec;
    uint32_t n = 0, l = 2;
    uint64_t torus_order = 0, index = 0;
    bool prime_to_l = false;
    uint64_t dim_torus = 0, dim_group = 0;
    bool surjective = false, injective = false;
    bool consistent = false; /* index prime to l forces surjectivity */
};
/* diagonal torus of a matrix group versus the whole group on H_n */
TorusCheck torus_check(Session& s, const Group& g, uint32_t n, uint32_t l);

} // namespace barfill
