#pragma once

/* Finite groups with a uniform element-index interface: elements are indices
 * 0..order-1, multiplication and inversion are total functions on indices.
 * Construction follows the spec grammar
 *
 *   cyclic:<m> | sym:<n> | dihedral:<2n> | gl:<n>:<q> | sl:<n>:<q>
 *   | torus:<r>:<q> | product:<spec>,<spec>
 *
 * Matrix groups enumerate their elements in lexicographic order of the
 * row-major flattened entry codes, so indices are reproducible across runs.
 * Groups of order <= 2048 materialize the full multiplication table; larger
 * ones compute products on demand behind a bounded cache.  A Group is a cheap
 * value handle onto an immutable implementation, safe to share across
 * concurrent readers. */

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "barfill/config.hpp"
#include "barfill/fq.hpp"

namespace barfill {

namespace detail {
struct GroupImpl;
}

class Group {
public:
    Group() = default;

    const std::string& spec() const;
    uint32_t order() const;
    uint32_t identity() const;
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t inv(uint32_t a) const;
    std::string label(uint32_t g) const;
    /* nullopt when deciding it would cost more than the configured caps allow */
    std::optional<bool> abelian() const;
    std::string backend_name() const;

    /* matrix-backend extras; throw PreconditionError on other backends */
    bool is_matrix_group() const;
    const Fq& field() const;
    uint32_t mat_dim() const;
    std::span<const uint16_t> matrix_of(uint32_t g) const;
    std::optional<uint32_t> index_of_matrix(std::span<const uint16_t> m) const;
    /* indices of elements whose off-diagonal entries vanish, ascending */
    std::vector<uint32_t> diagonal_elements() const;

    bool valid() const { return impl_ != nullptr; }
    /* identity of construction, not abstract isomorphism */
    bool same_group(const Group& other) const;

    explicit Group(std::shared_ptr<const detail::GroupImpl> impl) : impl_(std::move(impl)) {}
    const detail::GroupImpl* impl() const { return impl_.get(); }

private:
    std::shared_ptr<const detail::GroupImpl> impl_;
};

Group build_group(const std::string& spec, const RunConfig& cfg);
Group direct_product(const Group& a, const Group& b, const RunConfig& cfg);

/* sorted element indices of the subgroup generated by all commutators */
std::vector<uint32_t> derived_subgroup(const Group& g);

struct CommutatorLength {
    bool in_derived = false;
    uint32_t length = 0; /* meaningful only when in_derived */
};
CommutatorLength commutator_length(const Group& g, uint32_t elem);

struct Abelianization {
    Group quotient;
    std::vector<uint32_t> projection; /* element index -> quotient index */
};
Abelianization abelianization(const Group& g, const RunConfig& cfg);

struct SubgroupEmbedding {
    Group subgroup;
    std::vector<uint32_t> inclusion; /* subgroup index -> parent index, ascending */
};
/* elements must be closed under products and inverses and contain the identity */
SubgroupEmbedding subgroup_embedding(const Group& g, const std::vector<uint32_t>& elements,
                                     const RunConfig& cfg);

} // namespace barfill
