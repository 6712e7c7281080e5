#pragma once
/* Cached per-(group, degree, modulus) machinery.
 *
 * ComplexOps owns the two boundary matrices around degree n and the
 * echelon of the degree-(n+1) columns.  That echelon carries combination
 * tracking, so one object answers membership in the boundary space,
 * canonical coset keys, and canonical fillers.  Lazy members are built
 * on first use; callers that fan work out to threads must touch them
 * once up front, after which everything here is read-only except for
 * reduce scratch, which threaded code supplies per worker.
 */

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "barfill/chain.hpp"
#include "barfill/config.hpp"
#include "barfill/gfmat.hpp"
#include "barfill/group.hpp"
#include "barfill/search.hpp"

namespace barfill {

class ComplexOps {
public:
    ComplexOps(Group g, uint32_t n, uint32_t l, RunConfig cfg);

    const Group& group() const { return g_; }
    uint32_t degree() const { return n_; }
    uint32_t modulus() const { return l_; }
    const RunConfig& config() const { return cfg_; }
    uint64_t tuple_space() const { return dim_n_; } /* dim C_n */

    const SparseMatrix& dn();   /* boundary out of degree n, needs n >= 1 */
    const SparseMatrix& dnp1(); /* boundary out of degree n+1 */

    /* echelon of the dnp1 columns, combination tracking on */
    GFEchelon& bspace();
    /* echelon of the dn columns, combination tracking on, needs n >= 1 */
    GFEchelon& zspace();
    const MatrixColumns& filler_columns();

    uint64_t rank_dn();   /* 0 when n == 0 */
    uint64_t rank_dnp1();
    uint64_t nullity_dn(); /* dim of the cycle space Z_n */

    bool is_cycle(const Chain& c) const;
    /* canonical coset key of a degree-n vector modulo the boundary space */
    SparseVec reduce_key(const SparseVec& v);
    bool is_boundary_vec(const SparseVec& v);
    /* elimination filler with free variables at zero; empty when b is not
     * a boundary */
    std::optional<Chain> canonical_filler(const Chain& b);

private:
    Group g_;
    uint32_t n_, l_;
    RunConfig cfg_;
    uint64_t dim_n_;
    std::optional<SparseMatrix> dn_, dnp1_;
    std::optional<GFEchelon> bsp_, zsp_;
    std::optional<MatrixColumns> cols_;
    std::optional<uint64_t> rank_dn_;
};

/* Groups and complexes built once per spec and reused across commands. */
class Session {
public:
    Session() = default;
    explicit Session(RunConfig cfg) : cfg_(std::move(cfg)) {}

    RunConfig& config() { return cfg_; }
    const RunConfig& config() const { return cfg_; }

    Group group(const std::string& spec);
    std::shared_ptr<ComplexOps> complex(const Group& g, uint32_t n, uint32_t l);
    std::shared_ptr<ComplexOps> complex(const std::string& spec, uint32_t n, uint32_t l);

    /* module-owned caches (homology results etc), keyed by free-form string */
    std::shared_ptr<void> find_extra(const std::string& key);
    void store_extra(const std::string& key, std::shared_ptr<void> value);

private:
    RunConfig cfg_;
    std::mutex mu_;
    std::map<std::string, Group> groups_;
    std::map<std::string, std::shared_ptr<ComplexOps>> complexes_;
    std::map<std::string, std::shared_ptr<void>> extra_;
};

} // namespace barfill
