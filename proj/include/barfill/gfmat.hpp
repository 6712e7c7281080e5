#pragma once
/* Sparse linear algebra over GF(l), l prime.
 *
 * The one elimination engine here is an incremental column echelon:
 * vectors are inserted one at a time, fully reduced against the pivots
 * already present, and kept when independent.  Stored vectors are
 * normalized (pivot coefficient 1) and their pivot is their least index,
 * so tails only ever point upward and a single ascending sweep with a
 * min-heap fully reduces any vector.  Rank, solving, membership,
 * nullspaces and homology-class coordinates are all thin wrappers over
 * reduce/insert.
 *
 * Reduction against a fixed echelon is linear, and the reduced residual
 * is supported away from every pivot, so residuals are canonical coset
 * keys: two vectors are congruent mod the span iff their residuals are
 * equal.
 */

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "barfill/chain.hpp"
#include "barfill/config.hpp"
#include "barfill/group.hpp"

namespace barfill {

uint32_t gf_inv(uint32_t a, uint32_t l);
bool is_prime(uint32_t l);

struct SparseVec {
    /* sorted by index, values in 1..l-1 */
    std::vector<std::pair<uint64_t, uint32_t>> e;

    bool empty() const { return e.empty(); }
    uint64_t nnz() const { return e.size(); }
    bool operator==(const SparseVec& o) const { return e == o.e; }
    bool operator<(const SparseVec& o) const { return e < o.e; }
};

SparseVec vec_combine(const SparseVec& a, const SparseVec& b, uint32_t scale_b, uint32_t l);
SparseVec chain_to_vec(const Chain& c);
Chain vec_to_chain(const SparseVec& v, uint32_t n, uint32_t l);

struct SparseMatrix {
    uint32_t l = 2;
    uint64_t rows = 0, cols = 0;
    std::vector<uint64_t> col_ptr; /* size cols+1 */
    std::vector<uint64_t> row_idx;
    std::vector<uint32_t> val;
    std::string row_basis, col_basis;

    uint64_t nnz() const { return row_idx.size(); }
    SparseVec column(uint64_t j) const;
    uint32_t max_col_nnz() const;
};

/* column j is the boundary of tuple j in the (n-1)-tuple basis */
SparseMatrix boundary_matrix(const Group& g, uint32_t n, uint32_t l, const RunConfig& cfg);

SparseVec mat_vec(const SparseMatrix& m, const SparseVec& x);
SparseMatrix transpose(const SparseMatrix& m);
void write_matrix_market(const SparseMatrix& m, std::ostream& os);

class GFEchelon {
public:
    /* aux_dim: length of a dense GF(l) tail carried through the same row
     * operations as the vector (used for homology-class coordinates).
     * combos: record each kept vector's expansion over its source ids. */
    GFEchelon(uint32_t l, uint64_t ambient, uint32_t aux_dim = 0, bool combos = false);

    /* private workspace so concurrent readers can reduce independently */
    struct Scratch {
        std::vector<uint32_t> dense;
        std::vector<uint64_t> heap;
    };

    struct Reduced {
        SparseVec residual;
        std::vector<uint32_t> aux; /* residual tail, same row ops applied */
        std::vector<std::pair<uint32_t, uint32_t>> used; /* (echelon id, factor) */
    };

    Reduced reduce(const SparseVec& v, const std::vector<uint32_t>* aux0 = nullptr) const;
    Reduced reduce_with(Scratch& ws, const SparseVec& v,
                        const std::vector<uint32_t>* aux0 = nullptr) const;

    /* returns the new echelon id, or UINT32_MAX when v is in the span */
    uint32_t insert(const SparseVec& v, uint64_t source = UINT64_MAX,
                    const std::vector<uint32_t>* aux0 = nullptr);
    /* insert a vector already reduced by this echelon */
    uint32_t insert_reduced(Reduced&& r, uint64_t source = UINT64_MAX);

    uint64_t rank() const { return vecs_.size(); }
    bool full() const { return rank() == ambient_; }
    uint32_t modulus() const { return l_; }
    uint64_t ambient() const { return ambient_; }
    const SparseVec& vec(uint32_t id) const { return vecs_[id]; }
    const std::vector<uint32_t>& aux_of(uint32_t id) const { return aux_[id]; }
    const std::vector<std::pair<uint64_t, uint32_t>>& combo(uint32_t id) const;

    /* coefficients over sources with sum coeff*source = v; nullopt if v
     * is outside the span (requires combos) */
    std::optional<std::vector<std::pair<uint64_t, uint32_t>>> express(const SparseVec& v) const;

    /* same, from an existing reduction record with empty residual; safe
     * to call concurrently with reduce_with */
    std::vector<std::pair<uint64_t, uint32_t>> express_reduced(const Reduced& r) const;

    /* nullspace vector in source coordinates for a dependent insert whose
     * reduction record is r: unit at `source` minus the expansion of v */
    std::vector<std::pair<uint64_t, uint32_t>> dependent_null_vector(const Reduced& r,
                                                                     uint64_t source) const;

private:
    std::vector<std::pair<uint64_t, uint32_t>> expand(
        const std::vector<std::pair<uint32_t, uint32_t>>& used) const;

    uint32_t l_;
    uint64_t ambient_;
    uint32_t aux_dim_;
    bool combos_;
    std::vector<SparseVec> vecs_;
    std::vector<std::vector<uint32_t>> aux_;
    std::vector<std::vector<std::pair<uint64_t, uint32_t>>> combo_;
    std::unordered_map<uint64_t, uint32_t> pivot_;
    mutable Scratch ws_;
};

/* columns sorted by (nnz, index): light columns first keeps fill low */
std::vector<uint64_t> markowitz_order(const SparseMatrix& m);

/* Markowitz-flavored insertion: columns sorted by (nnz, index); the
 * smaller side of the matrix is echelonized when only the rank matters. */
uint64_t rank(const SparseMatrix& m);
std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& b);
std::vector<SparseVec> nullspace_basis(const SparseMatrix& m);

} // namespace barfill
