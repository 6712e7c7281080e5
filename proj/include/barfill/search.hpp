#pragma once
/* Minimal-weight solutions of sparse GF(l) systems by iterative deepening.
 *
 * Level w asks for a solution using at most w columns.  Each node picks
 * the least index carrying a nonzero residual entry; only columns
 * touching that index can ever clear it, so they are the branch set,
 * and each gets every nonzero coefficient.  A column is forbidden for
 * the rest of the loop once its branch returns, so every (support,
 * coefficients) pair is visited exactly once.  Levels run 0, 1, 2, ...;
 * the first hit is therefore a certified minimum as long as no level
 * was cut short by the node budget.
 */

#include <cstdint>
#include <span>

#include "barfill/gfmat.hpp"

namespace barfill {

struct SearchStats {
    uint64_t nodes = 0;
    bool budget_hit = false;
};

class ColumnSource {
public:
    virtual ~ColumnSource() = default;
    virtual uint64_t cols() const = 0;
    virtual uint32_t max_col_nnz() const = 0;
    virtual SparseVec col(uint64_t j) const = 0;
    /* ascending ids of columns with a nonzero entry at this row */
    virtual std::span<const uint64_t> touching(uint64_t row) const = 0;
};

class MatrixColumns final : public ColumnSource {
public:
    explicit MatrixColumns(const SparseMatrix& m);
    uint64_t cols() const override { return m_.cols; }
    uint32_t max_col_nnz() const override { return max_nnz_; }
    SparseVec col(uint64_t j) const override { return m_.column(j); }
    std::span<const uint64_t> touching(uint64_t row) const override;

private:
    const SparseMatrix& m_; /* must outlive this object */
    SparseMatrix t_;
    uint32_t max_nnz_;
};

struct MinWeightResult {
    bool found = false;
    uint64_t weight = 0;
    SparseVec solution; /* column-space coordinates */
    bool exact = false;
    SearchStats stats;
};

/* Minimize the support size of x with sum x_j col_j = b.  Levels run up
 * to max_weight, and below the weight of ub_solution when one is given;
 * if nothing better turns up the ub is returned, exact iff every level
 * below its weight was exhausted. */
MinWeightResult min_weight_solve(const ColumnSource& cs, const SparseVec& b, uint32_t l,
                                 uint64_t node_budget, uint32_t max_weight,
                                 const SparseVec* ub_solution);

enum class Exists { yes, no, unknown };

/* is there a solution of weight <= w?  unknown when the budget ran out */
Exists exists_within(const ColumnSource& cs, const SparseVec& b, uint32_t l, uint32_t w,
                     uint64_t node_budget, SearchStats* stats = nullptr);

/* is there a solution of weight exactly w?  complete enumeration over
 * supports; refuses when C(cols, w)*(l-1)^w exceeds census_cap */
Exists exists_exact_weight(const ColumnSource& cs, const SparseVec& b, uint32_t l, uint32_t w,
                           uint64_t census_cap);

} // namespace barfill
