#include "barfill/search.hpp"

#include <algorithm>
#include <vector>

#include "barfill/config.hpp"

namespace barfill {

MatrixColumns::MatrixColumns(const SparseMatrix& m)
    : m_(m), t_(transpose(m)), max_nnz_(m.max_col_nnz()) {}

std::span<const uint64_t> MatrixColumns::touching(uint64_t row) const {
    /* row r of m is column r of the transpose; its entries hold original
     * column ids in ascending order */
    uint64_t lo = t_.col_ptr[row], hi = t_.col_ptr[row + 1];
    return {t_.row_idx.data() + lo, hi - lo};
}

namespace {

struct Dfs {
    const ColumnSource& cs;
    uint32_t l;
    uint64_t budget;
    SearchStats stats;
    std::vector<std::pair<uint64_t, uint32_t>> chosen;
    bool aborted = false;

    Dfs(const ColumnSource& cs_, uint32_t l_, uint64_t budget_) : cs(cs_), l(l_), budget(budget_) {}

    bool tick() {
        if (++stats.nodes > budget) {
            aborted = true;
            stats.budget_hit = true;
            return false;
        }
        return true;
    }

    /* can `residual` be cleared with at most w_left more columns? */
    bool run(const SparseVec& residual, uint32_t w_left) {
        if (residual.empty()) return true;
        if (w_left == 0) return false;
        if (residual.nnz() > static_cast<uint64_t>(w_left) * cs.max_col_nnz()) return false;

        uint64_t anchor = residual.e.front().first;
        auto cand = cs.touching(anchor);

        if (w_left == 1) {
            /* the last column must match the residual up to a scalar */
            for (uint64_t j : cand) {
                if (!tick()) return false;
                SparseVec c = cs.col(j);
                if (c.nnz() != residual.nnz()) continue;
                uint32_t alpha = static_cast<uint32_t>(
                    (static_cast<uint64_t>(residual.e.front().second) * gf_inv(c.e.front().second, l)) % l);
                bool ok = true;
                for (size_t k = 0; k < c.e.size(); ++k) {
                    if (c.e[k].first != residual.e[k].first ||
                        (static_cast<uint64_t>(c.e[k].second) * alpha) % l != residual.e[k].second) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    chosen.emplace_back(j, alpha);
                    return true;
                }
            }
            return false;
        }

        /* branch: first support column hitting the anchor row, times each
         * coefficient; forbidding explored columns for later siblings makes
         * the enumeration duplicate-free */
        std::vector<uint64_t> taken;
        bool found = false;
        for (uint64_t j : cand) {
            if (forbidden_[j]) continue;
            SparseVec c = cs.col(j);
            for (uint32_t alpha = 1; alpha < l && !aborted; ++alpha) {
                if (!tick()) break;
                SparseVec child = vec_combine(residual, c, l - alpha, l); /* residual - alpha*c */
                chosen.emplace_back(j, alpha);
                if (run(child, w_left - 1)) {
                    found = true;
                    break;
                }
                chosen.pop_back();
            }
            if (found || aborted) break;
            forbidden_[j] = 1;
            taken.push_back(j);
        }
        for (uint64_t j : taken) forbidden_[j] = 0;
        return found;
    }

    void reset() {
        if (forbidden_.size() != cs.cols()) forbidden_.assign(cs.cols(), 0);
        chosen.clear();
        aborted = false;
    }

private:
    std::vector<char> forbidden_;
};

SparseVec solution_from_chosen(const std::vector<std::pair<uint64_t, uint32_t>>& chosen) {
    SparseVec x;
    x.e.assign(chosen.begin(), chosen.end());
    std::sort(x.e.begin(), x.e.end());
    return x;
}

} // namespace

MinWeightResult min_weight_solve(const ColumnSource& cs, const SparseVec& b, uint32_t l,
                                 uint64_t node_budget, uint32_t max_weight,
                                 const SparseVec* ub_solution) {
    MinWeightResult res;
    if (b.empty()) {
        res.found = true;
        res.exact = true;
        return res;
    }

    bool have_ub = ub_solution && !ub_solution->empty();
    uint64_t ub_w = have_ub ? ub_solution->nnz() : UINT64_MAX;
    uint64_t limit = std::min<uint64_t>(max_weight, have_ub ? ub_w - 1 : max_weight);

    Dfs dfs(cs, l, node_budget);
    bool all_exhausted = true;
    for (uint32_t w = 1; w <= limit; ++w) {
        dfs.reset();
        bool ok = dfs.run(b, w);
        res.stats.nodes = dfs.stats.nodes; /* budget carries across levels */
        res.stats.budget_hit = dfs.stats.budget_hit;
        if (dfs.aborted) {
            all_exhausted = false;
            break;
        }
        if (ok) {
            res.found = true;
            res.weight = w;
            res.solution = solution_from_chosen(dfs.chosen);
            res.exact = true; /* all lighter levels were exhausted */
            if (res.solution.nnz() != w)
                throw InternalError("search: first hit at level w must use exactly w columns");
            return res;
        }
    }

    if (have_ub) {
        res.found = true;
        res.weight = ub_w;
        res.solution = *ub_solution;
        res.exact = all_exhausted && limit + 1 >= ub_w;
    }
    return res;
}

Exists exists_within(const ColumnSource& cs, const SparseVec& b, uint32_t l, uint32_t w,
                     uint64_t node_budget, SearchStats* stats) {
    if (b.empty()) return Exists::yes;
    Dfs dfs(cs, l, node_budget);
    for (uint32_t k = 1; k <= w; ++k) {
        dfs.reset();
        bool ok = dfs.run(b, k);
        if (stats) {
            stats->nodes = dfs.stats.nodes;
            stats->budget_hit = dfs.stats.budget_hit;
        }
        if (dfs.aborted) return Exists::unknown;
        if (ok) return Exists::yes;
    }
    return Exists::no;
}

Exists exists_exact_weight(const ColumnSource& cs, const SparseVec& b, uint32_t l, uint32_t w,
                           uint64_t census_cap) {
    if (w == 0) return b.empty() ? Exists::yes : Exists::no;
    uint64_t ncols = cs.cols();
    if (ncols < w) return Exists::no;

    /* census size C(ncols, w) * (l-1)^w, saturating */
    long double count = 1.0L;
    for (uint32_t i = 0; i < w; ++i) count = count * static_cast<long double>(ncols - i) / (i + 1) * (l - 1);
    if (count > static_cast<long double>(census_cap))
        throw RefusedError("exact-weight census exceeds census_cap");

    std::vector<uint64_t> sup(w);
    for (uint32_t i = 0; i < w; ++i) sup[i] = i;
    std::vector<SparseVec> cols(w);
    std::vector<uint32_t> coeff(w);

    while (true) {
        for (uint32_t i = 0; i < w; ++i) cols[i] = cs.col(sup[i]);
        coeff.assign(w, 1);
        while (true) {
            SparseVec acc;
            for (uint32_t i = 0; i < w; ++i) acc = vec_combine(acc, cols[i], coeff[i], l);
            if (acc == b) return Exists::yes;
            /* next coefficient pattern, odometer over 1..l-1 */
            uint32_t pos = 0;
            while (pos < w && coeff[pos] == l - 1) coeff[pos++] = 1;
            if (pos == w) break;
            ++coeff[pos];
        }
        /* next support combination in lexicographic order */
        uint32_t pos = w;
        while (pos > 0 && sup[pos - 1] == ncols - w + pos - 1) --pos;
        if (pos == 0) break;
        ++sup[pos - 1];
        for (uint32_t i = pos; i < w; ++i) sup[i] = sup[i - 1] + 1;
    }
    return Exists::no;
}

} // namespace barfill
