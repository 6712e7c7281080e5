#include "barfill/gfmat.hpp"

#include <algorithm>

namespace barfill {

bool is_prime(uint32_t l) {
    if (l < 2)
        return false;
    for (uint32_t d = 2; uint64_t(d) * d <= l; ++d)
        if (l % d == 0)
            return false;
    return true;
}

uint32_t gf_inv(uint32_t a, uint32_t l) {
    /* extended euclid; l prime, a nonzero mod l */
    a %= l;
    if (a == 0)
        throw PreconditionError("gf_inv: zero has no inverse");
    int64_t t = 0, nt = 1, r = l, nr = a;
    while (nr != 0) {
        int64_t q = r / nr;
        t = std::exchange(nt, t - q * nt);
        r = std::exchange(nr, r - q * nr);
    }
    return static_cast<uint32_t>(t < 0 ? t + l : t);
}

SparseVec vec_combine(const SparseVec& a, const SparseVec& b, uint32_t scale_b, uint32_t l) {
    SparseVec out;
    out.e.reserve(a.e.size() + b.e.size());
    size_t i = 0, j = 0;
    scale_b %= l;
    while (i < a.e.size() || j < b.e.size()) {
        uint64_t idx;
        uint64_t c = 0;
        bool ta = i < a.e.size();
        bool tb = j < b.e.size();
        if (ta && (!tb || a.e[i].first <= b.e[j].first)) {
            idx = a.e[i].first;
            c += a.e[i].second;
            ++i;
        } else {
            idx = b.e[j].first;
        }
        if (tb && j < b.e.size() && b.e[j].first == idx) {
            c += uint64_t(b.e[j].second) * scale_b;
            ++j;
        }
        c %= l;
        if (c)
            out.e.emplace_back(idx, static_cast<uint32_t>(c));
    }
    return out;
}

SparseVec chain_to_vec(const Chain& c) {
    SparseVec v;
    v.e.assign(c.terms.begin(), c.terms.end());
    return v;
}

Chain vec_to_chain(const SparseVec& v, uint32_t n, uint32_t l) {
    Chain c = zero_chain(n, l);
    c.terms.assign(v.e.begin(), v.e.end());
    return c;
}

SparseVec SparseMatrix::column(uint64_t j) const {
    SparseVec v;
    for (uint64_t k = col_ptr[j]; k < col_ptr[j + 1]; ++k)
        v.e.emplace_back(row_idx[k], val[k]);
    return v;
}

uint32_t SparseMatrix::max_col_nnz() const {
    uint64_t m = 0;
    for (uint64_t j = 0; j < cols; ++j)
        m = std::max(m, col_ptr[j + 1] - col_ptr[j]);
    return static_cast<uint32_t>(m);
}

SparseMatrix boundary_matrix(const Group& g, uint32_t n, uint32_t l, const RunConfig& cfg) {
    if (n == 0)
        throw PreconditionError("boundary_matrix: degree must be >= 1");
    if (!is_prime(l))
        throw PreconditionError("boundary_matrix: modulus must be prime");
    uint64_t rows = chain_space_dim(g, n - 1);
    uint64_t cols = chain_space_dim(g, n);
    if (rows > cfg.dim_cap || cols > cfg.dim_cap)
        throw RefusedError("boundary_matrix: tuple space " + std::to_string(std::max(rows, cols)) +
                           " exceeds dim_cap " + std::to_string(cfg.dim_cap));
    SparseMatrix m;
    m.l = l;
    m.rows = rows;
    m.cols = cols;
    m.row_basis = "tuples:" + g.spec() + ":n=" + std::to_string(n - 1);
    m.col_basis = "tuples:" + g.spec() + ":n=" + std::to_string(n);
    m.col_ptr.reserve(cols + 1);
    m.col_ptr.push_back(0);

    std::vector<uint32_t> t(n), f(n ? n - 1 : 0);
    std::vector<std::pair<uint64_t, uint32_t>> acc;
    for (uint64_t j = 0; j < cols; ++j) {
        tuple_unrank(g, n, j, t.data());
        acc.clear();
        for (uint32_t face = 0; face <= n; ++face) {
            if (face == 0) {
                std::copy(t.begin() + 1, t.end(), f.begin());
            } else if (face == n) {
                std::copy(t.begin(), t.end() - 1, f.begin());
            } else {
                for (uint32_t k = 0, w = 0; k < n; ++k) {
                    if (k == face - 1)
                        f[w++] = g.mul(t[k], t[k + 1]);
                    else if (k != face)
                        f[w++] = t[k];
                }
            }
            uint32_t c = (face % 2 == 0) ? 1 : l - 1;
            acc.emplace_back(tuple_rank(g, {f.data(), size_t(n - 1)}), c);
        }
        std::sort(acc.begin(), acc.end());
        for (size_t i = 0; i < acc.size();) {
            uint64_t r = acc[i].first;
            uint64_t c = 0;
            while (i < acc.size() && acc[i].first == r)
                c += acc[i++].second;
            c %= l;
            if (c) {
                m.row_idx.push_back(r);
                m.val.push_back(static_cast<uint32_t>(c));
            }
        }
        m.col_ptr.push_back(m.row_idx.size());
        if (m.nnz() > cfg.nnz_cap)
            throw RefusedError("boundary_matrix: nonzeros exceed nnz_cap " +
                               std::to_string(cfg.nnz_cap));
    }
    return m;
}

SparseVec mat_vec(const SparseMatrix& m, const SparseVec& x) {
    std::vector<std::pair<uint64_t, uint32_t>> acc;
    for (auto& [j, xv] : x.e) {
        if (j >= m.cols)
            throw PreconditionError("mat_vec: index out of range");
        for (uint64_t k = m.col_ptr[j]; k < m.col_ptr[j + 1]; ++k)
            acc.emplace_back(m.row_idx[k], static_cast<uint32_t>((uint64_t(m.val[k]) * xv) % m.l));
    }
    std::sort(acc.begin(), acc.end());
    SparseVec y;
    for (size_t i = 0; i < acc.size();) {
        uint64_t r = acc[i].first;
        uint64_t c = 0;
        while (i < acc.size() && acc[i].first == r)
            c += acc[i++].second;
        c %= m.l;
        if (c)
            y.e.emplace_back(r, static_cast<uint32_t>(c));
    }
    return y;
}

SparseMatrix transpose(const SparseMatrix& m) {
    SparseMatrix t;
    t.l = m.l;
    t.rows = m.cols;
    t.cols = m.rows;
    t.row_basis = m.col_basis;
    t.col_basis = m.row_basis;
    std::vector<uint64_t> count(m.rows + 1, 0);
    for (uint64_t r : m.row_idx)
        ++count[r + 1];
    for (uint64_t i = 0; i < m.rows; ++i)
        count[i + 1] += count[i];
    t.col_ptr = count;
    t.row_idx.resize(m.nnz());
    t.val.resize(m.nnz());
    std::vector<uint64_t> cursor(count.begin(), count.end() - 1);
    for (uint64_t j = 0; j < m.cols; ++j)
        for (uint64_t k = m.col_ptr[j]; k < m.col_ptr[j + 1]; ++k) {
            uint64_t pos = cursor[m.row_idx[k]]++;
            t.row_idx[pos] = j;
            t.val[pos] = m.val[k];
        }
    return t;
}

void write_matrix_market(const SparseMatrix& m, std::ostream& os) {
    os << "%%MatrixMarket matrix coordinate integer general\n";
    os << "% modulus " << m.l << "\n";
    os << m.rows << " " << m.cols << " " << m.nnz() << "\n";
    for (uint64_t j = 0; j < m.cols; ++j)
        for (uint64_t k = m.col_ptr[j]; k < m.col_ptr[j + 1]; ++k)
            os << (m.row_idx[k] + 1) << " " << (j + 1) << " " << m.val[k] << "\n";
}

GFEchelon::GFEchelon(uint32_t l, uint64_t ambient, uint32_t aux_dim, bool combos)
    : l_(l), ambient_(ambient), aux_dim_(aux_dim), combos_(combos) {
    if (!is_prime(l))
        throw PreconditionError("echelon: modulus must be prime");
}

GFEchelon::Reduced GFEchelon::reduce_with(Scratch& ws, const SparseVec& v,
                                          const std::vector<uint32_t>* aux0) const {
    if (ws.dense.size() < ambient_)
        ws.dense.assign(ambient_, 0);
    ws.heap.clear();
    Reduced out;
    out.aux.assign(aux_dim_, 0);
    if (aux0) {
        if (aux0->size() != aux_dim_)
            throw PreconditionError("echelon: aux tail has wrong length");
        out.aux = *aux0;
    }
    for (auto& [idx, c] : v.e)
        if (idx >= ambient_ || c == 0 || c >= l_)
            throw PreconditionError("echelon: bad vector entry");
    auto& heap = ws.heap;
    auto cmp = std::greater<uint64_t>();
    for (auto& [idx, c] : v.e) {
        ws.dense[idx] = c;
        heap.push_back(idx);
    }
    std::make_heap(heap.begin(), heap.end(), cmp);
    while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), cmp);
        uint64_t idx = heap.back();
        heap.pop_back();
        uint32_t cur = ws.dense[idx];
        if (cur == 0)
            continue; /* duplicate heap entry or cancelled */
        auto it = pivot_.find(idx);
        if (it == pivot_.end()) {
            out.residual.e.emplace_back(idx, cur);
            ws.dense[idx] = 0;
            continue;
        }
        uint32_t id = it->second;
        out.used.emplace_back(id, cur);
        ws.dense[idx] = 0;
        const SparseVec& pv = vecs_[id];
        /* pivot coefficient is 1; tail entries all exceed idx */
        for (size_t k = 1; k < pv.e.size(); ++k) {
            uint64_t j = pv.e[k].first;
            uint32_t before = ws.dense[j];
            uint32_t sub = static_cast<uint32_t>((uint64_t(pv.e[k].second) * cur) % l_);
            uint32_t after = (before + l_ - sub) % l_;
            ws.dense[j] = after;
            if (before == 0 && after != 0) {
                heap.push_back(j);
                std::push_heap(heap.begin(), heap.end(), cmp);
            }
        }
        if (aux_dim_) {
            const auto& pa = aux_[id];
            for (uint32_t k = 0; k < aux_dim_; ++k)
                out.aux[k] =
                    (out.aux[k] + l_ - static_cast<uint32_t>((uint64_t(pa[k]) * cur) % l_)) % l_;
        }
    }
    return out;
}

GFEchelon::Reduced GFEchelon::reduce(const SparseVec& v, const std::vector<uint32_t>* aux0) const {
    return reduce_with(ws_, v, aux0);
}

uint32_t GFEchelon::insert_reduced(Reduced&& r, uint64_t source) {
    if (r.residual.empty())
        return UINT32_MAX;
    uint32_t lead = r.residual.e[0].second;
    uint32_t s = gf_inv(lead, l_);
    if (s != 1)
        for (auto& [idx, c] : r.residual.e)
            c = static_cast<uint32_t>((uint64_t(c) * s) % l_);
    uint32_t id = static_cast<uint32_t>(vecs_.size());
    pivot_.emplace(r.residual.e[0].first, id);
    if (aux_dim_) {
        std::vector<uint32_t> a = std::move(r.aux);
        if (s != 1)
            for (auto& c : a)
                c = static_cast<uint32_t>((uint64_t(c) * s) % l_);
        aux_.push_back(std::move(a));
    }
    if (combos_) {
        if (source == UINT64_MAX)
            throw PreconditionError("echelon: combo tracking requires a source id");
        /* expansion over sources: (unit at source - sum used*combo) / lead */
        std::vector<std::pair<uint64_t, uint32_t>> cb = expand(r.used);
        for (auto& [src, c] : cb)
            c = static_cast<uint32_t>((uint64_t(l_ - c) * s) % l_);
        cb.emplace_back(source, s);
        std::sort(cb.begin(), cb.end());
        /* source ids are distinct, so no merge needed beyond sort */
        combo_.push_back(std::move(cb));
    }
    vecs_.push_back(std::move(r.residual));
    return id;
}

uint32_t GFEchelon::insert(const SparseVec& v, uint64_t source,
                           const std::vector<uint32_t>* aux0) {
    return insert_reduced(reduce(v, aux0), source);
}

const std::vector<std::pair<uint64_t, uint32_t>>& GFEchelon::combo(uint32_t id) const {
    if (!combos_)
        throw PreconditionError("echelon: combos were not tracked");
    return combo_[id];
}

std::vector<std::pair<uint64_t, uint32_t>> GFEchelon::expand(
    const std::vector<std::pair<uint32_t, uint32_t>>& used) const {
    if (!combos_)
        throw PreconditionError("echelon: combos were not tracked");
    /* sum of factor * combo over the used echelon vectors */
    std::vector<std::pair<uint64_t, uint32_t>> acc;
    for (auto& [id, f] : used)
        for (auto& [src, c] : combo_[id])
            acc.emplace_back(src, static_cast<uint32_t>((uint64_t(c) * f) % l_));
    std::sort(acc.begin(), acc.end());
    std::vector<std::pair<uint64_t, uint32_t>> out;
    for (size_t i = 0; i < acc.size();) {
        uint64_t src = acc[i].first;
        uint64_t c = 0;
        while (i < acc.size() && acc[i].first == src)
            c += acc[i++].second;
        c %= l_;
        if (c)
            out.emplace_back(src, static_cast<uint32_t>(c));
    }
    return out;
}

std::optional<std::vector<std::pair<uint64_t, uint32_t>>> GFEchelon::express(
    const SparseVec& v) const {
    Reduced r = reduce(v);
    if (!r.residual.empty())
        return std::nullopt;
    return expand(r.used);
}

std::vector<std::pair<uint64_t, uint32_t>> GFEchelon::express_reduced(const Reduced& r) const {
    if (!r.residual.empty())
        throw PreconditionError("echelon: express_reduced needs an in-span reduction");
    return expand(r.used);
}

std::vector<std::pair<uint64_t, uint32_t>> GFEchelon::dependent_null_vector(
    const Reduced& r, uint64_t source) const {
    std::vector<std::pair<uint64_t, uint32_t>> x = expand(r.used);
    std::vector<std::pair<uint64_t, uint32_t>> out;
    out.reserve(x.size() + 1);
    bool placed = false;
    for (auto& [src, c] : x) {
        if (!placed && src >= source) {
            if (src == source)
                throw InternalError("nullspace: source already present in expansion");
            out.emplace_back(source, 1);
            placed = true;
        }
        out.emplace_back(src, l_ - c);
    }
    if (!placed)
        out.emplace_back(source, 1);
    return out;
}

std::vector<uint64_t> markowitz_order(const SparseMatrix& m) {
    std::vector<uint64_t> order(m.cols);
    for (uint64_t j = 0; j < m.cols; ++j)
        order[j] = j;
    std::stable_sort(order.begin(), order.end(), [&](uint64_t a, uint64_t b) {
        uint64_t na = m.col_ptr[a + 1] - m.col_ptr[a];
        uint64_t nb = m.col_ptr[b + 1] - m.col_ptr[b];
        return na != nb ? na < nb : a < b;
    });
    return order;
}

namespace {

uint64_t echelon_rank(const SparseMatrix& m) {
    GFEchelon e(m.l, m.rows);
    for (uint64_t j : markowitz_order(m)) {
        e.insert(m.column(j));
        if (e.full())
            break;
    }
    return e.rank();
}

} // namespace

uint64_t rank(const SparseMatrix& m) {
    if (m.rows == 0 || m.cols == 0)
        return 0;
    if (m.rows <= m.cols)
        return echelon_rank(m);
    return echelon_rank(transpose(m));
}

std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& b) {
    for (auto& [idx, c] : b.e)
        if (idx >= m.rows)
            throw PreconditionError("solve: right-hand side index out of range");
    GFEchelon e(m.l, m.rows, 0, true);
    for (uint64_t j : markowitz_order(m)) {
        e.insert(m.column(j), j);
        if (e.full())
            break;
    }
    auto x = e.express(b);
    if (!x)
        return std::nullopt;
    SparseVec out;
    out.e = std::move(*x);
    return out;
}

std::vector<SparseVec> nullspace_basis(const SparseMatrix& m) {
    GFEchelon e(m.l, m.rows, 0, true);
    std::vector<SparseVec> basis;
    for (uint64_t j = 0; j < m.cols; ++j) {
        GFEchelon::Reduced r = e.reduce(m.column(j));
        if (r.residual.empty()) {
            SparseVec nu;
            nu.e = e.dependent_null_vector(r, j);
            basis.push_back(std::move(nu));
        } else {
            e.insert_reduced(std::move(r), j);
        }
    }
    return basis;
}

} // namespace barfill
