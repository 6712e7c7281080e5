#include "barfill/session.hpp"

namespace barfill {

ComplexOps::ComplexOps(Group g, uint32_t n, uint32_t l, RunConfig cfg)
    : g_(std::move(g)), n_(n), l_(l), cfg_(std::move(cfg)) {
    if (!is_prime(l_)) throw PreconditionError("modulus must be prime");
    dim_n_ = chain_space_dim(g_, n_);
    if (dim_n_ > cfg_.dim_cap) throw RefusedError("chain space dimension exceeds dim_cap");
}

const SparseMatrix& ComplexOps::dn() {
    if (n_ == 0) throw PreconditionError("no boundary map out of degree 0");
    if (!dn_) dn_ = boundary_matrix(g_, n_, l_, cfg_);
    return *dn_;
}

const SparseMatrix& ComplexOps::dnp1() {
    if (!dnp1_) dnp1_ = boundary_matrix(g_, n_ + 1, l_, cfg_);
    return *dnp1_;
}

GFEchelon& ComplexOps::bspace() {
    if (!bsp_) {
        const SparseMatrix& m = dnp1();
        GFEchelon e(l_, m.rows, 0, true);
        for (uint64_t j : markowitz_order(m)) {
            if (e.full()) break;
            e.insert(m.column(j), j);
        }
        bsp_ = std::move(e);
    }
    return *bsp_;
}

GFEchelon& ComplexOps::zspace() {
    if (!zsp_) {
        const SparseMatrix& m = dn();
        GFEchelon e(l_, m.rows, 0, true);
        for (uint64_t j : markowitz_order(m)) {
            if (e.full()) break;
            e.insert(m.column(j), j);
        }
        zsp_ = std::move(e);
    }
    return *zsp_;
}

const MatrixColumns& ComplexOps::filler_columns() {
    if (!cols_) cols_.emplace(dnp1());
    return *cols_;
}

uint64_t ComplexOps::rank_dn() {
    if (n_ == 0) return 0;
    if (!rank_dn_) rank_dn_ = zsp_ ? zsp_->rank() : rank(dn());
    return *rank_dn_;
}

uint64_t ComplexOps::rank_dnp1() { return bspace().rank(); }

uint64_t ComplexOps::nullity_dn() { return dim_n_ - rank_dn(); }

bool ComplexOps::is_cycle(const Chain& c) const {
    if (c.n != n_ || c.l != l_) throw PreconditionError("chain degree or modulus mismatch");
    if (n_ == 0) return true; /* Z_0 is all of C_0 */
    return boundary(g_, c).is_zero();
}

SparseVec ComplexOps::reduce_key(const SparseVec& v) { return bspace().reduce(v).residual; }

bool ComplexOps::is_boundary_vec(const SparseVec& v) { return reduce_key(v).empty(); }

std::optional<Chain> ComplexOps::canonical_filler(const Chain& b) {
    if (b.n != n_ || b.l != l_) throw PreconditionError("chain degree or modulus mismatch");
    auto x = bspace().express(chain_to_vec(b));
    if (!x) return std::nullopt;
    Chain c;
    c.n = n_ + 1;
    c.l = l_;
    c.terms = std::move(*x);
    return c;
}

Group Session::group(const std::string& spec) {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = groups_.find(spec);
        if (it != groups_.end()) return it->second;
    }
    Group g = build_group(spec, cfg_);
    std::lock_guard<std::mutex> lk(mu_);
    groups_.emplace(spec, g);
    groups_.emplace(g.spec(), g);
    return g;
}

std::shared_ptr<ComplexOps> Session::complex(const Group& g, uint32_t n, uint32_t l) {
    std::string key = g.spec() + "#" + std::to_string(n) + "#" + std::to_string(l);
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = complexes_.find(key);
        if (it != complexes_.end()) return it->second;
    }
    auto ops = std::make_shared<ComplexOps>(g, n, l, cfg_);
    std::lock_guard<std::mutex> lk(mu_);
    auto [it, fresh] = complexes_.emplace(key, ops);
    return it->second;
}

std::shared_ptr<ComplexOps> Session::complex(const std::string& spec, uint32_t n, uint32_t l) {
    return complex(group(spec), n, l);
}

std::shared_ptr<void> Session::find_extra(const std::string& key) {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = extra_.find(key);
    return it == extra_.end() ? nullptr : it->second;
}

void Session::store_extra(const std::string& key, std::shared_ptr<void> value) {
    std::lock_guard<std::mutex> lk(mu_);
    extra_[key] = std::move(value);
}

} // namespace barfill
