#include "barfill/homology.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "barfill/census.hpp"

namespace barfill {

namespace {

struct HomologyData {
    HomologyResult result;
    std::shared_ptr<ComplexOps> ops;
    std::optional<GFEchelon> cls; /* boundary basis plus reps with unit aux tails */
    std::mutex mu;
};

void degree_cap_check(const Group& g, uint32_t n) {
    if (n == 0) return;
    uint32_t ord = g.order();
    uint32_t cap = ord <= 50 ? 3 : ord <= 400 ? 2 : 1;
    if (n > cap)
        throw RefusedError("homology: degree " + std::to_string(n) + " is over the cap " +
                           std::to_string(cap) + " for a group of order " + std::to_string(ord));
}

/* ascending-weight census of cycles; returns false when the budget ran
 * out before `stop` said done.  visit(z) -> true to keep going. */
template <class Visit>
bool census_cycles(ComplexOps& ops, uint64_t budget, Visit&& visit) {
    const Group& g = ops.group();
    uint32_t n = ops.degree(), l = ops.modulus();
    uint64_t N = ops.tuple_space();
    uint64_t used = 0;
    for (uint32_t w = 1; w <= N; ++w) {
        uint64_t cw = census_count(N, l, w);
        if (used > budget || budget - used < cw) return false;
        used += cw;
        std::vector<uint64_t> sup(w);
        std::iota(sup.begin(), sup.end(), 0);
        do {
            std::vector<uint32_t> coeff(w, 1);
            do {
                Chain z;
                z.n = n;
                z.l = l;
                z.terms.reserve(w);
                for (uint32_t i = 0; i < w; ++i) z.terms.emplace_back(sup[i], coeff[i]);
                if (n >= 2 && !boundary(g, z).is_zero()) continue;
                if (!visit(z)) return true;
            } while (coeff_next(coeff, l));
        } while (comb_next(sup, N));
    }
    return true; /* the whole space fit inside the budget */
}

std::shared_ptr<HomologyData> homology_data(Session& s, const Group& g, uint32_t n, uint32_t l) {
    std::string key = "homology:" + g.spec() + "#" + std::to_string(n) + "#" + std::to_string(l);
    if (auto hit = s.find_extra(key)) return std::static_pointer_cast<HomologyData>(hit);

    degree_cap_check(g, n);
    auto ops = s.complex(g, n, l);
    auto hd = std::make_shared<HomologyData>();
    hd->ops = ops;
    HomologyResult& r = hd->result;
    r.group_spec = g.spec();
    r.n = n;
    r.l = l;
    r.cycle_dim = ops->nullity_dn();
    r.boundary_rank = ops->rank_dnp1();
    r.dim = r.cycle_dim - r.boundary_rank;

    if (r.dim > 0) {
        GFEchelon picked(l, ops->tuple_space());
        bool complete = census_cycles(*ops, s.config().census_cap, [&](const Chain& z) {
            SparseVec cls_key = ops->reduce_key(chain_to_vec(z));
            if (!cls_key.empty() && picked.insert(cls_key) != UINT32_MAX) r.reps.push_back(z);
            return r.reps.size() < r.dim;
        });
        if (!complete && r.reps.size() < r.dim) {
            r.reps_minimal = false;
            if (n == 0) {
                r.reps.push_back(make_chain(g, 0, l, {{0, 1}}));
            } else {
                /* nullspace vectors of d_n complete the basis */
                GFEchelon& Z = ops->zspace();
                const SparseMatrix& D = ops->dn();
                for (uint64_t j = 0; j < D.cols && r.reps.size() < r.dim; ++j) {
                    auto red = Z.reduce(D.column(j));
                    if (!red.residual.empty()) continue;
                    auto expansion = Z.express_reduced(red);
                    bool pivot = std::any_of(expansion.begin(), expansion.end(),
                                             [j](const auto& p) { return p.first == j; });
                    if (pivot) continue; /* pivot columns yield no null vector */
                    SparseVec nu;
                    nu.e = Z.dependent_null_vector(red, j);
                    SparseVec cls_key = ops->reduce_key(nu);
                    if (!cls_key.empty() && picked.insert(cls_key) != UINT32_MAX)
                        r.reps.push_back(vec_to_chain(nu, n, l));
                }
            }
        }
        if (r.reps.size() != r.dim) throw InternalError("homology: basis came up short");
    }

    s.store_extra(key, hd);
    return hd;
}

GFEchelon build_classifier(HomologyData& hd) {
    ComplexOps& ops = *hd.ops;
    const HomologyResult& r = hd.result;
    uint32_t dim = static_cast<uint32_t>(r.dim);
    GFEchelon e(r.l, ops.tuple_space(), dim);
    GFEchelon& B = ops.bspace();
    for (uint32_t id = 0; id < B.rank(); ++id) e.insert(B.vec(id));
    for (uint32_t k = 0; k < dim; ++k) {
        std::vector<uint32_t> aux(dim, 0);
        aux[k] = 1;
        if (e.insert(chain_to_vec(r.reps[k]), UINT64_MAX, &aux) == UINT32_MAX)
            throw InternalError("homology: representative lies in the boundary span");
    }
    return e;
}

std::vector<uint32_t> classify_with(HomologyData& hd, const Chain& z) {
    {
        std::lock_guard<std::mutex> lk(hd.mu);
        if (!hd.cls) hd.cls = build_classifier(hd);
    }
    auto red = hd.cls->reduce(chain_to_vec(z));
    if (!red.residual.empty())
        throw InternalError("classify: cycle escaped the classification span");
    uint32_t l = hd.result.l;
    std::vector<uint32_t> coords(red.aux.size());
    for (size_t k = 0; k < coords.size(); ++k) coords[k] = (l - red.aux[k]) % l;
    return coords;
}

uint64_t dense_rank_gf(std::vector<std::vector<uint32_t>> a, uint32_t l) {
    if (a.empty() || a[0].empty()) return 0;
    size_t rows = a.size(), cols = a[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        uint32_t inv = gf_inv(a[r][c], l);
        for (size_t j = 0; j < cols; ++j)
            a[r][j] = static_cast<uint32_t>((uint64_t(a[r][j]) * inv) % l);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            uint32_t f = a[i][c];
            for (size_t j = 0; j < cols; ++j)
                a[i][j] = static_cast<uint32_t>((a[i][j] + uint64_t(l - f) * a[r][j]) % l);
        }
        ++r;
    }
    return r;
}

} // namespace

std::shared_ptr<const HomologyResult> homology(Session& s, const Group& g, uint32_t n, uint32_t l) {
    auto hd = homology_data(s, g, n, l);
    return {hd, &hd->result};
}

bool is_cycle(Session& s, const Group& g, const Chain& c) {
    return s.complex(g, c.n, c.l)->is_cycle(c);
}

BoundaryCheck is_boundary(Session& s, const Group& g, const Chain& c, bool want_witness) {
    auto ops = s.complex(g, c.n, c.l);
    BoundaryCheck out;
    if (want_witness) {
        auto filler = ops->canonical_filler(c);
        out.boundary = filler.has_value();
        out.witness = std::move(filler);
    } else {
        out.boundary = ops->is_boundary_vec(chain_to_vec(c));
    }
    return out;
}

bool homologous(Session& s, const Group& g, const Chain& z1, const Chain& z2) {
    if (z1.n != z2.n || z1.l != z2.l)
        throw PreconditionError("homologous: chains live in different complexes");
    auto ops = s.complex(g, z1.n, z1.l);
    if (!ops->is_cycle(z1) || !ops->is_cycle(z2))
        throw PreconditionError("homologous: both chains must be cycles");
    return ops->is_boundary_vec(chain_to_vec(chain_sub(z1, z2)));
}

std::vector<uint32_t> classify(Session& s, const Group& g, const Chain& z) {
    auto hd = homology_data(s, g, z.n, z.l);
    if (!hd->ops->is_cycle(z)) throw PreconditionError("classify: chain is not a cycle");
    return classify_with(*hd, z);
}

MinimalRepBound minimal_representative_bound(Session& s, const Group& g, uint32_t n, uint32_t l) {
    auto hd = homology_data(s, g, n, l);
    const HomologyResult& r = hd->result;
    if (r.dim == 0) return {0, true};

    /* combination fallback: the sum of picked reps bounds every class */
    auto combination_weight = [&](const std::vector<uint32_t>& coords) {
        Chain acc = zero_chain(n, l);
        for (size_t k = 0; k < coords.size(); ++k)
            if (coords[k]) acc = chain_add(acc, chain_scale(r.reps[k], coords[k]));
        return acc.weight();
    };

    uint64_t classes = 1;
    for (uint64_t k = 0; k < r.dim; ++k) {
        classes *= l;
        if (classes > 4096) {
            uint64_t bound = 0;
            for (const Chain& rep : r.reps) bound += rep.weight();
            return {bound, false};
        }
    }

    std::map<std::vector<uint32_t>, uint64_t> best;
    bool complete = census_cycles(*hd->ops, s.config().census_cap, [&](const Chain& z) {
        std::vector<uint32_t> coords = classify_with(*hd, z);
        bool zero = std::all_of(coords.begin(), coords.end(), [](uint32_t c) { return c == 0; });
        if (!zero) best.emplace(std::move(coords), z.weight());
        return best.size() < classes - 1;
    });

    uint64_t bound = 0;
    for (auto& [coords, w] : best) bound = std::max(bound, w);
    if (complete || best.size() == classes - 1) return {bound, true};

    /* classes the census missed get the explicit combination weight */
    std::vector<uint32_t> coords(r.dim, 0);
    while (true) {
        size_t pos = 0;
        while (pos < coords.size() && coords[pos] == l - 1) coords[pos++] = 0;
        if (pos == coords.size()) break;
        ++coords[pos];
        if (!best.count(coords)) bound = std::max(bound, combination_weight(coords));
    }
    return {bound, false};
}

InducedMap induced_map(Session& s, const SubgroupEmbedding& emb, const Group& parent, uint32_t n,
                       uint32_t l) {
    const Group& sub = emb.subgroup;
    auto hs = homology(s, sub, n, l);
    auto hg = homology(s, parent, n, l);
    InducedMap im;
    im.dim_source = hs->dim;
    im.dim_target = hg->dim;
    im.matrix.assign(im.dim_target, std::vector<uint32_t>(im.dim_source, 0));

    auto pops = s.complex(parent, n, l);
    for (uint64_t j = 0; j < hs->dim; ++j) {
        /* push the representative through the inclusion, entrywise */
        std::vector<std::pair<Rank, uint32_t>> terms;
        for (auto& [rank, coeff] : hs->reps[j].terms) {
            std::vector<uint32_t> t = tuple_of(sub, n, rank);
            for (uint32_t& e : t) e = emb.inclusion[e];
            terms.emplace_back(tuple_rank(parent, t), coeff);
        }
        Chain pushed = make_chain(parent, n, l, std::move(terms));
        if (!pops->is_cycle(pushed))
            throw InternalError("induced_map: pushed representative is not a cycle");
        std::vector<uint32_t> coords = classify(s, parent, pushed);
        for (uint64_t i = 0; i < im.dim_target; ++i) im.matrix[i][j] = coords[i];
    }

    uint64_t mrank = dense_rank_gf(im.matrix, l);
    im.surjective = mrank == im.dim_target;
    im.injective = mrank == im.dim_source;
    return im;
}

IndexPrime index_prime_to_l(const Group& g, const Group& subgroup, uint32_t l) {
    if (subgroup.order() == 0 || g.order() % subgroup.order() != 0)
        throw PreconditionError("index_prime_to_l: order does not divide the group order");
    IndexPrime out;
    out.index = g.order() / subgroup.order();
    out.prime_to_l = out.index % l != 0;
    return out;
}

TorusCheck torus_check(Session& s, const Group& g, uint32_t n, uint32_t l) {
    if (!g.is_matrix_group())
        throw PreconditionError("torus-check: needs a matrix-backend group");
    SubgroupEmbedding emb = subgroup_embedding(g, g.diagonal_elements(), s.config());
    IndexPrime ip = index_prime_to_l(g, emb.subgroup, l);
    InducedMap im = induced_map(s, emb, g, n, l);
    TorusCheck out;
    out.group_spec = g.spec();
    out.n = n;
    out.l = l;
    out.torus_order = emb.subgroup.order();
    out.index = ip.index;
    out.prime_to_l = ip.prime_to_l;
    out.dim_torus = im.dim_source;
    out.dim_group = im.dim_target;
    out.surjective = im.surjective;
    out.injective = im.injective;
    out.consistent = !ip.prime_to_l || im.surjective;
    return out;
}

} // namespace barfill
