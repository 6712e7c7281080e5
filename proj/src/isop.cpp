#include "barfill/isop.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "barfill/census.hpp"
#include "barfill/search.hpp"
#include "fill.hpp"

namespace barfill {

FillerResult fill_boundary(ComplexOps& ops, const RunConfig& cfg, const Chain& b,
                           const SparseVec& ub) {
    const uint32_t l = ops.modulus();
    MinWeightResult r = min_weight_solve(ops.filler_columns(), chain_to_vec(b), l,
                                         cfg.node_budget, cfg.weight_ceiling, &ub);
    if (!r.found) throw InternalError("filler search lost a known upper bound");
    FillerResult out;
    out.value = r.weight;
    out.witness = vec_to_chain(r.solution, ops.degree() + 1, l);
    out.exact = r.exact;
    out.nodes = r.stats.nodes;
    out.budget_hit = r.stats.budget_hit;
    if (!(boundary(ops.group(), out.witness) == b))
        throw InternalError("filler witness failed verification");
    return out;
}

FillerResult fill_with_ops(ComplexOps& ops, const RunConfig& cfg, const Chain& b) {
    if (b.is_zero()) {
        FillerResult out;
        out.witness = zero_chain(b.n + 1, b.l);
        return out;
    }
    auto canon = ops.canonical_filler(b);
    if (!canon) throw PreconditionError("filler_norm: chain is not a boundary");
    SparseVec ub;
    ub.e = canon->terms;
    return fill_boundary(ops, cfg, b, ub);
}

namespace {

/* census totals merged across weights (and threads); max is order-free */
struct Totals {
    uint64_t value = 0;
    bool exact = true;
    uint64_t nodes = 0;
    uint64_t boundaries = 0;

    void merge(const Totals& o) {
        value = std::max(value, o.value);
        exact = exact && o.exact;
        nodes += o.nodes;
        boundaries += o.boundaries;
    }
};

uint64_t exhaustive_census_size(uint64_t N, uint32_t l, uint32_t w_lo, uint32_t w_hi,
                                uint64_t cap, const char* what) {
    uint64_t total = 0;
    for (uint32_t w = std::max<uint32_t>(w_lo, 1); w <= w_hi && w <= N; ++w) {
        uint64_t cw = census_count(N, l, w);
        if (cw == UINT64_MAX || total > cap || cap - total < cw)
            throw RefusedError(std::string(what) + ": census over size-" + std::to_string(w_hi) +
                               " chains exceeds census_cap " + std::to_string(cap));
        total += cw;
    }
    return total;
}

/* process chains of one weight with combination index in [lo, hi) */
template <class Fn>
void scan_weight_range(uint64_t N, uint32_t l, uint32_t w, uint64_t lo, uint64_t hi, Fn&& fn) {
    if (lo >= hi) return;
    std::vector<uint64_t> sup = comb_unrank(N, w, lo);
    for (uint64_t ci = lo; ci < hi; ++ci) {
        std::vector<uint32_t> coeff(w, 1);
        do {
            fn(sup, coeff);
        } while (coeff_next(coeff, l));
        comb_next(sup, N);
    }
}

struct Checkpoint {
    std::string key;
    uint32_t w = 1;      /* weight being scanned */
    uint64_t done = 0;   /* chains finished within that weight */
    Totals totals;       /* accumulated over everything before that point */
};

void save_checkpoint(const std::string& path, const Checkpoint& ck) {
    nlohmann::json j;
    j["key"] = ck.key;
    j["weight"] = ck.w;
    j["done"] = ck.done;
    j["value"] = ck.totals.value;
    j["exact"] = ck.totals.exact;
    j["nodes"] = ck.totals.nodes;
    j["boundaries"] = ck.totals.boundaries;
    std::ofstream f(path, std::ios::trunc);
    f << j.dump() << "\n";
}

bool load_checkpoint(const std::string& path, Checkpoint& ck) {
    std::ifstream f(path);
    if (!f) return false;
    nlohmann::json j;
    try {
        f >> j;
        if (j.at("key").get<std::string>() != ck.key) return false;
        ck.w = j.at("weight").get<uint32_t>();
        ck.done = j.at("done").get<uint64_t>();
        ck.totals.value = j.at("value").get<uint64_t>();
        ck.totals.exact = j.at("exact").get<bool>();
        ck.totals.nodes = j.at("nodes").get<uint64_t>();
        ck.totals.boundaries = j.at("boundaries").get<uint64_t>();
        return true;
    } catch (const nlohmann::json::exception&) {
        return false;
    }
}

/* exhaustive max-filler scan over all chains of size exactly K */
Totals isop_scan(Session& s, ComplexOps& ops, uint32_t K, const std::string& ck_key) {
    const RunConfig& cfg = s.config();
    const uint32_t l = ops.modulus();
    const uint32_t n = ops.degree();
    const uint64_t N = ops.tuple_space();

    /* materialize shared state before any worker threads start */
    GFEchelon& B = ops.bspace();
    ops.filler_columns();

    auto eval_chain = [&](GFEchelon::Scratch& ws, const std::vector<uint64_t>& sup,
                          const std::vector<uint32_t>& coeff, Totals& t) {
        SparseVec v;
        v.e.reserve(sup.size());
        for (size_t i = 0; i < sup.size(); ++i) v.e.emplace_back(sup[i], coeff[i]);
        GFEchelon::Reduced red = B.reduce_with(ws, v);
        if (!red.residual.empty()) return;
        ++t.boundaries;
        SparseVec ub;
        ub.e = B.express_reduced(red);
        Chain b = vec_to_chain(v, n, l);
        FillerResult f = fill_boundary(ops, cfg, b, ub);
        t.value = std::max(t.value, f.value);
        t.exact = t.exact && f.exact;
        t.nodes += f.nodes;
    };

    uint32_t threads = std::max<uint32_t>(1, cfg.threads);
    bool use_checkpoint = threads == 1 && !cfg.checkpoint_path.empty();

    Checkpoint ck;
    ck.key = ck_key;
    if (use_checkpoint) {
        Checkpoint loaded;
        loaded.key = ck_key;
        if (load_checkpoint(cfg.checkpoint_path, loaded)) ck = loaded;
    }

    if (threads == 1) {
        GFEchelon::Scratch ws;
        uint64_t since_save = 0;
        for (uint32_t w = std::max(ck.w, K); w <= K && w <= N; ++w) {
            uint64_t skip = (w == ck.w) ? ck.done : 0;
            uint64_t patterns = 1;
            for (uint32_t i = 0; i < w; ++i) patterns *= (l - 1);
            uint64_t combos = binom_sat(N, w);
            uint64_t start_combo = skip / patterns;
            uint64_t coeff_skip = skip % patterns;
            std::vector<uint64_t> sup =
                start_combo < combos ? comb_unrank(N, w, start_combo) : std::vector<uint64_t>();
            uint64_t done = skip;
            for (uint64_t ci = start_combo; ci < combos; ++ci) {
                std::vector<uint32_t> coeff(w, 1);
                for (uint64_t sk = 0; sk < coeff_skip; ++sk) coeff_next(coeff, l);
                do {
                    eval_chain(ws, sup, coeff, ck.totals);
                    ++done;
                    if (use_checkpoint && ++since_save >= 1000000) {
                        since_save = 0;
                        Checkpoint snap = ck;
                        snap.w = w;
                        snap.done = done;
                        save_checkpoint(cfg.checkpoint_path, snap);
                    }
                } while (coeff_next(coeff, l));
                coeff_skip = 0;
                comb_next(sup, N);
            }
            ck.done = 0;
            ck.w = w + 1;
        }
        if (use_checkpoint) {
            ck.w = K + 1; /* a resumed run returns the saved totals as-is */
            save_checkpoint(cfg.checkpoint_path, ck);
        }
        return ck.totals;
    }

    /* threaded scan: contiguous combination ranges per worker, merged by
     * max, so the result does not depend on scheduling */
    Totals grand = ck.totals;
    for (uint32_t w = K; w <= K && w <= N; ++w) {
        uint64_t combos = binom_sat(N, w);
        uint64_t chunk = (combos + threads - 1) / threads;
        std::vector<Totals> part(threads);
        std::vector<std::thread> pool;
        for (uint32_t t = 0; t < threads; ++t) {
            uint64_t lo = std::min<uint64_t>(combos, t * chunk);
            uint64_t hi = std::min<uint64_t>(combos, lo + chunk);
            pool.emplace_back([&, t, lo, hi]() {
                GFEchelon::Scratch ws;
                scan_weight_range(N, l, w, lo, hi,
                                  [&](const std::vector<uint64_t>& sup,
                                      const std::vector<uint32_t>& coeff) {
                                      eval_chain(ws, sup, coeff, part[t]);
                                  });
            });
        }
        for (auto& th : pool) th.join();
        for (auto& p : part) grand.merge(p);
    }
    return grand;
}

} // namespace

FillerResult filler_norm(Session& s, const Group& g, const Chain& b) {
    auto ops = s.complex(g, b.n, b.l);
    return fill_with_ops(*ops, s.config(), b);
}

FillerResult filler_distance(Session& s, const Group& g, const Chain& z1, const Chain& z2) {
    if (!homologous(s, g, z1, z2))
        throw PreconditionError("filler_distance: cycles are not homologous");
    return filler_norm(s, g, chain_sub(z1, z2));
}

IsopResult isop(Session& s, const Group& g, uint32_t n, uint32_t l, uint32_t K,
                const std::string& mode, uint64_t samples) {
    if (mode != "exhaustive" && mode != "sampled")
        throw ParseError("isop: mode must be exhaustive or sampled");
    auto ops = s.complex(g, n, l);
    const RunConfig& cfg = s.config();
    IsopResult out;
    out.K = K;
    out.mode = mode;
    uint64_t N = ops->tuple_space();

    if (K == 0) {
        /* the zero chain is the only size-0 boundary; sup {0} = 0 */
        out.value = 0;
        out.boundaries = 1;
        out.exact = mode == "exhaustive";
        return out;
    }

    if (mode == "sampled") {
        Rng rng(cfg.seed);
        out.exact = false;
        if (K > N) return out; /* no size-K chains at all */
        for (uint64_t i = 0; i < samples; ++i) {
            Chain c = random_chain(g, n, l, K, rng);
            if (!ops->is_boundary_vec(chain_to_vec(c))) continue;
            ++out.boundaries;
            FillerResult f = fill_with_ops(*ops, cfg, c);
            out.value = std::max(out.value, f.value);
            out.nodes += f.nodes;
        }
        return out;
    }

    exhaustive_census_size(N, l, K, K, cfg.census_cap, "isop");
    std::string key = g.spec() + "#" + std::to_string(n) + "#" + std::to_string(l) + "#K" +
                      std::to_string(K);
    Totals t = isop_scan(s, *ops, K, key);
    out.value = t.value;
    out.exact = t.exact;
    out.nodes = t.nodes;
    out.boundaries = t.boundaries;
    return out;
}

IsopProfile isop_profile(Session& s, const Group& g, uint32_t n, uint32_t l, uint32_t k_max,
                         const std::string& mode, uint64_t samples) {
    IsopProfile out;
    for (uint32_t K = 0; K <= k_max; ++K) out.values.push_back(isop(s, g, n, l, K, mode, samples));
    for (uint32_t K = 0; 2 * K <= k_max; ++K) {
        uint64_t m = 0;
        for (uint32_t j = 1; j <= 2 * K; ++j) m = std::max(m, out.values[j].value);
        out.k1.push_back(m);
    }
    return out;
}

PhiResult check_phi(Session& s, const Group& g, uint32_t n, uint32_t l, uint32_t K, uint32_t K1,
                    uint32_t K2) {
    auto ops = s.complex(g, n, l);
    const RunConfig& cfg = s.config();
    uint64_t N = ops->tuple_space();

    PhiResult out;
    if (K == 0) {
        /* the zero boundary fills at size 0, below any K2 */
        out.boundaries = 1;
        return out;
    }
    exhaustive_census_size(N, l, K, K, cfg.census_cap, "phi");

    GFEchelon& B = ops->bspace();
    ops->filler_columns();
    GFEchelon::Scratch ws;

    for (uint32_t w = K; w <= K && w <= N; ++w) {
        std::vector<uint64_t> sup(w);
        std::iota(sup.begin(), sup.end(), 0);
        do {
            std::vector<uint32_t> coeff(w, 1);
            do {
                SparseVec v;
                v.e.reserve(w);
                for (uint32_t i = 0; i < w; ++i) v.e.emplace_back(sup[i], coeff[i]);
                GFEchelon::Reduced red = B.reduce_with(ws, v);
                if (!red.residual.empty()) continue;
                ++out.boundaries;
                SparseVec ub;
                ub.e = B.express_reduced(red);
                Chain b = vec_to_chain(v, n, l);
                FillerResult f = fill_boundary(*ops, cfg, b, ub);
                if (f.value <= K2) continue; /* upper bound suffices here */
                if (!f.exact)
                    throw RefusedError("phi: node_budget too small to settle a filler norm");
                if (f.value > K1) continue; /* no size-K1 filler can exist */
                Exists e = exists_exact_weight(ops->filler_columns(), v, l, K1, cfg.census_cap);
                if (e == Exists::yes) {
                    out.holds = false;
                    out.counterexample = format_chain(b, g);
                    return out;
                }
            } while (coeff_next(coeff, l));
        } while (comb_next(sup, N));
    }
    return out;
}

namespace {

/* cycles of size <= K bucketed by canonical boundary-space residue;
 * the zero chain seeds the zero-key bucket */
std::map<SparseVec, std::vector<Chain>> cycle_buckets(Session& s, ComplexOps& ops, uint32_t K,
                                                      const char* what) {
    const RunConfig& cfg = s.config();
    const Group& g = ops.group();
    uint32_t n = ops.degree(), l = ops.modulus();
    uint64_t N = ops.tuple_space();
    exhaustive_census_size(N, l, 1, K, cfg.census_cap, what);

    std::map<SparseVec, std::vector<Chain>> buckets;
    buckets[SparseVec{}].push_back(zero_chain(n, l));
    GFEchelon& B = ops.bspace();
    GFEchelon::Scratch ws;
    for (uint32_t w = 1; w <= K && w <= N; ++w) {
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
                buckets[B.reduce_with(ws, chain_to_vec(z)).residual].push_back(std::move(z));
            } while (coeff_next(coeff, l));
        } while (comb_next(sup, N));
    }
    return buckets;
}

} // namespace

uint64_t cycle_class_count(Session& s, const Group& g, uint32_t n, uint32_t l, uint32_t K) {
    auto ops = s.complex(g, n, l);
    return cycle_buckets(s, *ops, K, "psi").size();
}

PsiResult check_psi(Session& s, const Group& g, uint32_t n, uint32_t l, uint32_t K, uint32_t K1,
                    uint64_t H_bound) {
    auto ops = s.complex(g, n, l);
    const RunConfig& cfg = s.config();
    auto buckets = cycle_buckets(s, *ops, K, "psi");

    PsiResult out;
    out.classes = buckets.size();
    for (auto& [key, members] : buckets) out.cycles += members.size();

    if (out.classes > H_bound) {
        /* one cycle per class is an (H_bound+1)-tuple with no homologous
         * pair at all */
        out.holds = false;
        return out;
    }

    /* within a class every pair must sit at filler distance <= K1 */
    ops->filler_columns();
    std::map<SparseVec, bool> memo;
    for (auto& [key, members] : buckets) {
        std::vector<std::optional<uint64_t>> to_rep(members.size());
        for (size_t i = 0; i < members.size(); ++i) {
            FillerResult f = fill_with_ops(*ops, cfg, chain_sub(members[i], members[0]));
            if (f.exact) to_rep[i] = f.value;
        }
        for (size_t i = 0; i < members.size(); ++i) {
            for (size_t j = i + 1; j < members.size(); ++j) {
                if (to_rep[i] && to_rep[j] && *to_rep[i] + *to_rep[j] <= K1) continue;
                SparseVec diff = chain_to_vec(chain_sub(members[i], members[j]));
                auto it = memo.find(diff);
                bool ok;
                if (it != memo.end()) {
                    ok = it->second;
                } else {
                    Exists e = exists_within(ops->filler_columns(), diff, l, K1, cfg.node_budget);
                    if (e == Exists::unknown)
                        throw RefusedError("psi: node_budget too small to settle a pair distance");
                    ok = e == Exists::yes;
                    memo.emplace(std::move(diff), ok);
                }
                if (!ok) {
                    out.holds = false;
                    return out;
                }
            }
        }
    }
    return out;
}

} // namespace barfill
