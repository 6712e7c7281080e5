#include "barfill.h"

#include <cstdlib>
#include <cstring>
#include <mutex>
#include <string>

#include <json.hpp>

#include "barfill/chain.hpp"
#include "barfill/config.hpp"
#include "barfill/family.hpp"
#include "barfill/homology.hpp"
#include "barfill/isop.hpp"
#include "barfill/selftest.hpp"
#include "barfill/session.hpp"

using nlohmann::json;

struct bf_session {
    barfill::Session core;
    std::mutex mu; /* guards err; result strings are per call */
    std::string err;
    bf_session() : core(barfill::RunConfig{}) {}
};

namespace {

using namespace barfill;

void set_err(bf_session* s, const std::string& msg) {
    std::lock_guard<std::mutex> lock(s->mu);
    s->err = msg;
}

char* dup_out(const std::string& text) {
    char* p = static_cast<char*>(std::malloc(text.size() + 1));
    if (p)
        std::memcpy(p, text.c_str(), text.size() + 1);
    return p;
}

const char* require(const char* p, const char* what) {
    if (!p)
        throw PreconditionError(std::string(what) + " must not be null");
    return p;
}

/* runs fn, stores its string into *out, maps exceptions onto statuses */
template <class Fn>
bf_status guarded(bf_session* s, char** out, Fn&& fn) {
    if (out)
        *out = nullptr;
    if (!s)
        return BF_E_PRECONDITION;
    try {
        std::string text = fn();
        if (out) {
            *out = dup_out(text);
            if (!*out) {
                set_err(s, "out of memory");
                return BF_E_INTERNAL;
            }
        }
        set_err(s, "");
        return BF_OK;
    } catch (const ParseError& e) {
        set_err(s, e.what());
        return BF_E_PARSE;
    } catch (const PreconditionError& e) {
        set_err(s, e.what());
        return BF_E_PRECONDITION;
    } catch (const RefusedError& e) {
        set_err(s, e.what());
        return BF_E_REFUSED;
    } catch (const std::exception& e) {
        set_err(s, e.what());
        return BF_E_INTERNAL;
    }
}

json chain_obj(const Group& g, const Chain& c) {
    return json::parse(chain_to_json(g, c));
}

} // namespace

extern "C" {

bf_session* bf_session_new(void) {
    try {
        return new bf_session();
    } catch (...) {
        return nullptr;
    }
}

void bf_session_free(bf_session* s) {
    delete s;
}

bf_status bf_config_set(bf_session* s, const char* key, const char* value) {
    return guarded(s, nullptr, [&] {
        s->core.config().set(require(key, "key"), require(value, "value"));
        return std::string();
    });
}

bf_status bf_config_load_file(bf_session* s, const char* path) {
    return guarded(s, nullptr, [&] {
        s->core.config().load_file(require(path, "path"));
        return std::string();
    });
}

bf_status bf_config_load_env(bf_session* s) {
    return guarded(s, nullptr, [&] {
        s->core.config().load_env();
        return std::string();
    });
}

const char* bf_last_error(const bf_session* s) {
    return s ? s->err.c_str() : "null session";
}

void bf_string_free(char* text) {
    std::free(text);
}

bf_status bf_group_info(bf_session* s, const char* spec, char** out) {
    return guarded(s, out, [&] {
        Group g = s->core.group(require(spec, "spec"));
        json j;
        j["spec"] = g.spec();
        j["order"] = g.order();
        j["identity"] = g.mul(0, g.inv(0));
        j["matrix"] = g.is_matrix_group();
        if (g.is_matrix_group()) {
            j["field"] = g.field().q();
            j["mat_dim"] = g.mat_dim();
        }
        return j.dump();
    });
}

bf_status bf_homology(bf_session* s, const char* spec, uint32_t n, uint32_t l, char** out) {
    return guarded(s, out, [&] {
        Group g = s->core.group(require(spec, "spec"));
        auto h = homology(s->core, g, n, l);
        json j;
        j["group"] = g.spec();
        j["n"] = n;
        j["l"] = l;
        j["dim"] = h->dim;
        j["ranks"] = {{"cycle_dim", h->cycle_dim}, {"boundary_rank", h->boundary_rank}};
        auto reps = json::array();
        for (const Chain& rep : h->reps)
            reps.push_back(format_chain(rep, g));
        j["reps"] = std::move(reps);
        j["reps_minimal"] = h->reps_minimal;
        return j.dump();
    });
}

bf_status bf_filler_norm(bf_session* s, const char* chain_json, char** out) {
    return guarded(s, out, [&] {
        ParsedChain pc = parse_chain_json(require(chain_json, "chain"), s->core.config());
        FillerResult fr = filler_norm(s->core, pc.group, pc.chain);
        json j;
        j["group"] = pc.group.spec();
        j["n"] = pc.chain.n;
        j["l"] = pc.chain.l;
        j["value"] = fr.value;
        j["exact"] = fr.exact;
        j["nodes"] = fr.nodes;
        j["budget_hit"] = fr.budget_hit;
        j["witness"] = chain_obj(pc.group, fr.witness);
        return j.dump();
    });
}

bf_status bf_isop(bf_session* s, const char* spec, uint32_t n, uint32_t l, uint32_t K,
                  const char* mode, uint64_t samples, char** out) {
    return guarded(s, out, [&] {
        Group g = s->core.group(require(spec, "spec"));
        IsopResult r = isop(s->core, g, n, l, K, require(mode, "mode"), samples);
        json j;
        j["group"] = g.spec();
        j["n"] = n;
        j["l"] = l;
        j["K"] = r.K;
        j["mode"] = r.mode;
        j["value"] = r.value;
        j["boundaries"] = r.boundaries;
        j["exact"] = r.exact;
        j["nodes"] = r.nodes;
        return j.dump();
    });
}

bf_status bf_isop_profile(bf_session* s, const char* spec, uint32_t n, uint32_t l, uint32_t k_max,
                          const char* mode, uint64_t samples, char** out) {
    return guarded(s, out, [&] {
        Group g = s->core.group(require(spec, "spec"));
        IsopProfile p = isop_profile(s->core, g, n, l, k_max, require(mode, "mode"), samples);
        json j;
        j["group"] = g.spec();
        j["n"] = n;
        j["l"] = l;
        j["k_max"] = k_max;
        j["mode"] = mode;
        auto values = json::array();
        for (const IsopResult& r : p.values)
            values.push_back({{"K", r.K},
                              {"value", r.value},
                              {"boundaries", r.boundaries},
                              {"exact", r.exact}});
        j["values"] = std::move(values);
        j["k1"] = p.k1;
        return j.dump();
    });
}

bf_status bf_check_phi(bf_session* s, const char* spec, uint32_t n, uint32_t l, uint32_t K,
                       uint32_t K1, uint32_t K2, char** out) {
    return guarded(s, out, [&] {
        Group g = s->core.group(require(spec, "spec"));
        PhiResult r = check_phi(s->core, g, n, l, K, K1, K2);
        json j;
        j["group"] = g.spec();
        j["n"] = n;
        j["l"] = l;
        j["K"] = K;
        j["K1"] = K1;
        j["K2"] = K2;
        j["holds"] = r.holds;
        j["boundaries"] = r.boundaries;
        if (!r.holds)
            j["counterexample"] = r.counterexample;
        return j.dump();
    });
}

bf_status bf_check_psi(bf_session* s, const char* spec, uint32_t n, uint32_t l, uint32_t K,
                       uint32_t K1, uint64_t h_bound, char** out) {
    return guarded(s, out, [&] {
        Group g = s->core.group(require(spec, "spec"));
        bool computed = h_bound == BF_PSI_COMPUTED_BOUND;
        uint64_t bound = computed ? cycle_class_count(s->core, g, n, l, K) : h_bound;
        PsiResult r = check_psi(s->core, g, n, l, K, K1, bound);
        json j;
        j["group"] = g.spec();
        j["n"] = n;
        j["l"] = l;
        j["K"] = K;
        j["K1"] = K1;
        j["h_bound"] = bound;
        j["h_bound_computed"] = computed;
        j["holds"] = r.holds;
        j["classes"] = r.classes;
        j["cycles"] = r.cycles;
        return j.dump();
    });
}

bf_status bf_torus_check(bf_session* s, const char* spec, uint32_t n, uint32_t l, char** out) {
    return guarded(s, out, [&] {
        Group g = s->core.group(require(spec, "spec"));
        TorusCheck r = torus_check(s->core, g, n, l);
        json j;
        j["group"] = r.group_spec;
        j["n"] = r.n;
        j["l"] = r.l;
        j["torus_order"] = r.torus_order;
        j["index"] = r.index;
        j["prime_to_l"] = r.prime_to_l;
        j["dim_torus"] = r.dim_torus;
        j["dim_group"] = r.dim_group;
        j["surjective"] = r.surjective;
        j["injective"] = r.injective;
        j["consistent"] = r.consistent;
        return j.dump();
    });
}

bf_status bf_family_probe(bf_session* s, const char* pattern, uint32_t q_lo, uint32_t q_hi,
                          uint32_t mod_filter, uint32_t n, uint32_t l, const char* recipe,
                          uint32_t K, char** out) {
    return guarded(s, out, [&] {
        GroupFamily fam =
            make_family(s->core, require(pattern, "pattern"), q_lo, q_hi, mod_filter, n, l);
        FamilyReport rep = asymp_probe(s->core, fam, require(recipe, "recipe"), K);
        if (s->core.config().format == "csv")
            return family_csv(rep);
        json j;
        j["pattern"] = pattern;
        j["n"] = n;
        j["l"] = l;
        j["K"] = rep.K;
        j["max_value"] = rep.max_value;
        j["star_verdict"] = rep.star_verdict;
        j["growth"] = rep.growth;
        auto rows = json::array();
        for (const FamilyIndexResult& r : rep.rows) {
            json row;
            row["label"] = r.label;
            row["order"] = r.order;
            row["skipped"] = r.skipped;
            if (r.skipped) {
                row["note"] = r.note;
            } else {
                row["value"] = r.value;
                row["exact"] = r.exact;
            }
            rows.push_back(std::move(row));
        }
        j["rows"] = std::move(rows);
        return j.dump();
    });
}

bf_status bf_selftest(bf_session* s, const char* suite, char** out) {
    return guarded(s, out, [&] {
        std::string which = suite ? suite : "";
        uint64_t seed = s->core.config().seed;
        return selftest_json(seed, run_selftest(seed, which));
    });
}

int bf_selftest_passed(const char* report_json) {
    return report_json && std::strstr(report_json, "\"all_pass\": true") ? 1 : 0;
}

} /* extern "C" */
