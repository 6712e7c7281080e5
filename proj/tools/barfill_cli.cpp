/* barfill: bar-complex filler norms, isoperimetry sentences and family
 * probes from the command line.  Everything goes through the C API of
 * the shared library; results print as JSON (CSV for family tables
 * under --format csv) on stdout, diagnostics on stderr.
 *
 * Exit codes: 0 ok, 1 selftest found failures, 2 precondition broken,
 * 3 refused by a cap or budget, 64 usage, 65 malformed input, 70
 * internal error.
 */

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "barfill.h"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;

int emit(bf_session* s, bf_status st, char* out) {
    if (st != BF_OK) {
        std::fprintf(stderr, "error: %s\n", bf_last_error(s));
        return int(st);
    }
    std::fputs(out, stdout);
    size_t len = std::strlen(out);
    if (len == 0 || out[len - 1] != '\n')
        std::fputc('\n', stdout);
    bf_string_free(out);
    return 0;
}

/* "-" or empty reads stdin */
bool read_all(const std::string& path, std::string& text) {
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
        return true;
    }
    std::ifstream f(path, std::ios::binary);
    if (!f)
        return false;
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
    return true;
}

struct ConfigFlags {
    std::string config_file;
    std::vector<std::string> sets;
    std::string seed, threads, format, census_cap, node_budget, order_cap, dim_cap, nnz_cap,
        weight_ceiling, checkpoint;

    void add_to(CLI::App& app) {
        app.add_option("--config", config_file, "configuration file (key=value lines)");
        app.add_option("--set", sets, "override one configuration key (key=value)");
        app.add_option("--seed", seed, "random seed");
        app.add_option("--threads", threads, "worker threads for scans");
        app.add_option("--format", format, "output format: json or csv");
        app.add_option("--census-cap", census_cap, "largest exhaustive census");
        app.add_option("--budget,--node-budget", node_budget, "search nodes per filler");
        app.add_option("--order-cap", order_cap, "largest group order");
        app.add_option("--dim-cap", dim_cap, "largest tuple space");
        app.add_option("--nnz-cap", nnz_cap, "sparse nonzero cap");
        app.add_option("--weight-ceiling", weight_ceiling, "deepest certified filler weight");
        app.add_option("--checkpoint", checkpoint, "census checkpoint file");
    }

    /* environment, then --config, then --set, then dedicated flags */
    int apply(bf_session* s) const {
        if (bf_config_load_env(s) != BF_OK) {
            std::fprintf(stderr, "error: %s\n", bf_last_error(s));
            return kExitParse;
        }
        if (!config_file.empty() && bf_config_load_file(s, config_file.c_str()) != BF_OK) {
            std::fprintf(stderr, "error: %s\n", bf_last_error(s));
            return kExitParse;
        }
        for (const std::string& kv : sets) {
            size_t eq = kv.find('=');
            if (eq == std::string::npos) {
                std::fprintf(stderr, "error: --set needs key=value, got '%s'\n", kv.c_str());
                return kExitUsage;
            }
            if (bf_config_set(s, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()) != BF_OK) {
                std::fprintf(stderr, "error: %s\n", bf_last_error(s));
                return kExitParse;
            }
        }
        const std::pair<const char*, const std::string*> pairs[] = {
            {"seed", &seed},
            {"threads", &threads},
            {"format", &format},
            {"census_cap", &census_cap},
            {"node_budget", &node_budget},
            {"order_cap", &order_cap},
            {"dim_cap", &dim_cap},
            {"nnz_cap", &nnz_cap},
            {"weight_ceiling", &weight_ceiling},
            {"checkpoint_path", &checkpoint},
        };
        for (const auto& [key, value] : pairs) {
            if (value->empty())
                continue;
            if (bf_config_set(s, key, value->c_str()) != BF_OK) {
                std::fprintf(stderr, "error: %s\n", bf_last_error(s));
                return kExitParse;
            }
        }
        return 0;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bar-complex homology, filler norms and isoperimetry sentences"};
    app.require_subcommand(1);
    app.fallthrough();

    ConfigFlags cfg;
    cfg.add_to(app);

    std::string spec, mode = "exhaustive", chain_path = "-", recipe, suite, pattern, q_range;
    uint32_t n = 1, l = 2, K = 1, K1 = 0, K2 = 0, k_max = 0, mod_filter = 0;
    uint64_t samples = 1000, h_bound = BF_PSI_COMPUTED_BOUND;
    bool profile = false;

    CLI::App* c_group = app.add_subcommand("group", "order and shape of a group spec");
    c_group->add_option("--spec", spec, "group spec")->required();

    CLI::App* c_hom = app.add_subcommand("homology", "bar homology dimensions and class reps");
    c_hom->add_option("--group", spec)->required();
    c_hom->add_option("--n", n, "degree")->required();
    c_hom->add_option("--l", l, "prime modulus")->required();

    CLI::App* c_fill = app.add_subcommand("fillnorm", "least filler size of a boundary chain");
    c_fill->add_option("--chain", chain_path, "chain JSON file, - for stdin");

    CLI::App* c_isop = app.add_subcommand("isop", "isoperimetry value at size K");
    c_isop->add_option("--group", spec)->required();
    c_isop->add_option("--n", n)->required();
    c_isop->add_option("--l", l)->required();
    c_isop->add_option("--K", K)->required();
    c_isop->add_option("--mode", mode, "exhaustive or sampled");
    c_isop->add_option("--samples", samples, "draws in sampled mode");
    c_isop->add_flag("--profile", profile, "profile K = 0..K with running max");

    CLI::App* c_phi = app.add_subcommand("phi", "sentence Phi_{K,K1,K2}");
    c_phi->add_option("--group", spec)->required();
    c_phi->add_option("--n", n)->required();
    c_phi->add_option("--l", l)->required();
    c_phi->add_option("--K", K)->required();
    c_phi->add_option("--K1", K1)->required();
    c_phi->add_option("--K2", K2)->required();

    CLI::App* c_psi = app.add_subcommand("psi", "sentence Psi_K");
    c_psi->add_option("--group", spec)->required();
    c_psi->add_option("--n", n)->required();
    c_psi->add_option("--l", l)->required();
    c_psi->add_option("--K", K)->required();
    c_psi->add_option("--K1", K1)->required();
    c_psi->add_option("--H", h_bound, "class bound; defaults to the computed count");

    CLI::App* c_torus = app.add_subcommand("torus-check", "diagonal torus versus the full group");
    c_torus->add_option("--group", spec)->required();
    c_torus->add_option("--n", n)->required();
    c_torus->add_option("--l", l)->required();

    CLI::App* c_fam = app.add_subcommand("family", "recipe probe over a group family");
    c_fam->add_option("--pattern", pattern, "gl:<k>, sl:<k> or torus:<k>")->required();
    c_fam->add_option("--q-range", q_range, "field sizes LO:HI, inclusive")->required();
    c_fam->add_option("--mod-filter", mod_filter, "keep q = 1 (mod this)");
    c_fam->add_option("--n", n)->required();
    c_fam->add_option("--l", l)->required();
    c_fam->add_option("--recipe", recipe, "chain recipe, d(...) for differentials")->required();
    c_fam->add_option("--K", K, "boundary size bound")->required();

    CLI::App* c_self = app.add_subcommand("selftest", "run the invariant battery");
    c_self->add_option("--suite", suite, "one suite name, default all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    bf_session* s = bf_session_new();
    if (!s) {
        std::fputs("error: out of memory\n", stderr);
        return int(BF_E_INTERNAL);
    }
    int rc = cfg.apply(s);
    if (rc != 0) {
        bf_session_free(s);
        return rc;
    }

    char* out = nullptr;
    bf_status st = BF_OK;
    if (app.got_subcommand(c_group)) {
        st = bf_group_info(s, spec.c_str(), &out);
        rc = emit(s, st, out);
    } else if (app.got_subcommand(c_hom)) {
        st = bf_homology(s, spec.c_str(), n, l, &out);
        rc = emit(s, st, out);
    } else if (app.got_subcommand(c_fill)) {
        std::string text;
        if (!read_all(chain_path, text)) {
            std::fprintf(stderr, "error: cannot read %s\n", chain_path.c_str());
            rc = kExitParse;
        } else {
            st = bf_filler_norm(s, text.c_str(), &out);
            rc = emit(s, st, out);
        }
    } else if (app.got_subcommand(c_isop)) {
        if (profile) {
            k_max = K;
            st = bf_isop_profile(s, spec.c_str(), n, l, k_max, mode.c_str(), samples, &out);
        } else {
            st = bf_isop(s, spec.c_str(), n, l, K, mode.c_str(), samples, &out);
        }
        rc = emit(s, st, out);
    } else if (app.got_subcommand(c_phi)) {
        st = bf_check_phi(s, spec.c_str(), n, l, K, K1, K2, &out);
        rc = emit(s, st, out);
    } else if (app.got_subcommand(c_psi)) {
        st = bf_check_psi(s, spec.c_str(), n, l, K, K1, h_bound, &out);
        rc = emit(s, st, out);
    } else if (app.got_subcommand(c_torus)) {
        st = bf_torus_check(s, spec.c_str(), n, l, &out);
        rc = emit(s, st, out);
    } else if (app.got_subcommand(c_fam)) {
        uint32_t q_lo = 0, q_hi = 0;
        size_t colon = q_range.find(':');
        char tail = 0;
        if (colon == std::string::npos ||
            std::sscanf(q_range.c_str(), "%u:%u%c", &q_lo, &q_hi, &tail) != 2) {
            std::fprintf(stderr, "error: --q-range expects LO:HI, got '%s'\n", q_range.c_str());
            rc = kExitUsage;
        } else {
            st = bf_family_probe(s, pattern.c_str(), q_lo, q_hi, mod_filter, n, l, recipe.c_str(),
                                 K, &out);
            rc = emit(s, st, out);
        }
    } else if (app.got_subcommand(c_self)) {
        st = bf_selftest(s, suite.c_str(), &out);
        bool passed = st == BF_OK && bf_selftest_passed(out);
        rc = emit(s, st, out);
        if (rc == 0 && !passed)
            rc = 1;
    }

    bf_session_free(s);
    return rc;
}
