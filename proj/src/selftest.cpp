#include "barfill/selftest.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "barfill/census.hpp"
#include "barfill/chain.hpp"
#include "barfill/family.hpp"
#include "barfill/homology.hpp"
#include "barfill/isop.hpp"
#include "barfill/rng.hpp"
#include "barfill/session.hpp"

namespace barfill {
namespace {

/* the battery runs under its own caps so a caller's config cannot
 * change what "pass" means; only the seed feeds the random draws */
RunConfig battery_config(uint64_t seed) {
    RunConfig cfg;
    cfg.seed = seed;
    cfg.threads = 1;
    return cfg;
}

/* size-K censuses above this are skipped by the sentence suite */
constexpr uint64_t kSentenceCensusCap = 2500;
constexpr size_t kNoteCap = 30;

const std::vector<std::string>& registry() {
    static const std::vector<std::string> specs = [] {
        std::vector<std::string> v;
        for (int m = 2; m <= 12; ++m)
            v.push_back("cyclic:" + std::to_string(m));
        v.insert(v.end(), {"sym:3", "sym:4", "dihedral:8", "gl:2:3", "torus:2:4"});
        return v;
    }();
    return specs;
}

void add_note(SuiteResult& r, const std::string& note) {
    if (r.notes.size() < kNoteCap)
        r.notes.push_back(note);
    else if (r.notes.size() == kNoteCap)
        r.notes.push_back("... further notes dropped");
}

void check(SuiteResult& r, bool ok, const std::string& what) {
    ++r.checks;
    if (!ok) {
        ++r.failures;
        r.pass = false;
        add_note(r, "FAIL " + what);
    }
}

void skip(SuiteResult& r, const std::string& why) {
    ++r.skips;
    add_note(r, "skip " + why);
}

/* ---- ddzero: the differential squares to zero ---------------------- */

void suite_ddzero(SuiteResult& r, uint64_t seed) {
    Session s(battery_config(seed));
    Rng rng(seed ^ 0x64647a65726f0000ULL);
    for (const auto& spec : registry()) {
        Group g = s.group(spec);
        for (uint32_t n = 1; n <= 3; ++n) {
            uint64_t dim = chain_space_dim(g, n);
            for (uint32_t l : {2u, 3u, 5u}) {
                for (int i = 0; i < 70; ++i) {
                    uint64_t w = rng.range(1, std::min<uint64_t>(6, dim));
                    Chain c = random_chain(g, n, l, w, rng);
                    Chain d1 = boundary(g, c);
                    bool ok = n == 1 ? d1.is_zero() : boundary(g, d1).is_zero();
                    check(r, ok, "d.d != 0 on " + spec + " n=" + std::to_string(n) +
                                     " l=" + std::to_string(l) + ": " + format_chain(c, g));
                }
            }
        }
    }
}

/* ---- homology: dimensions against independent oracles -------------- */

/* dim H_1(G; Z/l) = number of invariant factors of G^ab divisible by l,
 * computed from the multiplication table alone: commutator-subgroup
 * closure, coset quotient, then the index of the l-th powers */
uint64_t abelianized_h1_dim(const Group& g, uint32_t l) {
    uint32_t N = g.order();
    std::vector<char> in(N, 0);
    std::vector<uint32_t> K;
    auto push = [&](uint32_t x) {
        if (!in[x]) {
            in[x] = 1;
            K.push_back(x);
        }
    };
    push(g.mul(0, g.inv(0)));
    for (uint32_t a = 0; a < N; ++a)
        for (uint32_t b = 0; b < N; ++b)
            push(g.mul(g.mul(a, b), g.inv(g.mul(b, a))));
    for (size_t i = 0; i < K.size(); ++i)
        for (size_t j = 0; j <= i; ++j) {
            push(g.mul(K[i], K[j]));
            push(g.mul(K[j], K[i]));
        }
    std::vector<uint32_t> rep(N);
    for (uint32_t x = 0; x < N; ++x) {
        uint32_t best = g.mul(x, K[0]);
        for (uint32_t k : K)
            best = std::min(best, g.mul(x, k));
        rep[x] = best;
    }
    std::set<uint32_t> quotient;
    for (uint32_t x = 0; x < N; ++x)
        quotient.insert(rep[x]);
    std::set<uint32_t> lth;
    for (uint32_t q : quotient) {
        uint32_t p = q;
        for (uint32_t i = 1; i < l; ++i)
            p = rep[g.mul(p, q)];
        lth.insert(p);
    }
    uint64_t index = quotient.size() / lth.size();
    uint64_t dim = 0;
    while (index > 1) {
        index /= l;
        ++dim;
    }
    return dim;
}

void suite_homology(SuiteResult& r, uint64_t seed) {
    Session s(battery_config(seed));
    for (uint32_t l : {2u, 3u}) {
        Group g = s.group("cyclic:" + std::to_string(l));
        for (uint32_t n = 0; n <= 3; ++n) {
            uint64_t dim = homology(s, g, n, l)->dim;
            check(r, dim == 1, "dim H_" + std::to_string(n) + "(Z/" + std::to_string(l) +
                                   ") = " + std::to_string(dim) + ", want 1");
        }
    }
    for (const auto& spec : registry()) {
        Group g = s.group(spec);
        for (uint32_t l : {2u, 3u, 5u}) {
            uint64_t dim = homology(s, g, 1, l)->dim;
            uint64_t want = abelianized_h1_dim(g, l);
            check(r, dim == want, "dim H_1(" + spec + "; Z/" + std::to_string(l) + ") = " +
                                      std::to_string(dim) + ", abelianization gives " +
                                      std::to_string(want));
        }
    }
    Group k4 = s.group("product:cyclic:2,cyclic:2");
    uint64_t d1 = homology(s, k4, 1, 2)->dim;
    uint64_t d2 = homology(s, k4, 2, 2)->dim;
    check(r, d1 == 2, "Kunneth n=1 on Z/2 x Z/2: dim " + std::to_string(d1) + ", want 2");
    check(r, d2 == 3, "Kunneth n=2 on Z/2 x Z/2: dim " + std::to_string(d2) + ", want 3");
}

/* ---- filler: branch and bound against exhaustive enumeration ------- */

std::string dense_key(const Chain& c) {
    std::ostringstream o;
    for (const auto& [rank, coeff] : c.terms)
        o << rank << ':' << coeff << ';';
    return o.str();
}

Chain chain_of_key(const std::string& key, uint32_t n, uint32_t l) {
    Chain c;
    c.n = n;
    c.l = l;
    size_t pos = 0;
    while (pos < key.size()) {
        size_t colon = key.find(':', pos);
        size_t semi = key.find(';', colon);
        c.terms.emplace_back(std::stoull(key.substr(pos, colon - pos)),
                             uint32_t(std::stoul(key.substr(colon + 1, semi - colon - 1))));
        pos = semi + 1;
    }
    return c;
}

void suite_filler(SuiteResult& r, uint64_t seed) {
    Session s(battery_config(seed));
    for (const char* spec : {"cyclic:2", "cyclic:3", "cyclic:4"}) {
        for (uint32_t n : {1u, 2u}) {
            for (uint32_t l : {2u, 3u}) {
                Group g = s.group(spec);
                uint64_t dim = chain_space_dim(g, n + 1);
                /* every boundary with a preimage of weight <= 3; taking the
                 * minimum over all such preimages is exact because any
                 * lighter filler is itself one of the enumerated preimages */
                std::unordered_map<std::string, uint32_t> least;
                for (uint32_t w = 1; w <= 3 && w <= dim; ++w) {
                    std::vector<uint64_t> sup(w);
                    for (uint32_t i = 0; i < w; ++i)
                        sup[i] = i;
                    do {
                        std::vector<uint32_t> coeff(w, 1);
                        do {
                            Chain c;
                            c.n = n + 1;
                            c.l = l;
                            for (uint32_t i = 0; i < w; ++i)
                                c.terms.emplace_back(sup[i], coeff[i]);
                            Chain b = boundary(g, c);
                            if (b.is_zero())
                                continue;
                            auto [it, fresh] = least.try_emplace(dense_key(b), w);
                            if (!fresh && w < it->second)
                                it->second = w;
                        } while (coeff_next(coeff, l));
                    } while (comb_next(sup, dim));
                }
                std::vector<std::string> keys;
                keys.reserve(least.size());
                for (const auto& [key, w] : least)
                    keys.push_back(key);
                std::sort(keys.begin(), keys.end());
                size_t stride = std::max<size_t>(1, keys.size() / 200);
                for (size_t i = 0; i < keys.size(); i += stride) {
                    Chain b = chain_of_key(keys[i], n, l);
                    FillerResult fr = filler_norm(s, g, b);
                    check(r, fr.exact && fr.value == least[keys[i]],
                          std::string(spec) + " n=" + std::to_string(n) + " l=" +
                              std::to_string(l) + " fill " + format_chain(b, g) + ": solver " +
                              std::to_string(fr.value) + ", census " +
                              std::to_string(least[keys[i]]));
                }
            }
        }
    }
}

/* ---- isop: the hand-checked micro-values on Z/2 --------------------- */

void suite_isop(SuiteResult& r, uint64_t seed) {
    Session s(battery_config(seed));
    Group g = s.group("cyclic:2");
    IsopResult one = isop(s, g, 1, 2, 1, "exhaustive", 0);
    IsopResult two = isop(s, g, 1, 2, 2, "exhaustive", 0);
    check(r, one.value == 1, "isop(1) on Z/2 = " + std::to_string(one.value) + ", want 1");
    check(r, one.exact, "isop(1) on Z/2 not exact");
    check(r, two.value == 0, "isop(2) on Z/2 = " + std::to_string(two.value) + ", want 0");
    check(r, two.exact, "isop(2) on Z/2 not exact");
}

/* ---- sentences: Phi on Z/2, Psi with the running-max recipe --------- */

void suite_sentences(SuiteResult& r, uint64_t seed) {
    RunConfig cfg = battery_config(seed);
    cfg.census_cap = kSentenceCensusCap;
    Session s(cfg);
    Group c2 = s.group("cyclic:2");
    uint64_t k1z2 = std::max(isop(s, c2, 1, 2, 1, "exhaustive", 0).value,
                             isop(s, c2, 1, 2, 2, "exhaustive", 0).value);
    PhiResult good = check_phi(s, c2, 1, 2, 1, uint32_t(k1z2), 1);
    check(r, good.holds, "Phi(1," + std::to_string(k1z2) + ",1) on Z/2 should hold");
    PhiResult bad = check_phi(s, c2, 1, 2, 1, 1, 0);
    check(r, !bad.holds && bad.counterexample == "<0>",
          "Phi(1,1,0) on Z/2 should fail on <0>, got " +
              (bad.holds ? std::string("holds") : bad.counterexample));

    for (uint32_t K : {1u, 2u}) {
        for (const auto& spec : registry()) {
            for (uint32_t l : {2u, 3u}) {
                Group g = s.group(spec);
                uint64_t dim = chain_space_dim(g, 1);
                std::string tag = "Psi_" + std::to_string(K) + " on " + spec + " l=" +
                                  std::to_string(l);
                uint64_t worst = 0, cycle_census = 0;
                for (uint32_t j = 1; j <= 2 * K; ++j)
                    worst = std::max(worst, census_count(dim, l, j));
                for (uint32_t w = 1; w <= K; ++w)
                    cycle_census += census_count(dim, l, w);
                if (worst > kSentenceCensusCap || cycle_census > kSentenceCensusCap) {
                    skip(r, tag + " (census " + std::to_string(std::max(worst, cycle_census)) +
                                " over cap " + std::to_string(kSentenceCensusCap) + ")");
                    continue;
                }
                try {
                    uint64_t k1 = 0;
                    bool exact = true;
                    for (uint32_t j = 1; j <= 2 * K; ++j) {
                        IsopResult ir = isop(s, g, 1, l, j, "exhaustive", 0);
                        k1 = std::max(k1, ir.value);
                        exact = exact && ir.exact;
                    }
                    if (!exact) {
                        skip(r, tag + " (isop census not exact under the battery budget)");
                        continue;
                    }
                    uint64_t classes = cycle_class_count(s, g, 1, l, K);
                    PsiResult pr = check_psi(s, g, 1, l, K, uint32_t(k1), classes);
                    check(r, pr.holds, tag + " with K1=" + std::to_string(k1) + " H=" +
                                           std::to_string(classes) + " should hold");
                } catch (const RefusedError& e) {
                    skip(r, tag + " (" + e.what() + ")");
                }
            }
        }
    }
}

/* ---- torus: index versus surjectivity on the diagonal torus --------- */

void suite_torus(SuiteResult& r, uint64_t seed) {
    Session s(battery_config(seed));
    struct Case {
        const char* spec;
        uint32_t l;
        uint64_t index;
        bool prime;
    };
    /* q in {3,4,5} with l != char; indices |GL_2(F_q)| / (q-1)^2 */
    for (const Case& c : {Case{"gl:2:3", 2, 12, false}, Case{"gl:2:4", 3, 20, true},
                          Case{"gl:2:5", 2, 30, false}, Case{"gl:2:5", 3, 30, false}}) {
        Group g = s.group(c.spec);
        TorusCheck tc = torus_check(s, g, 1, c.l);
        std::string tag = std::string(c.spec) + " l=" + std::to_string(c.l);
        check(r, tc.index == c.index && tc.prime_to_l == c.prime,
              tag + ": index " + std::to_string(tc.index) + " prime_to_l " +
                  std::to_string(tc.prime_to_l));
        check(r, tc.consistent && (!tc.prime_to_l || tc.surjective),
              tag + ": prime index must force surjectivity");
    }
}

/* ---- metric: triangle inequality and subadditivity ------------------ */

void suite_metric(SuiteResult& r, uint64_t seed) {
    Session s(battery_config(seed));
    Rng rng(seed ^ 0x6d65747269630000ULL);
    const std::vector<std::string> specs = {"cyclic:3", "cyclic:4", "cyclic:5", "sym:3",
                                            "dihedral:8"};
    for (int i = 0; i < 200; ++i) {
        Group g = s.group(specs[i % specs.size()]);
        uint32_t l = i % 2 ? 3 : 2;
        Chain c1 = random_chain(g, 2, l, rng.range(1, 3), rng);
        Chain c2 = random_chain(g, 2, l, rng.range(1, 3), rng);
        FillerResult f1 = filler_norm(s, g, boundary(g, c1));
        FillerResult f2 = filler_norm(s, g, boundary(g, c2));
        FillerResult fs = filler_norm(s, g, chain_add(boundary(g, c1), boundary(g, c2)));
        check(r, f1.exact && f2.exact && fs.exact && fs.value <= f1.value + f2.value,
              "subadditivity #" + std::to_string(i) + " on " + specs[i % specs.size()] + ": " +
                  std::to_string(fs.value) + " > " + std::to_string(f1.value) + " + " +
                  std::to_string(f2.value));
    }
    for (int i = 0; i < 200; ++i) {
        Group g = s.group(specs[i % specs.size()]);
        uint32_t l = i % 2 ? 3 : 2;
        Chain z1 = random_chain(g, 1, l, rng.range(1, 3), rng);
        Chain z2 = chain_add(z1, boundary(g, random_chain(g, 2, l, rng.range(1, 2), rng)));
        Chain z3 = chain_add(z1, boundary(g, random_chain(g, 2, l, rng.range(1, 2), rng)));
        FillerResult d12 = filler_distance(s, g, z1, z2);
        FillerResult d23 = filler_distance(s, g, z2, z3);
        FillerResult d13 = filler_distance(s, g, z1, z3);
        check(r,
              d12.exact && d23.exact && d13.exact && d13.value <= d12.value + d23.value,
              "triangle #" + std::to_string(i) + " on " + specs[i % specs.size()] + ": " +
                  std::to_string(d13.value) + " > " + std::to_string(d12.value) + " + " +
                  std::to_string(d23.value));
    }
}

/* ---- family: decompose after embed returns every member chain ------- */

void suite_family(SuiteResult& r, uint64_t seed) {
    Session s(battery_config(seed));
    Rng rng(seed ^ 0x66616d696c790000ULL);
    GroupFamily fam = make_family(s, "torus:1", 4, 19, 3, 1, 3);
    check(r, fam.members.size() == 5,
          "torus family over q=4..19, q=1 mod 3: " + std::to_string(fam.members.size()) +
              " members, want 5");
    if (fam.members.size() != 5)
        return;
    Group base = s.group("cyclic:3");
    std::vector<Embedding> embs = cyclic_torus_embeddings(s, base, fam);
    for (int i = 0; i < 100; ++i) {
        Chain c = random_chain(base, 1, 3, rng.range(1, 3), rng);
        std::vector<Chain> images = diagonal_embed(s, base, c, fam, embs);
        CooDecomposition d = coordinate_decompose(images, 3);
        bool ok = d.member_set.size() == fam.members.size() && d.dissent.empty();
        for (size_t m = 0; ok && m < fam.members.size(); ++m) {
            Group member = s.group(fam.members[m].spec);
            ok = reassemble(member, d, m, 1, 3) == images[m] &&
                 pull_back(base, embs[m], member, images[m]) == c;
        }
        check(r, ok, "round trip #" + std::to_string(i) + " on " + format_chain(c, base));
    }
}

/* ---- report ---------------------------------------------------------- */

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char ch : s) {
        switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (uint8_t(ch) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                out += buf;
            } else {
                out += ch;
            }
        }
    }
    return out;
}

using SuiteFn = void (*)(SuiteResult&, uint64_t);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
    static const std::vector<std::pair<std::string, SuiteFn>> table = {
        {"ddzero", suite_ddzero},     {"homology", suite_homology},
        {"filler", suite_filler},     {"isop", suite_isop},
        {"sentences", suite_sentences}, {"torus", suite_torus},
        {"metric", suite_metric},     {"family", suite_family},
    };
    return table;
}

} // namespace

const std::vector<std::string>& selftest_suites() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : suite_table())
            v.push_back(name);
        return v;
    }();
    return names;
}

std::vector<SuiteResult> run_selftest(uint64_t seed, const std::string& which) {
    std::vector<SuiteResult> out;
    bool all = which.empty() || which == "all";
    for (const auto& [name, fn] : suite_table()) {
        if (!all && name != which)
            continue;
        SuiteResult r;
        r.name = name;
        fn(r, seed);
        out.push_back(std::move(r));
    }
    if (out.empty())
        throw ParseError("selftest: unknown suite '" + which + "'");
    return out;
}

std::string selftest_json(uint64_t seed, const std::vector<SuiteResult>& suites) {
    bool all_pass = true;
    for (const SuiteResult& r : suites)
        all_pass = all_pass && r.pass;
    std::ostringstream o;
    o << "{\n  \"seed\": " << seed << ",\n  \"all_pass\": " << (all_pass ? "true" : "false")
      << ",\n  \"suites\": [\n";
    for (size_t i = 0; i < suites.size(); ++i) {
        const SuiteResult& r = suites[i];
        o << "    {\n      \"name\": \"" << json_escape(r.name) << "\",\n      \"pass\": "
          << (r.pass ? "true" : "false") << ",\n      \"checks\": " << r.checks
          << ",\n      \"failures\": " << r.failures << ",\n      \"skips\": " << r.skips
          << ",\n      \"notes\": [";
        for (size_t j = 0; j < r.notes.size(); ++j)
            o << (j ? ", " : "") << '"' << json_escape(r.notes[j]) << '"';
        o << "]\n    }" << (i + 1 < suites.size() ? "," : "") << '\n';
    }
    o << "  ]\n}\n";
    return o.str();
}

} // namespace barfill
