/* Filler norms and the isoperimetric sentences against brute force:
 * an ascending-weight sweep of the whole filler space recomputes
 * minimal filler weights and per-size maxima from scratch, and the
 * small-group tables below are frozen by hand. */

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "barfill/group.hpp"
#include "barfill/isop.hpp"
#include "oracle_span.hpp"

using namespace barfill;
using oracle::DenseSpan;
using oracle::boundary_span;
using oracle::dense_of;
using oracle::each_chain_of_weight;

namespace {

/* minimal filler weight by ascending sweep of C_{n+1}; the span gate
 * keeps non-boundaries from sweeping the whole space */
std::optional<uint64_t> oracle_filler(const Group& g, const Chain& b, const DenseSpan& B) {
    if (b.is_zero()) return 0;
    if (!B.contains(dense_of(b, chain_space_dim(g, b.n)))) return std::nullopt;
    uint64_t M = chain_space_dim(g, b.n + 1);
    for (uint32_t w = 1; w <= M; ++w) {
        bool found = false;
        each_chain_of_weight(g, b.n + 1, b.l, w, [&](const Chain& x) {
            if (!found && boundary(g, x) == b) found = true;
        });
        if (found) return w;
    }
    return std::nullopt; /* unreachable for a gated boundary */
}

struct BruteIsop {
    uint64_t value = 0;
    uint64_t boundaries = 0;
};

/* max filler weight over boundaries of size exactly K */
BruteIsop brute_isop(const Group& g, uint32_t n, uint32_t l, uint32_t K, const DenseSpan& B) {
    BruteIsop out;
    each_chain_of_weight(g, n, l, K, [&](const Chain& z) {
        auto f = oracle_filler(g, z, B);
        if (!f) return;
        ++out.boundaries;
        out.value = std::max(out.value, *f);
    });
    return out;
}

const char* CK_PATH = "/tmp/barfill_isop_ck.json";

} // namespace

TEST_CASE("filler norms match the brute-force minimum and carry valid witnesses") {
    Rng rng(5);
    for (uint32_t m : {2u, 3u, 4u}) {
        std::string spec = "cyclic:" + std::to_string(m);
        for (uint32_t n : {1u, 2u}) {
            for (uint32_t l : {2u, 3u}) {
                Session s;
                Group g = s.group(spec);
                DenseSpan B = boundary_span(g, n, l);
                for (int i = 0; i < 3; ++i) {
                    uint32_t w0 = 1 + static_cast<uint32_t>(i % 3);
                    if (chain_space_dim(g, n + 1) > 30) w0 = std::min(w0, 2u);
                    Chain c = random_chain(g, n + 1, l, w0, rng);
                    Chain b = boundary(g, c);
                    CAPTURE(g.spec());
                    CAPTURE(n);
                    CAPTURE(l);
                    CAPTURE(format_chain(b, g));
                    FillerResult f = filler_norm(s, g, b);
                    CHECK(f.exact);
                    CHECK(!f.budget_hit);
                    CHECK(boundary(g, f.witness) == b);
                    CHECK(f.value == f.witness.weight());
                    CHECK(f.value <= c.weight()); /* c itself is a filler */
                    auto want = oracle_filler(g, b, B);
                    REQUIRE(want.has_value());
                    CHECK(f.value == *want);
                }
            }
        }
    }
}

TEST_CASE("the filler norm is subadditive on sums of boundaries") {
    Session s;
    Rng rng(17);
    for (const char* spec : {"cyclic:3", "product:cyclic:2,cyclic:2"}) {
        Group g = s.group(spec);
        uint32_t l = g.spec()[0] == 'c' ? 3 : 2;
        for (int i = 0; i < 20; ++i) {
            Chain b1 = boundary(g, random_chain(g, 2, l, 1 + i % 2, rng));
            Chain b2 = boundary(g, random_chain(g, 2, l, 1 + i % 3, rng));
            FillerResult f1 = filler_norm(s, g, b1);
            FillerResult f2 = filler_norm(s, g, b2);
            FillerResult fs = filler_norm(s, g, chain_add(b1, b2));
            REQUIRE(f1.exact);
            REQUIRE(f2.exact);
            REQUIRE(fs.exact);
            CHECK(fs.value <= f1.value + f2.value);
        }
    }
}

TEST_CASE("the zero chain fills for free and non-boundaries are rejected") {
    Session s;
    Group g = s.group("cyclic:2");
    FillerResult z = filler_norm(s, g, zero_chain(1, 2));
    CHECK(z.value == 0);
    CHECK(z.exact);
    CHECK(z.witness.is_zero());

    CHECK_THROWS_AS(filler_norm(s, g, make_chain(g, 1, 2, {{1, 1}})), PreconditionError);
    CHECK_THROWS_AS(filler_norm(s, g, make_chain(g, 0, 2, {{0, 1}})), PreconditionError);
}

TEST_CASE("a degree-1 singleton bounds exactly when its abelianization image dies mod l") {
    Session s;
    for (const char* spec : {"cyclic:4", "cyclic:6", "torus:2:4", "sym:3", "dihedral:8"}) {
        Group g = s.group(spec);
        Abelianization ab = abelianization(g, RunConfig{});
        for (uint32_t l : {2u, 3u}) {
            /* the image of g in G^ab (x) Z/l vanishes iff proj(g) is an l-th power */
            std::set<uint32_t> powers;
            for (uint32_t q = 0; q < ab.quotient.order(); ++q) {
                uint32_t p = q;
                for (uint32_t i = 1; i < l; ++i) p = ab.quotient.mul(p, q);
                powers.insert(p);
            }
            for (uint32_t e = 0; e < g.order(); ++e) {
                bool vanishes = powers.count(ab.projection[e]) > 0;
                bool bounds = true;
                try {
                    filler_norm(s, g, make_chain(g, 1, l, {{e, 1}}));
                } catch (const PreconditionError&) {
                    bounds = false;
                }
                CAPTURE(spec);
                CAPTURE(l);
                CAPTURE(e);
                CHECK(bounds == vanishes);
            }
        }
    }
}

TEST_CASE("derived-subgroup singletons bound; filler norm is logged beside commutator length") {
    Session s;
    for (const char* spec : {"sym:3", "sym:4", "dihedral:8"}) {
        Group g = s.group(spec);
        uint32_t id = g.mul(0, g.inv(0));
        for (uint32_t l : {2u, 3u}) {
            std::string log = std::string(spec) + " l=" + std::to_string(l) +
                              " (commutator_length, filler_norm):";
            for (uint32_t e : derived_subgroup(g)) {
                CommutatorLength cl = commutator_length(g, e);
                REQUIRE(cl.in_derived);
                CHECK((cl.length == 0) == (e == id));
                FillerResult f = filler_norm(s, g, make_chain(g, 1, l, {{e, 1}}));
                CHECK(f.exact);
                CHECK(f.value >= 1);
                log += " (" + std::to_string(cl.length) + "," + std::to_string(f.value) + ")";
            }
            /* how the two quantities relate is left to the reader */
            MESSAGE(log);
        }
    }
}

TEST_CASE("filler distance is a metric on homologous cycles") {
    Session s;
    Group g = s.group("product:cyclic:2,cyclic:2");
    auto h = homology(s, g, 1, 2);
    REQUIRE(h->dim == 2);
    Chain z = h->reps[0];

    CHECK(filler_distance(s, g, z, z).value == 0);
    Chain ze = chain_add(z, make_chain(g, 1, 2, {{0, 1}})); /* shift by the boundary <e> */
    FillerResult d = filler_distance(s, g, z, ze);
    CHECK(d.value == 1);
    CHECK_THROWS_AS(filler_distance(s, g, z, zero_chain(1, 2)), PreconditionError);

    Rng rng(23);
    for (int i = 0; i < 15; ++i) {
        Chain z1 = z;
        Chain z2 = chain_add(z, boundary(g, random_chain(g, 2, 2, 1 + i % 2, rng)));
        Chain z3 = chain_add(z, boundary(g, random_chain(g, 2, 2, 1 + i % 3, rng)));
        uint64_t d12 = filler_distance(s, g, z1, z2).value;
        uint64_t d23 = filler_distance(s, g, z2, z3).value;
        uint64_t d13 = filler_distance(s, g, z1, z3).value;
        CHECK(d13 <= d12 + d23);
        CHECK(d12 == filler_distance(s, g, z2, z1).value);
    }
}

TEST_CASE("exhaustive isop agrees with the brute-force census") {
    struct Inst {
        const char* spec;
        uint32_t n, l, k_hi;
    };
    Inst insts[] = {{"cyclic:2", 1, 2, 3},
                    {"cyclic:3", 1, 3, 3},
                    {"cyclic:4", 1, 2, 4},
                    {"cyclic:2", 2, 2, 3},
                    {"product:cyclic:2,cyclic:2", 1, 2, 4}};
    for (const Inst& in : insts) {
        Session s;
        Group g = s.group(in.spec);
        DenseSpan B = boundary_span(g, in.n, in.l);
        for (uint32_t K = 1; K <= in.k_hi; ++K) {
            CAPTURE(in.spec);
            CAPTURE(in.n);
            CAPTURE(in.l);
            CAPTURE(K);
            IsopResult r = isop(s, g, in.n, in.l, K, "exhaustive", 0);
            BruteIsop want = brute_isop(g, in.n, in.l, K, B);
            CHECK(r.value == want.value);
            CHECK(r.boundaries == want.boundaries);
            CHECK(r.exact);
            CHECK(r.mode == "exhaustive");
            CHECK(r.K == K);
        }
    }
}

TEST_CASE("frozen isop tables for the smallest groups") {
    Session s;

    Group c2 = s.group("cyclic:2");
    IsopResult a0 = isop(s, c2, 1, 2, 0, "exhaustive", 0);
    CHECK(a0.value == 0);
    CHECK(a0.boundaries == 1); /* the zero boundary */
    CHECK(a0.exact);
    IsopResult a1 = isop(s, c2, 1, 2, 1, "exhaustive", 0);
    CHECK(a1.value == 1);
    CHECK(a1.boundaries == 1);
    IsopResult a2 = isop(s, c2, 1, 2, 2, "exhaustive", 0);
    CHECK(a2.value == 0); /* no boundary has size 2 */
    CHECK(a2.boundaries == 0);
    CHECK(a2.exact);
    IsopResult a3 = isop(s, c2, 1, 2, 3, "exhaustive", 0);
    CHECK(a3.value == 0); /* size exceeds the chain space */
    CHECK(a3.boundaries == 0);
    CHECK(a3.exact);

    Group c3 = s.group("cyclic:3");
    uint64_t want_v[] = {0, 1, 1, 2};
    uint64_t want_b[] = {1, 2, 2, 4};
    for (uint32_t K = 0; K <= 3; ++K) {
        IsopResult r = isop(s, c3, 1, 3, K, "exhaustive", 0);
        CAPTURE(K);
        CHECK(r.value == want_v[K]);
        CHECK(r.boundaries == want_b[K]);
        CHECK(r.exact);
    }

    Group k4 = s.group("product:cyclic:2,cyclic:2");
    CHECK(isop(s, k4, 1, 2, 1, "exhaustive", 0).value == 1);
    CHECK(isop(s, k4, 1, 2, 2, "exhaustive", 0).value == 0);
    CHECK(isop(s, k4, 1, 2, 3, "exhaustive", 0).value == 1);
    IsopResult k4v = isop(s, k4, 1, 2, 4, "exhaustive", 0);
    CHECK(k4v.value == 2);
    CHECK(k4v.boundaries == 1);
}

TEST_CASE("isop profiles carry the running max recipe") {
    Session s;

    IsopProfile z = isop_profile(s, s.group("cyclic:2"), 1, 2, 0, "exhaustive", 0);
    REQUIRE(z.values.size() == 1);
    CHECK(z.values[0].value == 0);
    CHECK(z.k1 == std::vector<uint64_t>{0});

    IsopProfile p = isop_profile(s, s.group("cyclic:2"), 1, 2, 2, "exhaustive", 0);
    REQUIRE(p.values.size() == 3);
    CHECK(p.values[0].value == 0);
    CHECK(p.values[1].value == 1);
    CHECK(p.values[2].value == 0);
    CHECK(p.k1 == std::vector<uint64_t>{0, 1});

    IsopProfile q = isop_profile(s, s.group("cyclic:4"), 1, 2, 4, "exhaustive", 0);
    REQUIRE(q.values.size() == 5);
    uint64_t want[] = {0, 1, 2, 1, 2};
    for (uint32_t K = 0; K <= 4; ++K) CHECK(q.values[K].value == want[K]);
    CHECK(q.k1 == std::vector<uint64_t>{0, 2, 2});

    IsopProfile r = isop_profile(s, s.group("cyclic:3"), 1, 3, 3, "exhaustive", 0);
    REQUIRE(r.values.size() == 4);
    CHECK(r.values[3].value == 2);
    CHECK(r.k1 == std::vector<uint64_t>{0, 1});
}

TEST_CASE("the census cap gates exhaustive isop but not sampling") {
    RunConfig cfg;
    cfg.census_cap = 10;
    Session s(cfg);
    Group g = s.group("cyclic:3");
    CHECK(isop(s, g, 1, 3, 1, "exhaustive", 0).value == 1); /* census 6 fits */
    CHECK_THROWS_AS(isop(s, g, 1, 3, 2, "exhaustive", 0), RefusedError); /* census 12 */
    CHECK_THROWS_AS(check_phi(s, g, 1, 3, 2, 2, 2), RefusedError);
    CHECK_THROWS_AS(check_psi(s, g, 1, 3, 2, 2, 3), RefusedError); /* cumulative 18 */
    CHECK_THROWS_AS(cycle_class_count(s, g, 1, 3, 2), RefusedError);
    CHECK(cycle_class_count(s, g, 1, 3, 1) == 3);
    IsopResult r = isop(s, g, 1, 3, 2, "sampled", 30);
    CHECK(r.mode == "sampled");
    CHECK(!r.exact);
}

TEST_CASE("sampling is seeded, reports a lower bound and never claims exactness") {
    RunConfig cfg;
    Session s1(cfg), s2(cfg);
    Group g1 = s1.group("cyclic:3");
    Group g2 = s2.group("cyclic:3");
    IsopResult r1 = isop(s1, g1, 1, 3, 2, "sampled", 60);
    IsopResult r2 = isop(s2, g2, 1, 3, 2, "sampled", 60);
    CHECK(r1.value == r2.value);
    CHECK(r1.boundaries == r2.boundaries);
    CHECK(r1.value <= 1); /* exhaustive value at K=2 */
    CHECK(!r1.exact);

    cfg.seed = 99;
    Session s3(cfg);
    IsopResult r3 = isop(s3, s3.group("cyclic:3"), 1, 3, 2, "sampled", 60);
    CHECK(r3.value <= 1);

    IsopResult big = isop(s1, g1, 1, 3, 7, "sampled", 10);
    CHECK(big.value == 0); /* size exceeds the chain space */
    CHECK(big.boundaries == 0);
    CHECK(!big.exact);

    CHECK_THROWS_AS(isop(s1, g1, 1, 3, 1, "montecarlo", 5), ParseError);
}

TEST_CASE("frozen sentence checks on the order-2 group") {
    Session s;
    Group g = s.group("cyclic:2");

    PhiResult t = check_phi(s, g, 1, 2, 1, 1, 1);
    CHECK(t.holds);
    CHECK(t.boundaries == 1);

    PhiResult f = check_phi(s, g, 1, 2, 1, 1, 0);
    CHECK(!f.holds);
    CHECK(f.counterexample == "<0>");

    /* <e> has fillers of weight 1 but none of weight exactly 2, so the
     * hypothesis class at K1=2 is empty */
    CHECK(check_phi(s, g, 1, 2, 1, 2, 0).holds);
    /* the lone weight-4 2-chain bounds 0, so K1=4 is empty as well */
    CHECK(check_phi(s, g, 1, 2, 1, 4, 1).holds);

    PhiResult zero = check_phi(s, g, 1, 2, 0, 1, 0);
    CHECK(zero.holds);
    CHECK(zero.boundaries == 1);

    PhiResult none = check_phi(s, g, 1, 2, 2, 1, 0);
    CHECK(none.holds);
    CHECK(none.boundaries == 0);

    PsiResult p = check_psi(s, g, 1, 2, 1, 1, 2);
    CHECK(p.holds);
    CHECK(p.classes == 2);
    CHECK(p.cycles == 3);
    CHECK(!check_psi(s, g, 1, 2, 1, 1, 1).holds); /* two classes, bound one */
    CHECK(!check_psi(s, g, 1, 2, 1, 1, 0).holds);
    CHECK(!check_psi(s, g, 1, 2, 1, 0, 2).holds); /* <e> sits at distance 1 */
    CHECK(check_psi(s, g, 1, 2, 1, 1, 5).holds);

    PsiResult z = check_psi(s, g, 1, 2, 0, 0, 1);
    CHECK(z.holds);
    CHECK(z.classes == 1);
    CHECK(z.cycles == 1);
    CHECK(!check_psi(s, g, 1, 2, 0, 0, 0).holds);
}

TEST_CASE("frozen sentence checks on cyclic:3 and cyclic:4") {
    Session s;

    Group c3 = s.group("cyclic:3");
    PhiResult f = check_phi(s, c3, 1, 3, 3, 2, 1);
    CHECK(!f.holds);
    CHECK(f.counterexample == "<0> + <1> + <2>");
    CHECK(check_phi(s, c3, 1, 3, 3, 3, 2).holds);
    CHECK(check_phi(s, c3, 1, 3, 3, 1, 1).holds); /* the hard boundaries miss K1 */

    PsiResult p = check_psi(s, c3, 1, 3, 3, 2, 3);
    CHECK(p.holds);
    CHECK(p.classes == 3);
    CHECK(p.cycles == 27);
    CHECK(!check_psi(s, c3, 1, 3, 3, 1, 3).holds);
    CHECK(check_psi(s, c3, 1, 3, 2, 2, 3).cycles == 19);

    Group c4 = s.group("cyclic:4");
    PhiResult g = check_phi(s, c4, 1, 2, 2, 2, 1);
    CHECK(!g.holds);
    CHECK(g.counterexample == "<0> + <2>");
    CHECK(check_phi(s, c4, 1, 2, 2, 1, 1).holds);
    CHECK(check_phi(s, c4, 1, 2, 2, 2, 2).holds);
}

TEST_CASE("frozen sentence checks on the Klein four-group") {
    Session s;
    Group g = s.group("product:cyclic:2,cyclic:2");

    CHECK(cycle_class_count(s, g, 1, 2, 1) == 4);
    PsiResult p1 = check_psi(s, g, 1, 2, 1, 1, 4);
    CHECK(p1.holds);
    CHECK(p1.cycles == 5);
    CHECK(!check_psi(s, g, 1, 2, 1, 1, 3).holds);

    PsiResult p2 = check_psi(s, g, 1, 2, 2, 2, 4);
    CHECK(p2.holds);
    CHECK(p2.classes == 4);
    CHECK(p2.cycles == 11);
    CHECK(!check_psi(s, g, 1, 2, 2, 1, 4).holds); /* a pair sits at distance 2 */
}

TEST_CASE("the sentences follow the running-max recipe on small groups") {
    Session s;
    for (const char* spec : {"cyclic:2", "cyclic:3", "product:cyclic:2,cyclic:2"}) {
        Group g = s.group(spec);
        uint32_t l = std::string(spec) == "cyclic:3" ? 3 : 2;
        for (uint32_t K = 1; K <= 2; ++K) {
            CAPTURE(spec);
            CAPTURE(K);
            uint64_t k1 = 0;
            for (uint32_t j = 1; j <= 2 * K; ++j)
                k1 = std::max(k1, isop(s, g, 1, l, j, "exhaustive", 0).value);
            uint64_t classes = cycle_class_count(s, g, 1, l, K);
            PhiResult phi = check_phi(s, g, 1, l, K, static_cast<uint32_t>(k1),
                                      static_cast<uint32_t>(k1));
            CHECK(phi.holds);
            PsiResult psi = check_psi(s, g, 1, l, K, static_cast<uint32_t>(k1), classes);
            CHECK(psi.holds);
            CHECK(psi.classes == classes);
        }
    }
}

TEST_CASE("a starved node budget refuses instead of guessing") {
    RunConfig cfg;
    cfg.node_budget = 0;
    Session s(cfg);

    /* a weight-1 elimination filler is provably minimal, so this still
     * decides without any search */
    Group c2 = s.group("cyclic:2");
    PhiResult still = check_phi(s, c2, 1, 2, 1, 1, 0);
    CHECK(!still.holds);
    CHECK(still.counterexample == "<0>");

    /* here the norm sits below the elimination filler only if a search
     * runs, and no budget means no search */
    Group c3 = s.group("cyclic:3");
    CHECK_THROWS_AS(check_phi(s, c3, 1, 3, 3, 2, 1), RefusedError);
    CHECK_THROWS_AS(check_psi(s, c3, 1, 3, 3, 2, 3), RefusedError);

    /* the filler itself stays honest: inexact, flagged, witness intact */
    Chain b = make_chain(c3, 1, 3, {{0, 1}, {1, 1}, {2, 1}});
    FillerResult f = filler_norm(s, c3, b);
    CHECK(!f.exact);
    CHECK(f.budget_hit);
    CHECK(boundary(c3, f.witness) == b);
    CHECK(f.value == f.witness.weight());
    CHECK(f.value >= 2);
}

TEST_CASE("threaded scans return the single-thread answer") {
    RunConfig cfg;
    cfg.threads = 2;
    Session s2(cfg);
    Session s1;

    Group a1 = s1.group("cyclic:3");
    Group a2 = s2.group("cyclic:3");
    for (uint32_t K = 1; K <= 3; ++K) {
        IsopResult r1 = isop(s1, a1, 1, 3, K, "exhaustive", 0);
        IsopResult r2 = isop(s2, a2, 1, 3, K, "exhaustive", 0);
        CHECK(r1.value == r2.value);
        CHECK(r1.boundaries == r2.boundaries);
        CHECK(r1.exact == r2.exact);
    }

    Group b1 = s1.group("product:cyclic:2,cyclic:2");
    Group b2 = s2.group("product:cyclic:2,cyclic:2");
    for (uint32_t K = 1; K <= 4; ++K) {
        CHECK(isop(s1, b1, 1, 2, K, "exhaustive", 0).value ==
              isop(s2, b2, 1, 2, K, "exhaustive", 0).value);
    }
}

TEST_CASE("checkpoints resume a size census without changing its answer") {
    RunConfig cfg;
    cfg.checkpoint_path = CK_PATH;
    std::remove(CK_PATH);

    IsopResult full;
    {
        Session s(cfg);
        full = isop(s, s.group("cyclic:3"), 1, 3, 3, "exhaustive", 0);
        CHECK(full.value == 2);
        CHECK(full.boundaries == 4);
        CHECK(full.exact);
        CHECK(std::ifstream(CK_PATH).good()); /* final state persisted */
    }

    { /* resuming a finished run returns the saved totals */
        Session s(cfg);
        IsopResult again = isop(s, s.group("cyclic:3"), 1, 3, 3, "exhaustive", 0);
        CHECK(again.value == full.value);
        CHECK(again.boundaries == full.boundaries);
        CHECK(again.exact == full.exact);
        CHECK(again.nodes == full.nodes);
    }

    { /* an honest mid-scan state: 4 of the 8 coefficient patterns done,
       * two boundaries seen, max filler weight 2 so far */
        std::ofstream out(CK_PATH);
        out << R"({"key":"cyclic:3#1#3#K3","weight":3,"done":4,)"
            << R"("value":2,"exact":true,"nodes":0,"boundaries":2})";
        out.close();
        Session s(cfg);
        IsopResult resumed = isop(s, s.group("cyclic:3"), 1, 3, 3, "exhaustive", 0);
        CHECK(resumed.value == 2);
        CHECK(resumed.boundaries == 4);
        CHECK(resumed.exact);
    }

    { /* a checkpoint for a different instance is ignored */
        std::ofstream out(CK_PATH);
        out << R"({"key":"cyclic:3#1#3#K2","weight":2,"done":1,)"
            << R"("value":7,"exact":true,"nodes":0,"boundaries":9})";
        out.close();
        Session s(cfg);
        IsopResult fresh = isop(s, s.group("cyclic:3"), 1, 3, 3, "exhaustive", 0);
        CHECK(fresh.value == full.value);
        CHECK(fresh.boundaries == full.boundaries);
    }

    { /* unreadable state restarts from scratch */
        std::ofstream out(CK_PATH);
        out << "not a checkpoint";
        out.close();
        Session s(cfg);
        IsopResult fresh = isop(s, s.group("cyclic:3"), 1, 3, 3, "exhaustive", 0);
        CHECK(fresh.value == full.value);
        CHECK(fresh.boundaries == full.boundaries);
    }

    std::remove(CK_PATH);
}
