#include "doctest.h"

#include <random>
#include <set>

#include "barfill/config.hpp"
#include "barfill/group.hpp"

using namespace barfill;

namespace {

const RunConfig& cfg() {
    static RunConfig c;
    return c;
}

Group G(const std::string& spec) { return build_group(spec, cfg()); }

/* group axioms on random triples */
void check_axioms(const Group& g, uint32_t samples = 200) {
    std::mt19937_64 rng(7);
    uint32_t n = g.order();
    uint32_t e = g.identity();
    for (uint32_t i = 0; i < samples; ++i) {
        uint32_t a = rng() % n, b = rng() % n, c = rng() % n;
        CHECK(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
        CHECK(g.mul(a, e) == a);
        CHECK(g.mul(e, a) == a);
        CHECK(g.mul(a, g.inv(a)) == e);
        CHECK(g.mul(g.inv(a), a) == e);
    }
}

} // namespace

TEST_CASE("frozen orders") {
    CHECK(G("cyclic:1").order() == 1);
    CHECK(G("cyclic:6").order() == 6);
    CHECK(G("sym:3").order() == 6);
    CHECK(G("sym:4").order() == 24);
    CHECK(G("dihedral:8").order() == 8);
    CHECK(G("dihedral:12").order() == 12);
    CHECK(G("gl:1:5").order() == 4);
    CHECK(G("gl:2:2").order() == 6);
    CHECK(G("gl:2:3").order() == 48);    /* (9-1)(9-3) */
    CHECK(G("gl:2:4").order() == 180);   /* (16-1)(16-4) */
    CHECK(G("sl:2:2").order() == 6);
    CHECK(G("sl:2:3").order() == 24);
    CHECK(G("torus:1:5").order() == 4);
    CHECK(G("torus:2:4").order() == 9);
    CHECK(G("torus:3:3").order() == 8);
    CHECK(G("product:cyclic:2,cyclic:3").order() == 6);
}

TEST_CASE("abelian flags") {
    CHECK(G("cyclic:12").abelian() == std::optional<bool>(true));
    CHECK(G("torus:2:4").abelian() == std::optional<bool>(true));
    CHECK(G("sym:3").abelian() == std::optional<bool>(false));
    CHECK(G("gl:2:3").abelian() == std::optional<bool>(false));
    CHECK(G("product:cyclic:2,cyclic:3").abelian() == std::optional<bool>(true));
    CHECK(G("product:cyclic:2,sym:3").abelian() == std::optional<bool>(false));
}

TEST_CASE("axioms across the registry") {
    for (const char* s : {"cyclic:6", "sym:3", "sym:4", "dihedral:8", "dihedral:10", "gl:2:2",
                          "gl:2:3", "sl:2:3", "torus:2:4", "torus:1:7",
                          "product:cyclic:4,dihedral:6"}) {
        CAPTURE(s);
        check_axioms(G(s));
    }
}

TEST_CASE("cyclic arithmetic is addition") {
    Group g = G("cyclic:6");
    for (uint32_t a = 0; a < 6; ++a)
        for (uint32_t b = 0; b < 6; ++b) CHECK(g.mul(a, b) == (a + b) % 6);
    CHECK(g.identity() == 0);
    CHECK(g.inv(2) == 4);
}

TEST_CASE("dihedral relations") {
    /* dihedral:2n, rotations r^k then reflections f r^k; r^n = f^2 = e, frf = r^-1 */
    Group g = G("dihedral:8");
    uint32_t r = 1;           /* rotation by one step */
    uint32_t f = 4;           /* the base reflection */
    uint32_t x = g.identity();
    for (int i = 0; i < 4; ++i) x = g.mul(x, r);
    CHECK(x == g.identity()); /* r^4 = e */
    CHECK(g.mul(f, f) == g.identity());
    CHECK(g.mul(g.mul(f, r), f) == g.inv(r));
}

TEST_CASE("sym composition and parity subgroup") {
    Group g = G("sym:3");
    /* identity permutation first in Lehmer order */
    CHECK(g.identity() == 0);
    check_axioms(g, 50);
    /* derived subgroup of S3 is A3 */
    CHECK(derived_subgroup(g).size() == 3);
    CHECK(derived_subgroup(G("sym:4")).size() == 12);
    CHECK(derived_subgroup(G("dihedral:8")).size() == 2);
    CHECK(derived_subgroup(G("cyclic:6")).size() == 1);
}

TEST_CASE("matrix groups expose codes and lookup") {
    Group g = G("gl:2:3");
    CHECK(g.is_matrix_group());
    CHECK(g.mat_dim() == 2);
    CHECK(g.field().q() == 3);
    CHECK_FALSE(G("sym:3").is_matrix_group());

    auto id = g.matrix_of(g.identity());
    CHECK(std::vector<uint16_t>(id.begin(), id.end()) == std::vector<uint16_t>{1, 0, 0, 1});

    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        uint32_t a = rng() % g.order();
        auto m = g.matrix_of(a);
        auto back = g.index_of_matrix(m);
        REQUIRE(back.has_value());
        CHECK(*back == a);
    }
    /* the zero matrix is not invertible, so lookup must miss */
    std::vector<uint16_t> zero(4, 0);
    CHECK_FALSE(g.index_of_matrix(zero).has_value());

    /* matrix product agrees with the table */
    const Fq& f = g.field();
    for (int i = 0; i < 50; ++i) {
        uint32_t a = rng() % g.order(), b = rng() % g.order();
        auto ma = g.matrix_of(a), mb = g.matrix_of(b);
        std::vector<uint16_t> prod(4);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                uint32_t s = 0;
                for (int k = 0; k < 2; ++k)
                    s = f.add(s, f.mul(ma[2 * r + k], mb[2 * k + c]));
                prod[2 * r + c] = static_cast<uint16_t>(s);
            }
        CHECK(g.index_of_matrix(prod) == std::optional<uint32_t>(g.mul(a, b)));
    }
}

TEST_CASE("sl determinant and torus diagonality") {
    Group sl = G("sl:2:3");
    const Fq& f = sl.field();
    for (uint32_t a = 0; a < sl.order(); ++a) {
        auto m = sl.matrix_of(a);
        uint32_t det = f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2]));
        CHECK(det == 1);
    }
    Group t = G("torus:2:4");
    for (uint32_t a = 0; a < t.order(); ++a) {
        auto m = t.matrix_of(a);
        CHECK(m[1] == 0);
        CHECK(m[2] == 0);
        CHECK(m[0] != 0);
        CHECK(m[3] != 0);
    }
}

TEST_CASE("diagonal subgroup embedding in gl") {
    Group g = G("gl:2:3");
    auto diag = g.diagonal_elements();
    CHECK(diag.size() == 4); /* (q-1)^2 */
    SubgroupEmbedding se = subgroup_embedding(g, diag, cfg());
    CHECK(se.subgroup.order() == 4);
    CHECK(se.subgroup.abelian() == std::optional<bool>(true));
    /* inclusion is an injective homomorphism */
    std::set<uint32_t> image;
    for (uint32_t a = 0; a < 4; ++a) image.insert(se.inclusion[a]);
    CHECK(image.size() == 4);
    for (uint32_t a = 0; a < 4; ++a)
        for (uint32_t b = 0; b < 4; ++b)
            CHECK(se.inclusion[se.subgroup.mul(a, b)] == g.mul(se.inclusion[a], se.inclusion[b]));

    /* a non-closed subset is rejected */
    std::vector<uint32_t> bad = {g.identity(), diag.back(), 1u + diag.back()};
    CHECK_THROWS_AS(subgroup_embedding(g, bad, cfg()), PreconditionError);
}

TEST_CASE("commutator length") {
    Group g = G("sym:4");
    auto d = derived_subgroup(g);
    CHECK(d.size() == 12);
    for (uint32_t x : d) {
        CommutatorLength cl = commutator_length(g, x);
        CHECK(cl.in_derived);
        /* every element of A4 is a single commutator */
        CHECK(cl.length <= 1);
        if (x != g.identity()) CHECK(cl.length == 1);
    }
    /* odd permutations are outside the derived subgroup */
    std::set<uint32_t> ds(d.begin(), d.end());
    uint32_t outside = 0;
    for (uint32_t x = 0; x < g.order(); ++x)
        if (!ds.count(x)) ++outside;
    CHECK(outside == 12);
    bool found_outside = false;
    for (uint32_t x = 0; x < g.order() && !found_outside; ++x)
        if (!ds.count(x)) {
            CHECK_FALSE(commutator_length(g, x).in_derived);
            found_outside = true;
        }
}

TEST_CASE("abelianization") {
    Abelianization ab = abelianization(G("sym:3"), cfg());
    CHECK(ab.quotient.order() == 2);
    Abelianization ab4 = abelianization(G("sym:4"), cfg());
    CHECK(ab4.quotient.order() == 2);
    Abelianization abg = abelianization(G("gl:2:3"), cfg());
    CHECK(abg.quotient.order() == 2); /* det: GL2(3) -> F3* */
    Abelianization abd = abelianization(G("dihedral:8"), cfg());
    CHECK(abd.quotient.order() == 4);
    Abelianization abc = abelianization(G("cyclic:6"), cfg());
    CHECK(abc.quotient.order() == 6);

    /* projection is a surjective homomorphism */
    Group g = G("dihedral:8");
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        uint32_t a = rng() % g.order(), b = rng() % g.order();
        CHECK(abd.projection[g.mul(a, b)] ==
              abd.quotient.mul(abd.projection[a], abd.projection[b]));
    }
    std::set<uint32_t> img(abd.projection.begin(), abd.projection.end());
    CHECK(img.size() == 4);
}

TEST_CASE("product structure") {
    Group g = G("product:cyclic:2,cyclic:3");
    CHECK(g.order() == 6);
    check_axioms(g, 50);
    /* element of order 6 exists, so the product is cyclic of order 6 */
    bool has6 = false;
    for (uint32_t a = 0; a < 6; ++a) {
        uint32_t x = a, k = 1;
        while (x != g.identity()) {
            x = g.mul(x, a);
            ++k;
        }
        if (k == 6) has6 = true;
    }
    CHECK(has6);
}

TEST_CASE("spec parsing errors") {
    CHECK_THROWS_AS(G("nonsense:3"), ParseError);
    CHECK_THROWS_AS(G("cyclic"), ParseError);
    CHECK_THROWS_AS(G("cyclic:"), ParseError);
    CHECK_THROWS_AS(G("cyclic:abc"), ParseError);
    CHECK_THROWS_AS(G("cyclic:6extra"), ParseError);
    CHECK_THROWS_AS(G("sym:0"), ParseError);
    CHECK_THROWS_AS(G("dihedral:7"), ParseError);
    CHECK_THROWS_AS(G("gl:2"), ParseError);
    CHECK_THROWS_AS(G("gl:2:6"), ParseError);  /* 6 is not a prime power */
    CHECK_THROWS_AS(G(""), ParseError);
    CHECK_THROWS_AS(G("CYCLIC:3"), ParseError);
}

TEST_CASE("order cap refusal") {
    CHECK_THROWS_AS(G("cyclic:30000"), RefusedError);
    CHECK_THROWS_AS(G("sym:9"), RefusedError);    /* 362880 > 20000 */
    CHECK_THROWS_AS(G("gl:3:5"), RefusedError);   /* order 372000 > cap, checked closed-form */
    RunConfig small;
    small.order_cap = 10;
    CHECK_THROWS_AS(build_group("cyclic:11", small), RefusedError);
    CHECK(build_group("cyclic:10", small).order() == 10);
}

TEST_CASE("spec strings are canonical") {
    CHECK(G("cyclic:6").spec() == "cyclic:6");
    CHECK(G("product:cyclic:2,cyclic:3").spec() == "product:cyclic:2,cyclic:3");
    CHECK(G("gl:2:3").spec() == "gl:2:3");
    Group a = G("cyclic:6"), b = G("cyclic:6");
    CHECK(a.same_group(b));
    CHECK_FALSE(a.same_group(G("cyclic:7")));
}
