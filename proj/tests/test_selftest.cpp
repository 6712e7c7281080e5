#include <doctest.h>

#include "barfill/config.hpp"
#include "barfill/selftest.hpp"

using namespace barfill;

namespace {

const SuiteResult& row(const std::vector<SuiteResult>& rows, const std::string& name) {
    for (const SuiteResult& r : rows)
        if (r.name == name)
            return r;
    FAIL("no suite named " << name);
    static SuiteResult dummy;
    return dummy;
}

} // namespace

TEST_CASE("the battery passes end to end and its report is reproducible") {
    std::vector<SuiteResult> first = run_selftest(1, "all");
    std::vector<SuiteResult> second = run_selftest(1, "all");
    REQUIRE(first.size() == selftest_suites().size());
    for (const SuiteResult& r : first) {
        CAPTURE(r.name);
        for (const std::string& note : r.notes)
            CAPTURE(note);
        CHECK(r.pass);
        CHECK(r.failures == 0);
    }
    std::string a = selftest_json(1, first);
    std::string b = selftest_json(1, second);
    CHECK(a == b);
    CHECK(a.find("\"all_pass\": true") != std::string::npos);
    CHECK(a.find("\"name\": \"ddzero\"") != std::string::npos);

    SUBCASE("suite order and check counts are frozen") {
        std::vector<std::string> names;
        for (const SuiteResult& r : first)
            names.push_back(r.name);
        CHECK(names == std::vector<std::string>{"ddzero", "homology", "filler", "isop",
                                                "sentences", "torus", "metric", "family"});
        CHECK(row(first, "ddzero").checks == 10080);
        CHECK(row(first, "homology").checks == 58);
        CHECK(row(first, "filler").checks >= 500);
        CHECK(row(first, "isop").checks == 4);
        CHECK(row(first, "torus").checks == 8);
        CHECK(row(first, "metric").checks == 400);
        CHECK(row(first, "family").checks == 101);
        for (const SuiteResult& r : first)
            if (r.name != "sentences")
                CHECK(r.skips == 0);
    }

    SUBCASE("the sentence suite skips census overruns and says so") {
        const SuiteResult& sen = row(first, "sentences");
        CHECK(sen.checks == 2 + 64 - sen.skips);
        CHECK(sen.skips == 8);
        bool names_gl = false;
        for (const std::string& note : sen.notes)
            names_gl = names_gl || note.find("gl:2:3 l=3") != std::string::npos;
        CHECK(names_gl);
    }
}

TEST_CASE("single suites run alone and unknown names are parse errors") {
    std::vector<SuiteResult> only = run_selftest(2, "isop");
    REQUIRE(only.size() == 1);
    CHECK(only[0].name == "isop");
    CHECK(only[0].pass);
    CHECK_THROWS_AS(run_selftest(1, "bogus"), ParseError);
    CHECK_THROWS_AS(run_selftest(1, "ISOP"), ParseError);
}

TEST_CASE("random suites pass for other seeds") {
    for (uint64_t seed : {7ull, 123456789ull}) {
        for (const char* name : {"metric", "family"}) {
            std::vector<SuiteResult> rows = run_selftest(seed, name);
            REQUIRE(rows.size() == 1);
            CAPTURE(seed);
            CAPTURE(name);
            for (const std::string& note : rows[0].notes)
                CAPTURE(note);
            CHECK(rows[0].pass);
        }
    }
}

TEST_CASE("suite reports serialize deterministically even when they fail") {
    SuiteResult bad;
    bad.name = "demo";
    bad.pass = false;
    bad.checks = 3;
    bad.failures = 1;
    bad.notes = {"FAIL quote \" and backslash \\ and tab \t end"};
    std::string text = selftest_json(9, {bad});
    CHECK(text.find("\"all_pass\": false") != std::string::npos);
    CHECK(text.find("\\\"") != std::string::npos);
    CHECK(text.find("\\\\") != std::string::npos);
    CHECK(text.find("\\t") != std::string::npos);
    CHECK(text == selftest_json(9, {bad}));
}
