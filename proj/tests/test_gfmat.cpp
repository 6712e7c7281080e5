#include "doctest.h"

#include <random>
#include <sstream>

#include "barfill/chain.hpp"
#include "barfill/config.hpp"
#include "barfill/gfmat.hpp"
#include "barfill/group.hpp"

using namespace barfill;

namespace {

const RunConfig& cfg() {
    static RunConfig c;
    return c;
}

Group G(const std::string& spec) { return build_group(spec, cfg()); }

/* textbook dense row reduction, the independent rank oracle */
uint64_t dense_rank(std::vector<std::vector<uint32_t>> a, uint32_t l) {
    if (a.empty()) return 0;
    size_t rows = a.size(), cols = a[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        uint32_t inv = gf_inv(a[r][c], l);
        for (size_t j = 0; j < cols; ++j) a[r][j] = static_cast<uint32_t>((uint64_t(a[r][j]) * inv) % l);
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

std::vector<std::vector<uint32_t>> to_dense(const SparseMatrix& m) {
    std::vector<std::vector<uint32_t>> a(m.rows, std::vector<uint32_t>(m.cols, 0));
    for (uint64_t j = 0; j < m.cols; ++j)
        for (uint64_t k = m.col_ptr[j]; k < m.col_ptr[j + 1]; ++k) a[m.row_idx[k]][j] = m.val[k];
    return a;
}

SparseMatrix random_matrix(std::mt19937_64& rng, uint64_t rows, uint64_t cols, uint32_t l,
                           double density) {
    std::vector<std::vector<uint32_t>> a(rows, std::vector<uint32_t>(cols, 0));
    std::uniform_real_distribution<double> u(0, 1);
    for (uint64_t i = 0; i < rows; ++i)
        for (uint64_t j = 0; j < cols; ++j)
            if (u(rng) < density) a[i][j] = 1 + rng() % (l - 1);
    SparseMatrix m;
    m.l = l;
    m.rows = rows;
    m.cols = cols;
    m.col_ptr.assign(cols + 1, 0);
    for (uint64_t j = 0; j < cols; ++j) {
        for (uint64_t i = 0; i < rows; ++i)
            if (a[i][j]) {
                m.row_idx.push_back(i);
                m.val.push_back(a[i][j]);
            }
        m.col_ptr[j + 1] = m.row_idx.size();
    }
    return m;
}

} // namespace

TEST_CASE("boundary matrix frozen shapes") {
    Group g = G("cyclic:2");
    SparseMatrix d1 = boundary_matrix(g, 1, 2, cfg());
    CHECK(d1.rows == 1);
    CHECK(d1.cols == 2);
    CHECK(d1.nnz() == 0); /* the degree-1 differential vanishes */

    SparseMatrix d2 = boundary_matrix(g, 2, 2, cfg());
    CHECK(d2.rows == 2);
    CHECK(d2.cols == 4);
    /* every column reduces to the unit vector at <e> */
    for (uint64_t j = 0; j < 4; ++j) {
        SparseVec c = d2.column(j);
        REQUIRE(c.nnz() == 1);
        CHECK(c.e[0] == std::pair<uint64_t, uint32_t>{0, 1});
    }
    CHECK(rank(d2) == 1);
    CHECK(nullspace_basis(d2).size() == 3);
}

TEST_CASE("matrix and chain boundary agree") {
    Rng rng(31);
    for (const char* s : {"cyclic:3", "sym:3", "dihedral:8"}) {
        Group g = G(s);
        for (uint32_t l : {2u, 3u}) {
            SparseMatrix d2 = boundary_matrix(g, 2, l, cfg());
            for (int i = 0; i < 25; ++i) {
                Chain c = random_chain(g, 2, l, 4, rng);
                CHECK(mat_vec(d2, chain_to_vec(c)) == chain_to_vec(boundary(g, c)));
            }
        }
    }
}

TEST_CASE("rank agrees with the dense oracle") {
    std::mt19937_64 rng(101);
    for (uint32_t l : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 30; ++trial) {
            uint64_t rows = 1 + rng() % 8, cols = 1 + rng() % 8;
            SparseMatrix m = random_matrix(rng, rows, cols, l, 0.4);
            CHECK(rank(m) == dense_rank(to_dense(m), l));
        }
    }
}

TEST_CASE("solve returns a verified solution or nullopt") {
    std::mt19937_64 rng(202);
    int solved = 0, unsolved = 0;
    for (uint32_t l : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 40; ++trial) {
            uint64_t rows = 1 + rng() % 8, cols = 1 + rng() % 8;
            SparseMatrix m = random_matrix(rng, rows, cols, l, 0.4);
            /* half the time aim for a reachable b */
            SparseVec b;
            if (trial % 2 == 0) {
                SparseVec x0;
                for (uint64_t j = 0; j < cols; ++j)
                    if (rng() % 2) x0.e.emplace_back(j, 1 + rng() % (l - 1));
                b = mat_vec(m, x0);
            } else {
                for (uint64_t i = 0; i < rows; ++i)
                    if (rng() % 3 == 0) b.e.emplace_back(i, 1 + rng() % (l - 1));
            }
            auto x = solve(m, b);
            if (x) {
                CHECK(mat_vec(m, *x) == b);
                ++solved;
            } else {
                /* appending b must raise the rank, so b is outside the span */
                SparseMatrix ext = m;
                ext.cols += 1;
                for (auto& [i, v] : b.e) {
                    ext.row_idx.push_back(i);
                    ext.val.push_back(v);
                }
                ext.col_ptr.push_back(ext.row_idx.size());
                CHECK(rank(ext) == rank(m) + 1);
                ++unsolved;
            }
        }
    }
    CHECK(solved > 20);
    CHECK(unsolved > 5);
}

TEST_CASE("nullspace vectors multiply to zero and count matches rank") {
    std::mt19937_64 rng(303);
    for (uint32_t l : {2u, 3u}) {
        for (int trial = 0; trial < 20; ++trial) {
            uint64_t rows = 1 + rng() % 7, cols = 1 + rng() % 7;
            SparseMatrix m = random_matrix(rng, rows, cols, l, 0.4);
            auto basis = nullspace_basis(m);
            CHECK(basis.size() == m.cols - rank(m));
            for (const SparseVec& nu : basis) CHECK(mat_vec(m, nu).empty());
            /* basis vectors are linearly independent */
            GFEchelon e(l, m.cols);
            for (const SparseVec& nu : basis) CHECK(e.insert(nu) != UINT32_MAX);
        }
    }
}

TEST_CASE("echelon coset keys are canonical") {
    std::mt19937_64 rng(404);
    uint32_t l = 3;
    SparseMatrix m = random_matrix(rng, 10, 6, l, 0.4);
    GFEchelon e(l, 10, 0, true);
    for (uint64_t j = 0; j < m.cols; ++j) e.insert(m.column(j), j);

    for (int trial = 0; trial < 50; ++trial) {
        SparseVec v;
        for (uint64_t i = 0; i < 10; ++i)
            if (rng() % 3 == 0) v.e.emplace_back(i, 1 + rng() % (l - 1));
        /* shifting by a span element never changes the key */
        SparseVec x0;
        for (uint64_t j = 0; j < m.cols; ++j)
            if (rng() % 2) x0.e.emplace_back(j, 1 + rng() % (l - 1));
        SparseVec shifted = vec_combine(v, mat_vec(m, x0), 1, l);
        CHECK(e.reduce(v).residual == e.reduce(shifted).residual);
        /* a vector is in the span exactly when its key is empty */
        if (e.reduce(v).residual.empty()) {
            auto coeffs = e.express(v);
            REQUIRE(coeffs.has_value());
            SparseVec back;
            for (auto& [j, c] : *coeffs) back = vec_combine(back, m.column(j), c, l);
            CHECK(back == v);
        }
    }
}

TEST_CASE("echelon aux tails recover coordinates") {
    uint32_t l = 5;
    GFEchelon e(l, 6, 2);
    SparseVec v1, v2;
    v1.e = {{0, 2}, {3, 1}};
    v2.e = {{1, 1}, {3, 4}, {5, 2}};
    std::vector<uint32_t> a1 = {1, 0}, a2 = {0, 1};
    REQUIRE(e.insert(v1, UINT64_MAX, &a1) != UINT32_MAX);
    REQUIRE(e.insert(v2, UINT64_MAX, &a2) != UINT32_MAX);

    std::mt19937_64 rng(505);
    for (int trial = 0; trial < 20; ++trial) {
        uint32_t c1 = rng() % l, c2 = rng() % l;
        SparseVec v = vec_combine(vec_combine(SparseVec{}, v1, c1, l), v2, c2, l);
        auto r = e.reduce(v);
        CHECK(r.residual.empty());
        CHECK((l - r.aux[0]) % l == c1);
        CHECK((l - r.aux[1]) % l == c2);
    }
}

TEST_CASE("dependent null vector re-multiplies to zero") {
    std::mt19937_64 rng(606);
    uint32_t l = 2;
    SparseMatrix m = random_matrix(rng, 6, 8, l, 0.5);
    GFEchelon e(l, 6, 0, true);
    int deps = 0;
    for (uint64_t j = 0; j < m.cols; ++j) {
        auto r = e.reduce(m.column(j));
        if (r.residual.empty()) {
            auto nu = e.dependent_null_vector(r, j);
            SparseVec prod;
            for (auto& [col, c] : nu) prod = vec_combine(prod, m.column(col), c, l);
            CHECK(prod.empty());
            ++deps;
        } else {
            e.insert_reduced(std::move(r), j);
        }
    }
    CHECK(deps == static_cast<int>(m.cols - rank(m)));
}

TEST_CASE("markowitz order sorts by nnz then index") {
    std::mt19937_64 rng(707);
    SparseMatrix m = random_matrix(rng, 6, 6, 2, 0.5);
    auto ord = markowitz_order(m);
    for (size_t k = 1; k < ord.size(); ++k) {
        uint64_t pa = m.col_ptr[ord[k - 1] + 1] - m.col_ptr[ord[k - 1]];
        uint64_t pb = m.col_ptr[ord[k] + 1] - m.col_ptr[ord[k]];
        CHECK((pa < pb || (pa == pb && ord[k - 1] < ord[k])));
    }
}

TEST_CASE("transpose is an involution") {
    std::mt19937_64 rng(808);
    SparseMatrix m = random_matrix(rng, 7, 5, 3, 0.4);
    SparseMatrix tt = transpose(transpose(m));
    CHECK(tt.rows == m.rows);
    CHECK(tt.cols == m.cols);
    CHECK(tt.col_ptr == m.col_ptr);
    CHECK(tt.row_idx == m.row_idx);
    CHECK(tt.val == m.val);
}

TEST_CASE("matrix market dump") {
    Group g = G("cyclic:2");
    SparseMatrix d2 = boundary_matrix(g, 2, 2, cfg());
    std::ostringstream os;
    write_matrix_market(d2, os);
    std::string s = os.str();
    CHECK(s.find("%%MatrixMarket matrix coordinate integer general") == 0);
    CHECK(s.find("% modulus 2") != std::string::npos);
    CHECK(s.find("2 4 4") != std::string::npos); /* rows cols nnz */
    CHECK(s.find("1 1 1") != std::string::npos); /* 1-based entries */
}

TEST_CASE("boundary matrix caps refuse honestly") {
    RunConfig tiny;
    tiny.dim_cap = 10;
    Group g = G("cyclic:4");
    CHECK_THROWS_AS(boundary_matrix(g, 2, 2, tiny), RefusedError);
    RunConfig tinynnz;
    tinynnz.nnz_cap = 3;
    CHECK_THROWS_AS(boundary_matrix(g, 2, 2, tinynnz), RefusedError);
}

TEST_CASE("gf helpers") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(65521));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(4));
    CHECK_FALSE(is_prime(65535));
    for (uint32_t l : {2u, 3u, 5u, 7u, 11u})
        for (uint32_t a = 1; a < l; ++a) CHECK((uint64_t(a) * gf_inv(a, l)) % l == 1);
}
