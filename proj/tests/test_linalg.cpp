#include <mzv/linalg.hpp>

#include <algorithm>
#include <random>

#include "doctest.h"

using namespace mzv;

TEST_CASE("rank of identity and zero matrices") {
    QMatrix id(3, 3);
    for (int i = 0; i < 3; ++i) id.set(i, i, Q(1));
    CHECK(rank(id) == 3);
    QMatrix zero(4, 7);
    CHECK(rank(zero) == 0);
}

static QMatrix m_for_n11() {
    // 5x5 depth-2 stuffle matrix for weight 11.
    const int vals[5][5] = {{1, 0, 0, 0, -2},
                            {-2, 1, 0, 0, 9},
                            {0, -3, 1, 2, -16},
                            {0, 2, -4, -6, 14},
                            {0, 0, 3, 4, -5}};
    QMatrix m(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) m.set(i, j, Q(vals[i][j]));
    return m;
}

TEST_CASE("weight-11 system matrix has full rank and the closed-form solution") {
    QMatrix m = m_for_n11();
    CHECK(rank(m) == 5);
    auto x = solve(m, std::vector<Q>(5, Q(-1)));
    REQUIRE(x.has_value());
    // a_i = (-1)^i/2 * C(10-i, i+1)
    for (int i = 0; i < 5; ++i) {
        Q expect = Q(binom(10 - i, i + 1)) / 2;
        if (i % 2 == 1) expect = -expect;
        CHECK((*x)[i] == expect);
    }
}

TEST_CASE("nullspace basics") {
    QMatrix id(2, 2);
    id.set(0, 0, Q(1));
    id.set(1, 1, Q(1));
    CHECK(nullspace(id).empty());

    QMatrix row(1, 2);
    row.set(0, 0, Q(1));
    row.set(0, 1, Q(1));
    auto ker = nullspace(row);
    REQUIRE(ker.size() == 1);
    CHECK(ker[0][0] == -ker[0][1]);
    CHECK(ker[0][0] != 0);
}

TEST_CASE("solve flags inconsistency") {
    QMatrix z(1, 1);
    CHECK(!solve(z, {Q(1)}).has_value());
    QMatrix id(2, 2);
    id.set(0, 0, Q(1));
    id.set(1, 1, Q(1));
    auto x = solve(id, {Q(3), Q(-7)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 3);
    CHECK((*x)[1] == -7);
}

TEST_CASE("rank + nullity = cols, kernel vectors annihilate, row ops invariant") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 20; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 6);
        int cols = 1 + static_cast<int>(rng() % 6);
        QMatrix m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                if (rng() % 2) m.set(r, c, Q(static_cast<int>(rng() % 7) - 3));
        int rk = rank(m);
        auto ker = nullspace(m);
        CHECK(rk + static_cast<int>(ker.size()) == cols);
        for (const auto& v : ker)
            for (int r = 0; r < rows; ++r) {
                Q dot = 0;
                for (const auto& [c, val] : m.data[r]) dot += val * v[c];
                CHECK(dot == 0);
            }
        // Random row scaling and swaps preserve rank.
        QMatrix m2 = m;
        for (int r = 0; r < rows; ++r) {
            Q scale(static_cast<int>(rng() % 5) + 1);
            for (auto& [c, val] : m2.data[r]) val *= scale;
        }
        std::shuffle(m2.data.begin(), m2.data.end(), rng);
        CHECK(rank(m2) == rk);
    }
}

TEST_CASE("RowReducer span membership and coordinates") {
    RowReducer red(true);
    CHECK(red.add({{0, Q(1)}, {2, Q(2)}}));
    CHECK(red.add({{1, Q(3)}}));
    CHECK(!red.add({{0, Q(2)}, {1, Q(3)}, {2, Q(4)}}));  // 2*r0 + r1
    CHECK(red.rank() == 2);
    std::map<int, Q> coords;
    SparseVec resid = red.reduce({{0, Q(2)}, {1, Q(3)}, {2, Q(4)}}, &coords);
    CHECK(resid.empty());
    CHECK(coords[0] == 2);
    CHECK(coords[1] == 1);
    CHECK(!red.contains({{2, Q(1)}}));
}
