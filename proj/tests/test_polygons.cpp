#include <mzv/linalg.hpp>
#include <mzv/polygons.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"

using namespace mzv;

namespace {

// Distinct small rationals for the given labels, seeded.
std::map<Label, Q> random_point(const std::vector<Label>& labels,
                                std::mt19937& rng) {
    std::map<Label, Q> vals;
    std::set<Q> used{Q(0), Q(1)};
    for (Label l : labels) {
        if (l == LBL_INF) continue;
        if (l == LBL_ZERO) {
            vals[l] = 0;
            continue;
        }
        if (l == LBL_ONE) {
            vals[l] = 1;
            continue;
        }
        Q v;
        do {
            long num = static_cast<long>(rng() % 201) - 100;
            long den = 1 + static_cast<long>(rng() % 9);
            v = Q(num, den);
            v.canonicalize();
        } while (!used.insert(v).second);
        vals[l] = v;
    }
    return vals;
}

std::vector<Label> random_cycle_with(const std::vector<Label>& labels,
                                     std::mt19937& rng) {
    std::vector<Label> seq = labels;
    std::shuffle(seq.begin(), seq.end(), rng);
    return seq;
}

}  // namespace

TEST_CASE("canonicalization is idempotent and satisfies the reversal law") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 3 + static_cast<int>(rng() % 6);
        std::vector<Label> labels(n);
        std::iota(labels.begin(), labels.end(), 1);
        auto seq = random_cycle_with(labels, rng);
        Canon c = canonical_cycle(seq);
        Canon cc = canonical_cycle(c.cycle);
        CHECK(cc.cycle == c.cycle);
        CHECK(cc.sign == 1);
        // Rotations give the same representative with sign +1.
        std::vector<Label> rot(seq.begin() + 1, seq.end());
        rot.push_back(seq.front());
        Canon cr = canonical_cycle(rot);
        CHECK(cr.cycle == c.cycle);
        CHECK(cr.sign == c.sign);
        // Reversal costs (-1)^n.
        std::vector<Label> rev(seq.rbegin(), seq.rend());
        Canon crev = canonical_cycle(rev);
        CHECK(crev.cycle == c.cycle);
        CHECK(crev.sign * c.sign == (n % 2 ? -1 : 1));
    }
}

TEST_CASE("polygon text round trip") {
    auto seq = parse_polygon("(0 t1 1 t3 inf)");
    CHECK(seq == std::vector<Label>{LBL_ZERO, tpt(1), LBL_ONE, tpt(3), LBL_INF});
    CHECK(polygon_to_string(seq) == "(0 t1 1 t3 inf)");
    auto form = parse_polygon("[0 1 t1 inf t2]");
    CHECK(form == std::vector<Label>{LBL_ZERO, LBL_ONE, tpt(1), LBL_INF, tpt(2)});
    CHECK(polygon_to_string(form, '[', ']') == "[0 1 t1 inf t2]");
    CHECK(parse_polygon("(#1 #2 d e f)") ==
          std::vector<Label>{1, 2, LBL_D, LBL_E, LBL_F});
}

TEST_CASE("cell-function evaluation examples") {
    std::mt19937 rng(7);
    auto g1 = parse_polygon("(t1 t3 0 1 t2 t4 inf)");
    auto g2 = parse_polygon("(0 t1 t2 1 inf)");
    for (int trial = 0; trial < 20; ++trial) {
        auto vals = random_point(marked_labels(4), rng);
        Q t1 = vals[tpt(1)], t2 = vals[tpt(2)], t3 = vals[tpt(3)],
          t4 = vals[tpt(4)];
        Q d1 = (t3 - t1) * (-t3) * (t2 - 1) * (t4 - t2);
        if (d1 != 0) CHECK(eval_cell(Cycle(g1), vals) == 1 / d1);
        Q d2 = t1 * (t2 - t1) * (1 - t2);
        if (d2 != 0) CHECK(eval_cell(Cycle(g2), vals) == 1 / d2);
        // Evaluation through the canonical representative is consistent.
        Canon c = canonical_cycle(g1);
        CHECK(eval_cell(c.cycle, vals) * c.sign == eval_cell(Cycle(g1), vals));
    }
    // No-infinity polygons use the full cyclic product.
    std::map<Label, Q> v{{1, Q(0)}, {2, Q(1)}, {3, Q(3)}};
    CHECK(eval_cell(Cycle{1, 2, 3}, v) == Q(1) / ((1 - 0) * (3 - 1) * (0 - 3)));
}

TEST_CASE("relabelling is equivariant under evaluation") {
    std::mt19937 rng(11);
    std::vector<Label> labels{1, 2, 3, 4, 5, 6};
    for (int trial = 0; trial < 30; ++trial) {
        PolySum p;
        for (int t = 0; t < 3; ++t)
            add_polygon(p, random_cycle_with(labels, rng),
                        Q(static_cast<int>(rng() % 9) - 4));
        std::vector<Label> img = labels;
        std::shuffle(img.begin(), img.end(), rng);
        std::map<Label, Label> perm;
        for (std::size_t i = 0; i < labels.size(); ++i) perm[labels[i]] = img[i];
        auto vals = random_point(labels, rng);
        std::map<Label, Q> pulled;
        for (Label l : labels) pulled[l] = vals[perm[l]];
        CHECK(eval_cell(relabel(p, perm), vals) == eval_cell(p, pulled));
    }
}

TEST_CASE("chords and consecutive blocks") {
    Cycle pent{1, 2, 3, 4, 5};
    auto ch = chords(pent);
    CHECK(ch.size() == 5);  // n(n-3)/2
    std::set<std::vector<Label>> got(ch.begin(), ch.end());
    CHECK(got.count({1, 2}) == 1);
    CHECK(got.count({2, 3}) == 1);
    CHECK(got.count({3, 4}) == 1);
    CHECK(got.count({1, 2, 3}) == 1);  // the chord separating {4,5}
    CHECK(got.count({2, 3, 4}) == 1);  // the chord separating {5,1}
    CHECK(got.count({1, 3}) == 0);
    CHECK(!is_consecutive_block(pent, {1, 3}));
    CHECK(is_consecutive_block(pent, {4, 5, 1}));

    Cycle oct{2, 4, 1, 3, 6, 8, 5, 7};
    CHECK(is_consecutive_block(oct, {1, 2, 3, 4}));
    CHECK(chords(oct).size() <= 8 * 5 / 2);
    for (int n = 4; n <= 8; ++n) {
        Cycle g(n);
        std::iota(g.begin(), g.end(), 1);
        CHECK(static_cast<int>(chords(g).size()) == n * (n - 3) / 2);
    }
}

TEST_CASE("residue: non-chords give zero, relabelling commutes") {
    PolySum p;
    add_polygon(p, {1, 2, 3, 4, 5}, Q(1));
    CHECK(residue_p(p, {1, 3}).empty());
    auto r = residue_p(p, {1, 2});
    REQUIRE(r.size() == 1);
    {
        const auto& [pr, coeff] = *r.begin();
        Canon a = canonical_cycle({1, 2, LBL_E});
        Canon b = canonical_cycle({3, 4, 5, LBL_E});
        CHECK(pr.first == a.cycle);
        CHECK(pr.second == b.cycle);
        CHECK(coeff == Q(a.sign * b.sign));
    }

    std::mt19937 rng(31);
    std::vector<Label> labels{1, 2, 3, 4, 5, 6, 7};
    for (int trial = 0; trial < 40; ++trial) {
        PolySum q;
        for (int t = 0; t < 3; ++t)
            add_polygon(q, random_cycle_with(labels, rng),
                        Q(1 + static_cast<int>(rng() % 5)));
        std::vector<Label> block{labels.begin(), labels.begin() + 2 + rng() % 3};
        std::vector<Label> img = labels;
        std::shuffle(img.begin(), img.end(), rng);
        std::map<Label, Label> perm;
        for (std::size_t i = 0; i < labels.size(); ++i) perm[labels[i]] = img[i];
        std::vector<Label> pblock;
        for (Label l : block) pblock.push_back(perm[l]);
        std::sort(pblock.begin(), pblock.end());
        // sigma(Res(q)) == Res(sigma(q)) along the relabelled block.
        auto lhs_pairs = residue_p(q, block);
        Poly<CyclePair> lhs;
        for (const auto& [pr, c] : lhs_pairs) {
            PolySum f1, f2;
            poly_add_term(f1, pr.first, Q(1));
            poly_add_term(f2, pr.second, Q(1));
            auto r1 = relabel(f1, perm);
            auto r2 = relabel(f2, perm);
            for (const auto& [c1, v1] : r1)
                for (const auto& [c2, v2] : r2)
                    poly_add_term(lhs, {c1, c2}, c * v1 * v2);
        }
        auto rhs = residue_p(relabel(q, perm), pblock);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("shuffles with respect to a point vanish as cell functions") {
    std::mt19937 rng(47);
    std::vector<Label> A0{1, 2}, B0{3};
    auto base = shuffle_wrt_point(A0, B0, LBL_D);
    Q mass = 0;
    for (const auto& [cyc, c] : base) {
        CHECK(cyc.size() == 4);
        mass += c;
    }
    CHECK(mass == 3);  // C(3,1) interleavings (with signs folded, all +1 here)

    CHECK(shuffle_wrt_point({}, {5, 6}, LBL_D) ==
          PolySum{{canonical_cycle({5, 6, LBL_D}).cycle, Q(1)}});

    for (int trial = 0; trial < 20; ++trial) {
        int na = 1 + rng() % 3, nb = 1 + rng() % 3;
        std::vector<Label> all(na + nb);
        std::iota(all.begin(), all.end(), 1);
        std::shuffle(all.begin(), all.end(), rng);
        std::vector<Label> A(all.begin(), all.begin() + na);
        std::vector<Label> B(all.begin() + na, all.end());
        PolySum s = shuffle_wrt_point(A, B, LBL_D);
        std::vector<Label> labels = all;
        labels.push_back(LBL_D);
        for (int pt = 0; pt < 20; ++pt) {
            auto vals = random_point(labels, rng);
            CHECK(eval_cell(s, vals) == 0);
        }
    }
}

TEST_CASE("cyclic shuffle worked example") {
    Cycle g1 = canonical_cycle(parse_polygon("(0 t1 1 t3 inf)")).cycle;
    Cycle g2 = canonical_cycle(parse_polygon("(0 1 t2 inf t4)")).cycle;
    PolySum got = shuffle_cyclic(g1, g2);
    PolySum expect;
    add_polygon(expect, parse_polygon("(0 t1 1 t2 t3 inf t4)"), Q(1));
    add_polygon(expect, parse_polygon("(0 t1 1 t3 t2 inf t4)"), Q(1));
    CHECK(got == expect);
}

TEST_CASE("cell-function product identity for the cyclic shuffle") {
    std::mt19937 rng(59);
    for (int trial = 0; trial < 40; ++trial) {
        int extra1 = 1 + rng() % 2, extra2 = 1 + rng() % 2;
        std::vector<Label> E{1, 2, 3};
        std::vector<Label> T1 = E, T2 = E;
        Label next = 4;
        for (int i = 0; i < extra1; ++i) T1.push_back(next++);
        for (int i = 0; i < extra2; ++i) T2.push_back(next++);
        Cycle g1 = canonical_cycle(random_cycle_with(T1, rng)).cycle;
        Cycle g2 = canonical_cycle(random_cycle_with(T2, rng)).cycle;
        PolySum sh = shuffle_cyclic(g1, g2);
        // Term count is the product of interleaving binomials.
        std::vector<Label> S;
        S.insert(S.end(), T1.begin(), T1.end());
        for (int i = 0; i < extra2; ++i) S.push_back(T1.size() + i + 1);
        for (int pt = 0; pt < 10; ++pt) {
            auto vals = random_point(S, rng);
            Q tri = eval_cell(Cycle{1, 2, 3}, vals);
            CHECK(eval_cell(g1, vals) * eval_cell(g2, vals) ==
                  tri * eval_cell(sh, vals));
        }
        // Each term restricts to g1 on T1 and g2 on T2.
        for (const auto& [cyc, c] : sh) {
            CHECK(cyc.size() == T1.size() + T2.size() - 3);
            (void)c;
        }
    }
    Cycle bad1{1, 2, 3, 4}, bad2{1, 2, 5, 6};
    CHECK_THROWS_AS(shuffle_cyclic(bad1, bad2), std::invalid_argument);
}

namespace {

// All canonical polygons on {1..n, d}: one per cyclic structure.
std::vector<Cycle> all_polygons(int n) {
    std::vector<Label> word(n);
    std::iota(word.begin(), word.end(), 1);
    std::set<Cycle> seen;
    do {
        std::vector<Label> seq = word;
        seq.push_back(LBL_D);
        seen.insert(canonical_cycle(seq).cycle);
    } while (std::next_permutation(word.begin(), word.end()));
    return {seen.begin(), seen.end()};
}

SparseVec coords_in(const PolySum& p, const std::map<Cycle, int>& index) {
    std::map<int, Q> acc;
    for (const auto& [cyc, c] : p) acc[index.at(cyc)] += c;
    SparseVec v;
    for (const auto& [i, c] : acc)
        if (c != 0) v.push_back({i, c});
    return v;
}

}  // namespace

TEST_CASE("01-rewriting: projection, kernel = shuffle subspace, ranks") {
    std::mt19937 rng(71);
    for (int n = 4; n <= 6; ++n) {
        auto polys = all_polygons(n);
        CHECK(static_cast<int>(polys.size()) ==
              [](int m) {  // n!/2 distinct reversal classes
                  long f = 1;
                  for (int i = 2; i <= m; ++i) f *= i;
                  return static_cast<int>(f / 2);
              }(n));

        std::vector<Label> others;
        for (int i = 2; i <= n; ++i) others.push_back(i);
        auto basis = basis_01(others, LBL_D, 1);
        long fact = 1;
        for (int i = 2; i <= n - 1; ++i) fact *= i;
        CHECK(static_cast<long>(basis.size()) == fact);
        std::map<Cycle, int> bidx;
        for (std::size_t i = 0; i < basis.size(); ++i)
            bidx[basis[i]] = static_cast<int>(i);

        // Basis polygons are fixed; the rewriting is a projection of rank
        // (n-1)!; every general polygon lands in the basis span.
        RowReducer image;
        for (const auto& g : polys) {
            PolySum once = rewrite_01_cycle(g, LBL_D, 1);
            CHECK(rewrite_01(once, LBL_D, 1) == once);
            image.add(coords_in(once, bidx));
        }
        CHECK(image.rank() == static_cast<int>(fact));
        for (const auto& b : basis)
            CHECK(rewrite_01_cycle(b, LBL_D, 1) == PolySum{{b, Q(1)}});

        // The kernel is spanned by the shuffles with respect to d.
        std::map<Cycle, int> pidx;
        for (std::size_t i = 0; i < polys.size(); ++i)
            pidx[polys[i]] = static_cast<int>(i);
        RowReducer ishuf;
        std::vector<Label> all(n);
        std::iota(all.begin(), all.end(), 1);
        for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
            std::vector<Label> A, B;
            for (int i = 0; i < n; ++i)
                ((mask >> i) & 1 ? A : B).push_back(i + 1);
            std::sort(A.begin(), A.end());
            do {
                std::sort(B.begin(), B.end());
                do {
                    PolySum s = shuffle_wrt_point(A, B, LBL_D);
                    CHECK(rewrite_01(s, LBL_D, 1).empty());
                    ishuf.add(coords_in(s, pidx));
                } while (std::next_permutation(B.begin(), B.end()));
            } while (std::next_permutation(A.begin(), A.end()));
        }
        CHECK(ishuf.rank() ==
              static_cast<int>(polys.size()) - static_cast<int>(fact));
    }
}

TEST_CASE("rewriting the weight-3 iterated-integral form into the 01-basis") {
    // 1/((1-t1)(1-t2) t3) agrees (up to the overall orientation sign) with
    // the sum of the two 01 cell functions below.
    std::mt19937 rng(83);
    PolySum s;
    add_polygon(s, parse_polygon("(0 1 t1 t2 inf t3)"), Q(1));
    add_polygon(s, parse_polygon("(0 1 t2 t1 inf t3)"), Q(1));
    for (int pt = 0; pt < 20; ++pt) {
        auto vals = random_point(marked_labels(3), rng);
        Q t1 = vals[tpt(1)], t2 = vals[tpt(2)], t3 = vals[tpt(3)];
        if (t1 == 1 || t2 == 1 || t3 == 0) continue;
        CHECK(eval_cell(s, vals) == -1 / ((1 - t1) * (1 - t2) * t3));
    }
    // Both terms are already in 01-basis position and the rewriting fixes
    // them (e = 0, next letter 1).
    CHECK(rewrite_01(s, LBL_ZERO, LBL_ONE) == s);
}
