#include <mzv/partialcohom.hpp>

#include <mzv/cellzeta.hpp>
#include <mzv/insertion.hpp>
#include <mzv/linalg.hpp>
#include <mzv/words.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"

using namespace mzv;

namespace {

long fact(int k) {
    long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

int rank_01(int n, const std::vector<PolySum>& basis) {
    RowReducer r;
    for (const auto& p : basis) r.add(coords_01(p, n));
    return r.rank();
}

// All divisors (subsets of {t_1.., inf} of size 2..n-2) on n points.
std::vector<Divisor> all_divisors(int n) {
    std::vector<Label> a;
    for (int i = 1; i <= n - 3; ++i) a.push_back(tpt(i));
    a.push_back(LBL_INF);
    int m = static_cast<int>(a.size());
    std::vector<Divisor> out;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        Divisor d;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) d.push_back(a[i]);
        if (d.size() >= 2 && static_cast<int>(d.size()) <= n - 2)
            out.push_back(d);
    }
    return out;
}

PolySum form_01(const std::vector<Label>& seq) {
    PolySum p;
    add_polygon(p, seq, Q(1));
    return p;
}

bool contains_form(const std::vector<PolySum>& basis, const PolySum& f) {
    return std::find(basis.begin(), basis.end(), f) != basis.end();
}

}  // namespace

TEST_CASE("divisor parsing and admissibility") {
    auto g = parse_divisor_set(6, "t1=t2");
    CHECK(g.kind == GammaCase::Single);
    CHECK(g.divisors == std::vector<Divisor>{{tpt(1), tpt(2)}});

    CHECK(parse_divisor(6, "t3=inf") == Divisor{tpt(3), LBL_INF});
    CHECK(parse_divisor_set(6, "t1=t2;t3=inf").kind ==
          GammaCase::DisjointPair);
    CHECK(parse_divisor_set(6, "t1=t2;t2=t3;t1=t2=t3").kind ==
          GammaCase::TripleWithIntersection);
    CHECK(parse_divisor_set(6, "delta").kind == GammaCase::DeltaFull);
    CHECK(make_divisor_set(6, {}).kind == GammaCase::Empty);

    // Too small, out of range, repeated, overlapping pair without the
    // intersection-divisor, and a triple that is not of the stated shape.
    CHECK_THROWS_AS(parse_divisor(6, "t1"), NotAdmissible);
    CHECK_THROWS_AS(parse_divisor(5, "t1=t3"), NotAdmissible);
    CHECK_THROWS_AS(make_divisor_set(6, {{tpt(1), tpt(2)}, {tpt(1), tpt(2)}}),
                    NotAdmissible);
    CHECK_THROWS_AS(parse_divisor_set(6, "t1=t2;t2=t3"), NotAdmissible);
    CHECK_THROWS_AS(parse_divisor_set(6, "t1=t2;t3=inf;t1=t2=t3"),
                    NotAdmissible);
    CHECK_THROWS_AS(parse_divisor(6, "0=t1"), NotAdmissible);
    CHECK_THROWS_AS(parse_divisor(6, "t1=t4"), NotAdmissible);
}

TEST_CASE("single divisor: dimension 18 example") {
    auto g = parse_divisor_set(6, "t1=t2");
    CHECK(cohom_dim(6, g) == 18);
    CHECK(case1_dim(6, 2) == 18);
    auto basis = cohom_basis(6, g);
    REQUIRE(basis.size() == 18);
    CHECK(rank_01(6, basis) == 18);

    // 12 block-free 01-forms: t_1 never next to t_2.
    int single_polygons = 0;
    for (const auto& p : basis)
        if (p.size() == 1 && p.begin()->second == 1) ++single_polygons;
    CHECK(single_polygons == 12);

    // The six shuffle insertions are present, e.g. [0,1,t1 sh t2,t3,inf].
    PolySum sh1;
    add_polygon(sh1, {LBL_ZERO, LBL_ONE, tpt(1), tpt(2), tpt(3), LBL_INF},
                Q(1));
    add_polygon(sh1, {LBL_ZERO, LBL_ONE, tpt(2), tpt(1), tpt(3), LBL_INF},
                Q(1));
    CHECK(contains_form(basis, sh1));
    PolySum sh2;
    add_polygon(sh2, {LBL_ZERO, LBL_ONE, LBL_INF, tpt(1), tpt(2), tpt(3)},
                Q(1));
    add_polygon(sh2, {LBL_ZERO, LBL_ONE, LBL_INF, tpt(2), tpt(1), tpt(3)},
                Q(1));
    CHECK(contains_form(basis, sh2));
    CHECK(basis.size() - single_polygons == 6);
}

TEST_CASE("single divisor: dimension 20 example") {
    auto g = parse_divisor_set(6, "t1=t2=t3");
    CHECK(cohom_dim(6, g) == 20);
    CHECK(case1_dim(6, 3) == 20);
    auto basis = cohom_basis(6, g);
    REQUIRE(basis.size() == 20);
    CHECK(rank_01(6, basis) == 20);

    // 12 single 01-forms [0,1,ti,inf,tj,tk] and [0,1,ti,tj,inf,tk].
    int single_polygons = 0;
    for (const auto& p : basis)
        if (p.size() == 1) ++single_polygons;
    CHECK(single_polygons == 12);

    // Among the 8 shuffle insertions: the triple shuffle before inf.
    PolySum tri;
    std::vector<Label> ts{tpt(1), tpt(2), tpt(3)};
    std::sort(ts.begin(), ts.end());
    do {
        add_polygon(tri, {LBL_ZERO, LBL_ONE, ts[0], ts[1], ts[2], LBL_INF},
                    Q(1));
    } while (std::next_permutation(ts.begin(), ts.end()));
    CHECK(contains_form(basis, tri));
    // And the two-factor shuffle (t1 t2) sh t3 before inf.
    PolySum two;
    for (const auto& [w, c] :
         shuffle(std::vector<Label>{tpt(1), tpt(2)}, {tpt(3)})) {
        std::vector<Label> seq{LBL_ZERO, LBL_ONE};
        seq.insert(seq.end(), w.begin(), w.end());
        seq.push_back(LBL_INF);
        add_polygon(two, seq, c);
    }
    CHECK(contains_form(basis, two));
}

TEST_CASE("disjoint pair: dimension 14 example") {
    auto g = parse_divisor_set(6, "t1=t2;t3=inf");
    CHECK(cohom_dim(6, g) == 14);
    CHECK(case2_dim(6, 2, 2) == 14);
    auto basis = cohom_basis(6, g);
    REQUIRE(basis.size() == 14);
    CHECK(rank_01(6, basis) == 14);

    // 8 block-free forms + 6 insertions.
    int single_polygons = 0;
    for (const auto& p : basis)
        if (p.size() == 1) ++single_polygons;
    CHECK(single_polygons == 8);
    CHECK(contains_form(basis,
                        form_01({LBL_ZERO, LBL_ONE, tpt(1), tpt(3), tpt(2),
                                 LBL_INF})));

    // The double insertion [0,1,t1 sh t2, t3 sh inf].
    PolySum dbl;
    for (const auto& [u, cu] :
         shuffle(std::vector<Label>{tpt(1)}, {tpt(2)}))
        for (const auto& [v, cv] :
             shuffle(std::vector<Label>{tpt(3)}, {LBL_INF})) {
            std::vector<Label> seq{LBL_ZERO, LBL_ONE};
            seq.insert(seq.end(), u.begin(), u.end());
            seq.insert(seq.end(), v.begin(), v.end());
            add_polygon(dbl, seq, cu * cv);
        }
    CHECK(contains_form(basis, dbl));
}

TEST_CASE("triple with intersection-divisor: dimension 12 example") {
    auto g = parse_divisor_set(6, "t1=t2;t2=t3;t1=t2=t3");
    CHECK(cohom_dim(6, g) == 12);
    CHECK(case3_dim(6, 2, 2, 1) == 12);
    auto counts = case3_counts(6, 2, 2, 1);
    CHECK(counts.w0 == 4);
    CHECK(counts.wR == 2);
    CHECK(counts.wS == 2);
    CHECK(counts.wRS == 4);
    CHECK(counts.wRS_S == 0);
    CHECK(counts.total() == 12);

    auto basis = cohom_basis(6, g);
    REQUIRE(basis.size() == 12);
    CHECK(rank_01(6, basis) == 12);

    // The four residue-free cell forms.
    for (auto seq : std::vector<std::vector<Label>>{
             {LBL_ZERO, LBL_ONE, tpt(1), tpt(3), LBL_INF, tpt(2)},
             {LBL_ZERO, LBL_ONE, tpt(3), tpt(1), LBL_INF, tpt(2)},
             {LBL_ZERO, LBL_ONE, tpt(2), LBL_INF, tpt(1), tpt(3)},
             {LBL_ZERO, LBL_ONE, tpt(2), LBL_INF, tpt(3), tpt(1)}})
        CHECK(contains_form(basis, form_01(seq)));

    // [0,1,(t1 sh t2),inf,t3] from the d_R set.
    PolySum wr;
    add_polygon(wr, {LBL_ZERO, LBL_ONE, tpt(1), tpt(2), LBL_INF, tpt(3)},
                Q(1));
    add_polygon(wr, {LBL_ZERO, LBL_ONE, tpt(2), tpt(1), LBL_INF, tpt(3)},
                Q(1));
    CHECK(contains_form(basis, wr));

    // [0,1,(t1 t3 sh t2),inf] from the union set: the factor t1 t3 keeps
    // the crossing divisors apart.
    PolySum wu;
    for (const auto& [w, c] :
         shuffle(std::vector<Label>{tpt(1), tpt(3)}, {tpt(2)})) {
        std::vector<Label> seq{LBL_ZERO, LBL_ONE};
        seq.insert(seq.end(), w.begin(), w.end());
        seq.push_back(LBL_INF);
        add_polygon(wu, seq, c);
    }
    CHECK(contains_form(basis, wu));
}

TEST_CASE("triple case at n=7 with level-two insertions") {
    auto g = parse_divisor_set(7, "t1=t2=t3;t3=t4;t1=t2=t3=t4");
    long formula = case3_dim(7, 3, 2, 1);
    CHECK(cohom_dim(7, g) == formula);
    auto counts = case3_counts(7, 3, 2, 1);
    CHECK(counts.wRS_S == 4);
    CHECK(counts.total() == formula);
    auto basis = cohom_basis(7, g);
    CHECK(static_cast<long>(basis.size()) == formula);
    CHECK(rank_01(7, basis) == formula);

    // One of the four level-two insertions:
    // [0,1,inf,((t1,(t3 sh t4)) sh t2)].
    Poly<std::vector<Label>> inner =
        shuffle(std::vector<Label>{tpt(3)}, {tpt(4)});
    PolySum lvl2;
    for (const auto& [v, cv] : inner) {
        std::vector<Label> word{tpt(1)};
        word.insert(word.end(), v.begin(), v.end());
        for (const auto& [w, cw] : shuffle(word, {tpt(2)})) {
            std::vector<Label> seq{LBL_ZERO, LBL_ONE, LBL_INF};
            seq.insert(seq.end(), w.begin(), w.end());
            add_polygon(lvl2, seq, cv * cw);
        }
    }
    CHECK(contains_form(basis, lvl2));
}

TEST_CASE("formula, basis size and exact rank agree for all admissible "
          "gammas on small n") {
    for (int n = 5; n <= 6; ++n) {
        auto divisors = all_divisors(n);
        for (const auto& d : divisors) {
            auto g = make_divisor_set(n, {d});
            auto basis = cohom_basis(n, g);
            long f = cohom_dim(n, g);
            CHECK(static_cast<long>(basis.size()) == f);
            CHECK(rank_01(n, basis) == f);
        }
        for (std::size_t i = 0; i < divisors.size(); ++i)
            for (std::size_t j = i + 1; j < divisors.size(); ++j) {
                std::vector<Label> inter;
                std::set_intersection(
                    divisors[i].begin(), divisors[i].end(),
                    divisors[j].begin(), divisors[j].end(),
                    std::back_inserter(inter));
                if (!inter.empty()) continue;
                auto g = make_divisor_set(n, {divisors[i], divisors[j]});
                auto basis = cohom_basis(n, g);
                long f = cohom_dim(n, g);
                CHECK(static_cast<long>(basis.size()) == f);
                CHECK(rank_01(n, basis) == f);
            }
    }
}

TEST_CASE("residue of every basis element lies in the shuffle ideal") {
    for (const char* txt : {"t1=t2", "t1=t2=t3", "t1=t2;t3=inf",
                            "t1=t2;t2=t3;t1=t2=t3"}) {
        auto g = parse_divisor_set(6, txt);
        for (const auto& p : cohom_basis(6, g))
            for (const auto& d : g.divisors)
                CHECK(residue_in_shuffle_ideal(p, d, 6));
    }
    // A form with a genuine simple pole fails the test.
    CHECK_FALSE(residue_in_shuffle_ideal(
        form_01({LBL_ZERO, LBL_ONE, tpt(1), tpt(2), tpt(3), LBL_INF}),
        {tpt(1), tpt(2)}, 6));
}

TEST_CASE("monotonicity and recovery of the full boundary case") {
    // gamma empty gives the whole cohomology, and every divisor removed
    // can only cut the dimension.
    CHECK(cohom_dim(6, make_divisor_set(6, {})) == fact(4));
    CHECK(rank_01(6, cohom_basis(6, make_divisor_set(6, {}))) == fact(4));
    for (const auto& d : all_divisors(6))
        CHECK(cohom_dim(6, make_divisor_set(6, {d})) < fact(4));

    // gamma = delta recovers the insertion-form count.
    for (int n = 5; n <= 7; ++n) {
        auto g = make_divisor_set(n, {}, true);
        CHECK(cohom_dim(n, g) == dim_delta(n));
        auto basis = cohom_basis(n, g);
        CHECK(static_cast<long>(basis.size()) == dim_delta(n));
        CHECK(rank_01(n, basis) == dim_delta(n));
    }
}
