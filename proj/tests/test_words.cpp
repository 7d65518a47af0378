#include <mzv/words.hpp>

#include <random>

#include "doctest.h"

using namespace mzv;

TEST_CASE("composition/word correspondence") {
    CHECK(composition_to_word({2, 1}) == "xyy");
    CHECK(composition_to_word({1}) == "y");
    CHECK(word_to_composition("xxyxy") == IntComposition{3, 2});
    CHECK(!word_to_composition("yx").has_value());
    CHECK(word_to_composition(composition_to_word({4, 1, 2})) ==
          IntComposition{4, 1, 2});
}

TEST_CASE("shuffle product examples") {
    std::vector<int> a{0, 1};
    auto p = shuffle(a, a);
    CHECK(p.size() == 2);
    CHECK(poly_coeff(p, {0, 1, 0, 1}) == 2);
    CHECK(poly_coeff(p, {0, 0, 1, 1}) == 4);

    std::vector<int> empty;
    auto u = shuffle(std::vector<int>{7, 8}, empty);
    CHECK(u == Poly<std::vector<int>>{{{7, 8}, Q(1)}});

    // Total mass of a sh b is C(|a|+|b|, |a|).
    std::vector<int> b{2, 3, 4};
    Q mass = 0;
    for (const auto& [w, c] : shuffle(a, b)) mass += c;
    CHECK(mass == Q(binom(5, 2)));
}

TEST_CASE("stuffle product examples") {
    auto p = stuffle({2, 1}, {3});
    CHECK(p.size() == 5);
    CHECK(poly_coeff(p, {2, 1, 3}) == 1);
    CHECK(poly_coeff(p, {2, 3, 1}) == 1);
    CHECK(poly_coeff(p, {3, 2, 1}) == 1);
    CHECK(poly_coeff(p, {2, 4}) == 1);
    CHECK(poly_coeff(p, {5, 1}) == 1);

    auto q = stuffle({2}, {2});
    CHECK(poly_coeff(q, {2, 2}) == 2);
    CHECK(poly_coeff(q, {4}) == 1);

    CHECK(stuffle({3, 1}, {}) == Poly<IntComposition>{{{3, 1}, Q(1)}});
}

TEST_CASE("shuffle and stuffle are commutative and associative") {
    std::mt19937 rng(99);
    auto random_comp = [&rng]() {
        IntComposition k;
        int len = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < len; ++i) k.push_back(1 + static_cast<int>(rng() % 3));
        return k;
    };
    for (int trial = 0; trial < 500; ++trial) {
        auto a = random_comp(), b = random_comp(), c = random_comp();
        CHECK(stuffle(a, b) == stuffle(b, a));
        CHECK(shuffle(a, b) == shuffle(b, a));
        Poly<IntComposition> st_ab_c, st_a_bc, sh_ab_c, sh_a_bc;
        for (const auto& [w, coef] : stuffle(a, b))
            poly_add(st_ab_c, stuffle(static_cast<IntComposition>(w), c), coef);
        for (const auto& [w, coef] : stuffle(b, c))
            poly_add(st_a_bc, stuffle(a, static_cast<IntComposition>(w)), coef);
        CHECK(st_ab_c == st_a_bc);
        for (const auto& [w, coef] : shuffle(a, b))
            poly_add(sh_ab_c, shuffle(static_cast<IntComposition>(w), c), coef);
        for (const auto& [w, coef] : shuffle(b, c))
            poly_add(sh_a_bc, shuffle(a, static_cast<IntComposition>(w)), coef);
        CHECK(sh_ab_c == sh_a_bc);
    }
}

TEST_CASE("pi_y on the worked example") {
    Poly<WordXY> f;
    poly_add_term(f, WordXY("xxy"), Q(2));
    poly_add_term(f, WordXY("xxxy"), Q(1));
    poly_add_term(f, WordXY("xyy"), Q(4));
    poly_add_term(f, WordXY("yxy"), Q(-8));
    poly_add_term(f, WordXY("yyx"), Q(4));
    auto g = pi_y(f);
    CHECK(poly_coeff(g, {3}) == 2);
    CHECK(poly_coeff(g, {4}) == 1);
    CHECK(poly_coeff(g, {2, 1}) == 4);
    CHECK(poly_coeff(g, {1, 2}) == -8);
    CHECK(poly_coeff(g, {1, 1, 1}) == Q(2, 3));
    CHECK(poly_coeff(g, {1, 1, 1, 1}) == Q(-1, 4));
    CHECK(g.size() == 6);

    CHECK(pi_y({}).empty());
    CHECK(pi_y({{WordXY("yx"), Q(1)}}).empty());
}

TEST_CASE("pi_y preserves weight") {
    Poly<WordXY> f;
    poly_add_term(f, WordXY("xyxyy"), Q(3));
    poly_add_term(f, WordXY("xxxxy"), Q(-2));
    for (const auto& [w, c] : pi_y(f)) {
        int wt = 0;
        for (int idx : w) wt += idx;
        CHECK(wt == 5);
    }
}

TEST_CASE("Lyndon words, Witt dimensions, bracketing") {
    CHECK(is_lyndon(WordXY("xy")));
    CHECK(is_lyndon(WordXY("xxy")));
    CHECK(!is_lyndon(WordXY("yx")));
    CHECK(!is_lyndon(WordXY("xyxy")));
    for (int n = 1; n <= 12; ++n)
        CHECK(static_cast<long>(lyndon_words_xy(n).size()) == witt_dim(n, 2));
    CHECK(witt_dim(3, 2) == 2);
    CHECK(witt_dim(1, 2) == 2);
    CHECK(witt_dim(6, 2) == 9);

    // [x^2 y] = xxy - 2 xyx + yxx
    auto l = lyndon_lie("xxy");
    CHECK(poly_coeff(l, WordXY("xxy")) == 1);
    CHECK(poly_coeff(l, WordXY("xyx")) == -2);
    CHECK(poly_coeff(l, WordXY("yxx")) == 1);

    // Depth-1 closed form [x^{n-1}y] = sum (-1)^i C(n-1,i) x^{n-1-i} y x^i.
    for (int n = 2; n <= 7; ++n) {
        auto f = lyndon_lie(WordXY(n - 1, 'x') + "y");
        for (int i = 0; i < n; ++i) {
            WordXY w = WordXY(n - 1 - i, 'x') + "y" + WordXY(i, 'x');
            Q expect = Q(binom(n - 1, i));
            if (i % 2 == 1) expect = -expect;
            CHECK(poly_coeff(f, w) == expect);
        }
    }

    // Depth-2 Lyndon words of weight n: x^r y x^s y with r > s.
    for (int n = 4; n <= 9; ++n) {
        int count = 0;
        for (const auto& w : lyndon_words_xy(n))
            if (depth(w) == 2) ++count;
        CHECK(count == (n - 1) / 2);
    }
}

TEST_CASE("backwards-word sign law for Lie elements") {
    for (const auto& lw : lyndon_words_xy(6)) {
        auto f = lyndon_lie(lw);
        for (const auto& [w, c] : f) {
            WordXY r(w.rbegin(), w.rend());
            Q expect = (w.size() % 2 == 0) ? -c : c;  // (-1)^{len-1}
            CHECK(poly_coeff(f, r) == expect);
        }
    }
}

TEST_CASE("Poisson bracket basics") {
    Poly<WordXY> x{{WordXY("x"), Q(1)}}, y{{WordXY("y"), Q(1)}};
    CHECK(poisson_bracket(x, y).empty());  // [x,y] + [y,x] - 0 = 0
    auto f = lyndon_lie("xxy");
    CHECK(poisson_bracket(f, f).empty());
}

TEST_CASE("double shuffle membership") {
    CHECK(check_double_shuffle({}).ok());

    // x^2 y alone is not Lie: the pair (x, xy) violates the shuffle sum.
    Poly<WordXY> bad{{WordXY("xxy"), Q(1)}};
    auto rep = check_double_shuffle(bad);
    CHECK(!rep.ok());
    bool found = false;
    for (const auto& [u, v] : rep.shuffle_violations)
        if ((u == "x" && v == "xy") || (u == "xy" && v == "x")) found = true;
    CHECK(found);

    // The weight-3 element [x^2 y] + [x y y] with b_0 = (n-1)/2.
    auto f3 = ds_element(3);
    CHECK(poly_coeff(f3, WordXY("xxy")) == 1);
    CHECK(poly_coeff(f3, WordXY("xyy")) == 1);  // b_0 = (3-1)/2 = 1
    CHECK(check_double_shuffle(f3).ok());
}

TEST_CASE("Lie elements satisfy the shuffle-vanishing conditions") {
    for (int n = 3; n <= 8; ++n)
        for (const auto& lw : lyndon_words_xy(n)) {
            auto f = lyndon_lie(lw);
            CHECK(check_double_shuffle(f).shuffle_violations.empty());
        }
}

TEST_CASE("Poisson brackets of ds elements stay in ds") {
    auto f3 = ds_element(3);
    auto f5 = ds_element(5);
    auto f7 = ds_element(7);
    CHECK(check_double_shuffle(f5).ok());
    CHECK(check_double_shuffle(f7).ok());
    CHECK(check_double_shuffle(poisson_bracket(f3, f5)).ok());   // weight 8
    CHECK(check_double_shuffle(poisson_bracket(f3, f7)).ok());   // weight 10
    CHECK(poisson_bracket(f5, f5).empty());
}
