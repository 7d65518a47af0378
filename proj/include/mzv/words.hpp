#pragma once
// Word algebras in the noncommuting letters x,y and in the indexed letters
// y_i: conversions between compositions and words, shuffle and stuffle
// products, the projection pi_y, Lyndon word machinery, Lie brackets, and
// double-shuffle membership tests.

#include <mzv/rational.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mzv {

// A word in x,y ("" is the unit).  Letter order is x < y, which is the
// natural character order.
using WordXY = std::string;

// A composition (k_1,...,k_d), all parts >= 1; convergent iff k_1 >= 2.
using IntComposition = std::vector<int>;

// A word in the letters y_i, stored as the index sequence (i_1,...,i_d).
// Weight is the sum of indices, depth the length.
using WordY = std::vector<int>;

// (k_1,...,k_d)  ->  x^{k_1-1} y x^{k_2-1} y ... x^{k_d-1} y
WordXY composition_to_word(const IntComposition& k);

// Inverse of the above; nullopt when w does not end in y.
std::optional<IntComposition> word_to_composition(const WordXY& w);

inline int weight(const WordXY& w) { return static_cast<int>(w.size()); }
int depth(const WordXY& w);  // number of y's

// Shuffle product of two sequences, with interleaving multiplicities.
template <class Seq>
Poly<Seq> shuffle(const Seq& a, const Seq& b) {
    if (a.empty()) return {{b, Q(1)}};
    if (b.empty()) return {{a, Q(1)}};
    Poly<Seq> out;
    Seq a1(a.begin(), a.end() - 1);
    Seq b1(b.begin(), b.end() - 1);
    for (const auto& [w, c] : shuffle(a1, b)) {
        Seq t = w;
        t.push_back(a.back());
        poly_add_term(out, t, c);
    }
    for (const auto& [w, c] : shuffle(a, b1)) {
        Seq t = w;
        t.push_back(b.back());
        poly_add_term(out, t, c);
    }
    return out;
}

template <class Seq>
Poly<Seq> shuffle(const Poly<Seq>& f, const Poly<Seq>& g) {
    Poly<Seq> out;
    for (const auto& [a, ca] : f)
        for (const auto& [b, cb] : g) poly_add(out, shuffle(a, b), ca * cb);
    return out;
}

// Stuffle product of compositions:
// st(a0.abar, b0.bbar) = a0.st(abar, b0.bbar) + b0.st(a0.abar, bbar)
//                        + (a0+b0).st(abar, bbar)
Poly<IntComposition> stuffle(const IntComposition& a, const IntComposition& b);

// pi_y: words ending in x map to 0; a word ending in y maps to its
// y_i-word via the composition correspondence; additionally each
// coefficient (f|x^{n-1}y) contributes (-1)^{n-1}/n * y_1^n for n >= 2.
Poly<WordY> pi_y(const Poly<WordXY>& f);

// Lyndon words: strictly smaller than every proper right factor.
template <class Seq>
bool is_lyndon(const Seq& w) {
    if (w.empty()) return false;
    for (std::size_t i = 1; i < w.size(); ++i)
        if (Seq(w.begin() + i, w.end()) <= w) return false;
    return true;
}

// All Lyndon words of the given length over the alphabet {x,y}
// (Duval's generation algorithm), in lexicographic order.
std::vector<WordXY> lyndon_words_xy(int length);

// Witt formula: dimension of the degree-n part of the free Lie algebra on
// r generators, (1/n) sum_{d|n} mu(d) r^{n/d}.
long witt_dim(int n, int r);

// Standard factorization w = u v of a Lyndon word of length >= 2:
// v is the lexicographically least proper right factor.
std::pair<WordXY, WordXY> standard_factorization(const WordXY& w);

// Concatenation product and Lie bracket on word polynomials.
Poly<WordXY> concat(const Poly<WordXY>& f, const Poly<WordXY>& g);
Poly<WordXY> lie_bracket(const Poly<WordXY>& f, const Poly<WordXY>& g);

// The Lie polynomial [w] attached to a Lyndon word by recursive
// bracketing of the standard factorization.  Throws std::invalid_argument
// if w is not Lyndon.
Poly<WordXY> lyndon_lie(const WordXY& w);

// The derivation D_f: x -> 0, y -> [y,f], extended by Leibniz; computed by
// substituting each y of g in turn by [y,f].
Poly<WordXY> derivation(const Poly<WordXY>& f, const Poly<WordXY>& g);

// Poisson (Ihara) bracket {f,g} = [f,g] + D_f(g) - D_g(f).
Poly<WordXY> poisson_bracket(const Poly<WordXY>& f, const Poly<WordXY>& g);

// Double-shuffle membership report for a homogeneous f of weight n:
// lists every violated pair on either side.
struct DoubleShuffleReport {
    std::vector<std::pair<WordXY, WordXY>> shuffle_violations;
    std::vector<std::pair<IntComposition, IntComposition>> stuffle_violations;
    bool ok() const {
        return shuffle_violations.empty() && stuffle_violations.empty();
    }
};
DoubleShuffleReport check_double_shuffle(const Poly<WordXY>& f);

// The (unique up to scalar) double-shuffle element of odd weight n <= 9,
// normalized so that the coefficient of x^{n-1}y is 1.  Constructed as the
// nullspace of the stuffle conditions over the Lyndon-Lie basis.
Poly<WordXY> ds_element(int n);

}  // namespace mzv
