#pragma once
// Convergent words and polygons, Lyndon insertion shuffles and words,
// convergence of polygon sums, and the insertion basis with its
// dimension formula.

#include <mzv/polygons.hpp>
#include <mzv/rational.hpp>

#include <string>
#include <vector>

namespace mzv {

using IntWord = std::vector<int>;

// A contiguous window of w, of length in [min_len, max_len], whose
// underlying set is an integer interval {i, i+1, ..., i+r}.
bool has_interval_window(const IntWord& w, int min_len, int max_len);

// Word of length n on {1..n}: no interval window of length 2..n-2.
bool is_convergent_word(const IntWord& w);

// Word on an arbitrary set of distinct integers, used as a factor of a
// shuffle: no interval window of length 2..|w| (the whole word counts).
bool is_convergent_factor(const IntWord& w);

// Word of length n on {1..n}: no proper interval window (length 2..n-1);
// equivalently the closed polygon (w, d) shares no chord with the
// standard polygon (1, ..., n, d).
bool is_special_convergent(const IntWord& w);

// c_0(n): the number of special convergent words w on {1..m}, m = n-1,
// in which 1 appears immediately to the left of m.
long count_special_convergent(int n);
std::vector<IntWord> special_convergent_words(int m);  // the 1m-words

// All convergent Lyndon words on the sorted set B (min letter first).
std::vector<IntWord> convergent_lyndon_words(const std::vector<int>& B);

// All convergent Lyndon shuffles on {1..k} with at least two factors,
// each factor a convergent Lyndon word; factors sorted by first letter.
std::vector<std::vector<IntWord>> convergent_lyndon_shuffles(int k);

struct InsertionElement {
    std::string desc;         // structural description, space-separated tokens
    Poly<IntWord> expansion;  // expanded sum of words with distinct letters
};

// The set L_{1..m} of Lyndon insertion shuffles (memoized).
const std::vector<InsertionElement>& lyndon_insertion_shuffles(int m);

// The set W_{1..m} of Lyndon insertion words (special convergent
// 1m-words plus insertions); m >= 4.
std::vector<InsertionElement> lyndon_insertion_words(int m);

// Close each word of p into a polygon by appending the edge d.
PolySum words_to_polygons(const Poly<IntWord>& p, Label d = LBL_D);

// Convergence of a polygon sum on {1..n, d} relative to the standard
// polygon: along every consecutive interval T of {1..n} with
// 2 <= |T| <= n-1, the residue lies in I_T tensor polygons.
bool is_convergent_sum(const PolySum& eta);

// Cyclic structures on {1..n} sharing no chord with the standard n-gon
// (no run of length 2..n-2 whose set is a cyclic interval mod n);
// canonical representatives, one per reversal class.
std::vector<Cycle> convergent_polygons(int n);

// Basis of H^{n-3} of the partially compactified moduli space on n
// points relative to the standard cell: the insertion words on n-1
// letters.  dim_delta evaluates the closed dimension formula.
std::vector<InsertionElement> insertion_basis(int n);
long dim_delta(int n);
long dim_delta_enumerated(int n);

}  // namespace mzv
