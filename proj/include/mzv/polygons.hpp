#pragma once
// Polygons (cyclic structures) over a finite label set, the vector space
// they span modulo the reversal relation gamma = (-1)^n reverse(gamma),
// cell-function evaluation, chords, residues, cyclic shuffles, and the
// 01-basis rewriting whose kernel is the shuffle subspace I_S.

#include <mzv/rational.hpp>
#include <mzv/words.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mzv {

// Labels are integer codes.  Abstract letters 1..n use their own value;
// marked points sort after them, with infinity largest.
using Label = int;
constexpr Label LBL_D = 1000;     // the extra edge closing a word into a polygon
constexpr Label LBL_E = 1001;     // the new edge created by a residue cut
constexpr Label LBL_F = 1002;     // a second cut edge
constexpr Label LBL_ZERO = 2000;  // marked point 0
constexpr Label LBL_ONE = 2001;   // marked point 1
constexpr Label LBL_INF = 2500;   // marked point infinity
inline Label tpt(int i) { return 2100 + i; }  // marked point t_i

std::string label_name(Label l);
Label parse_label(const std::string& s);

// A polygon stored as its canonical cyclic representative: rotate the
// smallest label first; between that and the reversed rotation, keep the
// lexicographically smaller, at the price of the sign (-1)^n.
using Cycle = std::vector<Label>;

struct Canon {
    Cycle cycle;
    int sign;  // +1 or -1
};
Canon canonical_cycle(const std::vector<Label>& seq);

// Linear combinations of canonical polygons (sign folded into coefficient).
using PolySum = Poly<Cycle>;
void add_polygon(PolySum& p, const std::vector<Label>& seq, const Q& coeff);

// Relabel every polygon of p through the map (labels not present are kept).
PolySum relabel(const PolySum& p, const std::map<Label, Label>& perm);

// Exact value of the cell function <gamma> at a point: the inverse of the
// product of successive differences around the cycle, omitting the two
// factors containing infinity.  vals need not contain LBL_INF.
Q eval_cell(const Cycle& gamma, const std::map<Label, Q>& vals);
Q eval_cell(const PolySum& p, const std::map<Label, Q>& vals);

// True iff block (a set of labels) occupies consecutive edges of gamma.
bool is_consecutive_block(const Cycle& gamma, const std::vector<Label>& block);

// All chords of gamma: stable two-block partitions realizable as
// consecutive blocks.  Each is reported once, as the sorted block not
// containing the largest label of the polygon.
std::vector<std::vector<Label>> chords(const Cycle& gamma);

// Residue along a chord: cut each polygon along the block into
// (block part + e) tensor (rest with the block replaced by e);
// terms where the block is not consecutive contribute zero.
using CyclePair = std::pair<Cycle, Cycle>;
Poly<CyclePair> residue_p(const PolySum& eta, const std::vector<Label>& block,
                          Label e = LBL_E);

// Sum over interleavings of A and B closed up by the point e.
PolySum shuffle_wrt_point(const std::vector<Label>& A,
                          const std::vector<Label>& B, Label e);

// Shuffle of two polygons relative to their three common labels.
// Throws std::invalid_argument unless the label sets share exactly three
// elements and together cover their union.
PolySum shuffle_cyclic(const Cycle& g1, const Cycle& g2);

// Rewriting in the 01-basis: modulo the span of shuffles with respect to
// the point e, every polygon equals a combination of polygons in which e
// is immediately followed by `one`.  Implements the identity
//   (u.1.v, e)  =  (-1)^{|u|} sum_{s in reverse(u) sh v} (1.s, e).
PolySum rewrite_01(const PolySum& p, Label e, Label one);
PolySum rewrite_01_cycle(const Cycle& gamma, Label e, Label one);

// All (n-2)! basis polygons (one, s, e) over the remaining labels,
// in lexicographic order of s.
std::vector<Cycle> basis_01(std::vector<Label> others, Label e, Label one);

// The word s of a 01-basis polygon (one, s, e); requires the polygon to
// be in basis position after unrotating/reflecting.
std::vector<Label> word_01(const Cycle& gamma, Label e, Label one, int* sign);

// The standard cell (0, t_1, ..., t_ell, 1, inf) on ell + 3 labels.
Cycle standard_cell(int ell);
std::vector<Label> marked_labels(int ell);

// Parse "(0 t1 1 t3 inf)" / "[0 1 t1 inf t2]" style polygon text.
std::vector<Label> parse_polygon(const std::string& text);
std::string polygon_to_string(const Cycle& gamma, char open = '(',
                              char close = ')');

}  // namespace mzv
