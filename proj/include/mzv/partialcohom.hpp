#pragma once
// Top cohomology of partially compactified moduli spaces: for an
// admissible set gamma of boundary divisors, the basis of
// H^{n-3}(M_{0,n}^gamma) made of 01-forms with zero polygon residue
// along every divisor of gamma plus Lyndon-shuffle insertion forms,
// together with the closed dimension formulas.

#include <mzv/polygons.hpp>
#include <mzv/rational.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace mzv {

struct NotAdmissible : std::invalid_argument {
    explicit NotAdmissible(const std::string& what)
        : std::invalid_argument(what) {}
};

// A boundary divisor, named by the sorted set of marked points it
// equates; always a subset of {t_1, ..., t_{n-3}, infinity} of size
// between 2 and n - 2 (the PSL_2 normalization keeps 0 and 1 outside).
using Divisor = std::vector<Label>;

enum class GammaCase {
    Empty,                    // no divisor removed: all (n-2)! 01-forms
    Single,                   // gamma = {d_R}
    DisjointPair,             // gamma = {d_R, d_S}, R and S disjoint
    TripleWithIntersection,   // gamma = {d_R, d_S, d_{R u S}}, chords cross
    DeltaFull,                // gamma = delta: the insertion-form basis
};

struct DivisorSet {
    std::vector<Divisor> divisors;
    GammaCase kind = GammaCase::Empty;
};

// Validate and classify a divisor list; throws NotAdmissible when the
// list fits none of the affine cases.  With delta_full the list must be
// empty and the full boundary set delta is understood.
DivisorSet make_divisor_set(int n, std::vector<Divisor> divisors,
                            bool delta_full = false);

// Parse "t1=t2" or "t3=inf" into a Divisor, and "t1=t2;t2=t3;t1=t2=t3"
// into a classified DivisorSet ("delta" selects the full boundary set).
Divisor parse_divisor(int n, const std::string& text);
DivisorSet parse_divisor_set(int n, const std::string& text);

// Basis of H^{n-3}(M_{0,n}^gamma) as polygon sums, and its size.
std::vector<PolySum> cohom_basis(int n, const DivisorSet& gamma);
long cohom_dim(int n, const DivisorSet& gamma);

// Closed dimension formulas: one divisor of size r; two disjoint
// divisors of sizes r, s; two crossing divisors of sizes r, s meeting in
// k points together with their intersection-divisor.
long case1_dim(int n, int r);
long case2_dim(int n, int r, int s);
long case3_dim(int n, int r, int s, int k);

// The five constituent cardinalities of the triple-case basis.
struct Case3Counts {
    long w0, wR, wS, wRS, wRS_S;
    long total() const { return w0 + wR + wS + wRS + wRS_S; }
};
Case3Counts case3_counts(int n, int r, int s, int k);

// True iff the polygon residue of p along d_K is zero or lies in
// I_{K u {e}} tensor polygons, i.e. every left factor grouped by right
// factor is a sum of shuffles with respect to the cut edge.
bool residue_in_shuffle_ideal(const PolySum& p, const Divisor& K, int n);

}  // namespace mzv
