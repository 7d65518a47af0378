#pragma once

// Boundary divisors of the moduli space of n marked points on the line,
// non-adjacent bases of its Picard group, and exact expansion of any
// boundary divisor class in such a basis.
//
// A boundary divisor d_A is indexed by a subset A of the marked points
// {z_1,...,z_n} with 2 <= |A| <= n-2, and d_A = d_{A^c}.  Fixing a dihedral
// ordering of the points, the divisors whose subset is not a consecutive
// arc form a basis (the non-adjacent basis).  Every consecutive divisor
// expands in that basis with coefficients in {0, +1, -1} determined by a
// parity rule; an independent recursive computation of the same
// coefficients is provided as a cross-check.

#include <mzv/linalg.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace mzv {

// Thrown when a divisor cannot be expanded in the requested basis because
// its subset is neither consecutive for the basis ordering nor itself a
// basis element.
struct NotConsecutive : std::invalid_argument {
    explicit NotConsecutive(const std::string& m) : std::invalid_argument(m) {}
};

// Marked points are labelled 1..n.  A PointSet is a sorted list of labels.
using PointSet = std::vector<int>;

// A boundary divisor in canonical form: of the two complementary subsets
// defining it, the stored one is the representative not containing z_n.
struct BoundaryDivisor {
    int n = 0;
    PointSet subset;

    friend bool operator==(const BoundaryDivisor&,
                           const BoundaryDivisor&) = default;
    friend auto operator<=>(const BoundaryDivisor&,
                            const BoundaryDivisor&) = default;
};

// Validates 2 <= |A| <= n-2 and label range, then canonicalizes.
BoundaryDivisor make_divisor(int n, PointSet subset);

// Number of boundary divisors: 2^{n-1} - 1 - n.
long divisor_count(int n);

// All boundary divisors in canonical form.
std::vector<BoundaryDivisor> all_divisors(int n);

// A basis element together with its block decomposition for the basis
// ordering: blocks B_1..B_N are the maximal consecutive arcs of the
// canonical subset, listed in cyclic order; gaps G_1..G_N are the arcs
// between consecutive blocks (G_i follows B_i).
struct BasisElement {
    BoundaryDivisor divisor;
    std::vector<PointSet> blocks;
    std::vector<PointSet> gaps;
};

struct NonAdjacentBasis {
    int n = 0;
    std::vector<int> order;  // dihedral ordering: permutation of 1..n
    std::vector<BasisElement> elements;

    // Index of a canonical divisor among the elements, or -1.
    long index_of(const BoundaryDivisor& d) const;
};

// The non-adjacent basis for the given ordering.  The element count is
// 2^{n-1} - 1 - n(n-1)/2.
NonAdjacentBasis non_adjacent_basis(int n, std::vector<int> order);

// Expands a boundary divisor in the basis.  Returns one coefficient per
// basis element, in element order.  If the divisor's subset is consecutive
// for the basis ordering the parity rule applies; if it is itself a basis
// element the expansion is the identity.  Throws NotConsecutive otherwise.
std::vector<Q> expand(const BoundaryDivisor& I, const NonAdjacentBasis& basis);

// Coefficient of the divisor on a single basis element, computed by the
// merge recursion C = T1 + T2 + T3 - T4 with the two-block base case.
// Requires the divisor's subset to be consecutive for the basis ordering.
Q gibney_coeff(const BoundaryDivisor& I, const BasisElement& elem,
               const NonAdjacentBasis& basis);

// Checks, for every quadruple of distinct points, that the three pairing
// sums of boundary divisor classes agree after expansion in the
// non-adjacent basis of the standard ordering.
bool verify_keel(int n);

}  // namespace mzv
