#pragma once
// Depth-graded machinery: generating-series coefficients of the rational
// functions P and Q, the Lambda triangle with its descending/ascending
// vectors, the matrices M and N, depth-1/2 graded dimensions, and the
// depth-2 reduction coefficient.

#include <mzv/linalg.hpp>
#include <mzv/rational.hpp>

#include <vector>

namespace mzv {

// Lambda triangle: Lambda(n,k) = C(n,k) + C(n-1,k), zero out of range.
Z lambda_entry(long n, long k);

// Coefficient of X^{n-i} Y^i T^j in
//   P = (1 + Y T^2) / ((1 - (X T + Y T^2)) (1 - (X + Y))).
Z p_coeff(int n, int i, int j);

// Coefficient of X^{n-i} Y^i T^j in Q = P (1 + X).
Z q_coeff(int n, int i, int j);

// Independent truncated-series oracles for the same coefficients,
// computed by naive polynomial arithmetic on the defining geometric
// series (used to validate the closed forms).
Z p_series_coeff(int n, int i, int j);
Z q_series_coeff(int n, int i, int j);

// Ascending vector A_k: entries Lambda(k-m, m), m = 0..floor(k/2).
std::vector<Z> vec_A(int k);

// Descending vector D_{j,z}: z zeros followed by the entries
// Lambda(floor((j+1)/2)+l, (j mod 2)+2l), l = 0..floor(j/2).
std::vector<Z> vec_D(int j, int z);

// Scalar product A_k . D_{j,z} together with the monomial it multiplies.
struct ScalarAD {
    Z coeff;
    int xdeg, ydeg, tdeg;
};
ScalarAD scalar_AD(int k, int j, int z);

// b_i in terms of the Lyndon-Lie coefficients a_j:
// b_i = sum_{j=0}^{i} (-1)^{i-j} a_j (C(j+1,i-j) + C(j,i-j-1)).
Q b_from_a(const std::vector<Q>& a, int i);

// The matrix M of the depth-2 stuffle system (1-based formula
// M(i,j) = (-1)^{i-j}(C(j,i-j)+C(j-1,i-j-1))
//        + (-1)^{n-i-j}(C(j,n-i-j)+C(j-1,n-1-i-j)),
// of size (n-1)/2 for odd n and (n-2)/2 for even n).
QMatrix build_M(int n);

// The companion matrix N making M N lower triangular.
QMatrix build_N(int n);

// Depth-graded dimensions (d1, d2) of weight n; d2 is computed both by
// the nullity of M and the closed formula and cross-checked.
std::pair<int, int> depth_graded_dims(int n);

// Coefficient of zeta-bar(i+j) in zeta-bar(i,j) for odd weight:
// ((-1)^{j-1} C(i+j,j) - 1)/2.  Throws std::domain_error on even weight.
Q depth_two_reduction(int i, int j);

// Explicit solution of M a = -A(1,...,1) for odd n with A = 1:
// a_i = (-1)^i/2 C(n-i-1, i+1), i = 0..(n-3)/2.
std::vector<Q> depth_two_solution(int n);

}  // namespace mzv
