#pragma once
// The formal cell-zeta algebra: standard pairs (delta, omega) on the marked
// points {0, 1, t_1..t_ell, infinity}, dihedral and product-map relations,
// exact weight-graded reduction, multizeta forms, and a numeric
// integration oracle.

#include <mzv/insertion.hpp>
#include <mzv/linalg.hpp>
#include <mzv/polygons.hpp>
#include <mzv/words.hpp>

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace mzv {

struct NotConvergent : std::runtime_error {
    explicit NotConvergent(const std::string& what) : std::runtime_error(what) {}
};
struct IntersectionNotThree : std::invalid_argument {
    explicit IntersectionNotThree(const std::string& what)
        : std::invalid_argument(what) {}
};
struct NumericUnstable : std::runtime_error {
    explicit NumericUnstable(const std::string& what)
        : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Marked-label forms.  A weight n-3 form lives on the n marked points
// {0, 1, t_1, ..., t_{n-3}, infinity}; the standard cell is
// (0, t_1, ..., t_{n-3}, 1, infinity).

// Translate a polygon sum on the abstract letters {1..m, d} (the insertion
// module's world, standard polygon (1, ..., m, d)) to marked labels so that
// the standard polygon maps to the standard cell:
// 1 -> 0,  i -> t_{i-1} for 1 < i < m,  m -> 1,  d -> infinity.
PolySum marked_from_abstract(const PolySum& p, int m);
PolySum abstract_from_marked(const PolySum& p, int n);

// The insertion basis of weight n-3 as named marked forms (dim_delta(n)
// elements spanning the convergent subspace).
std::vector<std::pair<std::string, PolySum>> weight_generators(int n);

// Convergence of a marked form on the standard cell.
bool is_convergent_form(const PolySum& form, int n);

// ---------------------------------------------------------------------------
// The 01-basis of forms: the (n-2)! polygons (0, 1, s) over words s in the
// remaining labels {t_1..t_ell, infinity}, in lexicographic order of s.

long basis01_size(int n);
Cycle basis01_cycle(int n, long index);
long basis01_index(const Cycle& gamma, int n, int* sign);

// Coordinates of a form in the 01-basis (rewrites first); inverse.
SparseVec coords_01(const PolySum& form, int n);
PolySum form_from_coords_01(const SparseVec& v, int n);

// ---------------------------------------------------------------------------
// Dihedral relations.

struct DihedralElement {
    int rotation = 0;        // positions shifted along the standard cell
    bool reflected = false;
    std::map<Label, Label> perm;  // action on marked labels
    int orientation = 1;     // sign of the Jacobian of the induced map on
                             // the standard cell (exact computation)
};

// All 2n elements of the dihedral group of the standard cell.
std::vector<DihedralElement> dihedral_group(int n);

// relabel(form, sigma.perm), canonicalized but not rewritten.
PolySum dihedral_image(const PolySum& form, const DihedralElement& sigma);

struct Relation {
    std::string name;
    PolySum form;  // a combination that is zero in the formal algebra
};

// The 2n relations sigma(omega) - eps_sigma * omega for a convergent form,
// rewritten in the 01-basis.  Throws NotConvergent.
std::vector<Relation> dihedral_orbit(const PolySum& form, int n);

// ---------------------------------------------------------------------------
// Product map.  gamma1, gamma2 are cyclic orders on T1, T2 with
// T1 cap T2 = {0, 1, infinity} and T1 cup T2 = all marked labels of the
// target space.  The result is the standard-pair sum
//   sum_{gamma in gamma1 sh gamma2} tau_gamma^{-1}(tau_1(w1) sh tau_2(w2)),
// rewritten in the 01-basis.  Cells carry the orientation of their
// dihedral structure: gamma2 is reversed if needed so that both cycles
// induce the same cyclic order on {0, 1, infinity}.
PolySum product_map(const PolySum& w1, const Cycle& gamma1, const PolySum& w2,
                    const Cycle& gamma2);

// ---------------------------------------------------------------------------
// Weight-graded reduction.

struct Reduction {
    int n = 0;    // number of marked points; weight is n - 3
    int dim = 0;  // dimension of the weight-graded piece
    std::vector<std::string> class_names;  // residual basis, size dim
    // every insertion-basis generator expressed over the residual basis
    std::vector<std::pair<std::string, std::vector<Q>>> table;

    // Class coordinates of an arbitrary convergent form.
    std::vector<Q> reduce(const PolySum& form) const;

    std::shared_ptr<const struct ReductionImpl> impl;
};

// Assemble all dihedral relations on the insertion basis plus all
// product-map relations from lower weights and reduce; memoized.
// 5 <= n <= 9 (n = 9 is long-running).
const Reduction& reduce_weight(int n);

// ---------------------------------------------------------------------------
// Multizeta values.

// The cell-form of zeta(k_1, ..., k_r) on M_{0, w+3}, w = sum k_i:
// [0, 1, t_{i_1} sh ... sh t_{i_r}, infinity, t_{j_1} sh ... sh t_{j_s}]
// where the i's are the positions of the (1 - t) factors of the standard
// integrand and the j's those of the t factors.
PolySum mzv_form(const IntComposition& k);

// zeta(k_1, ..., k_r) as a double, |error| < 1e-12 (series evaluation with
// geometric tails via composition of paths at 1/2).
double mzv_value(const IntComposition& k);

// ---------------------------------------------------------------------------
// Numeric oracle: Monte Carlo integration of the form over the standard
// cell versus an expected rational combination of multizeta values.

struct NumericResult {
    double estimate = 0;
    double expected = 0;
    double std_error = 0;
    long samples = 0;
    bool pass = false;
};

NumericResult numeric_check(const PolySum& form,
                            const Poly<IntComposition>& expected, long samples,
                            unsigned long seed = 42);

}  // namespace mzv
