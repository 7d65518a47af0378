#include <mzv/cellzeta.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace mzv {

namespace {

long factorial(int k) {
    long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

int marked_count(const PolySum& form) {
    std::set<Label> labels;
    for (const auto& [cyc, c] : form)
        for (Label l : cyc) labels.insert(l);
    return static_cast<int>(labels.size());
}

// The standard cyclic order on a label subset containing {0, 1, inf}:
// 0, then the t's ascending, then 1, then inf.
Cycle standard_order(const std::set<Label>& labels) {
    Cycle out{LBL_ZERO};
    for (Label l : labels)
        if (l != LBL_ZERO && l != LBL_ONE && l != LBL_INF) out.push_back(l);
    out.push_back(LBL_ONE);
    out.push_back(LBL_INF);
    return out;
}

// Rotate a cycle so that 0 comes first and, as a dihedral representative,
// 1 precedes infinity.
Cycle align_cycle(Cycle g) {
    auto at = std::find(g.begin(), g.end(), LBL_ZERO);
    if (at == g.end())
        throw IntersectionNotThree("product_map: cycle lacks the point 0");
    std::rotate(g.begin(), at, g.end());
    auto one = std::find(g.begin(), g.end(), LBL_ONE);
    auto inf = std::find(g.begin(), g.end(), LBL_INF);
    if (one == g.end() || inf == g.end())
        throw IntersectionNotThree("product_map: cycle lacks 1 or infinity");
    if (inf < one) std::reverse(g.begin() + 1, g.end());
    return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// Dictionary between abstract letters and marked labels.

PolySum marked_from_abstract(const PolySum& p, int m) {
    std::map<Label, Label> d;
    d[1] = LBL_ZERO;
    for (int i = 2; i < m; ++i) d[i] = tpt(i - 1);
    d[m] = LBL_ONE;
    d[LBL_D] = LBL_INF;
    return relabel(p, d);
}

PolySum abstract_from_marked(const PolySum& p, int n) {
    int m = n - 1;
    std::map<Label, Label> d;
    d[LBL_ZERO] = 1;
    for (int i = 2; i < m; ++i) d[tpt(i - 1)] = i;
    d[LBL_ONE] = m;
    d[LBL_INF] = LBL_D;
    return relabel(p, d);
}

std::vector<std::pair<std::string, PolySum>> weight_generators(int n) {
    std::vector<std::pair<std::string, PolySum>> out;
    for (const auto& el : insertion_basis(n))
        out.emplace_back(el.desc,
                         marked_from_abstract(words_to_polygons(el.expansion),
                                              n - 1));
    return out;
}

bool is_convergent_form(const PolySum& form, int n) {
    return is_convergent_sum(abstract_from_marked(form, n));
}

// ---------------------------------------------------------------------------
// 01-basis indexing.

long basis01_size(int n) { return factorial(n - 2); }

namespace {

std::vector<Label> basis01_letters(int n) {
    std::vector<Label> L;
    for (int i = 1; i <= n - 3; ++i) L.push_back(tpt(i));
    L.push_back(LBL_INF);
    return L;  // ascending already
}

long lex_rank(const std::vector<Label>& word, std::vector<Label> sorted) {
    long r = 0;
    for (Label l : word) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), l);
        r += (it - sorted.begin()) * factorial(static_cast<int>(sorted.size()) - 1);
        sorted.erase(it);
    }
    return r;
}

std::vector<Label> lex_unrank(long r, std::vector<Label> sorted) {
    std::vector<Label> w;
    while (!sorted.empty()) {
        long f = factorial(static_cast<int>(sorted.size()) - 1);
        long i = r / f;
        r %= f;
        w.push_back(sorted[i]);
        sorted.erase(sorted.begin() + i);
    }
    return w;
}

}  // namespace

Cycle basis01_cycle(int n, long index) {
    std::vector<Label> s = lex_unrank(index, basis01_letters(n));
    std::vector<Label> seq{LBL_ONE};
    seq.insert(seq.end(), s.begin(), s.end());
    seq.push_back(LBL_ZERO);
    return canonical_cycle(seq).cycle;
}

long basis01_index(const Cycle& gamma, int n, int* sign) {
    std::vector<Label> s = word_01(gamma, LBL_ZERO, LBL_ONE, sign);
    return lex_rank(s, basis01_letters(n));
}

SparseVec coords_01(const PolySum& form, int n) {
    PolySum r = rewrite_01(form, LBL_ZERO, LBL_ONE);
    std::map<long, Q> acc;
    for (const auto& [cyc, c] : r) {
        int sign = 1;
        long idx = basis01_index(cyc, n, &sign);
        acc[idx] += c * sign;
    }
    SparseVec v;
    for (const auto& [i, c] : acc)
        if (c != 0) v.emplace_back(static_cast<int>(i), c);
    return v;
}

PolySum form_from_coords_01(const SparseVec& v, int n) {
    PolySum out;
    for (const auto& [i, c] : v) {
        Cycle g = basis01_cycle(n, i);
        int sign = 1;
        basis01_index(g, n, &sign);  // canonical sign of the basis polygon
        poly_add_term(out, g, c * sign);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dihedral group and orientation signs.

namespace {

// Value-plus-gradient jet over Q, for the exact Jacobian of the cell map
// induced by a label permutation.
struct Jet {
    bool inf = false;
    Q v;
    std::vector<Q> d;

    Jet() = default;
    Jet(const Q& val, int nvars) : v(val), d(nvars, Q(0)) {}
};

Jet operator-(const Jet& a, const Jet& b) {
    Jet r = a;
    r.v -= b.v;
    for (std::size_t i = 0; i < r.d.size(); ++i) r.d[i] -= b.d[i];
    return r;
}

Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.v * b.v, static_cast<int>(a.d.size()));
    for (std::size_t i = 0; i < r.d.size(); ++i)
        r.d[i] = a.d[i] * b.v + a.v * b.d[i];
    return r;
}

Jet operator/(const Jet& a, const Jet& b) {
    Jet r(a.v / b.v, static_cast<int>(a.d.size()));
    for (std::size_t i = 0; i < r.d.size(); ++i)
        r.d[i] = (a.d[i] * b.v - a.v * b.d[i]) / (b.v * b.v);
    return r;
}

// Cross-ratio sending a -> 0, b -> 1, c -> infinity, evaluated at x.
// At most one of the four arguments is the point at infinity.
Jet cross_ratio(const Jet& x, const Jet& a, const Jet& b, const Jet& c) {
    if (x.inf) return (b - c) / (b - a);
    if (a.inf) return (b - c) / (x - c);
    if (b.inf) return (x - a) / (x - c);
    if (c.inf) return (x - a) / (b - a);
    return ((x - a) * (b - c)) / ((x - c) * (b - a));
}

Q exact_det(std::vector<std::vector<Q>> m) {
    int n = static_cast<int>(m.size());
    Q det(1);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (m[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv == -1) return Q(0);
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int r = c + 1; r < n; ++r) {
            Q f = m[r][c] / m[c][c];
            for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

// The relation sign s of a label permutation sigma preserving the
// standard cell: integrating relabel(omega, sigma) over the cell equals
// s times the integral of omega.  Computed exactly from the identity
// relabel(omega_gamma, sigma) = r * (omega_gamma o psi) * det(D psi) at a
// rational interior point, where psi is the induced coordinate map; the
// ratio r is checked to be +-1 and independent of the probe polygon.
int relation_sign(const std::map<Label, Label>& perm, int n) {
    int ell = n - 3;
    auto value = [&](Label l) -> Jet {
        Jet j(Q(0), ell);
        if (l == LBL_ZERO) return j;
        if (l == LBL_ONE) {
            j.v = 1;
            return j;
        }
        if (l == LBL_INF) {
            j.inf = true;
            return j;
        }
        int i = l - tpt(0);
        j.v = Q(i, ell + 1);
        j.v.canonicalize();
        j.d[i - 1] = 1;
        return j;
    };
    Jet a = value(perm.at(LBL_ZERO));
    Jet b = value(perm.at(LBL_ONE));
    Jet c = value(perm.at(LBL_INF));
    std::map<Label, Q> t0, tpsi;
    t0[LBL_ZERO] = 0;
    t0[LBL_ONE] = 1;
    tpsi[LBL_ZERO] = 0;
    tpsi[LBL_ONE] = 1;
    std::vector<std::vector<Q>> jac(ell);
    for (int i = 1; i <= ell; ++i) {
        Jet ti = value(tpt(i));
        t0[tpt(i)] = ti.v;
        Jet im = cross_ratio(value(perm.at(tpt(i))), a, b, c);
        tpsi[tpt(i)] = im.v;
        jac[i - 1] = im.d;
    }
    Q det = exact_det(jac);
    if (det == 0) throw std::logic_error("relation_sign: singular Jacobian");

    // Probe polygons: the standard cell and a few fixed cyclic orders.
    std::vector<Cycle> probes{standard_cell(ell)};
    {
        Cycle g{LBL_ZERO, LBL_ONE};
        for (int i = 1; i <= ell; ++i) g.push_back(tpt(i));
        g.push_back(LBL_INF);
        probes.push_back(g);
        std::swap(g[1], g[2]);
        probes.push_back(g);
        std::reverse(g.begin() + 1, g.end());
        probes.push_back(g);
    }
    int sign = 0;
    for (const Cycle& gamma : probes) {
        PolySum rel = relabel(PolySum{{canonical_cycle(gamma).cycle,
                                       Q(canonical_cycle(gamma).sign)}},
                              perm);
        Q frel = eval_cell(rel, t0);
        Q fpsi = eval_cell(gamma, tpsi);
        Q r = frel / (fpsi * det);
        if (r != 1 && r != -1)
            throw std::logic_error("relation_sign: relabel is not a pullback");
        int s = (r > 0 ? 1 : -1) * (det > 0 ? 1 : -1);
        if (sign == 0)
            sign = s;
        else if (sign != s)
            throw std::logic_error("relation_sign: sign depends on the form");
    }
    return sign;
}

}  // namespace

std::vector<DihedralElement> dihedral_group(int n) {
    Cycle D = standard_cell(n - 3);
    std::vector<DihedralElement> out;
    for (int refl = 0; refl < 2; ++refl)
        for (int k = 0; k < n; ++k) {
            DihedralElement e;
            e.rotation = k;
            e.reflected = refl != 0;
            for (int i = 0; i < n; ++i) {
                int j = refl ? (k - i % n + 2 * n) % n : (k + i) % n;
                e.perm[D[i]] = D[j];
            }
            e.orientation = relation_sign(e.perm, n);
            out.push_back(std::move(e));
        }
    return out;
}

PolySum dihedral_image(const PolySum& form, const DihedralElement& sigma) {
    return relabel(form, sigma.perm);
}

std::vector<Relation> dihedral_orbit(const PolySum& form, int n) {
    if (!is_convergent_form(form, n))
        throw NotConvergent("dihedral_orbit: form is not convergent");
    std::vector<Relation> out;
    for (const auto& sigma : dihedral_group(n)) {
        PolySum rel = dihedral_image(form, sigma);
        poly_add(rel, form, Q(-sigma.orientation));
        std::ostringstream name;
        name << "dihedral r" << sigma.rotation << (sigma.reflected ? "s" : "")
             << " eps=" << sigma.orientation;
        out.push_back({name.str(), rewrite_01(rel, LBL_ZERO, LBL_ONE)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Product map.

namespace {

// All interleavings of two aligned cycles sharing exactly {0, 1, inf},
// preserving both cyclic orders; every output starts with 0.
std::vector<Cycle> raw_cyclic_shuffle(const Cycle& g1, const Cycle& g2) {
    auto arcs = [](const Cycle& g) {
        std::array<std::vector<Label>, 3> a;
        int which = 0;
        for (std::size_t i = 1; i < g.size(); ++i) {
            if (g[i] == LBL_ONE) {
                which = 1;
                continue;
            }
            if (g[i] == LBL_INF) {
                which = 2;
                continue;
            }
            a[which].push_back(g[i]);
        }
        return a;
    };
    auto a1 = arcs(g1), a2 = arcs(g2);
    std::array<std::vector<std::vector<Label>>, 3> parts;
    for (int k = 0; k < 3; ++k)
        for (const auto& [w, c] : shuffle(a1[k], a2[k])) parts[k].push_back(w);
    std::vector<Cycle> out;
    for (const auto& p0 : parts[0])
        for (const auto& p1 : parts[1])
            for (const auto& p2 : parts[2]) {
                Cycle g{LBL_ZERO};
                g.insert(g.end(), p0.begin(), p0.end());
                g.push_back(LBL_ONE);
                g.insert(g.end(), p1.begin(), p1.end());
                g.push_back(LBL_INF);
                g.insert(g.end(), p2.begin(), p2.end());
                out.push_back(std::move(g));
            }
    return out;
}

std::map<Label, Label> position_map(const Cycle& from, const Cycle& to) {
    std::map<Label, Label> p;
    for (std::size_t i = 0; i < from.size(); ++i) p[from[i]] = to[i];
    return p;
}

}  // namespace

PolySum product_map(const PolySum& w1, const Cycle& gamma1, const PolySum& w2,
                    const Cycle& gamma2) {
    std::set<Label> T1(gamma1.begin(), gamma1.end());
    std::set<Label> T2(gamma2.begin(), gamma2.end());
    std::vector<Label> common;
    std::set_intersection(T1.begin(), T1.end(), T2.begin(), T2.end(),
                          std::back_inserter(common));
    if (common != std::vector<Label>{LBL_ZERO, LBL_ONE, LBL_INF})
        throw IntersectionNotThree(
            "product_map: common labels must be exactly {0, 1, infinity}");
    Cycle g1 = align_cycle(gamma1);
    Cycle g2 = align_cycle(gamma2);

    // tau_i: the unique 0-fixing permutation with tau_i(delta_i) = gamma_i.
    PolySum f1 = relabel(w1, position_map(standard_order(T1), g1));
    PolySum f2 = relabel(w2, position_map(standard_order(T2), g2));

    // F = tau_1(w1) sh tau_2(w2) with respect to the three common labels.
    PolySum F;
    for (const auto& [c1, q1] : f1)
        for (const auto& [c2, q2] : f2)
            poly_add(F, shuffle_cyclic(c1, c2), q1 * q2);

    std::set<Label> all(T1.begin(), T1.end());
    all.insert(T2.begin(), T2.end());
    int n = static_cast<int>(all.size());
    Cycle delta = standard_cell(n - 3);

    PolySum out;
    for (const Cycle& g : raw_cyclic_shuffle(g1, g2)) {
        // tau_gamma(delta) = gamma with tau_gamma(0) = 0.
        auto tau_inv = position_map(g, delta);
        poly_add(out, relabel(F, tau_inv), Q(1));
    }
    return rewrite_01(out, LBL_ZERO, LBL_ONE);
}

// ---------------------------------------------------------------------------
// Multizeta forms and values.

namespace {

// The 0/1 pattern of the standard integrand of zeta(k_1, ..., k_r) read
// from t_1 to t_w: reversed composition, each part k contributing a 1
// followed by k - 1 zeros.  Pattern value 1 means a 1/(1 - t) factor.
std::vector<int> mzv_pattern(const IntComposition& k) {
    std::vector<int> p;
    for (auto it = k.rbegin(); it != k.rend(); ++it) {
        p.push_back(1);
        for (int j = 1; j < *it; ++j) p.push_back(0);
    }
    return p;
}

}  // namespace

PolySum mzv_form(const IntComposition& k) {
    if (k.empty() || k.front() < 2)
        throw std::invalid_argument("mzv_form: composition must converge");
    for (int part : k)
        if (part < 1) throw std::invalid_argument("mzv_form: bad part");
    std::vector<int> p = mzv_pattern(k);
    int w = static_cast<int>(p.size());
    std::vector<Label> ones, zeros;
    for (int i = 0; i < w; ++i) (p[i] ? ones : zeros).push_back(tpt(i + 1));
    // Summing the cell functions over both permutation families yields
    // (-1)^w times the positive integrand of zeta, by partial fractions.
    Q sign = (w % 2 == 0) ? Q(1) : Q(-1);
    PolySum out;
    std::sort(ones.begin(), ones.end());
    std::sort(zeros.begin(), zeros.end());
    do {
        std::vector<Label> zs = zeros;
        do {
            std::vector<Label> seq{LBL_ZERO, LBL_ONE};
            seq.insert(seq.end(), ones.begin(), ones.end());
            seq.push_back(LBL_INF);
            seq.insert(seq.end(), zs.begin(), zs.end());
            add_polygon(out, seq, sign);
        } while (std::next_permutation(zs.begin(), zs.end()));
    } while (std::next_permutation(ones.begin(), ones.end()));
    return out;
}

namespace {

constexpr int kSeriesTerms = 200;

// Iterated integral from 0 to 1/2 of the factors 1/(1-t) (letter 1) and
// 1/t (letter 0), letters listed innermost first, as a power series in the
// upper endpoint truncated at kSeriesTerms (tail < 2^-kSeriesTerms).
double half_path_integral(const std::vector<int>& word) {
    std::vector<double> c(kSeriesTerms, 0.0);
    c[0] = 1.0;
    for (int b : word) {
        std::vector<double> nc(kSeriesTerms, 0.0);
        if (b == 1) {
            double run = 0.0;
            for (int m = 0; m + 1 < kSeriesTerms; ++m) {
                run += c[m];
                nc[m + 1] = run / (m + 1);
            }
        } else {
            for (int m = 1; m < kSeriesTerms; ++m) nc[m] = c[m] / m;
        }
        c = std::move(nc);
    }
    double z = 0.5, pw = 1.0, sum = 0.0;
    for (int m = 0; m < kSeriesTerms; ++m) {
        sum += c[m] * pw;
        pw *= z;
    }
    return sum;
}

}  // namespace

double mzv_value(const IntComposition& k) {
    if (k.empty() || k.front() < 2)
        throw std::invalid_argument("mzv_value: composition must converge");
    std::vector<int> p = mzv_pattern(k);
    int w = static_cast<int>(p.size());
    // Composition-of-paths formula at 1/2: the second half maps to a
    // reversed, letter-swapped word on the first half.
    double total = 0.0;
    for (int j = 0; j <= w; ++j) {
        std::vector<int> left(p.begin(), p.begin() + j);
        std::vector<int> right;
        for (int i = w - 1; i >= j; --i) right.push_back(1 - p[i]);
        total += half_path_integral(left) * half_path_integral(right);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Numeric oracle.

namespace {

double eval_cell_double(const Cycle& g, const std::vector<double>& tvals) {
    int n = static_cast<int>(g.size());
    auto val = [&](Label l) -> double {
        if (l == LBL_ZERO) return 0.0;
        if (l == LBL_ONE) return 1.0;
        return tvals[l - tpt(0) - 1];
    };
    auto at = std::find(g.begin(), g.end(), LBL_INF);
    double prod = 1.0;
    if (at != g.end()) {
        int pos = static_cast<int>(at - g.begin());
        std::vector<double> w;
        for (int i = 1; i < n; ++i) w.push_back(val(g[(pos + i) % n]));
        for (int i = 0; i + 1 < n - 1; ++i) prod *= w[i + 1] - w[i];
    } else {
        for (int i = 0; i < n; ++i)
            prod *= val(g[(i + 1) % n]) - val(g[i]);
    }
    return 1.0 / prod;
}

}  // namespace

NumericResult numeric_check(const PolySum& form,
                            const Poly<IntComposition>& expected, long samples,
                            unsigned long seed) {
    NumericResult res;
    res.samples = samples;
    for (const auto& [comp, c] : expected)
        res.expected += c.get_d() * mzv_value(comp);
    if (form.empty()) {
        res.estimate = 0;
        res.std_error = 0;
        res.pass = std::fabs(res.expected) < 1e-9;
        return res;
    }
    int n = marked_count(form);
    int ell = n - 3;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double mean = 0.0, m2 = 0.0;
    std::vector<double> t(ell);
    for (long i = 0; i < samples; ++i) {
        for (int j = 0; j < ell; ++j) t[j] = uni(rng);
        std::sort(t.begin(), t.end());
        double f = 0.0;
        for (const auto& [cyc, c] : form)
            f += c.get_d() * eval_cell_double(cyc, t);
        double d = f - mean;
        mean += d / static_cast<double>(i + 1);
        m2 += d * (f - mean);
    }
    if (!std::isfinite(mean) || !std::isfinite(m2))
        throw NumericUnstable("numeric_check: divergent variance estimate");
    double fact = static_cast<double>(factorial(ell));
    res.estimate = mean / fact;
    res.std_error =
        std::sqrt(m2 / (static_cast<double>(samples) - 1.0) /
                  static_cast<double>(samples)) /
        fact;
    res.pass = std::fabs(res.estimate - res.expected) <
               3.0 * res.std_error + 1e-12;
    return res;
}

// ---------------------------------------------------------------------------
// Weight-graded reduction.

struct ReductionImpl {
    int n = 0;
    int ell = 0;
    int nsym = 0;
    std::vector<std::string> sym_names;
    RowReducer rel;           // span of all relation rows
    RowReducer basis{true};   // residual class representatives (rel-reduced)
    std::map<int, int> add_index_to_class;

    SparseVec full_coords(const PolySum& form) const {
        SparseVec v = coords_01(form, n);
        for (auto& [i, c] : v) i += nsym;
        return v;
    }

    std::vector<Q> classes_of(const SparseVec& v, int dim) const {
        std::map<int, Q> coords;
        SparseVec residual = basis.reduce(rel.reduce(v), &coords);
        if (!residual.empty())
            throw std::runtime_error(
                "reduce: form is not in the span of the convergent classes");
        std::vector<Q> out(dim, Q(0));
        for (const auto& [idx, c] : coords) out[add_index_to_class.at(idx)] = c;
        return out;
    }
};

std::vector<Q> Reduction::reduce(const PolySum& form) const {
    if (!is_convergent_form(form, n))
        throw NotConvergent("reduce: form is not convergent");
    return impl->classes_of(impl->full_coords(form), dim);
}

namespace {

// Greedily chosen generators whose residual classes are independent; used
// as product-map inputs for higher weights.
std::vector<int> representative_generators(const Reduction& red) {
    RowReducer r;
    std::vector<int> out;
    for (std::size_t i = 0; i < red.table.size(); ++i) {
        if (r.add(sparse_from_dense(red.table[i].second))) out.push_back(i);
        if (static_cast<int>(out.size()) == red.dim) break;
    }
    return out;
}

// All cyclic orders on the label set with 0 first and 1 before infinity
// (one representative per dihedral structure).
std::vector<Cycle> aligned_orders(const std::set<Label>& labels) {
    std::vector<Label> rest;
    for (Label l : labels)
        if (l != LBL_ZERO) rest.push_back(l);
    std::sort(rest.begin(), rest.end());
    std::vector<Cycle> out;
    do {
        auto one = std::find(rest.begin(), rest.end(), LBL_ONE);
        auto inf = std::find(rest.begin(), rest.end(), LBL_INF);
        if (inf < one) continue;
        Cycle g{LBL_ZERO};
        g.insert(g.end(), rest.begin(), rest.end());
        out.push_back(std::move(g));
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

Reduction build_reduction(int n) {
    auto impl = std::make_shared<ReductionImpl>();
    impl->n = n;
    impl->ell = n - 3;
    int ell = impl->ell;

    // Product symbols: unordered pairs of residual classes of the two
    // lower weights of every splitting of the weight.
    struct SymKey {
        int a, b, i, j;
        bool operator<(const SymKey& o) const {
            return std::tie(a, b, i, j) < std::tie(o.a, o.b, o.i, o.j);
        }
    };
    std::map<SymKey, int> sym_index;
    for (int a = 2; a <= ell - a; ++a) {
        int b = ell - a;
        const Reduction& ra = reduce_weight(a + 3);
        const Reduction& rb = reduce_weight(b + 3);
        for (int i = 0; i < ra.dim; ++i)
            for (int j = (a == b ? i : 0); j < rb.dim; ++j) {
                SymKey key{a, b, i, j};
                sym_index[key] = static_cast<int>(impl->sym_names.size());
                impl->sym_names.push_back("(" + ra.class_names[i] + ")*(" +
                                          rb.class_names[j] + ")");
            }
    }
    impl->nsym = static_cast<int>(impl->sym_names.size());

    auto gens = weight_generators(n);
    std::vector<SparseVec> gcoords;
    for (const auto& [name, form] : gens)
        gcoords.push_back(impl->full_coords(form));

    // Dihedral relation rows: sigma(g) - eps_sigma * g.
    for (const auto& sigma : dihedral_group(n)) {
        if (sigma.rotation == 0 && !sigma.reflected) continue;
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            std::map<int, Q> acc;
            for (const auto& [i, c] :
                 impl->full_coords(dihedral_image(gens[gi].second, sigma)))
                acc[i] += c;
            for (const auto& [i, c] : gcoords[gi])
                acc[i] -= Q(sigma.orientation) * c;
            SparseVec row;
            for (const auto& [i, c] : acc)
                if (c != 0) row.emplace_back(i, c);
            impl->rel.add(std::move(row));
        }
    }

    // Product-map relation rows.  For n >= 9 the full enumeration of
    // aligned-order pairs is too large, so the pairs are visited in a
    // deterministic pseudo-random order and the loop stops once the
    // relation rank stops growing; the relations are valid for any
    // subset, and the computed dimension is checked downstream.
    struct SplitData {
        int a, b;
        std::map<Label, Label> m1, m2;  // small t-labels -> split labels
        const Reduction* ra;
        const Reduction* rb;
        std::vector<std::pair<PolySum, const std::vector<Q>*>> us, vs;
        std::vector<Cycle> orders1, orders2;
    };
    std::vector<SplitData> splits;
    // (split index, order1, order2, generator1, generator2)
    std::vector<std::array<int, 5>> tasks;
    for (unsigned mask = 1; mask < (1u << ell); ++mask) {
        if (!(mask & 1u)) continue;  // fix t_1 in S1: unordered splittings
        SplitData sd;
        sd.a = __builtin_popcount(mask);
        sd.b = ell - sd.a;
        if (sd.a < 2 || sd.b < 2) continue;
        std::set<Label> T1{LBL_ZERO, LBL_ONE, LBL_INF};
        std::set<Label> T2{LBL_ZERO, LBL_ONE, LBL_INF};
        int i1 = 0, i2 = 0;
        for (int i = 1; i <= ell; ++i)
            if (mask & (1u << (i - 1))) {
                T1.insert(tpt(i));
                sd.m1[tpt(++i1)] = tpt(i);
            } else {
                T2.insert(tpt(i));
                sd.m2[tpt(++i2)] = tpt(i);
            }
        sd.ra = &reduce_weight(sd.a + 3);
        sd.rb = &reduce_weight(sd.b + 3);
        auto gens_a = weight_generators(sd.a + 3);
        auto gens_b = weight_generators(sd.b + 3);
        // With the full enumeration one representative generator per
        // residual class suffices; the sampled runs draw from products
        // of all generators, which relate the generator images directly.
        std::vector<int> us_idx, vs_idx;
        if (n >= 9) {
            us_idx.resize(gens_a.size());
            vs_idx.resize(gens_b.size());
            std::iota(us_idx.begin(), us_idx.end(), 0);
            std::iota(vs_idx.begin(), vs_idx.end(), 0);
        } else {
            us_idx = representative_generators(*sd.ra);
            vs_idx = representative_generators(*sd.rb);
        }
        for (int ui : us_idx)
            sd.us.emplace_back(relabel(gens_a[ui].second, sd.m1),
                               &sd.ra->table[ui].second);
        for (int vi : vs_idx)
            sd.vs.emplace_back(relabel(gens_b[vi].second, sd.m2),
                               &sd.rb->table[vi].second);
        sd.orders1 = aligned_orders(T1);
        sd.orders2 = aligned_orders(T2);
        int si = static_cast<int>(splits.size());
        for (int o1 = 0; o1 < static_cast<int>(sd.orders1.size()); ++o1)
            for (int o2 = 0; o2 < static_cast<int>(sd.orders2.size()); ++o2)
                for (int ui = 0; ui < static_cast<int>(sd.us.size()); ++ui)
                    for (int vi = 0; vi < static_cast<int>(sd.vs.size()); ++vi)
                        tasks.push_back({si, o1, o2, ui, vi});
        splits.push_back(std::move(sd));
    }
    const bool sampled = n >= 9;
    if (sampled) {
        std::mt19937 rng(20260823u);
        std::shuffle(tasks.begin(), tasks.end(), rng);
    }
    const long patience = 1500;  // stop after this many rankless rows
    long since_gain = 0;
    for (const auto& [si, o1, o2, ui, vi] : tasks) {
        if (sampled && since_gain >= patience) break;
        const SplitData& sd = splits[si];
        const auto& [u, cu] = sd.us[ui];
        const auto& [v, cv] = sd.vs[vi];
        PolySum p = product_map(u, sd.orders1[o1], v, sd.orders2[o2]);
        std::map<int, Q> acc;
        for (const auto& [i, c] : impl->full_coords(p)) acc[i] += c;
        for (int i = 0; i < sd.ra->dim; ++i)
            for (int j = 0; j < sd.rb->dim; ++j) {
                if ((*cu)[i] == 0 || (*cv)[j] == 0) continue;
                SymKey key = sd.a <= sd.b ? SymKey{sd.a, sd.b, i, j}
                                          : SymKey{sd.b, sd.a, j, i};
                if (key.a == key.b && key.i > key.j) std::swap(key.i, key.j);
                acc[sym_index.at(key)] -= (*cu)[i] * (*cv)[j];
            }
        SparseVec row;
        for (const auto& [i, c] : acc)
            if (c != 0) row.emplace_back(i, c);
        if (impl->rel.add(std::move(row)))
            since_gain = 0;
        else
            ++since_gain;
    }

    // Dimension: rank of the generator images modulo the relations.
    RowReducer genspan;
    std::vector<SparseVec> reduced;
    for (const auto& v : gcoords) {
        SparseVec r = impl->rel.reduce(v);
        genspan.add(r);
        reduced.push_back(std::move(r));
    }
    Reduction red;
    red.n = n;
    red.dim = genspan.rank();
    red.impl = impl;

    // Residual basis: prefer product symbols (when they lie in the image
    // of the convergent forms), then generator images.
    int add_calls = 0;
    auto try_candidate = [&](SparseVec cand_reduced, const std::string& name) {
        if (static_cast<int>(red.class_names.size()) == red.dim) return;
        if (!genspan.contains(cand_reduced)) return;
        int idx = add_calls++;
        if (impl->basis.add(std::move(cand_reduced))) {
            impl->add_index_to_class[idx] =
                static_cast<int>(red.class_names.size());
            red.class_names.push_back(name);
        }
    };
    for (int s = 0; s < impl->nsym; ++s)
        try_candidate(impl->rel.reduce({{s, Q(1)}}), impl->sym_names[s]);
    for (std::size_t gi = 0; gi < gens.size(); ++gi)
        try_candidate(reduced[gi], "[" + gens[gi].first + "]");

    for (std::size_t gi = 0; gi < gens.size(); ++gi)
        red.table.emplace_back(gens[gi].first,
                               impl->classes_of(gcoords[gi], red.dim));
    return red;
}

}  // namespace

const Reduction& reduce_weight(int n) {
    if (n < 5 || n > 9)
        throw std::invalid_argument("reduce_weight: need 5 <= n <= 9");
    static std::map<int, Reduction> cache;
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, build_reduction(n)).first;
    return it->second;
}

}  // namespace mzv
