#include <mzv/partialcohom.hpp>

#include <mzv/cellzeta.hpp>
#include <mzv/insertion.hpp>
#include <mzv/words.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace mzv {

namespace {

long factorial(int k) {
    long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// The labels a 01-polygon carries besides 0 and 1, in ascending order.
std::vector<Label> free_labels(int n) {
    std::vector<Label> out;
    for (int i = 1; i <= n - 3; ++i) out.push_back(tpt(i));
    out.push_back(LBL_INF);
    return out;
}

std::vector<Label> sorted_difference(const std::vector<Label>& a,
                                     const std::vector<Label>& b) {
    std::vector<Label> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
    return out;
}

// True iff some contiguous window of w has exactly the label set K.
bool has_set_block(const std::vector<Label>& w, const std::vector<Label>& K) {
    int k = static_cast<int>(K.size());
    if (k > static_cast<int>(w.size())) return false;
    for (std::size_t i = 0; i + k <= w.size(); ++i) {
        std::vector<Label> win(w.begin() + i, w.begin() + i + k);
        std::sort(win.begin(), win.end());
        if (win == K) return true;
    }
    return false;
}

using Word = std::vector<Label>;
// A shuffle element: an unordered collection of factor words.
using ShuffleFactors = std::vector<Word>;

// All partitions of {0, ..., p-1} into blocks, by restricted growth.
void set_partitions_rec(int i, int p, std::vector<std::vector<int>>& cur,
                        std::vector<std::vector<std::vector<int>>>& out) {
    if (i == p) {
        out.push_back(cur);
        return;
    }
    for (std::size_t b = 0; b < cur.size(); ++b) {
        cur[b].push_back(i);
        set_partitions_rec(i + 1, p, cur, out);
        cur[b].pop_back();
    }
    cur.push_back({i});
    set_partitions_rec(i + 1, p, cur, out);
    cur.pop_back();
}

// Lyndon shuffles of degree >= min_deg on the ordered letters L: every
// factor is a word whose first letter is its smallest in the order given
// by the position in L (multilinear letters, so "Lyndon" means exactly
// minimal-first).  Factors are listed by ascending leading letter.
std::vector<ShuffleFactors> lyndon_shuffles_on(const std::vector<Label>& L,
                                               int min_deg) {
    int p = static_cast<int>(L.size());
    std::vector<std::vector<std::vector<int>>> parts;
    std::vector<std::vector<int>> cur;
    set_partitions_rec(0, p, cur, parts);
    std::vector<ShuffleFactors> out;
    for (const auto& part : parts) {
        if (static_cast<int>(part.size()) < min_deg) continue;
        // For each block the smallest index (the first, since blocks are
        // filled in increasing order) leads; the rest permute freely.
        std::vector<std::vector<Word>> choices;
        for (const auto& block : part) {
            std::vector<int> rest(block.begin() + 1, block.end());
            std::sort(rest.begin(), rest.end());
            std::vector<Word> words;
            do {
                Word w{L[block[0]]};
                for (int r : rest) w.push_back(L[r]);
                words.push_back(std::move(w));
            } while (std::next_permutation(rest.begin(), rest.end()));
            choices.push_back(std::move(words));
        }
        std::vector<std::size_t> pick(choices.size(), 0);
        for (;;) {
            ShuffleFactors f;
            for (std::size_t b = 0; b < choices.size(); ++b)
                f.push_back(choices[b][pick[b]]);
            std::sort(f.begin(), f.end(), [&](const Word& x, const Word& y) {
                auto pos = [&](Label l) {
                    return std::find(L.begin(), L.end(), l) - L.begin();
                };
                return pos(x[0]) < pos(y[0]);
            });
            out.push_back(std::move(f));
            std::size_t b = 0;
            while (b < pick.size() && ++pick[b] == choices[b].size())
                pick[b++] = 0;
            if (b == pick.size()) break;
        }
    }
    return out;
}

Poly<Word> expand_shuffle(const ShuffleFactors& f) {
    Poly<Word> acc{{Word{}, Q(1)}};
    for (const Word& w : f) acc = shuffle(acc, Poly<Word>{{w, Q(1)}});
    return acc;
}

// Replace the unique occurrence of marker in every word of outer by each
// word of inner.
Poly<Word> substitute(const Poly<Word>& outer, Label marker,
                      const Poly<Word>& inner) {
    Poly<Word> out;
    for (const auto& [u, cu] : outer) {
        auto it = std::find(u.begin(), u.end(), marker);
        for (const auto& [v, cv] : inner) {
            Word w(u.begin(), it);
            w.insert(w.end(), v.begin(), v.end());
            w.insert(w.end(), it + 1, u.end());
            poly_add_term(out, w, cu * cv);
        }
    }
    return out;
}

PolySum close_01(const Word& sigma, const Q& coeff) {
    PolySum p;
    std::vector<Label> seq{LBL_ZERO, LBL_ONE};
    seq.insert(seq.end(), sigma.begin(), sigma.end());
    add_polygon(p, seq, coeff);
    return p;
}

// Insert every term of the expansion in the place of marker inside the
// fixed structure tau, closed up into the 01-polygon (0, 1, ...).
PolySum insert_into(const Word& tau, Label marker, const Poly<Word>& expansion) {
    PolySum out;
    for (const auto& [w, c] : expansion) {
        Word sigma;
        for (Label l : tau) {
            if (l == marker)
                sigma.insert(sigma.end(), w.begin(), w.end());
            else
                sigma.push_back(l);
        }
        poly_add(out, close_01(sigma, c), Q(1));
    }
    return out;
}

// All arrangements tau of the given letters that satisfy pred.
template <class Pred>
std::vector<Word> structures(std::vector<Label> letters, Pred pred) {
    std::sort(letters.begin(), letters.end());
    std::vector<Word> out;
    do {
        if (pred(letters)) out.push_back(letters);
    } while (std::next_permutation(letters.begin(), letters.end()));
    return out;
}

// 01-polygons (0, 1, sigma) whose sigma satisfies pred, one PolySum each.
template <class Pred>
void block_free_forms(int n, Pred pred, std::vector<PolySum>& out) {
    std::vector<Label> sigma = free_labels(n);
    do {
        if (pred(sigma)) out.push_back(close_01(sigma, Q(1)));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
}

std::vector<PolySum> case1_basis(int n, const Divisor& R) {
    std::vector<PolySum> out;
    block_free_forms(
        n, [&](const Word& s) { return !has_set_block(s, R); }, out);
    auto shuffles = lyndon_shuffles_on(R, 2);
    std::vector<Label> fixed = sorted_difference(free_labels(n), R);
    fixed.push_back(LBL_E);
    for (const Word& tau : structures(fixed, [](const Word&) { return true; }))
        for (const auto& f : shuffles)
            out.push_back(insert_into(tau, LBL_E, expand_shuffle(f)));
    return out;
}

std::vector<PolySum> case2_basis(int n, const Divisor& R, const Divisor& S) {
    std::vector<PolySum> out;
    block_free_forms(
        n,
        [&](const Word& s) {
            return !has_set_block(s, R) && !has_set_block(s, S);
        },
        out);
    auto single = [&](const Divisor& A, const Divisor& B) {
        auto shuffles = lyndon_shuffles_on(A, 2);
        std::vector<Label> fixed = sorted_difference(free_labels(n), A);
        fixed.push_back(LBL_E);
        for (const Word& tau : structures(
                 fixed, [&](const Word& t) { return !has_set_block(t, B); }))
            for (const auto& f : shuffles)
                out.push_back(insert_into(tau, LBL_E, expand_shuffle(f)));
    };
    single(R, S);
    single(S, R);
    auto shr = lyndon_shuffles_on(R, 2);
    auto shs = lyndon_shuffles_on(S, 2);
    std::vector<Label> fixed =
        sorted_difference(sorted_difference(free_labels(n), R), S);
    fixed.push_back(LBL_E);
    fixed.push_back(LBL_F);
    for (const Word& tau : structures(fixed, [](const Word&) { return true; }))
        for (const auto& fr : shr)
            for (const auto& fs : shs) {
                PolySum step;
                for (const auto& [w, c] : expand_shuffle(fr)) {
                    Word mid;
                    for (Label l : tau)
                        if (l == LBL_E)
                            mid.insert(mid.end(), w.begin(), w.end());
                        else
                            mid.push_back(l);
                    poly_add(step, insert_into(mid, LBL_F, expand_shuffle(fs)),
                             c);
                }
                out.push_back(std::move(step));
            }
    return out;
}

std::vector<PolySum> case3_basis(int n, const Divisor& R, const Divisor& S) {
    std::vector<Label> inter, r_only, s_only;
    std::set_intersection(R.begin(), R.end(), S.begin(), S.end(),
                          std::back_inserter(inter));
    r_only = sorted_difference(R, inter);
    s_only = sorted_difference(S, inter);
    Divisor RS = R;
    RS.insert(RS.end(), s_only.begin(), s_only.end());
    std::sort(RS.begin(), RS.end());

    // The imposed lexicographic order: R minus S, then the intersection,
    // then S minus R.
    std::vector<Label> ordR = r_only, ordS = inter, ordRS = r_only;
    ordR.insert(ordR.end(), inter.begin(), inter.end());
    ordS.insert(ordS.end(), s_only.begin(), s_only.end());
    ordRS.insert(ordRS.end(), inter.begin(), inter.end());
    ordRS.insert(ordRS.end(), s_only.begin(), s_only.end());

    std::vector<PolySum> out;
    block_free_forms(
        n,
        [&](const Word& s) {
            return !has_set_block(s, R) && !has_set_block(s, S) &&
                   !has_set_block(s, RS);
        },
        out);

    // Insertions of a single divisor whose fixed structure never makes
    // the remainder of the other divisor (with the cut edge) a block.
    auto single = [&](const std::vector<Label>& ordA, const Divisor& A,
                      const std::vector<Label>& b_only) {
        auto shuffles = lyndon_shuffles_on(ordA, 2);
        std::vector<Label> fixed = sorted_difference(free_labels(n), A);
        fixed.push_back(LBL_E);
        std::vector<Label> forbid = b_only;
        forbid.push_back(LBL_E);
        std::sort(forbid.begin(), forbid.end());
        for (const Word& tau : structures(fixed, [&](const Word& t) {
                 return !has_set_block(t, forbid);
             }))
            for (const auto& f : shuffles)
                out.push_back(insert_into(tau, LBL_E, expand_shuffle(f)));
    };
    single(ordR, R, s_only);
    single(ordS, S, r_only);

    // One-level insertions on R u S whose factors contain no block equal
    // to R or to S.
    std::vector<Label> fixed = sorted_difference(free_labels(n), RS);
    fixed.push_back(LBL_E);
    auto all_structs = structures(fixed, [](const Word&) { return true; });
    for (const auto& f : lyndon_shuffles_on(ordRS, 2)) {
        bool bad = false;
        for (const Word& w : f)
            if (has_set_block(w, R) || has_set_block(w, S)) bad = true;
        if (bad) continue;
        for (const Word& tau : all_structs)
            out.push_back(insert_into(tau, LBL_E, expand_shuffle(f)));
    }

    // Two-level insertions: Lyndon shuffles on S inside the marker slot
    // of Lyndon shuffles on (R minus S) u {marker} (marker greatest, and
    // never a factor on its own), inside the fixed structures.
    std::vector<Label> outer_letters = r_only;
    outer_letters.push_back(LBL_F);
    std::vector<Poly<Word>> inner;
    for (const auto& fs : lyndon_shuffles_on(ordS, 2))
        inner.push_back(expand_shuffle(fs));
    for (const auto& fo : lyndon_shuffles_on(outer_letters, 2)) {
        bool marker_alone = false;
        for (const Word& w : fo)
            if (w.size() == 1 && w[0] == LBL_F) marker_alone = true;
        if (marker_alone) continue;
        for (const auto& in : inner) {
            // Splice the inner element into its own factor before the
            // factors are shuffled together: the inner block stays
            // together inside its factor, while the other factors pass
            // through it.
            Poly<Word> expansion{{Word{}, Q(1)}};
            for (const Word& w : fo) {
                Poly<Word> factor{{w, Q(1)}};
                if (std::find(w.begin(), w.end(), LBL_F) != w.end())
                    factor = substitute(factor, LBL_F, in);
                expansion = shuffle(expansion, factor);
            }
            for (const Word& tau : all_structs)
                out.push_back(insert_into(tau, LBL_E, expansion));
        }
    }
    return out;
}

void check_divisor(int n, const Divisor& d) {
    std::vector<Label> alphabet = free_labels(n);
    if (d.size() < 2 || static_cast<int>(d.size()) > n - 2)
        throw NotAdmissible("divisor must equate between 2 and n-2 points");
    if (!std::is_sorted(d.begin(), d.end()) ||
        std::adjacent_find(d.begin(), d.end()) != d.end())
        throw NotAdmissible("divisor must be a sorted set");
    if (!std::includes(alphabet.begin(), alphabet.end(), d.begin(), d.end()))
        throw NotAdmissible("divisor points must be among t_1..t_{n-3}, inf");
}

bool disjoint(const Divisor& a, const Divisor& b) {
    std::vector<Label> inter;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(inter));
    return inter.empty();
}

bool crossing(const Divisor& a, const Divisor& b) {
    std::vector<Label> inter;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(inter));
    return !inter.empty() && inter.size() < a.size() &&
           inter.size() < b.size();
}

Divisor set_union(const Divisor& a, const Divisor& b) {
    Divisor u;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::back_inserter(u));
    return u;
}

// Locate the two crossing divisors (in the order given) and their
// intersection-divisor inside a triple; false when the triple does not
// have that shape.
bool triple_parts(const std::vector<Divisor>& d, int& ri, int& si) {
    for (int u = 0; u < 3; ++u) {
        int i = u == 0 ? 1 : 0;
        int j = u == 2 ? 1 : 2;
        if (crossing(d[i], d[j]) && set_union(d[i], d[j]) == d[u]) {
            ri = i;
            si = j;
            return true;
        }
    }
    return false;
}

}  // namespace

DivisorSet make_divisor_set(int n, std::vector<Divisor> divisors,
                            bool delta_full) {
    if (n < 4) throw NotAdmissible("need n >= 4");
    DivisorSet g;
    if (delta_full) {
        if (!divisors.empty())
            throw NotAdmissible("the full boundary set takes no divisor list");
        g.kind = GammaCase::DeltaFull;
        return g;
    }
    for (auto& d : divisors) {
        std::sort(d.begin(), d.end());
        check_divisor(n, d);
    }
    for (std::size_t i = 0; i < divisors.size(); ++i)
        for (std::size_t j = i + 1; j < divisors.size(); ++j)
            if (divisors[i] == divisors[j])
                throw NotAdmissible("repeated divisor");
    g.divisors = std::move(divisors);
    switch (g.divisors.size()) {
        case 0:
            g.kind = GammaCase::Empty;
            return g;
        case 1:
            g.kind = GammaCase::Single;
            return g;
        case 2:
            if (!disjoint(g.divisors[0], g.divisors[1]))
                throw NotAdmissible(
                    "a pair of overlapping divisors needs its "
                    "intersection-divisor (triple case)");
            g.kind = GammaCase::DisjointPair;
            return g;
        case 3: {
            int ri, si;
            if (triple_parts(g.divisors, ri, si)) {
                g.kind = GammaCase::TripleWithIntersection;
                return g;
            }
            throw NotAdmissible(
                "a triple must be two crossing divisors plus their "
                "intersection-divisor");
        }
        default:
            throw NotAdmissible("more than three divisors is not supported");
    }
}

Divisor parse_divisor(int n, const std::string& text) {
    Divisor d;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, '=')) {
        if (tok.empty()) continue;
        d.push_back(parse_label(tok));
    }
    std::sort(d.begin(), d.end());
    check_divisor(n, d);
    return d;
}

DivisorSet parse_divisor_set(int n, const std::string& text) {
    if (text == "delta") return make_divisor_set(n, {}, true);
    std::vector<Divisor> divisors;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';'))
        if (!part.empty()) divisors.push_back(parse_divisor(n, part));
    return make_divisor_set(n, std::move(divisors));
}

std::vector<PolySum> cohom_basis(int n, const DivisorSet& gamma) {
    switch (gamma.kind) {
        case GammaCase::Empty: {
            std::vector<PolySum> out;
            block_free_forms(
                n, [](const Word&) { return true; }, out);
            return out;
        }
        case GammaCase::Single:
            return case1_basis(n, gamma.divisors[0]);
        case GammaCase::DisjointPair:
            return case2_basis(n, gamma.divisors[0], gamma.divisors[1]);
        case GammaCase::TripleWithIntersection: {
            int ri, si;
            if (!triple_parts(gamma.divisors, ri, si))
                throw NotAdmissible("malformed triple");
            return case3_basis(n, gamma.divisors[ri], gamma.divisors[si]);
        }
        case GammaCase::DeltaFull: {
            std::vector<PolySum> out;
            for (auto& [name, form] : weight_generators(n))
                out.push_back(form);
            return out;
        }
    }
    throw NotAdmissible("unknown case");
}

long cohom_dim(int n, const DivisorSet& gamma) {
    switch (gamma.kind) {
        case GammaCase::Empty:
            return factorial(n - 2);
        case GammaCase::Single:
            return case1_dim(n, static_cast<int>(gamma.divisors[0].size()));
        case GammaCase::DisjointPair:
            return case2_dim(n, static_cast<int>(gamma.divisors[0].size()),
                             static_cast<int>(gamma.divisors[1].size()));
        case GammaCase::TripleWithIntersection: {
            int ri, si;
            if (!triple_parts(gamma.divisors, ri, si))
                throw NotAdmissible("malformed triple");
            int r = static_cast<int>(gamma.divisors[ri].size());
            int s = static_cast<int>(gamma.divisors[si].size());
            int k = static_cast<int>(set_union(gamma.divisors[ri],
                                               gamma.divisors[si])
                                         .size());
            return case3_dim(n, r, s, r + s - k);
        }
        case GammaCase::DeltaFull:
            return dim_delta(n);
    }
    throw NotAdmissible("unknown case");
}

long case1_dim(int n, int r) {
    return factorial(n - 2) - factorial(n - r - 1) * factorial(r - 1);
}

long case2_dim(int n, int r, int s) {
    long d = factorial(n - 2) - factorial(n - r - 1) * factorial(r) -
             factorial(n - s - 1) * factorial(s) +
             factorial(n - r - s) * factorial(r) * factorial(s);
    d += factorial(n - r - 1) * factorial(r - 1) * (r - 1) -
         factorial(n - r - s) * factorial(r - 1) * (r - 1) * factorial(s);
    d += factorial(n - s - 1) * factorial(s - 1) * (s - 1) -
         factorial(n - r - s) * factorial(s - 1) * (s - 1) * factorial(r);
    d += factorial(n - r - s) * factorial(r - 1) * (r - 1) * factorial(s - 1) *
         (s - 1);
    return d;
}

long case3_dim(int n, int r, int s, int k) {
    return factorial(n - 2) +
           factorial(n - 1 - (r + s - k)) *
               (factorial(r - 1) * factorial(s - k) +
                factorial(s - 1) * factorial(r - k) -
                factorial(r + s - k - 1)) -
           factorial(n - 1 - r) * factorial(r - 1) -
           factorial(n - 1 - s) * factorial(s - 1);
}

Case3Counts case3_counts(int n, int r, int s, int k) {
    Case3Counts c{};
    c.w0 = factorial(n - 2) -
           (factorial(n - 1 - s - r + k) * factorial(r + s - k) +
            factorial(r) * (factorial(n - 1 - r) -
                            factorial(n - 1 - s - r + k) * factorial(s - k + 1)) +
            factorial(s) * (factorial(n - 1 - s) -
                            factorial(n - 1 - s - r + k) * factorial(r - k + 1)));
    c.wR = factorial(r - 1) * (r - 1) *
           (factorial(n - r - 1) -
            factorial(s - k + 1) * factorial(n - r - s + k - 1));
    c.wS = factorial(s - 1) * (s - 1) *
           (factorial(n - s - 1) -
            factorial(r - k + 1) * factorial(n - r - s + k - 1));
    c.wRS = factorial(n - 1 - r - s + k) *
            (factorial(r + s - k - 1) * (r + s - k - 1) -
             factorial(r - 1) * factorial(s - k) * (s - k) -
             ((factorial(r - k) * (r - k) - factorial(r - k)) * factorial(s) +
              factorial(r - k) * factorial(s - 1)));
    c.wRS_S = factorial(n - 1 - r - s + k) * factorial(s - 1) * (s - 1) *
              (factorial(r - k) * (r - k) - factorial(r - k));
    return c;
}

bool residue_in_shuffle_ideal(const PolySum& p, const Divisor& K, int n) {
    (void)n;
    Poly<CyclePair> res = residue_p(p, K, LBL_E);
    // Group left factors by right factor; each group must be a sum of
    // shuffles with respect to the cut edge, i.e. vanish under the
    // 01-rewriting whose kernel is exactly that subspace.
    std::map<Cycle, PolySum> by_right;
    for (const auto& [pr, c] : res) poly_add_term(by_right[pr.second], pr.first, c);
    for (const auto& [right, left] : by_right)
        if (!rewrite_01(left, LBL_E, K.front()).empty()) return false;
    return true;
}

}  // namespace mzv
