#include <mzv/picard.hpp>

#include <algorithm>
#include <numeric>

namespace mzv {

namespace {

// Internally everything works with positions 0..n-1 along the basis
// ordering; position sets are sorted vectors.
using PosSet = std::vector<int>;

PosSet complement_of(int n, const PosSet& s) {
    PosSet out;
    out.reserve(n - s.size());
    auto it = s.begin();
    for (int p = 0; p < n; ++p) {
        if (it != s.end() && *it == p) {
            ++it;
        } else {
            out.push_back(p);
        }
    }
    return out;
}

PosSet merge_sets(const PosSet& a, const PosSet& b) {
    PosSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::back_inserter(out));
    return out;
}

bool contains_pos(const PosSet& s, int p) {
    return std::binary_search(s.begin(), s.end(), p);
}

// True if s is a nonempty consecutive arc of the n-cycle.
bool is_cyclic_arc(int n, const PosSet& s) {
    if (s.empty() || (int)s.size() == n) return false;
    int starts = 0;
    for (int p : s)
        if (!contains_pos(s, (p + n - 1) % n)) ++starts;
    return starts == 1;
}

// Maximal consecutive arcs of s, listed in cyclic traversal order.
std::vector<PosSet> cyclic_arcs(int n, const PosSet& s) {
    std::vector<PosSet> out;
    std::vector<int> starts;
    for (int p : s)
        if (!contains_pos(s, (p + n - 1) % n)) starts.push_back(p);
    for (int st : starts) {
        PosSet arc;
        for (int p = st; contains_pos(s, p); p = (p + 1) % n)
            arc.push_back(p);
        std::sort(arc.begin(), arc.end());
        out.push_back(std::move(arc));
    }
    return out;
}

// The arc strictly between the end of `from` and the start of `to`.
PosSet gap_between(int n, const PosSet& from, const PosSet& to) {
    int end = -1;
    for (int p : from)
        if (!contains_pos(from, (p + 1) % n)) end = p;
    int start = -1;
    for (int p : to)
        if (!contains_pos(to, (p + n - 1) % n)) start = p;
    PosSet out;
    for (int p = (end + 1) % n; p != start; p = (p + 1) % n) out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PosSet> gaps_of(int n, const std::vector<PosSet>& blocks) {
    std::vector<PosSet> out;
    for (size_t j = 0; j < blocks.size(); ++j)
        out.push_back(gap_between(n, blocks[j], blocks[(j + 1) % blocks.size()]));
    return out;
}

// Two-block base case: +1 if I (or its complement) is the union of one
// block and one gap, -1 if it is a single block or gap, 0 otherwise.
Q base_coeff(int n, const PosSet& I, const PosSet& b1, const PosSet& g1,
             const PosSet& b2, const PosSet& g2) {
    const PosSet ic = complement_of(n, I);
    auto matches = [&](const PosSet& s) { return s == I || s == ic; };
    for (const PosSet* b : {&b1, &b2})
        for (const PosSet* g : {&g1, &g2})
            if (matches(merge_sets(*b, *g))) return Q(1);
    for (const PosSet* s : {&b1, &b2, &g1, &g2})
        if (matches(*s)) return Q(-1);
    return Q(0);
}

// Merge recursion on the number of blocks.
Q gib_rec(int n, const PosSet& I, const std::vector<PosSet>& blocks) {
    const std::vector<PosSet> gaps = gaps_of(n, blocks);
    const size_t N = blocks.size();
    if (N == 2)
        return base_coeff(n, I, blocks[0], gaps[0], blocks[1], gaps[1]);

    PosSet bmerge, gmerge;
    for (size_t j = 0; j + 1 < N; ++j) {
        bmerge = merge_sets(bmerge, blocks[j]);
        gmerge = merge_sets(gmerge, gaps[j]);
    }
    const Q t1 = base_coeff(n, I, bmerge, gmerge, blocks[N - 1], gaps[N - 1]);

    std::vector<PosSet> sub(blocks.begin(), blocks.end() - 1);
    const Q t2 = gib_rec(n, I, sub);

    sub.assign(gaps.begin(), gaps.end() - 1);
    const Q t3 = gib_rec(n, I, sub);

    sub.assign(blocks.begin() + 1, blocks.end() - 1);
    sub.insert(sub.begin(), merge_sets(gaps[N - 1], blocks[0]));
    const Q t4 = gib_rec(n, I, sub);

    return t1 + t2 + t3 - t4;
}

void check_n(int n) {
    if (n < 4)
        throw std::invalid_argument("picard: need at least 4 marked points");
}

PosSet positions_of(const NonAdjacentBasis& basis, const PointSet& labels) {
    std::vector<int> pos_of(basis.n + 1, -1);
    for (int p = 0; p < basis.n; ++p) pos_of[basis.order[p]] = p;
    PosSet out;
    out.reserve(labels.size());
    for (int z : labels) out.push_back(pos_of[z]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

BoundaryDivisor make_divisor(int n, PointSet subset) {
    check_n(n);
    std::sort(subset.begin(), subset.end());
    if (std::adjacent_find(subset.begin(), subset.end()) != subset.end())
        throw std::invalid_argument("divisor subset has a repeated point");
    if (!subset.empty() && (subset.front() < 1 || subset.back() > n))
        throw std::invalid_argument("divisor subset label out of range");
    if ((int)subset.size() < 2 || (int)subset.size() > n - 2)
        throw std::invalid_argument(
            "divisor subset size must be between 2 and n-2");
    if (subset.back() == n) {
        PointSet comp;
        auto it = subset.begin();
        for (int z = 1; z <= n; ++z) {
            if (it != subset.end() && *it == z) {
                ++it;
            } else {
                comp.push_back(z);
            }
        }
        subset = std::move(comp);
    }
    return BoundaryDivisor{n, std::move(subset)};
}

long divisor_count(int n) {
    check_n(n);
    return (1L << (n - 1)) - 1 - n;
}

std::vector<BoundaryDivisor> all_divisors(int n) {
    check_n(n);
    std::vector<BoundaryDivisor> out;
    for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
        PointSet subset;
        for (int z = 1; z < n; ++z)
            if (mask & (1u << (z - 1))) subset.push_back(z);
        if ((int)subset.size() < 2 || (int)subset.size() > n - 2) continue;
        out.push_back(BoundaryDivisor{n, std::move(subset)});
    }
    return out;
}

long NonAdjacentBasis::index_of(const BoundaryDivisor& d) const {
    for (size_t i = 0; i < elements.size(); ++i)
        if (elements[i].divisor == d) return (long)i;
    return -1;
}

NonAdjacentBasis non_adjacent_basis(int n, std::vector<int> order) {
    check_n(n);
    {
        std::vector<int> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> expect(n);
        std::iota(expect.begin(), expect.end(), 1);
        if (sorted != expect)
            throw std::invalid_argument(
                "ordering must be a permutation of 1..n");
    }
    NonAdjacentBasis basis;
    basis.n = n;
    basis.order = std::move(order);
    for (BoundaryDivisor& d : all_divisors(n)) {
        const PosSet pos = positions_of(basis, d.subset);
        if (is_cyclic_arc(n, pos)) continue;
        BasisElement e;
        e.divisor = std::move(d);
        std::vector<PosSet> blocks = cyclic_arcs(n, pos);
        std::vector<PosSet> gaps = gaps_of(n, blocks);
        auto to_labels = [&](const PosSet& s) {
            PointSet out;
            for (int p : s) out.push_back(basis.order[p]);
            std::sort(out.begin(), out.end());
            return out;
        };
        for (const PosSet& b : blocks) e.blocks.push_back(to_labels(b));
        for (const PosSet& g : gaps) e.gaps.push_back(to_labels(g));
        basis.elements.push_back(std::move(e));
    }
    return basis;
}

std::vector<Q> expand(const BoundaryDivisor& I, const NonAdjacentBasis& basis) {
    if (I.n != basis.n)
        throw std::invalid_argument("divisor and basis sizes differ");
    const int n = basis.n;
    const PosSet ipos = positions_of(basis, I.subset);
    std::vector<Q> out(basis.elements.size(), Q(0));

    if (!is_cyclic_arc(n, ipos)) {
        const long idx = basis.index_of(I);
        if (idx < 0)
            throw NotConsecutive(
                "divisor subset is neither consecutive for the ordering nor "
                "a basis element");
        out[idx] = Q(1);
        return out;
    }

    for (size_t i = 0; i < basis.elements.size(); ++i) {
        const BasisElement& e = basis.elements[i];
        // Vertex arcs of the 2N-gon: B_1, G_1, ..., B_N, G_N.
        std::vector<PosSet> verts;
        for (size_t j = 0; j < e.blocks.size(); ++j) {
            verts.push_back(positions_of(basis, e.blocks[j]));
            verts.push_back(positions_of(basis, e.gaps[j]));
        }
        // I gets a coefficient only if it is a union of whole vertices.
        std::vector<int> chosen;
        bool whole = true;
        size_t covered = 0;
        for (size_t v = 0; v < verts.size() && whole; ++v) {
            size_t inside = 0;
            for (int p : verts[v])
                if (contains_pos(ipos, p)) ++inside;
            if (inside == verts[v].size()) {
                chosen.push_back((int)v);
                covered += inside;
            } else if (inside != 0) {
                whole = false;
            }
        }
        if (!whole || covered != ipos.size()) continue;
        // The chosen vertices form an arc of the 2N-cycle; its length
        // determines the sign.
        if (!is_cyclic_arc((int)verts.size(),
                           PosSet(chosen.begin(), chosen.end())))
            continue;
        out[i] = (chosen.size() % 2 == 0) ? Q(1) : Q(-1);
    }
    return out;
}

Q gibney_coeff(const BoundaryDivisor& I, const BasisElement& elem,
               const NonAdjacentBasis& basis) {
    if (I.n != basis.n)
        throw std::invalid_argument("divisor and basis sizes differ");
    const PosSet ipos = positions_of(basis, I.subset);
    if (!is_cyclic_arc(basis.n, ipos))
        throw NotConsecutive(
            "divisor subset is not consecutive for the ordering");
    std::vector<PosSet> blocks;
    for (const PointSet& b : elem.blocks)
        blocks.push_back(positions_of(basis, b));
    return gib_rec(basis.n, ipos, blocks);
}

bool verify_keel(int n) {
    check_n(n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 1);
    const NonAdjacentBasis basis = non_adjacent_basis(n, order);

    // Expansion of every divisor class, indexed by canonical subset.
    std::map<PointSet, std::vector<Q>> expansion;
    for (const BoundaryDivisor& d : all_divisors(n))
        expansion.emplace(d.subset, expand(d, basis));

    // Sum of the classes d_A over subsets A containing za, zb and avoiding
    // zc, zd.
    auto pairing_sum = [&](int za, int zb, int zc, int zd) {
        std::vector<Q> total(basis.elements.size(), Q(0));
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            auto in = [&](int z) { return (mask >> (z - 1)) & 1u; };
            if (!in(za) || !in(zb) || in(zc) || in(zd)) continue;
            const int size = __builtin_popcount(mask);
            if (size < 2 || size > n - 2) continue;
            PointSet subset;
            for (int z = 1; z <= n; ++z)
                if (in(z)) subset.push_back(z);
            const auto& vec = expansion.at(make_divisor(n, subset).subset);
            for (size_t i = 0; i < vec.size(); ++i) total[i] += vec[i];
        }
        return total;
    };

    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                for (int l = k + 1; l <= n; ++l) {
                    const auto s1 = pairing_sum(i, j, k, l);
                    const auto s2 = pairing_sum(i, k, j, l);
                    const auto s3 = pairing_sum(i, l, j, k);
                    if (s1 != s2 || s1 != s3) return false;
                }
    return true;
}

}  // namespace mzv
