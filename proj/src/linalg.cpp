#include <mzv/linalg.hpp>

#include <algorithm>
#include <cstddef>

namespace mzv {

SparseVec sparse_from_dense(const std::vector<Q>& v) {
    SparseVec r;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (v[i] != 0) r.emplace_back(i, v[i]);
    return r;
}

std::vector<Q> sparse_to_dense(const SparseVec& v, int n) {
    std::vector<Q> r(n, Q(0));
    for (const auto& [i, c] : v) r[i] = c;
    return r;
}

SparseVec RowReducer::reduce(SparseVec v, std::map<int, Q>* coords) const {
    if (coords) coords->clear();
    SparseVec out;  // entries at non-pivot columns, finalized left to right
    std::size_t pos = 0;
    while (pos < v.size()) {
        auto it = echelon_.find(v[pos].first);
        if (it == echelon_.end()) {
            // Not a pivot column: this entry can never be touched again,
            // since every echelon row only has entries at or after its own
            // pivot, which lies strictly to the right.
            out.push_back(v[pos++]);
            continue;
        }
        const Q c = v[pos].second;  // echelon pivots are normalized to 1
        // v[pos..] -= c * row; the leading terms cancel by construction.
        const SparseVec& w = it->second.vec;
        SparseVec r;
        r.reserve(v.size() - pos + w.size());
        std::size_t i = pos + 1, j = 1;
        while (i < v.size() || j < w.size()) {
            if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) {
                r.push_back(std::move(v[i++]));
            } else if (i == v.size() || w[j].first < v[i].first) {
                r.emplace_back(w[j].first, -c * w[j].second);
                ++j;
            } else {
                Q val = v[i].second - c * w[j].second;
                if (val != 0) r.emplace_back(v[i].first, std::move(val));
                ++i;
                ++j;
            }
        }
        if (coords && track_)
            for (const auto& [k, cc] : it->second.coords) {
                (*coords)[k] += c * cc;
                if ((*coords)[k] == 0) coords->erase(k);
            }
        v = std::move(r);
        pos = 0;
    }
    return out;
}

bool RowReducer::add(SparseVec v) {
    std::map<int, Q> coords;
    SparseVec r = reduce(std::move(v), track_ ? &coords : nullptr);
    int my_index = added_++;
    if (r.empty()) return false;
    Q lead = r.front().second;
    Row row;
    row.vec.reserve(r.size());
    for (auto& [i, c] : r) row.vec.emplace_back(i, c / lead);
    if (track_) {
        // r = original - sum coords[i] * added_row[i]
        for (auto& [k, c] : coords) row.coords[k] = -c / lead;
        row.coords[my_index] += Q(1) / lead;
    }
    echelon_.emplace(row.vec.front().first, std::move(row));
    return true;
}

std::vector<int> RowReducer::pivots() const {
    std::vector<int> p;
    p.reserve(echelon_.size());
    for (const auto& [piv, row] : echelon_) p.push_back(piv);
    return p;
}

int rank(const QMatrix& m) {
    RowReducer red;
    for (int r = 0; r < m.rows; ++r) {
        SparseVec v(m.data[r].begin(), m.data[r].end());
        red.add(std::move(v));
    }
    return red.rank();
}

namespace {

// Dense reduced row echelon form.  Returns pivot column per pivot row.
// Pivot choice within a column: the candidate with the smallest combined
// numerator+denominator bit length, for modest coefficient growth.
std::vector<int> rref(std::vector<std::vector<Q>>& a) {
    int rows = static_cast<int>(a.size());
    int cols = rows ? static_cast<int>(a[0].size()) : 0;
    std::vector<int> pivot_cols;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int best = -1;
        std::size_t best_bits = 0;
        for (int i = r; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            std::size_t bits = mpz_sizeinbase(a[i][c].get_num().get_mpz_t(), 2) +
                               mpz_sizeinbase(a[i][c].get_den().get_mpz_t(), 2);
            if (best == -1 || bits < best_bits) {
                best = i;
                best_bits = bits;
            }
        }
        if (best == -1) continue;
        std::swap(a[r], a[best]);
        Q inv = a[r][c];
        for (int j = c; j < cols; ++j) a[r][j] /= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Q f = a[i][c];
            for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_cols.push_back(c);
        ++r;
    }
    return pivot_cols;
}

std::vector<std::vector<Q>> to_dense(const QMatrix& m) {
    std::vector<std::vector<Q>> a(m.rows, std::vector<Q>(m.cols, Q(0)));
    for (int r = 0; r < m.rows; ++r)
        for (const auto& [c, v] : m.data[r]) a[r][c] = v;
    return a;
}

}  // namespace

std::vector<std::vector<Q>> nullspace(const QMatrix& m) {
    auto a = to_dense(m);
    std::vector<int> piv = rref(a);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : piv) is_pivot[c] = true;
    std::vector<std::vector<Q>> basis;
    for (int free_c = 0; free_c < m.cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<Q> v(m.cols, Q(0));
        v[free_c] = 1;
        for (int pr = 0; pr < static_cast<int>(piv.size()); ++pr)
            v[piv[pr]] = -a[pr][free_c];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Q>> solve(const QMatrix& m, const std::vector<Q>& b) {
    auto a = to_dense(m);
    for (int r = 0; r < m.rows; ++r) a[r].push_back(b[r]);
    std::vector<int> piv = rref(a);
    // Inconsistent iff the augmented column is a pivot.
    if (!piv.empty() && piv.back() == m.cols) return std::nullopt;
    std::vector<Q> x(m.cols, Q(0));
    for (int pr = 0; pr < static_cast<int>(piv.size()); ++pr)
        x[piv[pr]] = a[pr][m.cols];
    return x;
}

}  // namespace mzv
