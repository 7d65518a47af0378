#pragma once
// Exact linear algebra over Q: rank, nullspace, solve, and an incremental
// row reducer used for span-membership and quotient computations.

#include <mzv/rational.hpp>

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace mzv {

// Sparse vector: (index, coefficient) pairs, sorted by index, no zeros.
using SparseVec = std::vector<std::pair<int, Q>>;

SparseVec sparse_from_dense(const std::vector<Q>& v);
std::vector<Q> sparse_to_dense(const SparseVec& v, int n);

struct QMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::map<int, Q>> data;  // row -> {col -> value}

    QMatrix() = default;
    QMatrix(int r, int c) : rows(r), cols(c), data(r) {}

    void set(int r, int c, const Q& v) {
        if (v == 0)
            data[r].erase(c);
        else
            data[r][c] = v;
    }
    Q at(int r, int c) const {
        auto it = data[r].find(c);
        return it == data[r].end() ? Q(0) : it->second;
    }
};

int rank(const QMatrix& m);

// Basis of the right kernel {v : m v = 0}; size = cols - rank.
std::vector<std::vector<Q>> nullspace(const QMatrix& m);

// One exact solution of m x = b, or nullopt when inconsistent.
std::optional<std::vector<Q>> solve(const QMatrix& m, const std::vector<Q>& b);

// Incremental exact row reduction.  Rows are added one at a time; the
// reducer maintains an echelon set with unit pivots and answers
// span-membership queries.  Optionally it tracks, for every echelon row,
// its expression in terms of the originally added rows, which turns
// membership queries into coordinate queries.
class RowReducer {
  public:
    explicit RowReducer(bool track_coords = false) : track_(track_coords) {}

    // Reduce v against the current echelon set; returns the residual.
    // If coords is non-null (requires track_coords) it receives the
    // combination of previously added rows that was subtracted from v,
    // i.e. v = residual + sum coords[i] * added_row[i].
    SparseVec reduce(SparseVec v, std::map<int, Q>* coords = nullptr) const;

    // Add a row; returns true if it enlarged the span.
    bool add(SparseVec v);

    // True iff v lies in the span of the added rows.
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }

    int rank() const { return static_cast<int>(echelon_.size()); }

    // Pivot columns of the echelon set, ascending.
    std::vector<int> pivots() const;

  private:
    struct Row {
        SparseVec vec;             // unit pivot at vec.front()
        std::map<int, Q> coords;   // expression in originally added rows
    };
    bool track_;
    int added_ = 0;
    std::map<int, Row> echelon_;  // pivot column -> row
};

}  // namespace mzv
