#pragma once

#include <algorithm>
#include <numeric>
#include <tuple>

#include "csrc/common.hpp"

namespace csrc {

/// Coordinate-form matrix, the ingestion format for Matrix Market files and
/// generators. Duplicate (row, col) pairs are summed when converting to CSR.
struct TripletMatrix {
    index_t n_rows = 0;
    index_t n_cols = 0;
    struct Entry {
        index_t row;
        index_t col;
        double value;
    };
    std::vector<Entry> entries;

    void add(index_t row, index_t col, double value) { entries.push_back({row, col, value}); }
};

/// Compressed sparse row storage. Canonical form: within each row, column
/// indices strictly increasing, no duplicates.
struct CsrMatrix {
    index_t n_rows = 0;
    index_t n_cols = 0;
    std::vector<index_t> row_ptr;  // length n_rows + 1
    std::vector<index_t> col_idx;  // length nnz
    std::vector<double> values;    // length nnz

    count_t nnz() const { return static_cast<count_t>(values.size()); }

    bool has_entry(index_t row, index_t col) const {
        auto first = col_idx.begin() + row_ptr[row];
        auto last = col_idx.begin() + row_ptr[row + 1];
        return std::binary_search(first, last, col);
    }

    /// Value at (row, col), 0.0 if the position is not stored.
    double at(index_t row, index_t col) const {
        auto first = col_idx.begin() + row_ptr[row];
        auto last = col_idx.begin() + row_ptr[row + 1];
        auto it = std::lower_bound(first, last, col);
        if (it == last || *it != col) return 0.0;
        return values[static_cast<std::size_t>(it - col_idx.begin())];
    }
};

/// Builds canonical CSR from triplets. Duplicates are summed; out-of-bounds
/// entries are rejected.
inline CsrMatrix build_csr(const TripletMatrix& t) {
    for (const auto& e : t.entries) {
        if (e.row < 0 || e.row >= t.n_rows || e.col < 0 || e.col >= t.n_cols) {
            throw Error("build_csr: entry (" + std::to_string(e.row) + ", " +
                        std::to_string(e.col) + ") outside " + std::to_string(t.n_rows) + "x" +
                        std::to_string(t.n_cols) + " bounds");
        }
    }

    std::vector<std::size_t> order(t.entries.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ea = t.entries[a];
        const auto& eb = t.entries[b];
        return std::tie(ea.row, ea.col) < std::tie(eb.row, eb.col);
    });

    CsrMatrix m;
    m.n_rows = t.n_rows;
    m.n_cols = t.n_cols;
    m.row_ptr.assign(static_cast<std::size_t>(t.n_rows) + 1, 0);

    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& e = t.entries[order[k]];
        if (k > 0) {
            const auto& p = t.entries[order[k - 1]];
            if (p.row == e.row && p.col == e.col) {
                m.values.back() += e.value;
                continue;
            }
        }
        m.col_idx.push_back(e.col);
        m.values.push_back(e.value);
        ++m.row_ptr[static_cast<std::size_t>(e.row) + 1];
    }
    for (index_t i = 0; i < t.n_rows; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
    return m;
}

/// Transpose in canonical CSR form.
inline CsrMatrix transpose(const CsrMatrix& a) {
    CsrMatrix t;
    t.n_rows = a.n_cols;
    t.n_cols = a.n_rows;
    t.row_ptr.assign(static_cast<std::size_t>(a.n_cols) + 1, 0);
    t.col_idx.resize(a.values.size());
    t.values.resize(a.values.size());

    for (index_t j : a.col_idx) ++t.row_ptr[j + 1];
    for (index_t j = 0; j < a.n_cols; ++j) t.row_ptr[j + 1] += t.row_ptr[j];

    std::vector<index_t> next(t.row_ptr.begin(), t.row_ptr.end() - 1);
    for (index_t i = 0; i < a.n_rows; ++i) {
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            index_t pos = next[a.col_idx[k]]++;
            t.col_idx[pos] = i;
            t.values[pos] = a.values[k];
        }
    }
    return t;
}

inline TripletMatrix to_triplets(const CsrMatrix& a) {
    TripletMatrix t;
    t.n_rows = a.n_rows;
    t.n_cols = a.n_cols;
    t.entries.reserve(a.values.size());
    for (index_t i = 0; i < a.n_rows; ++i)
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
            t.add(i, a.col_idx[k], a.values[k]);
    return t;
}

}  // namespace csrc
