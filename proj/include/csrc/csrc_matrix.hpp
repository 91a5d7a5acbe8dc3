#pragma once

#include "csrc/symmetry.hpp"

namespace csrc {

/// Compressed sparse row-column storage for structurally symmetric square
/// matrices. The diagonal lives in ad; each off-diagonal pair (a_ij, a_ji)
/// with j < i is stored once: a_ij in al (row-wise, the lower part) and a_ji
/// in au (column-wise, the upper part), sharing the index arrays ia/ja.
/// Equivalently, al is the strict lower triangle in CSR and au the strict
/// upper triangle in CSC. When the matrix is numerically symmetric, au is
/// elided and al serves both roles.
struct CsrcMatrix {
    index_t n = 0;
    std::vector<double> ad;       // diagonal, length n
    std::vector<index_t> ia;      // row pointers into ja/al, length n + 1
    std::vector<index_t> ja;      // lower column indices, ja[t] < row(t)
    std::vector<double> al;       // lower values
    std::vector<double> au;       // upper values; empty iff value_symmetric
    bool value_symmetric = false;

    count_t k_off() const { return static_cast<count_t>(ja.size()); }
    count_t nnz_full() const { return static_cast<count_t>(n) + 2 * k_off(); }
    count_t nnz_stored() const {
        return static_cast<count_t>(n) + (value_symmetric ? 1 : 2) * k_off();
    }

    const double* upper() const { return value_symmetric ? al.data() : au.data(); }
};

/// An n x m matrix (m > n) split into a structurally symmetric leading
/// n x n block in CSRC form plus an auxiliary n x (m - n) CSR tail whose
/// column indices are local (global column = n + local).
struct CsrcRectMatrix {
    CsrcMatrix square;
    CsrMatrix rect;
    index_t m = 0;
};

/// Converts a structurally symmetric CSR matrix to CSRC. Rejects asymmetric
/// input, naming the first unmatched pair. Sets value_symmetric (and drops
/// au) iff every pair satisfies a_ij == a_ji exactly.
inline CsrcMatrix csr_to_csrc(const CsrMatrix& a) {
    if (a.n_rows != a.n_cols) throw Error("csr_to_csrc: matrix is not square");

    CsrcMatrix c;
    c.n = a.n_rows;
    c.ad.assign(static_cast<std::size_t>(c.n), 0.0);
    c.ia.assign(static_cast<std::size_t>(c.n) + 1, 0);

    bool values_match = true;
    for (index_t i = 0; i < c.n; ++i) {
        bool has_diag = false;
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            index_t j = a.col_idx[k];
            if (j == i) {
                c.ad[i] = a.values[k];
                has_diag = true;
            } else if (j < i) {
                if (!a.has_entry(j, i)) {
                    throw Error("csr_to_csrc: entry (" + std::to_string(i) + ", " +
                                std::to_string(j) + ") has no transpose (" + std::to_string(j) +
                                ", " + std::to_string(i) + ")");
                }
                double upper_val = a.at(j, i);
                c.ja.push_back(j);
                c.al.push_back(a.values[k]);
                c.au.push_back(upper_val);
                if (upper_val != a.values[k]) values_match = false;
            } else {
                if (!a.has_entry(j, i)) {
                    throw Error("csr_to_csrc: entry (" + std::to_string(i) + ", " +
                                std::to_string(j) + ") has no transpose (" + std::to_string(j) +
                                ", " + std::to_string(i) + ")");
                }
            }
        }
        if (!has_diag) {
            throw Error("csr_to_csrc: row " + std::to_string(i) + " has no diagonal entry");
        }
        c.ia[i + 1] = static_cast<index_t>(c.ja.size());
    }

    if (values_match) {
        c.value_symmetric = true;
        c.au.clear();
        c.au.shrink_to_fit();
    }
    return c;
}

/// Expands CSRC back to canonical full CSR (the exact inverse of
/// csr_to_csrc, bit-identical values).
inline CsrMatrix csrc_to_csr(const CsrcMatrix& c) {
    TripletMatrix t;
    t.n_rows = t.n_cols = c.n;
    const double* au = c.upper();
    for (index_t i = 0; i < c.n; ++i) {
        t.add(i, i, c.ad[i]);
        for (index_t k = c.ia[i]; k < c.ia[i + 1]; ++k) {
            index_t j = c.ja[k];
            t.add(i, j, c.al[k]);
            t.add(j, i, au[k]);
        }
    }
    return build_csr(t);
}

/// Splits an n x m CSR matrix (m > n) into its CSRC square part and CSR
/// tail. The leading block must be structurally symmetric; with
/// symmetrize = true missing transposes/diagonals become explicit zeros.
inline CsrcRectMatrix decompose_rect(const CsrMatrix& a, bool symmetrize = false) {
    if (a.n_cols <= a.n_rows) {
        throw Error("decompose_rect: requires n_cols > n_rows (got " + std::to_string(a.n_rows) +
                    "x" + std::to_string(a.n_cols) + ")");
    }

    index_t n = a.n_rows;
    TripletMatrix lead, tail;
    lead.n_rows = lead.n_cols = n;
    tail.n_rows = n;
    tail.n_cols = a.n_cols - n;
    for (index_t i = 0; i < n; ++i) {
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            index_t j = a.col_idx[k];
            if (j < n)
                lead.add(i, j, a.values[k]);
            else
                tail.add(i, j - n, a.values[k]);
        }
    }

    CsrMatrix square_csr = build_csr(lead);
    if (symmetrize) square_csr = symmetrize_pattern(square_csr);

    CsrcRectMatrix r;
    r.square = csr_to_csrc(square_csr);
    r.rect = build_csr(tail);
    r.m = a.n_cols;
    return r;
}

}  // namespace csrc
