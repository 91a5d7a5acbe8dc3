#pragma once

#include "csrc/csr.hpp"

namespace csrc {

struct SymmetryReport {
    bool structurally_symmetric = false;
    bool value_symmetric = false;
    count_t missing_transposes = 0;  // entries (i,j) with no stored (j,i)
    count_t missing_diagonal = 0;    // rows without a stored diagonal entry
};

/// Pattern and value symmetry of a square CSR matrix. Structural symmetry
/// additionally requires a fully stored diagonal (the CSRC kernel reads ad
/// unconditionally). Value symmetry uses exact equality.
inline SymmetryReport analyze_symmetry(const CsrMatrix& a) {
    if (a.n_rows != a.n_cols) throw Error("analyze_symmetry: matrix is not square");

    SymmetryReport r;
    bool values_match = true;
    for (index_t i = 0; i < a.n_rows; ++i) {
        bool has_diag = false;
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            index_t j = a.col_idx[k];
            if (j == i) {
                has_diag = true;
                continue;
            }
            if (!a.has_entry(j, i)) {
                ++r.missing_transposes;
                values_match = false;
            } else if (a.at(j, i) != a.values[k]) {
                values_match = false;
            }
        }
        if (!has_diag) ++r.missing_diagonal;
    }
    r.structurally_symmetric = r.missing_transposes == 0 && r.missing_diagonal == 0;
    r.value_symmetric = r.structurally_symmetric && values_match;
    return r;
}

/// Inserts explicit zeros for missing transposes and missing diagonal
/// entries, making the pattern CSRC-admissible. Idempotent; stored values
/// are untouched, so the matrix-vector product is unchanged.
inline CsrMatrix symmetrize_pattern(const CsrMatrix& a) {
    if (a.n_rows != a.n_cols) throw Error("symmetrize_pattern: matrix is not square");

    TripletMatrix t = to_triplets(a);
    for (index_t i = 0; i < a.n_rows; ++i) {
        if (!a.has_entry(i, i)) t.add(i, i, 0.0);
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            index_t j = a.col_idx[k];
            if (j != i && !a.has_entry(j, i)) t.add(j, i, 0.0);
        }
    }
    return build_csr(t);
}

}  // namespace csrc
