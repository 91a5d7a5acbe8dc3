#pragma once

#include "csrc/csrc_matrix.hpp"

namespace csrc {

inline Vector spmv_csr(const CsrMatrix& a, const Vector& x) {
    if (static_cast<index_t>(x.size()) != a.n_cols) {
        throw Error("spmv_csr: x has length " + std::to_string(x.size()) + ", expected " +
                    std::to_string(a.n_cols));
    }
    Vector y(static_cast<std::size_t>(a.n_rows));
    for (index_t i = 0; i < a.n_rows; ++i) {
        double sum = 0.0;
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
            sum += a.values[k] * x[a.col_idx[k]];
        y[i] = sum;
    }
    return y;
}

/// y = Ax over CSRC. Row i is traversed once; each stored pair updates both
/// y[i] (lower entry) and y[ja[t]] (upper entry, always behind i). For
/// numerically symmetric matrices the au load disappears.
inline Vector spmv_csrc(const CsrcMatrix& a, const Vector& x) {
    if (static_cast<index_t>(x.size()) != a.n) {
        throw Error("spmv_csrc: x has length " + std::to_string(x.size()) + ", expected " +
                    std::to_string(a.n));
    }
    Vector y(static_cast<std::size_t>(a.n));
    const double* au = a.upper();
    for (index_t i = 0; i < a.n; ++i) {
        const double xi = x[i];
        double yi = a.ad[i] * xi;
        for (index_t t = a.ia[i]; t < a.ia[i + 1]; ++t) {
            const index_t j = a.ja[t];
            yi += a.al[t] * x[j];
            y[j] += au[t] * xi;
        }
        y[i] = yi;
    }
    return y;
}

/// Transpose product y = A'x, obtained by swapping the roles of al and au.
/// Zero-copy: no data is rearranged.
inline Vector spmv_csrc_transpose(const CsrcMatrix& a, const Vector& x) {
    if (a.value_symmetric) return spmv_csrc(a, x);
    if (static_cast<index_t>(x.size()) != a.n) {
        throw Error("spmv_csrc_transpose: x has length " + std::to_string(x.size()) +
                    ", expected " + std::to_string(a.n));
    }
    Vector y(static_cast<std::size_t>(a.n));
    for (index_t i = 0; i < a.n; ++i) {
        const double xi = x[i];
        double yi = a.ad[i] * xi;
        for (index_t t = a.ia[i]; t < a.ia[i + 1]; ++t) {
            const index_t j = a.ja[t];
            yi += a.au[t] * x[j];
            y[j] += a.al[t] * xi;
        }
        y[i] = yi;
    }
    return y;
}

/// y = Ax for the rectangular extension: per row, the square CSRC updates
/// first, then the auxiliary CSR tail over columns n..m-1.
inline Vector spmv_csrc_rect(const CsrcRectMatrix& a, const Vector& x) {
    if (static_cast<index_t>(x.size()) != a.m) {
        throw Error("spmv_csrc_rect: x has length " + std::to_string(x.size()) + ", expected " +
                    std::to_string(a.m));
    }
    const CsrcMatrix& s = a.square;
    const index_t n = s.n;
    Vector y(static_cast<std::size_t>(n));
    const double* au = s.upper();
    for (index_t i = 0; i < n; ++i) {
        const double xi = x[i];
        double yi = s.ad[i] * xi;
        for (index_t t = s.ia[i]; t < s.ia[i + 1]; ++t) {
            const index_t j = s.ja[t];
            yi += s.al[t] * x[j];
            y[j] += au[t] * xi;
        }
        for (index_t k = a.rect.row_ptr[i]; k < a.rect.row_ptr[i + 1]; ++k)
            yi += a.rect.values[k] * x[n + a.rect.col_idx[k]];
        y[i] = yi;
    }
    return y;
}

}  // namespace csrc
