#pragma once

#include "csrc/kernels.hpp"

namespace csrc {

enum class Format { csr, csrc, csrc_sym };

/// Closed-form operation counts for one product, not measured hardware
/// events. Load convention: accesses to a, ja, x, y, ad, al, au count one
/// load each, with x[i] hoisted once per row in the CSRC kernels and the row
/// accumulator kept in a register; ia and loop bookkeeping are excluded.
/// This reproduces 3*nnz loads for CSR and (5/2)*nnz - (1/2)*n for CSRC.
struct KernelStats {
    count_t flops = 0;
    count_t loads = 0;
    Format format = Format::csr;
};

inline KernelStats count_ops(Format format, count_t n, count_t nnz_full) {
    if (nnz_full < n) throw Error("count_ops: nnz_full < n");
    const count_t k = (nnz_full - n) / 2;  // stored off-diagonal pairs
    KernelStats s;
    s.format = format;
    switch (format) {
        case Format::csr:
            s.flops = 2 * nnz_full;
            s.loads = 3 * nnz_full;
            break;
        case Format::csrc:
            // n diagonal multiplies + 2k multiply-adds; 2 loads per row
            // (ad[i], x[i]) + 5 per pair (al, au, ja, x[j], y[j]).
            s.flops = 2 * nnz_full - n;
            s.loads = 2 * n + 5 * k;
            break;
        case Format::csrc_sym:
            s.flops = 2 * nnz_full - n;
            s.loads = 2 * n + 4 * k;  // au loads eliminated
            break;
    }
    return s;
}

/// CSR product that tallies every counted access; must agree exactly with
/// count_ops(Format::csr, ...).
inline KernelStats spmv_csr_counted(const CsrMatrix& a, const Vector& x, Vector& y) {
    KernelStats s;
    s.format = Format::csr;
    y.assign(static_cast<std::size_t>(a.n_rows), 0.0);
    for (index_t i = 0; i < a.n_rows; ++i) {
        double sum = 0.0;
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            sum += a.values[k] * x[a.col_idx[k]];
            s.loads += 3;  // a[k], ja[k], x[ja[k]]
            s.flops += 2;  // multiply-add
        }
        y[i] = sum;
    }
    return s;
}

/// Instrumented CSRC product; agrees exactly with count_ops for csrc /
/// csrc_sym depending on the matrix's value_symmetric flag.
inline KernelStats spmv_csrc_counted(const CsrcMatrix& a, const Vector& x, Vector& y) {
    KernelStats s;
    s.format = a.value_symmetric ? Format::csrc_sym : Format::csrc;
    y.assign(static_cast<std::size_t>(a.n), 0.0);
    const double* au = a.upper();
    for (index_t i = 0; i < a.n; ++i) {
        const double xi = x[i];
        double yi = a.ad[i] * xi;
        s.loads += 2;  // ad[i], x[i]
        s.flops += 1;  // diagonal multiply
        for (index_t t = a.ia[i]; t < a.ia[i + 1]; ++t) {
            const index_t j = a.ja[t];
            yi += a.al[t] * x[j];
            y[j] += au[t] * xi;
            s.loads += a.value_symmetric ? 4 : 5;  // al, ja, x[j], y[j] (+ au)
            s.flops += 4;                          // two multiply-adds
        }
        y[i] = yi;
    }
    return s;
}

}  // namespace csrc
