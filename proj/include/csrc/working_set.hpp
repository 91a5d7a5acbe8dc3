#pragma once

#include "csrc/common.hpp"

namespace csrc {

/// Working-set size in KB of one CSRC product: matrix arrays plus x and y,
/// with 8-byte reals and 4-byte indices regardless of the build's actual
/// index type (actual memory use may differ).
///
/// Non-symmetric, nnz_stored = full nnz:
///   reals ad(n)+al(k)+au(k)+x(n)+y(n) with k = (nnz-n)/2, ints ia(n+1)+ja(k)
///   = 10*nnz + 18*n + 4 bytes.
/// Value-symmetric, nnz_stored = diagonal + lower entries:
///   au absent, k = nnz_stored - n
///   = 12*nnz_stored + 16*n + 4 bytes.
inline double working_set_kb(count_t n, count_t nnz_stored, bool value_symmetric) {
    if (n < 1) throw Error("working_set_kb: n must be >= 1");
    count_t bytes;
    if (value_symmetric)
        bytes = 12 * nnz_stored + 16 * n + 4;
    else
        bytes = 10 * nnz_stored + 18 * n + 4;
    return static_cast<double>(bytes) / 1024.0;
}

/// Working-set size in KB for a rectangular n x m product (m > n): CSRC
/// square part plus the auxiliary CSR tail, x of length m, y of length n.
///
///   reals ad(n)+al(k)[+au(k)]+tail(nnz_rect)+x(m)+y(n), k = nnz_stored_square - n
///   ints  ia(n+1)+ja(k)+tail_ptr(n+1)+tail_idx(nnz_rect)
inline double working_set_rect_kb(count_t n, count_t m, count_t nnz_stored_square,
                                  count_t nnz_rect, bool square_value_symmetric) {
    if (n < 1) throw Error("working_set_rect_kb: n must be >= 1");
    if (m <= n) throw Error("working_set_rect_kb: need m > n");
    // value-symmetric: stored = diagonal + lower, k pairs each hold one value;
    // otherwise stored = full nnz and each pair holds al and au
    const count_t k =
        square_value_symmetric ? nnz_stored_square - n : (nnz_stored_square - n) / 2;
    count_t bytes = 8 * n + 4 * (n + 1) + 12 * k;  // ad, ia, ja, al
    if (!square_value_symmetric) bytes += 8 * k;   // au
    bytes += 4 * (n + 1) + 12 * nnz_rect;          // tail ptr, idx, values
    bytes += 8 * m + 8 * n;                        // x, y
    return static_cast<double>(bytes) / 1024.0;
}

}  // namespace csrc
