#pragma once

#include <random>

#include "csrc/csrc.hpp"

namespace testutil {

using namespace csrc;

/// Row-major dense accumulation of a triplet list; the reference for all
/// build/convert checks.
inline std::vector<double> to_dense(const TripletMatrix& t) {
    std::vector<double> d(static_cast<std::size_t>(t.n_rows) * t.n_cols, 0.0);
    for (const auto& e : t.entries) d[static_cast<std::size_t>(e.row) * t.n_cols + e.col] += e.value;
    return d;
}

inline std::vector<double> to_dense(const CsrMatrix& a) { return to_dense(to_triplets(a)); }

/// Two-loop dense matrix-vector product oracle.
inline Vector dense_spmv(const std::vector<double>& d, index_t n_rows, index_t n_cols,
                         const Vector& x) {
    Vector y(static_cast<std::size_t>(n_rows), 0.0);
    for (index_t i = 0; i < n_rows; ++i) {
        double sum = 0.0;
        for (index_t j = 0; j < n_cols; ++j)
            sum += d[static_cast<std::size_t>(i) * n_cols + j] * x[j];
        y[i] = sum;
    }
    return y;
}

inline Vector random_vector(index_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    Vector x(static_cast<std::size_t>(n));
    for (auto& v : x) v = val(rng);
    return x;
}

/// Exact y write set of row i in a CSRC matrix: {i} plus its lower columns.
inline std::vector<index_t> write_set(const CsrcMatrix& a, index_t i) {
    std::vector<index_t> w{i};
    for (index_t t = a.ia[i]; t < a.ia[i + 1]; ++t) w.push_back(a.ja[t]);
    return w;
}

}  // namespace testutil
