#pragma once

#include <random>

#include "csrc/csr.hpp"

namespace csrc {

/// Dense n x n matrix with every entry nonzero. Values are a fixed
/// asymmetric function of (i, j), so the pattern is structurally but not
/// numerically symmetric.
inline TripletMatrix generate_dense(index_t n) {
    if (n < 1) throw Error("generate_dense: n must be >= 1");
    TripletMatrix t;
    t.n_rows = t.n_cols = n;
    t.entries.reserve(static_cast<std::size_t>(n) * n);
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < n; ++j)
            t.add(i, j, 1.0 + ((31 * i + 17 * j) % 13) * 0.25);
    return t;
}

/// Symmetric band pattern |i - j| <= h with full diagonal. Values are
/// asymmetric unless value_symmetric is set.
inline TripletMatrix generate_band(index_t n, index_t h, bool value_symmetric = false) {
    if (n < 1) throw Error("generate_band: n must be >= 1");
    if (h < 0 || h >= n) throw Error("generate_band: need 0 <= half-width < n");
    TripletMatrix t;
    t.n_rows = t.n_cols = n;
    for (index_t i = 0; i < n; ++i) {
        t.add(i, i, 4.0 + (i % 5) * 0.5);
        for (index_t j = std::max<index_t>(0, i - h); j < i; ++j) {
            double lower = -1.0 + ((7 * i + 3 * j) % 11) * 0.1;
            double upper = value_symmetric ? lower : -1.0 + ((7 * j + 3 * i) % 11) * 0.1;
            t.add(i, j, lower);
            t.add(j, i, upper);
        }
    }
    return t;
}

/// Random structurally symmetric pattern: full diagonal plus each lower
/// position present with the given probability. Reproducible from the seed.
inline TripletMatrix generate_random_sym(index_t n, double density, std::uint64_t seed,
                                         bool value_symmetric = false) {
    if (n < 1) throw Error("generate_random_sym: n must be >= 1");
    if (density < 0.0 || density > 1.0) throw Error("generate_random_sym: density in [0, 1]");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_real_distribution<double> val(-1.0, 1.0);

    TripletMatrix t;
    t.n_rows = t.n_cols = n;
    for (index_t i = 0; i < n; ++i) {
        t.add(i, i, 2.0 + coin(rng));
        for (index_t j = 0; j < i; ++j) {
            if (coin(rng) >= density) continue;
            double lower = val(rng);
            double upper = value_symmetric ? lower : val(rng);
            t.add(i, j, lower);
            t.add(j, i, upper);
        }
    }
    return t;
}

}  // namespace csrc
