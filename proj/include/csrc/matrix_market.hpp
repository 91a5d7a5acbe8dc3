#pragma once

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "csrc/csr.hpp"

namespace csrc {

/// Streaming Matrix Market coordinate reader. Symmetric and skew-symmetric
/// headers are expanded to explicit triplets (skew: negated transpose, no
/// diagonal); pattern entries get value 1.0; indices are shifted to 0-based.
inline TripletMatrix read_matrix_market(std::istream& in) {
    std::string line;
    long line_no = 0;

    auto fail = [&](const std::string& what) -> Error {
        return Error("matrix market, line " + std::to_string(line_no) + ": " + what);
    };

    if (!std::getline(in, line)) throw Error("matrix market: empty stream");
    ++line_no;

    std::istringstream banner(line);
    std::string magic, object, format, field, symmetry;
    banner >> magic >> object >> format >> field >> symmetry;
    if (magic != "%%MatrixMarket") throw fail("missing %%MatrixMarket banner");
    if (object != "matrix") throw fail("unsupported object '" + object + "'");
    if (format != "coordinate") throw fail("only coordinate format is supported");
    if (field != "real" && field != "integer" && field != "pattern")
        throw fail("unsupported field '" + field + "'");
    if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric")
        throw fail("unsupported symmetry '" + symmetry + "'");

    const bool pattern = field == "pattern";
    const bool symmetric = symmetry == "symmetric";
    const bool skew = symmetry == "skew-symmetric";

    // size line, after comments
    long n_rows = 0, n_cols = 0, declared = 0;
    for (;;) {
        if (!std::getline(in, line)) throw fail("missing size line");
        ++line_no;
        if (!line.empty() && line[0] == '%') continue;
        std::istringstream ss(line);
        if (!(ss >> n_rows >> n_cols >> declared)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw fail("malformed size line '" + line + "'");
        }
        break;
    }
    if (n_rows < 0 || n_cols < 0 || declared < 0) throw fail("negative size");

    TripletMatrix t;
    t.n_rows = static_cast<index_t>(n_rows);
    t.n_cols = static_cast<index_t>(n_cols);

    long seen = 0;
    while (seen < declared) {
        if (!std::getline(in, line)) throw fail("expected " + std::to_string(declared) +
                                                " entries, got " + std::to_string(seen));
        ++line_no;
        if (line.empty() || line[0] == '%') continue;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

        std::istringstream ss(line);
        long r = 0, c = 0;
        double v = 1.0;
        if (!(ss >> r >> c)) throw fail("malformed entry '" + line + "'");
        if (!pattern && !(ss >> v)) throw fail("missing value in '" + line + "'");
        if (r < 1 || r > n_rows || c < 1 || c > n_cols)
            throw fail("index (" + std::to_string(r) + ", " + std::to_string(c) +
                       ") outside declared bounds");
        ++seen;

        auto i = static_cast<index_t>(r - 1);
        auto j = static_cast<index_t>(c - 1);
        if (skew && i == j) throw fail("skew-symmetric file stores a diagonal entry");
        t.add(i, j, v);
        if ((symmetric || skew) && i != j) t.add(j, i, skew ? -v : v);
    }
    return t;
}

/// Writes canonical CSR as a general coordinate file. 17 significant digits
/// guarantee the real64 text round-trip.
inline void write_matrix_market(std::ostream& out, const CsrMatrix& a) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.n_rows << " " << a.n_cols << " " << a.nnz() << "\n";
    out.precision(17);
    for (index_t i = 0; i < a.n_rows; ++i)
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
            out << (i + 1) << " " << (a.col_idx[k] + 1) << " " << a.values[k] << "\n";
}

}  // namespace csrc
