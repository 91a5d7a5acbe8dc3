#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "helpers.hpp"

using namespace csrc;

TEST_CASE("read_matrix_market: 2x2 identity") {
    std::istringstream in(
        "%%MatrixMarket matrix coordinate real general\n"
        "% a comment\n"
        "2 2 2\n"
        "1 1 1.0\n"
        "2 2 1.0\n");
    TripletMatrix t = read_matrix_market(in);
    CHECK(t.n_rows == 2);
    CHECK(t.n_cols == 2);
    REQUIRE(t.entries.size() == 2);
    CHECK(t.entries[0].row == 0);  // 1-based shifted down
    CHECK(t.entries[0].col == 0);
}

TEST_CASE("read_matrix_market: symmetric header expands off-diagonal entries") {
    std::istringstream in(
        "%%MatrixMarket matrix coordinate real symmetric\n"
        "3 3 1\n"
        "3 1 2.5\n");
    TripletMatrix t = read_matrix_market(in);
    REQUIRE(t.entries.size() == 2);
    CHECK(t.entries[1].row == 0);
    CHECK(t.entries[1].col == 2);
    CHECK(t.entries[1].value == 2.5);
}

TEST_CASE("read_matrix_market: skew-symmetric negates the transpose") {
    std::istringstream in(
        "%%MatrixMarket matrix coordinate real skew-symmetric\n"
        "2 2 1\n"
        "2 1 3.0\n");
    TripletMatrix t = read_matrix_market(in);
    REQUIRE(t.entries.size() == 2);
    CHECK(t.entries[0].value == 3.0);
    CHECK(t.entries[1].value == -3.0);
}

TEST_CASE("read_matrix_market: pattern field yields unit values") {
    std::istringstream in(
        "%%MatrixMarket matrix coordinate pattern general\n"
        "2 2 1\n"
        "1 2\n");
    TripletMatrix t = read_matrix_market(in);
    REQUIRE(t.entries.size() == 1);
    CHECK(t.entries[0].value == 1.0);
}

TEST_CASE("read_matrix_market: malformed inputs are rejected with line numbers") {
    auto reject = [](const std::string& text, const std::string& needle) {
        std::istringstream in(text);
        CHECK_THROWS_WITH(read_matrix_market(in), Catch::Matchers::ContainsSubstring(needle));
    };
    reject("%%MatrixMarket matrix array real general\n2 2 4\n", "coordinate");
    reject("%%MatrixMarket matrix coordinate complex general\n2 2 1\n1 1 1 0\n", "field");
    reject("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n", "line 3");
    reject("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n", "expected 2");
}

TEST_CASE("write then read reproduces canonical CSR") {
    for (int trial = 0; trial < 50; ++trial) {
        index_t n = 5 + (trial * 3) % 40;
        CsrMatrix m = build_csr(generate_random_sym(n, 0.2, 7000 + trial));
        std::stringstream buf;
        write_matrix_market(buf, m);
        CsrMatrix back = build_csr(read_matrix_market(buf));
        REQUIRE(back.row_ptr == m.row_ptr);
        REQUIRE(back.col_idx == m.col_idx);
        REQUIRE(back.values == m.values);  // 17 digits round-trips real64
    }
}

TEST_CASE("generate_dense: full pattern") {
    TripletMatrix t = generate_dense(30);
    CHECK(t.entries.size() == 900);
    auto r = analyze_symmetry(build_csr(t));
    CHECK(r.structurally_symmetric);
    CHECK_FALSE(r.value_symmetric);
}

TEST_CASE("generate_band: tridiagonal n=5 has 13 entries") {
    TripletMatrix t = generate_band(5, 1);
    CHECK(t.entries.size() == 13);
    CHECK(analyze_symmetry(build_csr(t)).structurally_symmetric);
}

TEST_CASE("generate_band rejects bad half-width") {
    CHECK_THROWS_AS(generate_band(5, 5), Error);
}

TEST_CASE("generate_random_sym is reproducible and symmetric") {
    TripletMatrix a = generate_random_sym(80, 0.1, 12345);
    TripletMatrix b = generate_random_sym(80, 0.1, 12345);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].row == b.entries[i].row);
        CHECK(a.entries[i].col == b.entries[i].col);
        CHECK(a.entries[i].value == b.entries[i].value);
    }
    CHECK(analyze_symmetry(build_csr(a)).structurally_symmetric);

    auto sym = analyze_symmetry(build_csr(generate_random_sym(80, 0.1, 1, true)));
    CHECK(sym.value_symmetric);
}
