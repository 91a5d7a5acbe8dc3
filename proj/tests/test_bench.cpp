#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace csrc;

TEST_CASE("bench source vector is the fixed deterministic pattern") {
    Vector x = bench_source_vector(10);
    CHECK(x[0] == 1.0);
    CHECK(x[1] == 1.0 + 1.0 / 7.0);
    CHECK(x[7] == 1.0);
}

TEST_CASE("matrix_info follows the stored-entry convention") {
    // value-symmetric: nnz = diagonal + lower
    CsrcMatrix sym = csr_to_csrc(build_csr(generate_random_sym(100, 0.1, 4, true)));
    MatrixInfo mi = matrix_info("m", sym);
    CHECK(mi.nnz == sym.nnz_stored());
    CHECK(mi.nnz < sym.nnz_full());

    // non-symmetric values: nnz = full
    CsrcMatrix asym = csr_to_csrc(build_csr(generate_random_sym(100, 0.1, 4, false)));
    MatrixInfo ai = matrix_info("m", asym);
    CHECK(ai.nnz == asym.nnz_full());
}

TEST_CASE("matrix_info: identity n=1024") {
    TripletMatrix t;
    t.n_rows = t.n_cols = 1024;
    for (index_t i = 0; i < 1024; ++i) t.add(i, i, 1.0);
    MatrixInfo mi = matrix_info("eye", csr_to_csrc(build_csr(t)));
    CHECK(mi.nnz == 1024);
    CHECK(mi.ws_kb == (12 * 1024 + 16 * 1024 + 4) / 1024);
}

TEST_CASE("run_benchmark: sequential CSRC on a small band matrix") {
    BenchConfig cfg;
    cfg.reps = 5;
    cfg.runs = 3;
    BenchReport r = run_benchmark("band", build_csr(generate_band(500, 3)), cfg);
    CHECK(r.n == 500);
    CHECK(r.format == "csrc");
    CHECK(r.strategy == "seq");
    CHECK(r.median_total_seconds > 0.0);
    CHECK(r.mflops_effective > 0.0);
    CHECK(r.mflops_true < r.mflops_effective);  // csrc does fewer true flops
    CHECK(r.speedup_vs_seq_csrc == Catch::Approx(1.0).epsilon(0.75));
}

TEST_CASE("run_benchmark: parallel strategies verify then time") {
    BenchConfig cfg;
    cfg.reps = 3;
    cfg.runs = 3;
    cfg.strategy = {StrategyKind::local_buffers, AccumMethod::effective, 2};
    BenchReport r = run_benchmark("band", build_csr(generate_band(400, 2)), cfg);
    CHECK(r.p == 2);
    CHECK(r.accum == "effective");
    CHECK(r.speedup_vs_seq_csrc > 0.0);

    cfg.strategy = {StrategyKind::colorful, AccumMethod::effective, 2};
    BenchReport c = run_benchmark("band", build_csr(generate_band(400, 2)), cfg);
    CHECK(c.n_colors >= 2);
    CHECK(c.accum == "-");
}

TEST_CASE("run_benchmark: dense_1000 report carries the Table-1 working set") {
    BenchConfig cfg;
    cfg.reps = 1;
    cfg.runs = 1;
    BenchReport r = run_benchmark("dense_1000", build_csr(generate_dense(1000)), cfg);
    CHECK(r.ws_kb == 9783);
    CHECK(r.nnz_stored == 1000000);
    CHECK(r.nnz_per_row == 1000);
}

TEST_CASE("relative_error handles zero references") {
    CHECK(relative_error({0.0}, {0.0}) == 0.0);
    CHECK(relative_error({1.0, 0.0}, {1.0, 0.0}) == 0.0);
}
