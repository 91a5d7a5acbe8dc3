#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace csrc;

namespace {

CsrcMatrix tridiagonal(index_t n) {
    return csr_to_csrc(build_csr(generate_band(n, 1)));
}

/// Matrix with prescribed stored-entry counts per row (1 diagonal + c-1
/// lower entries packed at the smallest columns; requires c-1 <= row index).
CsrcMatrix with_row_counts(const std::vector<count_t>& counts) {
    TripletMatrix t;
    t.n_rows = t.n_cols = static_cast<index_t>(counts.size());
    for (index_t i = 0; i < t.n_rows; ++i) {
        t.add(i, i, 1.0);
        REQUIRE(counts[i] - 1 <= i);
        for (count_t k = 0; k < counts[i] - 1; ++k) {
            auto j = static_cast<index_t>(k);
            t.add(i, j, 1.0);
            t.add(j, i, 1.0);
        }
    }
    return csr_to_csrc(build_csr(t));
}

}  // namespace

TEST_CASE("partition_by_nnz: p=1 owns everything") {
    CsrcMatrix a = tridiagonal(10);
    RowPartition part = partition_by_nnz(a, 1);
    CHECK(part.block_start == std::vector<index_t>{0, 10});
    CHECK(part.block_nnz[0] == a.nnz_stored());
}

TEST_CASE("partition_by_nnz rejects p > n") {
    CHECK_THROWS_AS(partition_by_nnz(tridiagonal(3), 4), Error);
}

TEST_CASE("partition_by_nnz: counts (1,2,2,3,2), p=2") {
    CsrcMatrix a = with_row_counts({1, 2, 2, 3, 2});
    RowPartition part = partition_by_nnz(a, 2);
    CHECK(part.block_start == std::vector<index_t>{0, 3, 5});
    CHECK(part.block_nnz == std::vector<count_t>{5, 5});

    // exhaustive check: no other single boundary does better on the worse block
    count_t best = std::numeric_limits<count_t>::max();
    for (index_t b = 1; b < 5; ++b) {
        count_t left = 0, right = 0;
        for (index_t i = 0; i < b; ++i) left += detail::stored_row_count(a, i);
        for (index_t i = b; i < 5; ++i) right += detail::stored_row_count(a, i);
        best = std::min(best, std::max(left, right));
    }
    CHECK(std::max(part.block_nnz[0], part.block_nnz[1]) == best);
}

TEST_CASE("partition_by_nnz balance on band matrices") {
    for (index_t h : {1, 3, 8}) {
        CsrcMatrix a = csr_to_csrc(build_csr(generate_band(400, h)));
        count_t max_row = 0;
        for (index_t i = 0; i < a.n; ++i)
            max_row = std::max(max_row, detail::stored_row_count(a, i));
        for (int p : {2, 4, 8, 16}) {
            RowPartition part = partition_by_nnz(a, p);
            count_t total = 0;
            for (count_t c : part.block_nnz) total += c;
            CHECK(total == a.nnz_stored());
            const double ideal = static_cast<double>(total) / p;
            for (int t = 0; t < p; ++t) {
                CHECK(part.block_start[t] < part.block_start[t + 1]);  // non-empty
                CHECK(static_cast<double>(part.block_nnz[t]) <= ideal + max_row);
            }
        }
    }
}

TEST_CASE("effective_range: diagonal block has no off-block writes") {
    TripletMatrix t;
    t.n_rows = t.n_cols = 10;
    for (index_t i = 0; i < 10; ++i) t.add(i, i, 1.0);
    CsrcMatrix a = csr_to_csrc(build_csr(t));
    EffectiveRange r = effective_range(a, 4, 7);
    CHECK(r.lo == 4);
    CHECK(r.hi == 6);
}

TEST_CASE("effective_range: tridiagonal block reaches one row back") {
    CsrcMatrix a = tridiagonal(10);
    EffectiveRange r = effective_range(a, 4, 7);
    CHECK(r.lo == 3);
    CHECK(r.hi == 6);
}

TEST_CASE("effective_range: arrow matrix last row spans everything") {
    TripletMatrix t;
    index_t n = 8;
    t.n_rows = t.n_cols = n;
    for (index_t i = 0; i < n; ++i) t.add(i, i, 1.0);
    for (index_t j = 0; j + 1 < n; ++j) {
        t.add(n - 1, j, 1.0);
        t.add(j, n - 1, 1.0);
    }
    CsrcMatrix a = csr_to_csrc(build_csr(t));
    EffectiveRange r = effective_range(a, n - 1, n);
    CHECK(r.lo == 0);
    CHECK(r.hi == n - 1);
}

TEST_CASE("effective ranges cover the exact write sets") {
    for (int trial = 0; trial < 20; ++trial) {
        index_t n = 20 + (trial * 17) % 181;
        CsrcMatrix a = csr_to_csrc(build_csr(generate_random_sym(n, 0.05, 900 + trial)));
        for (int p : {2, 3, 5}) {
            if (p > n) continue;
            RowPartition part = partition_by_nnz(a, p);
            auto ranges = effective_ranges(a, part);
            for (int t = 0; t < p; ++t) {
                for (index_t i = part.begin(t); i < part.end(t); ++i)
                    for (index_t q : testutil::write_set(a, i)) REQUIRE(ranges[t].covers(q));
            }
        }
    }
}

TEST_CASE("build_interval_plan: single range") {
    IntervalPlan plan = build_interval_plan({{0, 9}});
    REQUIRE(plan.intervals.size() == 1);
    CHECK(plan.intervals[0].begin == 0);
    CHECK(plan.intervals[0].end == 10);
    CHECK(plan.intervals[0].contributors == std::vector<int>{0});
}

TEST_CASE("build_interval_plan: overlapping pair") {
    IntervalPlan plan = build_interval_plan({{0, 5}, {3, 9}});
    REQUIRE(plan.intervals.size() == 3);
    CHECK(plan.intervals[0].begin == 0);
    CHECK(plan.intervals[0].end == 3);
    CHECK(plan.intervals[0].contributors == std::vector<int>{0});
    CHECK(plan.intervals[1].begin == 3);
    CHECK(plan.intervals[1].end == 6);
    CHECK(plan.intervals[1].contributors == std::vector<int>{0, 1});
    CHECK(plan.intervals[2].begin == 6);
    CHECK(plan.intervals[2].end == 10);
    CHECK(plan.intervals[2].contributors == std::vector<int>{1});
}

TEST_CASE("interval contributor sets match pointwise membership") {
    for (int trial = 0; trial < 20; ++trial) {
        index_t n = 50 + (trial * 13) % 151;
        CsrcMatrix a = csr_to_csrc(build_csr(generate_band(n, 1 + trial % 6)));
        for (int p : {2, 4}) {
            RowPartition part = partition_by_nnz(a, p);
            auto ranges = effective_ranges(a, part);
            IntervalPlan plan = build_interval_plan(ranges);

            CHECK(static_cast<int>(plan.intervals.size()) >= p);  // nested band ranges

            std::vector<int> covered(static_cast<std::size_t>(n), 0);
            for (const auto& iv : plan.intervals) {
                REQUIRE(iv.begin < iv.end);
                for (index_t q = iv.begin; q < iv.end; ++q) {
                    ++covered[q];
                    std::vector<int> expect;
                    for (int b = 0; b < p; ++b)
                        if (ranges[b].covers(q)) expect.push_back(b);
                    REQUIRE(iv.contributors == expect);
                }
            }
            // intervals are disjoint and cover exactly the union of ranges
            for (index_t q = 0; q < n; ++q) {
                bool in_union = false;
                for (const auto& r : ranges) in_union = in_union || r.covers(q);
                CHECK(covered[q] == (in_union ? 1 : 0));
            }
        }
    }
}
