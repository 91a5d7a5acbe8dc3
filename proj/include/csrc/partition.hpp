#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "csrc/csrc_matrix.hpp"

namespace csrc {

/// Contiguous row blocks, one per thread; block t owns rows
/// [block_start[t], block_start[t+1]).
struct RowPartition {
    int p = 1;
    std::vector<index_t> block_start;  // length p + 1
    std::vector<count_t> block_nnz;    // stored entries (diagonal + lower) per block

    index_t begin(int t) const { return block_start[t]; }
    index_t end(int t) const { return block_start[t + 1]; }
};

/// Inclusive interval [lo, hi] of y positions a thread's block may write:
/// its own rows plus the lower-column targets of those rows.
struct EffectiveRange {
    index_t lo = 0;
    index_t hi = 0;

    bool covers(index_t q) const { return lo <= q && q <= hi; }
};

/// Atomic intervals of y obtained by cutting at every effective-range
/// endpoint; within one interval the set of covering buffers is constant.
struct IntervalPlan {
    struct Interval {
        index_t begin;                 // inclusive
        index_t end;                   // exclusive
        std::vector<int> contributors; // buffer ids covering [begin, end)
    };
    std::vector<index_t> boundaries;   // sorted distinct cut points
    std::vector<Interval> intervals;
};

namespace detail {
/// Stored entries attributed to row i: the diagonal plus one (al) or two
/// (al and au) values per off-diagonal pair. Row sums equal nnz_stored().
inline count_t stored_row_count(const CsrcMatrix& a, index_t i) {
    const count_t pairs = a.ia[i + 1] - a.ia[i];
    return 1 + (a.value_symmetric ? pairs : 2 * pairs);
}
}  // namespace detail

/// Nonzero-balanced contiguous partition: boundary t is placed at the row
/// whose stored-entry prefix sum is closest to t * (total/p), by greedy scan.
/// Every block is non-empty.
inline RowPartition partition_by_nnz(const CsrcMatrix& a, int p) {
    if (p < 1 || p > a.n) {
        throw Error("partition_by_nnz: need 1 <= p <= n, got p=" + std::to_string(p) +
                    ", n=" + std::to_string(a.n));
    }

    std::vector<count_t> prefix(static_cast<std::size_t>(a.n) + 1, 0);
    for (index_t i = 0; i < a.n; ++i) prefix[i + 1] = prefix[i] + detail::stored_row_count(a, i);
    const double ideal = static_cast<double>(prefix[a.n]) / p;

    RowPartition part;
    part.p = p;
    part.block_start.assign(static_cast<std::size_t>(p) + 1, 0);
    part.block_start[p] = a.n;

    index_t b = 0;
    for (int t = 1; t < p; ++t) {
        const double target = t * ideal;
        // first boundary with prefix >= target, then keep the closer of it
        // and its predecessor
        index_t lo_bound = part.block_start[t - 1] + 1;      // block t-1 non-empty
        index_t hi_bound = a.n - (p - t);                    // blocks t..p-1 non-empty
        b = std::max(b, lo_bound);
        while (b < hi_bound && static_cast<double>(prefix[b]) < target) ++b;
        if (b > lo_bound &&
            std::abs(static_cast<double>(prefix[b - 1]) - target) <=
                std::abs(static_cast<double>(prefix[b]) - target))
            --b;
        part.block_start[t] = b;
    }

    part.block_nnz.resize(static_cast<std::size_t>(p));
    for (int t = 0; t < p; ++t)
        part.block_nnz[t] = prefix[part.block_start[t + 1]] - prefix[part.block_start[t]];
    return part;
}

/// Write-range of a row block: hi is the last row, lo the smallest lower
/// column index reachable from the block (or the first row if none).
inline EffectiveRange effective_range(const CsrcMatrix& a, index_t first, index_t last_excl) {
    if (first >= last_excl) throw Error("effective_range: empty block");
    EffectiveRange r;
    r.lo = first;
    r.hi = last_excl - 1;
    for (index_t i = first; i < last_excl; ++i)
        for (index_t t = a.ia[i]; t < a.ia[i + 1]; ++t) r.lo = std::min(r.lo, a.ja[t]);
    return r;
}

inline std::vector<EffectiveRange> effective_ranges(const CsrcMatrix& a, const RowPartition& part) {
    std::vector<EffectiveRange> out;
    out.reserve(static_cast<std::size_t>(part.p));
    for (int t = 0; t < part.p; ++t) out.push_back(effective_range(a, part.begin(t), part.end(t)));
    return out;
}

/// Cuts y at every range endpoint; each surviving interval records the
/// buffers covering it (ascending id). Gaps covered by no range are dropped.
inline IntervalPlan build_interval_plan(const std::vector<EffectiveRange>& ranges) {
    IntervalPlan plan;
    std::vector<index_t> cuts;
    for (const auto& r : ranges) {
        cuts.push_back(r.lo);
        cuts.push_back(r.hi + 1);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    plan.boundaries = cuts;

    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        IntervalPlan::Interval iv;
        iv.begin = cuts[c];
        iv.end = cuts[c + 1];
        for (int b = 0; b < static_cast<int>(ranges.size()); ++b)
            if (ranges[b].lo <= iv.begin && iv.end - 1 <= ranges[b].hi)
                iv.contributors.push_back(b);
        if (!iv.contributors.empty()) plan.intervals.push_back(std::move(iv));
    }
    return plan;
}

}  // namespace csrc
