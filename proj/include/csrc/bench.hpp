#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "csrc/cost_model.hpp"
#include "csrc/parallel.hpp"
#include "csrc/working_set.hpp"

namespace csrc {

struct BenchConfig {
    Format format = Format::csrc;  // csrc resolves to csrc_sym automatically
    Strategy strategy;
    ConflictMode conflict_mode = ConflictMode::neighborhood;
    int reps = 1000;
    int runs = 3;
    bool symmetrize = false;
    bool verify_before_timing = true;
};

struct BenchReport {
    std::string matrix;
    count_t n = 0;
    count_t nnz_stored = 0;  // Table-1 convention: full for non-value-symmetric,
                             // diagonal + lower for value-symmetric
    count_t nnz_full = 0;
    count_t nnz_per_row = 0;
    count_t ws_kb = 0;       // floored
    std::string format;
    std::string strategy;
    std::string accum;       // local buffers only, else "-"
    int p = 1;
    int reps = 0;
    int runs = 0;
    double median_total_seconds = 0.0;
    double mflops_effective = 0.0;   // 2*nnz_full flops, format-independent
    double mflops_true = 0.0;        // count_ops flops for the format
    double speedup_vs_seq_csrc = 0.0;
    double init_max = 0.0;           // summed over reps, median run
    double compute_max = 0.0;
    double accumulate_max = 0.0;
    int n_colors = 0;                // colorful only

    static const std::vector<std::string>& field_names() {
        static const std::vector<std::string> names = {
            "matrix", "n", "nnz_stored", "nnz_full", "nnz_per_row", "ws_kb", "format",
            "strategy", "accum", "p", "reps", "runs", "median_total_seconds",
            "mflops_effective", "mflops_true", "speedup_vs_seq_csrc", "init_max",
            "compute_max", "accumulate_max", "n_colors"};
        return names;
    }
};

inline const char* to_string(StrategyKind k) {
    switch (k) {
        case StrategyKind::sequential: return "seq";
        case StrategyKind::local_buffers: return "buffers";
        case StrategyKind::colorful: return "colorful";
    }
    return "?";
}

inline const char* to_string(AccumMethod m) {
    switch (m) {
        case AccumMethod::all_in_one: return "all-in-one";
        case AccumMethod::per_buffer: return "per-buffer";
        case AccumMethod::effective: return "effective";
        case AccumMethod::interval: return "interval";
    }
    return "?";
}

inline const char* to_string(Format f) {
    switch (f) {
        case Format::csr: return "csr";
        case Format::csrc: return "csrc";
        case Format::csrc_sym: return "csrc_sym";
    }
    return "?";
}

/// Deterministic source vector, identical across configurations.
inline Vector bench_source_vector(count_t n) {
    Vector x(static_cast<std::size_t>(n));
    for (count_t i = 0; i < n; ++i) x[i] = 1.0 + static_cast<double>(i % 7) / 7.0;
    return x;
}

/// Infinity-norm relative error of y against a reference.
inline double relative_error(const Vector& y, const Vector& ref) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        num = std::max(num, std::abs(y[i] - ref[i]));
        den = std::max(den, std::abs(ref[i]));
    }
    return den == 0.0 ? num : num / den;
}

/// Table-1 style matrix statistics.
struct MatrixInfo {
    std::string name;
    count_t n = 0;
    count_t nnz = 0;          // stored-entry convention
    count_t nnz_per_row = 0;  // integer division
    count_t ws_kb = 0;        // floored
    bool value_symmetric = false;
};

inline MatrixInfo matrix_info(const std::string& name, const CsrcMatrix& c) {
    MatrixInfo mi;
    mi.name = name;
    mi.n = c.n;
    mi.value_symmetric = c.value_symmetric;
    mi.nnz = c.value_symmetric ? c.nnz_stored() : c.nnz_full();
    mi.nnz_per_row = mi.nnz / mi.n;
    mi.ws_kb = static_cast<count_t>(working_set_kb(mi.n, mi.nnz, mi.value_symmetric));
    return mi;
}

namespace detail {

inline double median3(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

using bench_clock = std::chrono::steady_clock;

/// reps products, total wall time plus summed per-phase maxima.
struct RunResult {
    double total_seconds = 0.0;
    PhaseTimings phases;  // sums over reps
};

template <typename Apply>
RunResult timed_run(Apply&& apply, int reps) {
    RunResult r;
    auto t0 = bench_clock::now();
    for (int i = 0; i < reps; ++i) {
        const PhaseTimings* pt = apply();
        if (pt) {
            r.phases.init_max += pt->init_max;
            r.phases.compute_max += pt->compute_max;
            r.phases.accumulate_max += pt->accumulate_max;
        }
    }
    r.total_seconds = std::chrono::duration<double>(bench_clock::now() - t0).count();
    return r;
}

}  // namespace detail

/// Repeated-product benchmark: reps products per run, runs runs, median
/// aggregation; speedup is relative to the pure sequential CSRC kernel.
inline BenchReport run_benchmark(const std::string& name, const CsrMatrix& csr_full,
                                 const BenchConfig& cfg) {
    CsrcMatrix csrc_m = csr_to_csrc(csr_full);
    MatrixInfo mi = matrix_info(name, csrc_m);

    BenchReport rep;
    rep.matrix = name;
    rep.n = mi.n;
    rep.nnz_stored = mi.nnz;
    rep.nnz_full = csrc_m.nnz_full();
    rep.nnz_per_row = mi.nnz_per_row;
    rep.ws_kb = mi.ws_kb;
    rep.p = cfg.strategy.p;
    rep.reps = cfg.reps;
    rep.runs = cfg.runs;
    rep.strategy = to_string(cfg.strategy.kind);
    rep.accum = cfg.strategy.kind == StrategyKind::local_buffers ? to_string(cfg.strategy.accum)
                                                                 : "-";

    Format fmt = cfg.format;
    if (fmt != Format::csr) fmt = csrc_m.value_symmetric ? Format::csrc_sym : Format::csrc;
    rep.format = to_string(fmt);

    const Vector x = bench_source_vector(mi.n);
    const Vector y_ref = spmv_csrc(csrc_m, x);

    // sequential CSRC baseline, the speedup denominator
    std::vector<double> base_times;
    for (int r = 0; r < cfg.runs; ++r) {
        auto res = detail::timed_run(
            [&]() -> const PhaseTimings* {
                Vector y = spmv_csrc(csrc_m, x);
                (void)y;
                return nullptr;
            },
            cfg.reps);
        base_times.push_back(res.total_seconds);
    }
    const double base_median = detail::median3(base_times);

    std::vector<double> times;
    std::vector<PhaseTimings> phases;

    if (fmt == Format::csr) {
        for (int r = 0; r < cfg.runs; ++r) {
            auto res = detail::timed_run(
                [&]() -> const PhaseTimings* {
                    Vector y = spmv_csr(csr_full, x);
                    (void)y;
                    return nullptr;
                },
                cfg.reps);
            times.push_back(res.total_seconds);
            phases.push_back(res.phases);
        }
    } else if (cfg.strategy.kind == StrategyKind::sequential || cfg.strategy.p == 1) {
        for (int r = 0; r < cfg.runs; ++r) {
            auto res = detail::timed_run(
                [&]() -> const PhaseTimings* {
                    Vector y = spmv_csrc(csrc_m, x);
                    (void)y;
                    return nullptr;
                },
                cfg.reps);
            times.push_back(res.total_seconds);
            phases.push_back(res.phases);
        }
    } else {
        std::unique_ptr<ParallelSpmv> exec;
        if (cfg.strategy.kind == StrategyKind::colorful) {
            auto plan = ColorfulPlan::build(csrc_m, cfg.strategy.p, cfg.conflict_mode);
            rep.n_colors = plan.coloring.n_colors;
            exec = std::make_unique<ParallelSpmv>(csrc_m, cfg.strategy, std::move(plan));
        } else {
            exec = std::make_unique<ParallelSpmv>(csrc_m, cfg.strategy);
        }

        if (cfg.verify_before_timing) {
            Vector y = exec->apply(x);
            double err = relative_error(y, y_ref);
            if (err > 1e-12) {
                throw Error("benchmark verification failed: relative error " +
                            std::to_string(err) + " vs sequential CSRC");
            }
        }

        Vector y(static_cast<std::size_t>(mi.n));
        for (int r = 0; r < cfg.runs; ++r) {
            auto res = detail::timed_run(
                [&]() -> const PhaseTimings* {
                    exec->apply(x, y);
                    return &exec->last_timings();
                },
                cfg.reps);
            times.push_back(res.total_seconds);
            phases.push_back(res.phases);
        }
    }

    // median run (by total time) supplies the phase sums
    std::vector<std::size_t> order(times.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });
    const std::size_t med = order[order.size() / 2];

    rep.median_total_seconds = times[med];
    rep.init_max = phases[med].init_max;
    rep.compute_max = phases[med].compute_max;
    rep.accumulate_max = phases[med].accumulate_max;

    const double per_product = rep.median_total_seconds / cfg.reps;
    rep.mflops_effective = 2.0 * static_cast<double>(rep.nnz_full) / per_product / 1e6;
    rep.mflops_true =
        static_cast<double>(count_ops(fmt, mi.n, rep.nnz_full).flops) / per_product / 1e6;
    rep.speedup_vs_seq_csrc = base_median / rep.median_total_seconds;
    return rep;
}

}  // namespace csrc
