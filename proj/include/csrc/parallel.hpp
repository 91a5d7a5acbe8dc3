#pragma once

#include <atomic>
#include <barrier>
#include <chrono>
#include <functional>
#include <memory>
#include <thread>

#include "csrc/coloring.hpp"
#include "csrc/kernels.hpp"
#include "csrc/partition.hpp"

namespace csrc {

enum class StrategyKind { sequential, local_buffers, colorful };
enum class AccumMethod { all_in_one, per_buffer, effective, interval };

struct Strategy {
    StrategyKind kind = StrategyKind::sequential;
    AccumMethod accum = AccumMethod::effective;  // local_buffers only
    int p = 1;
};

/// Maximum per-phase running time across the team, in seconds.
struct PhaseTimings {
    double init_max = 0.0;
    double compute_max = 0.0;
    double accumulate_max = 0.0;
};

/// Number of private destination buffers a strategy allocates per product.
/// A one-thread team writes the global vector directly, so it needs none;
/// colorful never buffers.
inline int allocation_stats(const Strategy& s) {
    if (s.kind == StrategyKind::local_buffers && s.p >= 2) return s.p;
    return 0;
}

struct LocalBuffersPlan {
    RowPartition partition;
    std::vector<EffectiveRange> ranges;
    IntervalPlan intervals;

    static LocalBuffersPlan build(const CsrcMatrix& a, int p) {
        LocalBuffersPlan plan;
        plan.partition = partition_by_nnz(a, p);
        plan.ranges = effective_ranges(a, plan.partition);
        plan.intervals = build_interval_plan(plan.ranges);
        return plan;
    }
};

struct ColorfulPlan {
    Coloring coloring;
    // per class, per worker: [start, end) into the class's row list,
    // balanced by stored-entry count like partition_by_nnz
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> class_slices;

    static ColorfulPlan build(const CsrcMatrix& a, int p,
                              ConflictMode mode = ConflictMode::neighborhood,
                              ColorOrder order = ColorOrder::natural) {
        ColorfulPlan plan;
        plan.coloring = color_rows(build_conflict_graph(a, mode), order);
        plan.slice(a, p);
        return plan;
    }

    void slice(const CsrcMatrix& a, int p) {
        class_slices.clear();
        for (const auto& rows : coloring.classes) {
            std::vector<count_t> prefix(rows.size() + 1, 0);
            for (std::size_t r = 0; r < rows.size(); ++r)
                prefix[r + 1] = prefix[r] + detail::stored_row_count(a, rows[r]);
            const double ideal = static_cast<double>(prefix.back()) / p;

            std::vector<std::pair<std::size_t, std::size_t>> slices(static_cast<std::size_t>(p));
            std::size_t b = 0;
            std::size_t prev = 0;
            for (int t = 1; t < p; ++t) {
                const double target = t * ideal;
                if (b < prev) b = prev;
                while (b < rows.size() && static_cast<double>(prefix[b]) < target) ++b;
                if (b > prev && std::abs(static_cast<double>(prefix[b - 1]) - target) <=
                                    std::abs(static_cast<double>(prefix[b]) - target))
                    --b;
                slices[t - 1] = {prev, b};
                prev = b;
            }
            slices[p - 1] = {prev, rows.size()};
            class_slices.push_back(std::move(slices));
        }
    }
};

/// Fixed team of p workers driven through fork-join rounds. The caller
/// blocks while a round runs; workers synchronize among themselves with the
/// phase barrier.
class WorkerTeam {
public:
    explicit WorkerTeam(int p)
        : size_(p), gate_(p + 1), done_(p + 1), phase_(p) {
        threads_.reserve(static_cast<std::size_t>(p));
        for (int r = 0; r < p; ++r)
            threads_.emplace_back([this, r] { loop(r); });
    }

    WorkerTeam(const WorkerTeam&) = delete;
    WorkerTeam& operator=(const WorkerTeam&) = delete;

    ~WorkerTeam() {
        stop_.store(true, std::memory_order_release);
        gate_.arrive_and_wait();
    }

    int size() const { return size_; }

    /// Runs task(rank) on every worker; returns when all have finished.
    void run(const std::function<void(int)>& task) {
        task_ = &task;
        gate_.arrive_and_wait();
        done_.arrive_and_wait();
    }

    /// Barrier among the p workers, for use inside a task.
    void phase_barrier() { phase_.arrive_and_wait(); }

private:
    void loop(int rank) {
        for (;;) {
            gate_.arrive_and_wait();
            if (stop_.load(std::memory_order_acquire)) return;
            (*task_)(rank);
            done_.arrive_and_wait();
        }
    }

    int size_;
    std::barrier<> gate_;
    std::barrier<> done_;
    std::barrier<> phase_;
    std::atomic<bool> stop_{false};
    const std::function<void(int)>* task_ = nullptr;
    std::vector<std::jthread> threads_;
};

/// Multi-threaded CSRC product executor. Plans, buffers and the worker team
/// are set up once and reused across repeated products; the matrix and all
/// plans are shared read-only. A one-thread team short-circuits to the
/// sequential kernel and allocates no buffers.
class ParallelSpmv {
public:
    ParallelSpmv(const CsrcMatrix& a, Strategy s)
        : ParallelSpmv(&a, nullptr, s) {
        build_default_plan();
    }

    ParallelSpmv(const CsrcMatrix& a, Strategy s, LocalBuffersPlan plan)
        : ParallelSpmv(&a, nullptr, s) {
        adopt(std::move(plan));
    }

    ParallelSpmv(const CsrcMatrix& a, Strategy s, ColorfulPlan plan)
        : ParallelSpmv(&a, nullptr, s) {
        adopt(std::move(plan));
    }

    ParallelSpmv(const CsrcRectMatrix& a, Strategy s)
        : ParallelSpmv(&a.square, &a, s) {
        build_default_plan();
    }

    ParallelSpmv(const CsrcRectMatrix& a, Strategy s, LocalBuffersPlan plan)
        : ParallelSpmv(&a.square, &a, s) {
        adopt(std::move(plan));
    }

    ParallelSpmv(const CsrcRectMatrix& a, Strategy s, ColorfulPlan plan)
        : ParallelSpmv(&a.square, &a, s) {
        adopt(std::move(plan));
    }

    Vector apply(const Vector& x) {
        Vector y(static_cast<std::size_t>(square_->n));
        apply(x, y);
        return y;
    }

    void apply(const Vector& x, Vector& y) {
        const index_t expected = rect_ ? rect_->m : square_->n;
        if (static_cast<index_t>(x.size()) != expected) {
            throw Error("ParallelSpmv: x has length " + std::to_string(x.size()) +
                        ", expected " + std::to_string(expected));
        }
        y.resize(static_cast<std::size_t>(square_->n));

        if (!team_) {  // p == 1 or sequential strategy
            Vector r = rect_ ? spmv_csrc_rect(*rect_, x) : spmv_csrc(*square_, x);
            y = std::move(r);
            timings_ = {};
            return;
        }

        const int p = strategy_.p;
        worker_timings_.assign(static_cast<std::size_t>(p), {});
        const Vector* xp = &x;
        Vector* yp = &y;
        if (strategy_.kind == StrategyKind::local_buffers) {
            team_->run([this, xp, yp](int w) { buffers_worker(w, *xp, *yp); });
        } else {
            team_->run([this, xp, yp](int w) { colorful_worker(w, *xp, *yp); });
        }

        timings_ = {};
        for (const auto& t : worker_timings_) {
            timings_.init_max = std::max(timings_.init_max, t.init_max);
            timings_.compute_max = std::max(timings_.compute_max, t.compute_max);
            timings_.accumulate_max = std::max(timings_.accumulate_max, t.accumulate_max);
        }
    }

    const PhaseTimings& last_timings() const { return timings_; }
    int buffers_allocated() const { return static_cast<int>(buffers_.size()); }
    const Strategy& strategy() const { return strategy_; }
    const LocalBuffersPlan& buffers_plan() const { return buf_plan_; }
    const ColorfulPlan& colorful_plan() const { return color_plan_; }

private:
    ParallelSpmv(const CsrcMatrix* square, const CsrcRectMatrix* rect, Strategy s)
        : square_(square), rect_(rect), strategy_(s) {
        if (s.p < 1) throw Error("ParallelSpmv: thread count must be >= 1");
        if (s.kind == StrategyKind::sequential && s.p != 1)
            throw Error("ParallelSpmv: sequential strategy requires p = 1");
    }

    void build_default_plan() {
        if (!active()) return;
        if (strategy_.kind == StrategyKind::local_buffers)
            adopt(LocalBuffersPlan::build(*square_, strategy_.p));
        else
            adopt(ColorfulPlan::build(*square_, strategy_.p));
    }

    bool active() const { return strategy_.kind != StrategyKind::sequential && strategy_.p >= 2; }

    void adopt(LocalBuffersPlan plan) {
        if (strategy_.kind != StrategyKind::local_buffers)
            throw Error("ParallelSpmv: local-buffers plan given to a different strategy");
        if (!active()) return;
        if (plan.partition.p != strategy_.p)
            throw Error("ParallelSpmv: plan built for p=" + std::to_string(plan.partition.p) +
                        ", strategy has p=" + std::to_string(strategy_.p));
        buf_plan_ = std::move(plan);
        buffers_.assign(static_cast<std::size_t>(strategy_.p),
                        Vector(static_cast<std::size_t>(square_->n)));
        start_team();
    }

    void adopt(ColorfulPlan plan) {
        if (strategy_.kind != StrategyKind::colorful)
            throw Error("ParallelSpmv: colorful plan given to a different strategy");
        if (!active()) return;
        if (!plan.class_slices.empty() &&
            plan.class_slices.front().size() != static_cast<std::size_t>(strategy_.p))
            throw Error("ParallelSpmv: colorful plan sliced for a different thread count");
        color_plan_ = std::move(plan);
        start_team();
    }

    void start_team() { team_ = std::make_unique<WorkerTeam>(strategy_.p); }

    // Even chunk [w*len/p, (w+1)*len/p).
    static std::pair<index_t, index_t> chunk(index_t len, int p, int w) {
        auto lo = static_cast<index_t>(static_cast<count_t>(len) * w / p);
        auto hi = static_cast<index_t>(static_cast<count_t>(len) * (w + 1) / p);
        return {lo, hi};
    }

    using clock = std::chrono::steady_clock;
    static double seconds_since(clock::time_point t0) {
        return std::chrono::duration<double>(clock::now() - t0).count();
    }

    /// Compute phase shared by all four accumulation methods: worker w runs
    /// the CSRC row kernel over its block into its private buffer.
    void compute_block(int w, const Vector& x) {
        const CsrcMatrix& a = *square_;
        Vector& buf = buffers_[static_cast<std::size_t>(w)];
        const double* au = a.upper();
        const index_t rs = buf_plan_.partition.begin(w);
        const index_t re = buf_plan_.partition.end(w);
        for (index_t i = rs; i < re; ++i) {
            const double xi = x[i];
            double yi = a.ad[i] * xi;
            for (index_t t = a.ia[i]; t < a.ia[i + 1]; ++t) {
                const index_t j = a.ja[t];
                yi += a.al[t] * x[j];
                buf[j] += au[t] * xi;
            }
            if (rect_) {
                const CsrMatrix& r = rect_->rect;
                for (index_t k = r.row_ptr[i]; k < r.row_ptr[i + 1]; ++k)
                    yi += r.values[k] * x[a.n + r.col_idx[k]];
            }
            buf[i] = yi;
        }
    }

    void buffers_worker(int w, const Vector& x, Vector& y) {
        const int p = strategy_.p;
        const index_t n = square_->n;
        PhaseTimings& tm = worker_timings_[static_cast<std::size_t>(w)];

        // --- init ---
        auto t0 = clock::now();
        switch (strategy_.accum) {
            case AccumMethod::all_in_one: {
                // slab w of the p*n concatenated buffer space
                const count_t total = static_cast<count_t>(p) * n;
                const count_t lo = total * w / p;
                const count_t hi = total * (w + 1) / p;
                for (count_t q = lo; q < hi; ++q)
                    buffers_[static_cast<std::size_t>(q / n)][static_cast<std::size_t>(q % n)] =
                        0.0;
                break;
            }
            case AccumMethod::per_buffer: {
                auto [lo, hi] = chunk(n, p, w);
                for (auto& buf : buffers_)
                    std::fill(buf.begin() + lo, buf.begin() + hi, 0.0);
                break;
            }
            case AccumMethod::effective: {
                const auto& r = buf_plan_.ranges[static_cast<std::size_t>(w)];
                Vector& buf = buffers_[static_cast<std::size_t>(w)];
                std::fill(buf.begin() + r.lo, buf.begin() + r.hi + 1, 0.0);
                break;
            }
            case AccumMethod::interval: {
                const auto& ivs = buf_plan_.intervals.intervals;
                for (std::size_t idx = w; idx < ivs.size(); idx += static_cast<std::size_t>(p))
                    for (int b : ivs[idx].contributors)
                        std::fill(buffers_[b].begin() + ivs[idx].begin,
                                  buffers_[b].begin() + ivs[idx].end, 0.0);
                break;
            }
        }
        tm.init_max = seconds_since(t0);
        team_->phase_barrier();

        // --- compute ---
        t0 = clock::now();
        compute_block(w, x);
        tm.compute_max = seconds_since(t0);
        team_->phase_barrier();

        // --- accumulate ---
        t0 = clock::now();
        switch (strategy_.accum) {
            case AccumMethod::all_in_one:
            case AccumMethod::per_buffer: {
                // y sliced evenly; every buffer contributes, ascending id
                auto [lo, hi] = chunk(n, p, w);
                for (index_t q = lo; q < hi; ++q) {
                    double sum = buffers_[0][q];
                    for (int b = 1; b < p; ++b) sum += buffers_[b][q];
                    y[q] = sum;
                }
                break;
            }
            case AccumMethod::effective: {
                // parallelized over ownership blocks so writes stay disjoint
                const index_t rs = buf_plan_.partition.begin(w);
                const index_t re = buf_plan_.partition.end(w);
                for (index_t q = rs; q < re; ++q) {
                    double sum = 0.0;
                    for (int b = 0; b < p; ++b)
                        if (buf_plan_.ranges[static_cast<std::size_t>(b)].covers(q))
                            sum += buffers_[b][q];
                    y[q] = sum;
                }
                break;
            }
            case AccumMethod::interval: {
                const auto& ivs = buf_plan_.intervals.intervals;
                for (std::size_t idx = w; idx < ivs.size(); idx += static_cast<std::size_t>(p)) {
                    for (index_t q = ivs[idx].begin; q < ivs[idx].end; ++q) {
                        double sum = 0.0;
                        for (int b : ivs[idx].contributors) sum += buffers_[b][q];
                        y[q] = sum;
                    }
                }
                break;
            }
        }
        tm.accumulate_max = seconds_since(t0);
    }

    void colorful_worker(int w, const Vector& x, Vector& y) {
        const CsrcMatrix& a = *square_;
        const double* au = a.upper();
        PhaseTimings& tm = worker_timings_[static_cast<std::size_t>(w)];

        // --- init: zero my slice of y ---
        auto t0 = clock::now();
        auto [lo, hi] = chunk(a.n, strategy_.p, w);
        std::fill(y.begin() + lo, y.begin() + hi, 0.0);
        tm.init_max = seconds_since(t0);
        team_->phase_barrier();

        // --- compute: classes in ascending color order, barrier between ---
        for (std::size_t c = 0; c < color_plan_.coloring.classes.size(); ++c) {
            const auto& rows = color_plan_.coloring.classes[c];
            auto [s, e] = color_plan_.class_slices[c][static_cast<std::size_t>(w)];
            t0 = clock::now();
            for (std::size_t r = s; r < e; ++r) {
                const index_t i = rows[r];
                const double xi = x[i];
                double yi = a.ad[i] * xi;
                for (index_t t = a.ia[i]; t < a.ia[i + 1]; ++t) {
                    const index_t j = a.ja[t];
                    yi += a.al[t] * x[j];
                    y[j] += au[t] * xi;
                }
                if (rect_) {
                    const CsrMatrix& rm = rect_->rect;
                    for (index_t k = rm.row_ptr[i]; k < rm.row_ptr[i + 1]; ++k)
                        yi += rm.values[k] * x[a.n + rm.col_idx[k]];
                }
                y[i] += yi;
            }
            tm.compute_max += seconds_since(t0);
            team_->phase_barrier();
        }
    }

    const CsrcMatrix* square_;
    const CsrcRectMatrix* rect_;
    Strategy strategy_;
    LocalBuffersPlan buf_plan_;
    ColorfulPlan color_plan_;
    std::vector<Vector> buffers_;
    std::unique_ptr<WorkerTeam> team_;
    std::vector<PhaseTimings> worker_timings_;
    PhaseTimings timings_;
};

/// One-shot convenience wrapper around ParallelSpmv.
inline std::pair<Vector, PhaseTimings> spmv_parallel(const CsrcMatrix& a, const Vector& x,
                                                     Strategy s) {
    ParallelSpmv exec(a, s);
    Vector y = exec.apply(x);
    return {std::move(y), exec.last_timings()};
}

inline std::pair<Vector, PhaseTimings> spmv_parallel(const CsrcRectMatrix& a, const Vector& x,
                                                     Strategy s) {
    ParallelSpmv exec(a, s);
    Vector y = exec.apply(x);
    return {std::move(y), exec.last_timings()};
}

}  // namespace csrc
