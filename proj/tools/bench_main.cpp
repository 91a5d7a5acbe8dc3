// Benchmark and verification harness for the CSRC sparse kernels.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "csrc/csrc.hpp"

namespace {

using namespace csrc;

struct MatrixSource {
    std::string path;  // Matrix Market file
    std::string gen;   // generator spec KIND:k=v,...
    bool symmetrize = false;

    std::string name() const {
        if (!gen.empty()) {
            std::string kind = gen.substr(0, gen.find(':'));
            if (kind == "dense") return "dense_" + param_or("n", "0");
            return kind;
        }
        auto slash = path.find_last_of('/');
        std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
        auto dot = base.rfind('.');
        return dot == std::string::npos ? base : base.substr(0, dot);
    }

    std::string param_or(const std::string& key, const std::string& fallback) const {
        auto colon = gen.find(':');
        if (colon == std::string::npos) return fallback;
        std::istringstream ss(gen.substr(colon + 1));
        std::string kv;
        while (std::getline(ss, kv, ',')) {
            auto eq = kv.find('=');
            if (eq != std::string::npos && kv.substr(0, eq) == key) return kv.substr(eq + 1);
        }
        return fallback;
    }

    TripletMatrix load_triplets() const {
        if (!gen.empty()) {
            std::string kind = gen.substr(0, gen.find(':'));
            auto geti = [&](const std::string& key, long fallback) {
                return std::stol(param_or(key, std::to_string(fallback)));
            };
            auto getd = [&](const std::string& key, double fallback) {
                return std::stod(param_or(key, std::to_string(fallback)));
            };
            if (kind == "dense") return generate_dense(static_cast<index_t>(geti("n", 1000)));
            if (kind == "band")
                return generate_band(static_cast<index_t>(geti("n", 1000)),
                                     static_cast<index_t>(geti("h", 1)), geti("valsym", 0) != 0);
            if (kind == "random_sym")
                return generate_random_sym(static_cast<index_t>(geti("n", 100)),
                                           getd("density", 0.05),
                                           static_cast<std::uint64_t>(geti("seed", 1)),
                                           geti("valsym", 0) != 0);
            throw Error("unknown generator kind '" + kind + "'");
        }
        std::ifstream in(path);
        if (!in) throw Error("cannot open '" + path + "'");
        return read_matrix_market(in);
    }

    CsrMatrix load_csr() const {
        CsrMatrix a = build_csr(load_triplets());
        if (a.n_rows == a.n_cols) {
            auto sym = analyze_symmetry(a);
            if (!sym.structurally_symmetric) {
                if (!symmetrize) {
                    throw Error("matrix '" + name() +
                                "' is structurally asymmetric (" +
                                std::to_string(sym.missing_transposes) + " missing transposes, " +
                                std::to_string(sym.missing_diagonal) +
                                " missing diagonals); pass --symmetrize to pad with zeros");
                }
                a = symmetrize_pattern(a);
            }
        }
        return a;
    }
};

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

nlohmann::json report_to_json(const BenchReport& r) {
    return nlohmann::json{{"matrix", r.matrix},
                          {"n", r.n},
                          {"nnz_stored", r.nnz_stored},
                          {"nnz_full", r.nnz_full},
                          {"nnz_per_row", r.nnz_per_row},
                          {"ws_kb", r.ws_kb},
                          {"format", r.format},
                          {"strategy", r.strategy},
                          {"accum", r.accum},
                          {"p", r.p},
                          {"reps", r.reps},
                          {"runs", r.runs},
                          {"median_total_seconds", r.median_total_seconds},
                          {"mflops_effective", r.mflops_effective},
                          {"mflops_true", r.mflops_true},
                          {"speedup_vs_seq_csrc", r.speedup_vs_seq_csrc},
                          {"init_max", r.init_max},
                          {"compute_max", r.compute_max},
                          {"accumulate_max", r.accumulate_max},
                          {"n_colors", r.n_colors}};
}

std::string report_to_csv_row(const BenchReport& r) {
    std::ostringstream os;
    os.precision(12);
    os << csv_escape(r.matrix) << ',' << r.n << ',' << r.nnz_stored << ',' << r.nnz_full << ','
       << r.nnz_per_row << ',' << r.ws_kb << ',' << r.format << ',' << r.strategy << ','
       << r.accum << ',' << r.p << ',' << r.reps << ',' << r.runs << ','
       << r.median_total_seconds << ',' << r.mflops_effective << ',' << r.mflops_true << ','
       << r.speedup_vs_seq_csrc << ',' << r.init_max << ',' << r.compute_max << ','
       << r.accumulate_max << ',' << r.n_colors;
    return os.str();
}

std::string csv_header() {
    std::string h;
    for (const auto& f : BenchReport::field_names()) {
        if (!h.empty()) h += ',';
        h += f;
    }
    return h;
}

void write_report(const BenchReport& r, const std::string& fmt, const std::string& out_path) {
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write '" + out_path + "'");
    if (fmt == "json") {
        out << report_to_json(r).dump(2) << "\n";
    } else {
        out << csv_header() << "\n" << report_to_csv_row(r) << "\n";
    }
}

StrategyKind parse_strategy(const std::string& s) {
    if (s == "seq") return StrategyKind::sequential;
    if (s == "buffers") return StrategyKind::local_buffers;
    if (s == "colorful") return StrategyKind::colorful;
    throw CLI::ValidationError("--strategy", "unknown strategy '" + s + "'");
}

AccumMethod parse_accum(const std::string& s) {
    if (s == "all-in-one") return AccumMethod::all_in_one;
    if (s == "per-buffer") return AccumMethod::per_buffer;
    if (s == "effective") return AccumMethod::effective;
    if (s == "interval") return AccumMethod::interval;
    throw CLI::ValidationError("--accum", "unknown accumulation method '" + s + "'");
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

struct VerifyCase {
    std::string label;
    Vector y;
    bool coloring_ok = true;
    std::string coloring_note;
};

int do_verify(const MatrixSource& src, const std::vector<int>& threads,
              const std::string& only_strategy, ConflictMode conflict_mode,
              bool corrupt_coloring) {
    CsrMatrix full = src.load_csr();
    CsrcMatrix m = csr_to_csrc(full);
    const Vector x = bench_source_vector(m.n);

    // oracle: dense two-loop product for small orders, sequential CSR otherwise
    Vector ref;
    if (m.n <= 2000) {
        std::vector<double> dense(static_cast<std::size_t>(m.n) * m.n, 0.0);
        for (index_t i = 0; i < full.n_rows; ++i)
            for (index_t k = full.row_ptr[i]; k < full.row_ptr[i + 1]; ++k)
                dense[static_cast<std::size_t>(i) * m.n + full.col_idx[k]] = full.values[k];
        ref.assign(static_cast<std::size_t>(m.n), 0.0);
        for (index_t i = 0; i < m.n; ++i) {
            double sum = 0.0;
            for (index_t j = 0; j < m.n; ++j)
                sum += dense[static_cast<std::size_t>(i) * m.n + j] * x[j];
            ref[i] = sum;
        }
    } else {
        ref = spmv_csr(full, x);
    }

    bool all_pass = true;
    auto check = [&](const std::string& label, const Vector& y, bool extra_ok,
                     const std::string& note) {
        double err = relative_error(y, ref);
        bool pass = err <= 1e-12 && extra_ok;
        all_pass = all_pass && pass;
        std::cout << (pass ? "pass" : "FAIL") << "  " << label << "  max_rel_err=" << err;
        if (!note.empty()) std::cout << "  " << note;
        std::cout << "\n";
    };

    auto want = [&](const std::string& s) { return only_strategy.empty() || only_strategy == s; };

    if (want("seq")) check("seq csrc p=1", spmv_csrc(m, x), true, "");
    if (want("csr")) check("seq csr", spmv_csr(full, x), true, "");

    for (int p : threads) {
        if (p > m.n) continue;
        if (want("buffers")) {
            for (AccumMethod acc : {AccumMethod::all_in_one, AccumMethod::per_buffer,
                                    AccumMethod::effective, AccumMethod::interval}) {
                Strategy s{StrategyKind::local_buffers, acc, p};
                ParallelSpmv exec(m, s);
                check(std::string("buffers/") + to_string(acc) + " p=" + std::to_string(p),
                      exec.apply(x), true, "");
            }
        }
        if (want("colorful")) {
            Strategy s{StrategyKind::colorful, AccumMethod::effective, p};
            ColorfulPlan plan = ColorfulPlan::build(m, std::max(p, 2), conflict_mode);
            if (corrupt_coloring && plan.coloring.n_colors >= 2) {
                // test hook: merge the first two classes, creating a race
                auto& cls = plan.coloring.classes;
                cls[0].insert(cls[0].end(), cls[1].begin(), cls[1].end());
                std::sort(cls[0].begin(), cls[0].end());
                cls.erase(cls.begin() + 1);
                for (index_t r : cls[0]) plan.coloring.color[r] = 0;
                for (std::size_t c = 1; c < cls.size(); ++c)
                    for (index_t r : cls[c]) plan.coloring.color[r] = static_cast<int>(c);
                plan.coloring.n_colors = static_cast<int>(cls.size());
                plan.slice(m, std::max(p, 2));
            }
            auto validity = validate_coloring(m, plan.coloring);
            std::string note;
            if (!validity.valid) {
                note = "coloring violation: rows " + std::to_string(validity.row_a) + " and " +
                       std::to_string(validity.row_b) + " share y[" +
                       std::to_string(validity.position) + "]";
            }
            if (p == 1) {
                Strategy s1{StrategyKind::colorful, AccumMethod::effective, 1};
                ParallelSpmv exec(m, s1);
                check("colorful p=1", exec.apply(x), validity.valid, note);
            } else {
                plan.slice(m, p);
                ParallelSpmv exec(m, s, std::move(plan));
                check("colorful p=" + std::to_string(p), exec.apply(x), validity.valid, note);
            }
        }
    }

    std::cout << (all_pass ? "VERIFY PASS" : "VERIFY FAIL") << "\n";
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CSRC sparse matrix-vector benchmark harness"};
    app.require_subcommand(1);

    MatrixSource src;
    auto add_source_flags = [&](CLI::App* cmd) {
        auto* mat = cmd->add_option("--matrix", src.path, "Matrix Market file");
        auto* gen = cmd->add_option("--gen", src.gen,
                                    "generator spec KIND:k=v,... (dense, band, random_sym)");
        mat->excludes(gen);
        cmd->add_flag("--symmetrize", src.symmetrize,
                      "pad missing transposes/diagonals with explicit zeros");
    };

    // --- run ---
    auto* run = app.add_subcommand("run", "time repeated products and report");
    std::string format = "csrc", strategy = "seq", accum = "effective";
    std::string conflict_mode_s = "neighborhood";
    int threads = 1, reps = 1000, runs = 3;
    std::vector<std::string> out_spec;
    add_source_flags(run);
    run->add_option("--format", format)->check(CLI::IsMember({"csr", "csrc"}));
    run->add_option("--strategy", strategy)->check(CLI::IsMember({"seq", "buffers", "colorful"}));
    run->add_option("--accum", accum)
        ->check(CLI::IsMember({"all-in-one", "per-buffer", "effective", "interval"}));
    run->add_option("--threads", threads, "worker count")->check(CLI::PositiveNumber);
    run->add_option("--reps", reps, "products per run")->check(CLI::PositiveNumber);
    run->add_option("--runs", runs, "runs (median is reported)")->check(CLI::PositiveNumber);
    run->add_option("--conflict-mode", conflict_mode_s)
        ->check(CLI::IsMember({"neighborhood", "exact"}));
    run->add_option("--out", out_spec, "output: {csv,json} PATH")->expected(2);

    // --- verify ---
    auto* verify = app.add_subcommand("verify", "check every configuration against an oracle");
    std::string threads_list = "1,2,4";
    std::string only_strategy;
    bool corrupt_coloring = false;
    add_source_flags(verify);
    verify->add_option("--threads", threads_list, "comma-separated worker counts");
    verify->add_option("--strategy", only_strategy,
                       "restrict to one strategy (seq, csr, buffers, colorful)");
    verify->add_option("--conflict-mode", conflict_mode_s)
        ->check(CLI::IsMember({"neighborhood", "exact"}));
    verify->add_flag("--corrupt-coloring", corrupt_coloring)->group("");  // test hook, hidden

    // --- info ---
    auto* info = app.add_subcommand("info", "matrix statistics (n, nnz, nnz/n, ws)");
    add_source_flags(info);

    CLI11_PARSE(app, argc, argv);

    try {
        if (src.path.empty() && src.gen.empty()) {
            std::cerr << "error: one of --matrix or --gen is required\n";
            return 2;
        }

        if (run->parsed()) {
            BenchConfig cfg;
            cfg.format = format == "csr" ? Format::csr : Format::csrc;
            cfg.strategy.kind = parse_strategy(strategy);
            cfg.strategy.accum = parse_accum(accum);
            cfg.strategy.p = threads;
            cfg.reps = reps;
            cfg.runs = runs;
            cfg.conflict_mode =
                conflict_mode_s == "exact" ? ConflictMode::exact : ConflictMode::neighborhood;

            BenchReport r = run_benchmark(src.name(), src.load_csr(), cfg);
            std::cout << csv_header() << "\n" << report_to_csv_row(r) << "\n";
            if (!out_spec.empty()) write_report(r, out_spec[0], out_spec[1]);
            return 0;
        }

        if (verify->parsed()) {
            ConflictMode mode =
                conflict_mode_s == "exact" ? ConflictMode::exact : ConflictMode::neighborhood;
            return do_verify(src, parse_int_list(threads_list), only_strategy, mode,
                             corrupt_coloring);
        }

        if (info->parsed()) {
            CsrMatrix a = src.load_csr();
            MatrixInfo mi = matrix_info(src.name(), csr_to_csrc(a));
            std::cout << mi.name << " " << (mi.value_symmetric ? "yes" : "no") << " " << mi.n
                      << " " << mi.nnz << " " << mi.nnz_per_row << " " << mi.ws_kb << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
