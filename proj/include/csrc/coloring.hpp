#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <set>
#include <utility>

#include "csrc/csrc_matrix.hpp"

namespace csrc {

using EdgeSet = std::set<std::pair<index_t, index_t>>;  // u < v, undirected

enum class ConflictMode {
    neighborhood,  // indirect = shared neighbor in the direct-conflict graph
    exact,         // indirect = shared lower write target
};

/// One vertex per row; edges are pairs of rows whose kernels may touch a
/// common y position. Direct and indirect edge sets are disjoint.
struct ConflictGraph {
    index_t n = 0;
    EdgeSet direct_edges;
    EdgeSet indirect_edges;
    ConflictMode mode = ConflictMode::neighborhood;
};

struct Coloring {
    std::vector<int> color;                        // length n
    int n_colors = 0;
    std::vector<std::vector<index_t>> classes;     // per color, ascending rows
};

enum class ColorOrder { natural, largest_first, smallest_last };

/// Direct conflicts: row i conflicts with every row listed among its lower
/// column indices (one sweep through the CSRC structure).
inline EdgeSet direct_conflicts(const CsrcMatrix& a) {
    EdgeSet edges;
    for (index_t i = 0; i < a.n; ++i)
        for (index_t t = a.ia[i]; t < a.ia[i + 1]; ++t)
            edges.insert({a.ja[t], i});  // ja[t] < i
    return edges;
}

/// Indirect conflicts from a direct edge set.
///   neighborhood: {u,v} whenever N(u) and N(v) intersect in the direct
///   graph (a conservative superset).
///   exact: {u,v} whenever rows u and v share a lower column index, i.e. a
///   common write target y[k] with k below both rows.
/// Direct edges are never duplicated.
inline EdgeSet indirect_conflicts(const CsrcMatrix& a, const EdgeSet& direct, ConflictMode mode) {
    EdgeSet indirect;
    if (mode == ConflictMode::neighborhood) {
        std::vector<std::vector<index_t>> adj(static_cast<std::size_t>(a.n));
        for (const auto& [u, v] : direct) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        for (index_t w = 0; w < a.n; ++w) {
            const auto& nb = adj[w];
            for (std::size_t s = 0; s < nb.size(); ++s) {
                for (std::size_t r = s + 1; r < nb.size(); ++r) {
                    index_t u = std::min(nb[s], nb[r]);
                    index_t v = std::max(nb[s], nb[r]);
                    if (u == v) continue;
                    if (direct.count({u, v})) continue;
                    indirect.insert({u, v});
                }
            }
        }
    } else {
        // rows holding column k in their lower part all write y[k]
        std::vector<std::vector<index_t>> rows_of_col(static_cast<std::size_t>(a.n));
        for (index_t i = 0; i < a.n; ++i)
            for (index_t t = a.ia[i]; t < a.ia[i + 1]; ++t) rows_of_col[a.ja[t]].push_back(i);
        for (index_t k = 0; k < a.n; ++k) {
            const auto& rows = rows_of_col[k];
            for (std::size_t s = 0; s < rows.size(); ++s) {
                for (std::size_t r = s + 1; r < rows.size(); ++r) {
                    index_t u = rows[s];
                    index_t v = rows[r];
                    if (direct.count({u, v})) continue;
                    indirect.insert({u, v});
                }
            }
        }
    }
    return indirect;
}

inline ConflictGraph build_conflict_graph(const CsrcMatrix& a,
                                          ConflictMode mode = ConflictMode::neighborhood) {
    ConflictGraph g;
    g.n = a.n;
    g.mode = mode;
    g.direct_edges = direct_conflicts(a);
    g.indirect_edges = indirect_conflicts(a, g.direct_edges, mode);
    return g;
}

namespace detail {
inline std::vector<std::vector<index_t>> combined_adjacency(const ConflictGraph& g) {
    std::vector<std::vector<index_t>> adj(static_cast<std::size_t>(g.n));
    for (const auto* edges : {&g.direct_edges, &g.indirect_edges}) {
        for (const auto& [u, v] : *edges) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
    }
    return adj;
}
}  // namespace detail

/// First-fit greedy coloring over direct + indirect edges. The default
/// order is natural row order; largest-first and smallest-last are the
/// standard degree-based alternatives.
inline Coloring color_rows(const ConflictGraph& g, ColorOrder order = ColorOrder::natural) {
    auto adj = detail::combined_adjacency(g);

    std::vector<index_t> seq(static_cast<std::size_t>(g.n));
    for (index_t i = 0; i < g.n; ++i) seq[i] = i;
    if (order == ColorOrder::largest_first) {
        std::stable_sort(seq.begin(), seq.end(),
                         [&](index_t u, index_t v) { return adj[u].size() > adj[v].size(); });
    } else if (order == ColorOrder::smallest_last) {
        // repeatedly remove a minimum-degree vertex; color in reverse removal order
        std::vector<std::size_t> deg(static_cast<std::size_t>(g.n));
        std::vector<bool> removed(static_cast<std::size_t>(g.n), false);
        for (index_t i = 0; i < g.n; ++i) deg[i] = adj[i].size();
        std::vector<index_t> removal;
        removal.reserve(seq.size());
        for (index_t step = 0; step < g.n; ++step) {
            index_t best = -1;
            for (index_t i = 0; i < g.n; ++i)
                if (!removed[i] && (best < 0 || deg[i] < deg[best])) best = i;
            removed[best] = true;
            removal.push_back(best);
            for (index_t u : adj[best])
                if (!removed[u]) --deg[u];
        }
        std::reverse(removal.begin(), removal.end());
        seq = std::move(removal);
    }

    Coloring c;
    c.color.assign(static_cast<std::size_t>(g.n), -1);
    for (index_t v : seq) {
        std::vector<bool> used;
        used.assign(static_cast<std::size_t>(c.n_colors) + 1, false);
        for (index_t u : adj[v])
            if (c.color[u] >= 0 && c.color[u] < static_cast<int>(used.size()))
                used[c.color[u]] = true;
        int col = 0;
        while (used[col]) ++col;
        c.color[v] = col;
        c.n_colors = std::max(c.n_colors, col + 1);
    }

    c.classes.assign(static_cast<std::size_t>(c.n_colors), {});
    for (index_t i = 0; i < g.n; ++i) c.classes[c.color[i]].push_back(i);
    return c;
}

/// Outcome of the exact write-set check over a coloring.
struct ColoringValidity {
    bool valid = true;
    index_t row_a = -1, row_b = -1;  // first violating pair
    index_t position = -1;           // shared y position
};

/// Confirms by exact write-set intersection that no two rows of one class
/// write a common y position. writes(i) = {i} plus row i's lower columns.
inline ColoringValidity validate_coloring(const CsrcMatrix& a, const Coloring& c) {
    ColoringValidity v;
    std::vector<index_t> writer(static_cast<std::size_t>(a.n), -1);
    for (const auto& rows : c.classes) {
        std::fill(writer.begin(), writer.end(), static_cast<index_t>(-1));
        for (index_t i : rows) {
            auto claim = [&](index_t q) {
                if (writer[q] >= 0) {
                    v.valid = false;
                    v.row_a = writer[q];
                    v.row_b = i;
                    v.position = q;
                    return false;
                }
                writer[q] = i;
                return true;
            };
            if (!claim(i)) return v;
            for (index_t t = a.ia[i]; t < a.ia[i + 1]; ++t)
                if (!claim(a.ja[t])) return v;
        }
    }
    return v;
}

/// DOT text form of the conflict graph: solid edges are direct conflicts,
/// dashed ones indirect.
inline void write_dot(std::ostream& os, const ConflictGraph& g) {
    os << "graph conflicts {\n";
    for (index_t i = 0; i < g.n; ++i) os << "  " << i << ";\n";
    for (const auto& [u, v] : g.direct_edges)
        os << "  " << u << " -- " << v << " [style=solid];\n";
    for (const auto& [u, v] : g.indirect_edges)
        os << "  " << u << " -- " << v << " [style=dashed];\n";
    os << "}\n";
}

}  // namespace csrc
