#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "promenade/error.hpp"

namespace promenade {

/// Simple undirected graph on at most 64 vertices; rows are GF(2) adjacency bitsets.
class Graph {
public:
    using Row = std::uint64_t;
    static constexpr int max_vertices = 64;

    Graph() = default;
    explicit Graph(int n) : rows_(check(n), 0) {}

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        Graph g(n);
        for (auto [u, v] : edges) g.add_edge(u, v);
        return g;
    }

    int size() const noexcept { return static_cast<int>(rows_.size()); }
    Row row(int v) const { return rows_.at(v); }
    const std::vector<Row>& rows() const noexcept { return rows_; }
    bool has_edge(int u, int v) const { return rows_.at(u) >> v & 1u; }
    int degree(int v) const { return std::popcount(rows_.at(v)); }
    int edge_count() const {
        int e = 0;
        for (Row r : rows_) e += std::popcount(r);
        return e / 2;
    }

    void add_edge(int u, int v) {
        if (u == v) throw InvalidInput("loops are not allowed");
        rows_.at(u) |= Row{1} << v;
        rows_.at(v) |= Row{1} << u;
    }

    /// Subgraph induced on the vertex mask, vertices renumbered in increasing order.
    Graph induced(Row mask) const {
        std::vector<int> keep;
        for (int v = 0; v < size(); ++v)
            if (mask >> v & 1u) keep.push_back(v);
        Graph h(static_cast<int>(keep.size()));
        for (std::size_t a = 0; a < keep.size(); ++a)
            for (std::size_t b = a + 1; b < keep.size(); ++b)
                if (has_edge(keep[a], keep[b])) h.add_edge(static_cast<int>(a), static_cast<int>(b));
        return h;
    }

    Row all() const { return size() == 64 ? ~Row{0} : (Row{1} << size()) - 1; }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    static int check(int n) {
        if (n < 0 || n > max_vertices) throw SizeCapExceeded("graphs are limited to 64 vertices");
        return n;
    }
    std::vector<Row> rows_;
};

inline constexpr int unreachable = std::numeric_limits<int>::max() / 4;

/// BFS distances inside the vertex set `within`; unreachable for other vertices.
inline std::vector<int> bfs_distances(const Graph& g, int src, Graph::Row within) {
    std::vector<int> d(g.size(), unreachable);
    d[src] = 0;
    Graph::Row frontier = Graph::Row{1} << src, seen = frontier;
    int level = 0;
    while (frontier) {
        ++level;
        Graph::Row next = 0;
        for (Graph::Row f = frontier; f; f &= f - 1) next |= g.row(std::countr_zero(f));
        next &= within & ~seen;
        seen |= next;
        for (Graph::Row f = next; f; f &= f - 1) d[std::countr_zero(f)] = level;
        frontier = next;
    }
    return d;
}

inline std::vector<std::vector<int>> distance_matrix(const Graph& g) {
    std::vector<std::vector<int>> d;
    for (int v = 0; v < g.size(); ++v) d.push_back(bfs_distances(g, v, g.all()));
    return d;
}

inline bool is_connected_within(const Graph& g, Graph::Row mask) {
    if (!mask) return true;
    const int s = std::countr_zero(mask);
    Graph::Row seen = Graph::Row{1} << s, frontier = seen;
    while (frontier) {
        Graph::Row next = 0;
        for (Graph::Row f = frontier; f; f &= f - 1) next |= g.row(std::countr_zero(f));
        next &= mask & ~seen;
        seen |= next;
        frontier = next;
    }
    return seen == mask;
}

/// Rank over GF(2) of the adjacency matrix.
inline int gf2_rank(const Graph& g) {
    std::vector<Graph::Row> m = g.rows();
    int rank = 0;
    for (int col = 0; col < g.size(); ++col) {
        const Graph::Row bit = Graph::Row{1} << col;
        auto pivot = std::find_if(m.begin() + rank, m.end(), [&](Graph::Row r) { return r & bit; });
        if (pivot == m.end()) continue;
        std::iter_swap(m.begin() + rank, pivot);
        for (std::size_t r = 0; r < m.size(); ++r)
            if (static_cast<int>(r) != rank && (m[r] & bit)) m[r] ^= m[rank];
        ++rank;
    }
    return rank;
}

// ---------------------------------------------------------------------------
// Reductions

enum class Reduction { pendant, true_twin, false_twin, isolated };

/// Finds a pendant vertex or a pair of twins among the alive vertices.
/// Returns the vertex to delete.
inline std::optional<int> find_collapse_move(const Graph& g, Graph::Row alive, bool allow_pendant) {
    for (Graph::Row a = alive; a; a &= a - 1) {
        const int u = std::countr_zero(a);
        const Graph::Row nu = g.row(u) & alive;
        if (allow_pendant && std::popcount(nu) == 1) return u;
        for (Graph::Row b = a & (a - 1); b; b &= b - 1) {
            const int v = std::countr_zero(b);
            const Graph::Row nv = g.row(v) & alive;
            const Graph::Row mask = ~((Graph::Row{1} << u) | (Graph::Row{1} << v));
            if ((nu & mask) == (nv & mask)) return v;
        }
    }
    return std::nullopt;
}

inline bool reduces_to_point(const Graph& g, bool allow_pendant) {
    Graph::Row alive = g.all();
    while (std::popcount(alive) > 1) {
        auto v = find_collapse_move(g, alive, allow_pendant);
        if (!v) return false;
        alive &= ~(Graph::Row{1} << *v);
    }
    return true;
}

/// Twins only.
inline bool is_cograph(const Graph& g) { return reduces_to_point(g, false); }

/// Pendant deletions and twin merges.
inline bool is_collapsible(const Graph& g) { return reduces_to_point(g, true); }

/// Every connected induced subgraph is isometric. Exponential; meant for small graphs.
inline bool is_distance_hereditary_direct(const Graph& g) {
    const int n = g.size();
    if (n > 20) throw SizeCapExceeded("direct distance-hereditary check is exponential");
    const auto full = distance_matrix(g);
    for (Graph::Row mask = 1; mask <= g.all(); ++mask) {
        if (std::popcount(mask) < 3 || !is_connected_within(g, mask)) continue;
        for (Graph::Row a = mask; a; a &= a - 1) {
            const int s = std::countr_zero(a);
            auto d = bfs_distances(g, s, mask);
            for (Graph::Row b = mask; b; b &= b - 1) {
                const int t = std::countr_zero(b);
                if (d[t] != full[s][t]) return false;
            }
        }
        if (mask == g.all()) break;
    }
    return true;
}

/// Four-point condition: two of the three pair sums agree, with infinite distances across components.
inline bool is_treelike(const Graph& g) {
    const auto d = distance_matrix(g);
    const int n = g.size();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int e = c + 1; e < n; ++e) {
                    const long s1 = static_cast<long>(d[a][b]) + d[c][e];
                    const long s2 = static_cast<long>(d[a][c]) + d[b][e];
                    const long s3 = static_cast<long>(d[a][e]) + d[b][c];
                    auto inf = [](long s) { return s >= unreachable; };
                    auto same = [&](long x, long y) { return x == y || (inf(x) && inf(y)); };
                    if (!same(s1, s2) && !same(s1, s3) && !same(s2, s3)) return false;
                }
    return true;
}

// ---------------------------------------------------------------------------
// Small pattern graphs

/// House: a square with a roof.
inline Graph house_graph() { return Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {2, 4}, {3, 4}}); }
/// Gem: a 4-path plus a vertex joined to all of it.
inline Graph gem_graph() { return Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {4, 0}, {4, 1}, {4, 2}, {4, 3}}); }
/// Domino: two squares sharing an edge.
inline Graph domino_graph() { return Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {1, 4}}); }
inline Graph cycle_graph(int m) {
    Graph g(m);
    for (int i = 0; i < m; ++i) g.add_edge(i, (i + 1) % m);
    return g;
}
inline Graph path_graph(int m) {
    Graph g(m);
    for (int i = 0; i + 1 < m; ++i) g.add_edge(i, i + 1);
    return g;
}

/// Brute-force isomorphism test for small graphs (<= 8 vertices).
inline bool isomorphic_small(const Graph& a, const Graph& b) {
    const int n = a.size();
    if (n != b.size() || a.edge_count() != b.edge_count()) return false;
    if (n > 8) throw SizeCapExceeded("isomorphic_small is for <= 8 vertices");
    std::vector<int> da, db;
    for (int v = 0; v < n; ++v) da.push_back(a.degree(v)), db.push_back(b.degree(v));
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    do {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            for (int v = u + 1; v < n && ok; ++v) ok = a.has_edge(u, v) == b.has_edge(p[u], p[v]);
        if (ok) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

/// Name of a minimal non distance-hereditary graph: "C<m>", "house", "gem", "domino", or empty.
inline std::string forbidden_graph_name(const Graph& g) {
    const int n = g.size();
    if (n >= 5 && g.edge_count() == n) {
        bool two_regular = true;
        for (int v = 0; v < n; ++v) two_regular = two_regular && g.degree(v) == 2;
        if (two_regular && is_connected_within(g, g.all())) return "C" + std::to_string(n);
    }
    if (n == 5 && isomorphic_small(g, house_graph())) return "house";
    if (n == 5 && isomorphic_small(g, gem_graph())) return "gem";
    if (n == 6 && isomorphic_small(g, domino_graph())) return "domino";
    return {};
}

/// Induced hole of length >= 5, as a vertex list, if any.
inline std::optional<std::vector<int>> find_long_hole(const Graph& g) {
    const int n = g.size();
    auto bit = [](int v) { return Graph::Row{1} << v; };
    for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
            if (!g.has_edge(b, c)) continue;
            for (Graph::Row ra = g.row(b) & ~g.row(c) & ~bit(c); ra; ra &= ra - 1) {
                const int a = std::countr_zero(ra);
                for (Graph::Row rd = g.row(c) & ~g.row(b) & ~bit(b); rd; rd &= rd - 1) {
                    const int d = std::countr_zero(rd);
                    if (a == d || g.has_edge(a, d)) continue;
                    const Graph::Row blocked = (g.row(b) | g.row(c) | bit(b) | bit(c)) & ~(bit(a) | bit(d));
                    const Graph::Row within = g.all() & ~blocked;
                    // BFS with parents from a to d inside `within`
                    std::vector<int> parent(n, -1);
                    Graph::Row seen = bit(a), frontier = bit(a);
                    while (frontier && !(seen & bit(d))) {
                        Graph::Row next = 0;
                        for (Graph::Row f = frontier; f; f &= f - 1) {
                            const int u = std::countr_zero(f);
                            for (Graph::Row nb = g.row(u) & within & ~seen & ~next; nb; nb &= nb - 1)
                                parent[std::countr_zero(nb)] = u;
                            next |= g.row(u) & within & ~seen;
                        }
                        seen |= next;
                        frontier = next;
                    }
                    if (!(seen & bit(d))) continue;
                    std::vector<int> cyc;
                    for (int v = d; v != -1; v = parent[v]) cyc.push_back(v);
                    cyc.push_back(b);
                    cyc.push_back(c);
                    return cyc;
                }
            }
        }
    return std::nullopt;
}

/// Vertex set of an induced house, gem or domino, if any.
inline std::optional<std::vector<int>> find_small_forbidden(const Graph& g) {
    const int n = g.size();
    std::vector<int> pick;
    std::optional<std::vector<int>> found;
    auto rec = [&](auto&& self, int start, int want) -> bool {
        if (static_cast<int>(pick.size()) == want) {
            Graph::Row mask = 0;
            for (int v : pick) mask |= Graph::Row{1} << v;
            const Graph h = g.induced(mask);
            const int e = h.edge_count();
            const bool candidate = (want == 5 && (e == 6 || e == 7)) || (want == 6 && e == 7);
            if (candidate && !forbidden_graph_name(h).empty() && h.size() == want &&
                forbidden_graph_name(h)[0] != 'C') {
                found = pick;
                return true;
            }
            return false;
        }
        for (int v = start; v < n; ++v) {
            pick.push_back(v);
            if (self(self, v + 1, want)) return true;
            pick.pop_back();
        }
        return false;
    };
    if (rec(rec, 0, 5)) return found;
    pick.clear();
    if (rec(rec, 0, 6)) return found;
    return std::nullopt;
}

/// No induced hole of length >= 5, house, gem or domino.
inline bool avoids_forbidden_subgraphs(const Graph& g) { return !find_long_hole(g) && !find_small_forbidden(g); }

struct GraphClasses {
    bool cograph = false;
    bool collapsible = false;
    bool distance_hereditary = false;
    bool treelike = false;
};

inline constexpr int distance_hereditary_direct_cap = 12;

inline GraphClasses classify_graph(const Graph& g) {
    GraphClasses c;
    c.cograph = is_cograph(g);
    c.collapsible = is_collapsible(g);
    c.distance_hereditary = g.size() <= distance_hereditary_direct_cap ? is_distance_hereditary_direct(g)
                                                                       : avoids_forbidden_subgraphs(g);
    c.treelike = is_treelike(g);
    return c;
}

} // namespace promenade
