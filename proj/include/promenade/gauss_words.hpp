#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "promenade/chord_diagrams.hpp"
#include "promenade/error.hpp"
#include "promenade/graph.hpp"
#include "promenade/words.hpp"

namespace promenade {

/// Cyclic word of length 2n, each letter twice. Letters are 0..n-1 by first occurrence.
class GaussWord {
public:
    GaussWord() = default;
    explicit GaussWord(std::vector<int> letters, std::vector<std::string> names = {})
        : w_(ChordDiagram::relabel(letters)), names_(std::move(names)) {
        ChordDiagram::from_letters(w_);  // validates the exactly-twice property
        if (names_.empty())
            for (int k = 0; k < letters_count(); ++k) names_.push_back(letter_name(k));
        if (static_cast<int>(names_.size()) != letters_count()) throw InvalidInput("letter names do not match the word");
    }

    static GaussWord parse(std::string_view text) {
        std::vector<std::string> names;
        auto w = letters_from_tokens(tokenize_word(text, false), &names);
        return GaussWord(std::move(w), std::move(names));
    }

    int letters_count() const noexcept { return static_cast<int>(w_.size()) / 2; }
    int length() const noexcept { return static_cast<int>(w_.size()); }
    int operator[](int i) const { return w_[((i % length()) + length()) % length()]; }
    const std::vector<int>& letters() const noexcept { return w_; }
    const std::string& name(int letter) const { return names_.at(letter); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    /// Positions of the two occurrences of each letter.
    std::vector<std::pair<int, int>> occurrences() const {
        std::vector<std::pair<int, int>> occ(letters_count(), {-1, -1});
        for (int i = 0; i < length(); ++i) (occ[w_[i]].first < 0 ? occ[w_[i]].first : occ[w_[i]].second) = i;
        return occ;
    }

    ChordDiagram diagram() const { return ChordDiagram::from_letters(w_); }

    std::string to_string() const {
        std::string s;
        for (int c : w_) s += names_[c];
        return s;
    }

private:
    std::vector<int> w_;
    std::vector<std::string> names_;
};

/// Gauss word with an exponent +1/-1 on every occurrence, one of each per letter.
class SignedGaussWord {
public:
    SignedGaussWord(GaussWord w, std::vector<int> signs) : w_(std::move(w)), s_(std::move(signs)) {
        if (static_cast<int>(s_.size()) != w_.length()) throw InvalidInput("one sign per occurrence");
        std::vector<int> total(w_.letters_count(), 0);
        for (int i = 0; i < w_.length(); ++i) {
            if (s_[i] != 1 && s_[i] != -1) throw InvalidInput("signs must be + or -");
            total[w_[i]] += s_[i];
        }
        for (int t : total)
            if (t != 0) throw InvalidInput("each letter needs one + and one - occurrence");
    }

    /// Parses "a+b+a-b-".
    static SignedGaussWord parse(std::string_view text) {
        auto tokens = tokenize_word(text, true);
        std::vector<int> signs;
        for (const auto& t : tokens) {
            if (t.sign == 0) throw InvalidInput("every occurrence needs a sign");
            signs.push_back(t.sign);
        }
        std::vector<std::string> names;
        auto w = letters_from_tokens(tokens, &names);
        return SignedGaussWord(GaussWord(std::move(w), std::move(names)), std::move(signs));
    }

    /// Every letter gets + on its first occurrence.
    static SignedGaussWord first_positive(const GaussWord& w) {
        std::vector<int> s(w.length());
        std::vector<bool> seen(w.letters_count(), false);
        for (int i = 0; i < w.length(); ++i) {
            s[i] = seen[w[i]] ? -1 : 1;
            seen[w[i]] = true;
        }
        return SignedGaussWord(w, std::move(s));
    }

    /// Signs chosen by a bitmask: bit k set swaps the signs of letter k relative to first_positive.
    static SignedGaussWord from_mask(const GaussWord& w, std::uint64_t mask) {
        auto base = first_positive(w);
        for (int i = 0; i < w.length(); ++i)
            if (mask >> w[i] & 1u) base.s_[i] = -base.s_[i];
        return base;
    }

    SignedGaussWord flipped(int letter) const {
        SignedGaussWord r = *this;
        for (int i = 0; i < w_.length(); ++i)
            if (w_[i] == letter) r.s_[i] = -r.s_[i];
        return r;
    }

    const GaussWord& word() const noexcept { return w_; }
    int sign(int i) const { return s_.at(i); }
    const std::vector<int>& signs() const noexcept { return s_; }
    int letters_count() const noexcept { return w_.letters_count(); }
    int length() const noexcept { return w_.length(); }

    /// Positions of the + and - occurrence of each letter.
    std::vector<std::pair<int, int>> plus_minus() const {
        std::vector<std::pair<int, int>> pm(letters_count());
        for (int i = 0; i < length(); ++i) (s_[i] > 0 ? pm[w_[i]].first : pm[w_[i]].second) = i;
        return pm;
    }

    std::string to_string() const {
        std::string s;
        for (int i = 0; i < length(); ++i) s += w_.name(w_[i]) + (s_[i] > 0 ? "+" : "-");
        return s;
    }

private:
    GaussWord w_;
    std::vector<int> s_;
};

// ---------------------------------------------------------------------------
// Parity

struct ParityResult {
    bool ok = true;
    std::optional<int> failing_letter;
};

/// Every letter has an even number of letters strictly between its two occurrences.
inline ParityResult parity_check(const GaussWord& w) {
    const auto occ = w.occurrences();
    for (int c = 0; c < w.letters_count(); ++c)
        if ((occ[c].second - occ[c].first - 1) % 2) return {false, c};
    return {};
}

// ---------------------------------------------------------------------------
// Gluing crosses

/// Ribbon graph of the glued surface: vertices are crossings, half-edges are the four ports
/// of each cross. Port ids: 4c + {0: + out (N), 1: - in (W), 2: + in (S), 3: - out (E)};
/// counterclockwise rotation N, W, S, E.
struct GluedSurface {
    int crossings = 0;
    std::vector<int> rotation;  ///< next port counterclockwise around the same cross
    std::vector<int> glue;      ///< port at the other end of the arc
    std::vector<std::vector<int>> boundary_cycles;

    int boundary_components() const { return static_cast<int>(boundary_cycles.size()); }
    /// Closed surface genus from V - E + F.
    int genus() const {
        const int chi = crossings - 2 * crossings + boundary_components();
        return (2 - chi) / 2;
    }
};

inline GluedSurface glue_crosses(const SignedGaussWord& sw) {
    const int n = sw.letters_count(), m = sw.length();
    GluedSurface s;
    s.crossings = n;
    s.rotation.resize(4 * n);
    s.glue.assign(4 * n, -1);
    for (int c = 0; c < n; ++c)
        for (int k = 0; k < 4; ++k) s.rotation[4 * c + k] = 4 * c + (k + 1) % 4;
    auto out_port = [&](int i) { return 4 * sw.word()[i] + (sw.sign(i) > 0 ? 0 : 3); };
    auto in_port = [&](int i) { return 4 * sw.word()[i] + (sw.sign(i) > 0 ? 2 : 1); };
    for (int i = 0; i < m; ++i) {
        const int a = out_port(i), b = in_port((i + 1) % m);
        s.glue[a] = b;
        s.glue[b] = a;
    }
    std::vector<bool> seen(4 * n, false);
    for (int h = 0; h < 4 * n; ++h) {
        if (seen[h]) continue;
        std::vector<int> cyc;
        for (int x = h; !seen[x]; x = s.rotation[s.glue[x]]) {
            seen[x] = true;
            cyc.push_back(x);
        }
        s.boundary_cycles.push_back(std::move(cyc));
    }
    return s;
}

inline int boundary_components(const SignedGaussWord& w) { return glue_crosses(w).boundary_components(); }

/// (2 - (k - n)) / 2, zero exactly for planar gluings.
inline int surface_genus_signed(const SignedGaussWord& w) {
    const int k = boundary_components(w), n = w.letters_count();
    if ((k - n) % 2) throw OddParity("k - n = " + std::to_string(k - n));
    return (2 - (k - n)) / 2;
}

// ---------------------------------------------------------------------------
// The three conditions

namespace detail {

// Open cyclic interval from position a forwards to b.
inline bool strictly_between(int a, int b, int x, int m) {
    const int dx = ((x - a) % m + m) % m, db = ((b - a) % m + m) % m;
    return dx > 0 && dx < db;
}

inline bool linked(const std::pair<int, int>& p, const std::pair<int, int>& q, int m) {
    return strictly_between(p.first, p.second, q.first, m) != strictly_between(p.first, p.second, q.second, m);
}

} // namespace detail

/// Positions strictly between a_i+ and a_i- whose partner is strictly between a_j+ and a_j-.
/// A letter with both occurrences in the overlap counts twice.
inline int linked_count(const SignedGaussWord& w, int i, int j) {
    const int m = w.length();
    const auto pm = w.plus_minus();
    const auto occ = w.word().occurrences();
    int count = 0;
    for (int c = 0; c < w.letters_count(); ++c) {
        if (c == i || c == j) continue;
        const auto [x, y] = occ[c];
        const bool xi = detail::strictly_between(pm[i].first, pm[i].second, x, m);
        const bool yi = detail::strictly_between(pm[i].first, pm[i].second, y, m);
        const bool xj = detail::strictly_between(pm[j].first, pm[j].second, x, m);
        const bool yj = detail::strictly_between(pm[j].first, pm[j].second, y, m);
        count += (xi && yj) + (yi && xj);
    }
    return count;
}

/// Sign-independent condition for an unlinked pair: letters with one occurrence in each
/// of the two disjoint arcs. Returns the count.
inline int unlinked_count(const GaussWord& w, int i, int j) {
    const int m = w.length();
    const auto occ = w.occurrences();
    // pick the arc of i avoiding j, and the arc of j avoiding i
    auto arc = [&](int a, int b) {
        const auto [p, q] = occ[a];
        if (!detail::strictly_between(p, q, occ[b].first, m)) return std::pair{p, q};
        return std::pair{q, p};
    };
    const auto I = arc(i, j), J = arc(j, i);
    int count = 0;
    for (int c = 0; c < w.letters_count(); ++c) {
        if (c == i || c == j) continue;
        const auto [x, y] = occ[c];
        const bool xi = detail::strictly_between(I.first, I.second, x, m), yi = detail::strictly_between(I.first, I.second, y, m);
        const bool xj = detail::strictly_between(J.first, J.second, x, m), yj = detail::strictly_between(J.first, J.second, y, m);
        count += (xi && yj) + (yi && xj);
    }
    return count;
}

/// Both sign-independent conditions.
inline bool sign_free_conditions(const GaussWord& w) {
    if (!parity_check(w).ok) return false;
    const auto occ = w.occurrences();
    const int m = w.length();
    for (int i = 0; i < w.letters_count(); ++i)
        for (int j = i + 1; j < w.letters_count(); ++j)
            if (!detail::linked(occ[i], occ[j], m) && unlinked_count(w, i, j) % 2) return false;
    return true;
}

inline bool is_realizable_signed(const SignedGaussWord& w) {
    if (!sign_free_conditions(w.word())) return false;
    const auto occ = w.word().occurrences();
    const int m = w.length();
    for (int i = 0; i < w.letters_count(); ++i)
        for (int j = 0; j < w.letters_count(); ++j)
            if (i != j && detail::linked(occ[i], occ[j], m) && linked_count(w, i, j) % 2 == 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Unsigned realizability through the interlace cocycle

/// f(i, j) = 1 + linked_count(i, j) mod 2 on each interlace edge, stored as a symmetric matrix
/// (only entries on edges are meaningful).
inline std::vector<std::vector<int>> interlace_cocycle(const SignedGaussWord& w) {
    const int n = w.letters_count();
    const auto g = interlace_graph(w.word().diagram());
    std::vector<std::vector<int>> f(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && g.has_edge(i, j)) f[i][j] = (1 + linked_count(w, i, j)) % 2;
    return f;
}

struct RotationSystem {
    std::vector<std::string> signed_word;          ///< signing that realizes the word
    std::vector<std::vector<int>> rotation;        ///< per crossing, counterclockwise arc ids
    int vertices = 0, edges = 0, faces = 0;
    int genus() const { return (2 - (vertices - edges + faces)) / 2; }
};

struct GaussVerdict {
    bool realizable = false;
    std::string method;
    std::optional<RotationSystem> rotation_system;
    std::vector<int> failing_cycle;  ///< letters, closed (first repeated at the end)
    std::string reason;              ///< short tag when a sign-free condition fails
};

/// Counterclockwise arc ids around each crossing. Arc i runs from occurrence i to occurrence i+1.
inline RotationSystem rotation_system_of(const SignedGaussWord& w) {
    const int n = w.letters_count(), m = w.length();
    std::vector<int> port_arc(4 * n, -1);
    for (int i = 0; i < m; ++i) {
        const int c = w.word()[i];
        port_arc[4 * c + (w.sign(i) > 0 ? 0 : 3)] = i;            // leaves on arc i
        const int prev = (i + m - 1) % m;
        port_arc[4 * c + (w.sign(i) > 0 ? 2 : 1)] = prev;         // arrives on arc i-1
    }
    RotationSystem r;
    for (int i = 0; i < m; ++i) r.signed_word.push_back(w.word().name(w.word()[i]) + (w.sign(i) > 0 ? "+" : "-"));
    for (int c = 0; c < n; ++c) r.rotation.push_back({port_arc[4 * c], port_arc[4 * c + 1], port_arc[4 * c + 2], port_arc[4 * c + 3]});
    const auto s = glue_crosses(w);
    r.vertices = n;
    r.edges = m;
    r.faces = s.boundary_components();
    return r;
}

/// Shortest cycle of the interlace graph with odd cocycle sum, if any. Ties go to the cycle with the
/// most edges of value 1, then to the lexicographically least.
inline std::vector<int> shortest_odd_cycle(const Graph& g, const std::vector<std::vector<int>>& f) {
    const int n = g.size();
    std::vector<int> best;
    for (int s = 0; s < n; ++s) {
        // BFS on (vertex, parity)
        std::vector<int> dist(2 * n, -1), parent(2 * n, -1);
        std::queue<int> q;
        dist[2 * s] = 0;
        q.push(2 * s);
        while (!q.empty()) {
            const int st = q.front();
            q.pop();
            const int v = st / 2, par = st % 2;
            for (int u = 0; u < n; ++u) {
                if (!g.has_edge(v, u)) continue;
                const int nx = 2 * u + (par ^ f[v][u]);
                if (dist[nx] >= 0) continue;
                dist[nx] = dist[st] + 1;
                parent[nx] = st;
                q.push(nx);
            }
        }
        const int target = 2 * s + 1;
        if (dist[target] < 0) continue;
        if (!best.empty() && dist[target] + 1 >= static_cast<int>(best.size())) continue;
        std::vector<int> walk;
        for (int st = target; st != -1; st = parent[st]) walk.push_back(st / 2);
        std::reverse(walk.begin(), walk.end());
        // a shortest odd closed walk through s is a simple cycle only when no vertex repeats
        std::set<int> distinct(walk.begin(), walk.end() - 1);
        if (static_cast<int>(distinct.size()) + 1 != static_cast<int>(walk.size())) continue;
        best = walk;
    }
    if (best.empty()) return best;
    // among odd cycles of that length: most edges with f = 1, then lexicographically least
    const int len = static_cast<int>(best.size()) - 1;
    auto ones = [&](const std::vector<int>& c) {
        int k = 0;
        for (std::size_t i = 0; i + 1 < c.size(); ++i) k += f[c[i]][c[i + 1]];
        return k;
    };
    long budget = 1000000;
    std::vector<int> path;
    std::vector<bool> used(n, false);
    auto dfs = [&](auto&& self, int v, int parity) -> void {
        if (--budget < 0) return;
        if (static_cast<int>(path.size()) == len) {
            if (!g.has_edge(v, path[0]) || ((parity ^ f[v][path[0]]) & 1) == 0) return;
            std::vector<int> c = path;
            c.push_back(path[0]);
            const int a = ones(c), b = ones(best);
            if (a > b || (a == b && c < best)) best = c;
            return;
        }
        for (int u = path[0] + 1; u < n; ++u) {
            if (used[u] || !g.has_edge(v, u)) continue;
            used[u] = true;
            path.push_back(u);
            self(self, u, parity ^ f[v][u]);
            path.pop_back();
            used[u] = false;
        }
    };
    const auto fallback = best;
    for (int s = 0; s < n; ++s) {
        path = {s};
        used[s] = true;
        dfs(dfs, s, 0);
        used[s] = false;
    }
    return budget < 0 ? fallback : best;
}

/// Checks the two sign-free conditions, then the cocycle of one signing on the fundamental
/// cycles of a spanning forest. A realizable verdict carries a planar signing and its rotation system;
/// otherwise a shortest odd cycle is reported.
inline GaussVerdict is_realizable_unsigned_verdict(const GaussWord& w) {
    GaussVerdict v;
    v.method = "interlace-cohomology";
    if (auto p = parity_check(w); !p.ok) {
        v.reason = "parity:" + w.name(*p.failing_letter);
        return v;
    }
    if (!sign_free_conditions(w)) {
        v.reason = "unlinked-pair";
        return v;
    }
    const int n = w.letters_count();
    const auto signed0 = SignedGaussWord::first_positive(w);
    const auto f = interlace_cocycle(signed0);
    const auto g = interlace_graph(w.diagram());
    // spanning forest by BFS; u solves du = f on tree edges
    std::vector<int> parent(n, -2), u(n, 0);
    for (int root = 0; root < n; ++root) {
        if (parent[root] != -2) continue;
        parent[root] = -1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            const int a = q.front();
            q.pop();
            for (int b = 0; b < n; ++b)
                if (g.has_edge(a, b) && parent[b] == -2) {
                    parent[b] = a;
                    u[b] = u[a] ^ f[a][b];
                    q.push(b);
                }
        }
    }
    // fundamental cycle of a non-tree edge (a, b) has sum f(a,b) + u(a) + u(b)
    bool all_zero = true;
    for (int a = 0; a < n && all_zero; ++a)
        for (int b = a + 1; b < n && all_zero; ++b)
            if (g.has_edge(a, b) && parent[a] != b && parent[b] != a && (f[a][b] ^ u[a] ^ u[b])) all_zero = false;
    if (!all_zero) {
        v.failing_cycle = shortest_odd_cycle(g, f);
        v.reason = "odd-cycle";
        return v;
    }
    std::uint64_t mask = 0;
    for (int c = 0; c < n; ++c)
        if (u[c]) mask |= std::uint64_t{1} << c;
    const auto planar = SignedGaussWord::from_mask(w, mask);
    v.realizable = true;
    v.rotation_system = rotation_system_of(planar);
    return v;
}

inline bool is_realizable_unsigned(const GaussWord& w) { return is_realizable_unsigned_verdict(w).realizable; }

/// Tries all 2^n signings and counts boundary components.
inline std::optional<SignedGaussWord> planar_signing_by_search(const GaussWord& w) {
    const int n = w.letters_count();
    if (n > 20) throw SizeCapExceeded("exhaustive signing search is limited to 20 letters");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        auto s = SignedGaussWord::from_mask(w, mask);
        if (boundary_components(s) == n + 2) return s;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Lovasz-Marx closure

namespace detail {

inline std::vector<int> canonical_gauss(const std::vector<int>& w) {
    if (w.empty()) return w;
    return canonical_letters(ChordDiagram::from_letters(ChordDiagram::relabel(w)), Symmetry::dihedral);
}

inline bool is_full_repeat(const std::vector<int>& w) {
    const int m = static_cast<int>(w.size()) / 2;
    if (m < 2) return false;
    for (int i = 0; i < m; ++i)
        if (w[i] != w[i + m]) return false;
    return true;
}

} // namespace detail

inline constexpr int lovasz_marx_cap = 8;

/// Closure under: delete a from aUaV and read U V^-1; delete a together with every letter met in V.
/// Non-realizable iff the closure holds a1..am a1..am with m even.
inline bool lovasz_marx_realizable(const GaussWord& w) {
    if (w.letters_count() > lovasz_marx_cap) throw SizeCapExceeded("Lovasz-Marx closure is limited to 8 letters");
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> stack{detail::canonical_gauss(w.letters())};
    seen.insert(stack.back());
    while (!stack.empty()) {
        auto cur = std::move(stack.back());
        stack.pop_back();
        if (detail::is_full_repeat(cur) && (cur.size() / 2) % 2 == 0) return false;
        const int m = static_cast<int>(cur.size());
        std::vector<std::pair<int, int>> occ(m / 2, {-1, -1});
        for (int i = 0; i < m; ++i) (occ[cur[i]].first < 0 ? occ[cur[i]].first : occ[cur[i]].second) = i;
        auto push = [&](std::vector<int> next) {
            auto c = detail::canonical_gauss(next);
            if (seen.insert(c).second) stack.push_back(std::move(c));
        };
        for (int a = 0; a < m / 2; ++a) {
            const auto [p, q] = occ[a];
            std::vector<int> U(cur.begin() + p + 1, cur.begin() + q);
            std::vector<int> V(cur.begin() + q + 1, cur.end());
            V.insert(V.end(), cur.begin(), cur.begin() + p);
            // U V^-1
            std::vector<int> uv(U);
            uv.insert(uv.end(), V.rbegin(), V.rend());
            push(uv);
            // drop a and all letters met in V (and symmetrically in U)
            for (int side = 0; side < 2; ++side) {
                const auto& keep_from = side == 0 ? U : V;
                const auto& drop_from = side == 0 ? V : U;
                std::set<int> drop(drop_from.begin(), drop_from.end());
                std::vector<int> r;
                for (int x : keep_from)
                    if (!drop.count(x)) r.push_back(x);
                push(r);
            }
        }
    }
    return true;
}

} // namespace promenade
