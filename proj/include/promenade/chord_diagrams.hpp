#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "promenade/combinatorics.hpp"
#include "promenade/error.hpp"
#include "promenade/graph.hpp"
#include "promenade/words.hpp"

namespace promenade {

/// 2n cyclically ordered points paired by a fixed-point-free involution.
class ChordDiagram {
public:
    ChordDiagram() = default;

    /// From the partner of each position.
    explicit ChordDiagram(std::vector<int> partner) : partner_(std::move(partner)) {
        const int m = static_cast<int>(partner_.size());
        if (m % 2) throw InvalidInput("odd number of chord endpoints");
        for (int i = 0; i < m; ++i) {
            const int j = partner_[i];
            if (j < 0 || j >= m || j == i || partner_[j] != i) throw InvalidInput("pairing is not a fixed-point-free involution");
        }
    }

    /// From a word: position i carries letter w[i], each letter twice.
    static ChordDiagram from_letters(const std::vector<int>& w) {
        std::vector<int> partner(w.size(), -1);
        std::vector<int> first;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const int c = w[i];
            if (c < 0) throw InvalidInput("negative letter");
            if (static_cast<int>(first.size()) <= c) first.resize(c + 1, -1);
            if (first[c] < 0) first[c] = static_cast<int>(i);
            else if (partner[first[c]] >= 0) throw InvalidInput("letter occurs more than twice");
            else partner[first[c]] = static_cast<int>(i), partner[i] = first[c];
        }
        for (int p : partner)
            if (p < 0) throw InvalidInput("every letter must occur exactly twice");
        return ChordDiagram(std::move(partner));
    }

    /// Accepts a letter word ("abacbc", "[a1][a2][a1][a2]") or a pairing ("0-3,1-4,2-5").
    static ChordDiagram parse(std::string_view text) {
        const bool numeric = !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
            return (c >= '0' && c <= '9') || c == '-' || c == ',' || c == ' ';
        }) && text.find('-') != std::string_view::npos;
        if (!numeric) return from_letters(letters_from_tokens(tokenize_word(text, false)));
        std::vector<std::pair<int, int>> pairs;
        std::size_t i = 0;
        auto number = [&]() {
            while (i < text.size() && text[i] == ' ') ++i;
            std::size_t j = i;
            while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
            if (j == i) throw InvalidInput("bad pairing syntax");
            const int v = std::stoi(std::string(text.substr(i, j - i)));
            i = j;
            while (i < text.size() && text[i] == ' ') ++i;
            return v;
        };
        while (i < text.size()) {
            const int a = number();
            if (i >= text.size() || text[i] != '-') throw InvalidInput("bad pairing syntax");
            ++i;
            const int b = number();
            pairs.emplace_back(a, b);
            if (i < text.size()) {
                if (text[i] != ',') throw InvalidInput("bad pairing syntax");
                ++i;
            }
        }
        std::vector<int> partner(2 * pairs.size(), -1);
        for (auto [a, b] : pairs) {
            if (a < 0 || b < 0 || a >= static_cast<int>(partner.size()) || b >= static_cast<int>(partner.size()) ||
                partner[a] >= 0 || partner[b] >= 0 || a == b)
                throw InvalidInput("pairing must cover 0..2n-1 exactly once");
            partner[a] = b;
            partner[b] = a;
        }
        return ChordDiagram(std::move(partner));
    }

    int chords() const noexcept { return static_cast<int>(partner_.size()) / 2; }
    int points() const noexcept { return static_cast<int>(partner_.size()); }
    int partner(int i) const { return partner_.at(i); }
    const std::vector<int>& pairing() const noexcept { return partner_; }

    /// Letter of each position, letters numbered by first occurrence.
    std::vector<int> letters() const {
        std::vector<int> w(partner_.size(), -1);
        int next = 0;
        for (std::size_t i = 0; i < partner_.size(); ++i)
            if (w[i] < 0) w[i] = w[partner_[i]] = next++;
        return w;
    }

    /// Chord index (by first endpoint) of each position.
    std::vector<int> chord_of_position() const { return letters(); }

    std::string word() const {
        std::string s;
        for (int c : letters()) s += letter_name(c);
        return s;
    }

    /// Keeps the chords whose index (by first occurrence) is set in `keep`.
    ChordDiagram restrict_to(const std::vector<bool>& keep) const {
        std::vector<int> w;
        for (int c : letters())
            if (keep.at(c)) w.push_back(c);
        return from_letters(relabel(w));
    }

    ChordDiagram remove_chord(int chord) const {
        std::vector<bool> keep(chords(), true);
        keep.at(chord) = false;
        return restrict_to(keep);
    }

    /// Renames letters by first occurrence.
    static std::vector<int> relabel(const std::vector<int>& w) {
        std::vector<int> map;
        std::vector<int> out;
        out.reserve(w.size());
        for (int c : w) {
            if (static_cast<int>(map.size()) <= c) map.resize(c + 1, -1);
            if (map[c] < 0) map[c] = 1 + *std::max_element(map.begin(), map.end());
            out.push_back(map[c]);
        }
        return out;
    }

    friend bool operator==(const ChordDiagram&, const ChordDiagram&) = default;

private:
    std::vector<int> partner_;
};

enum class Symmetry { rotation, dihedral };

namespace detail {

// Letters by first occurrence reading from `start` in direction `step` (+1/-1); compares with `best`
// and replaces it when smaller. Works on partner arrays to avoid allocations.
inline void canonical_candidate(const std::vector<int>& partner, int start, int step, std::vector<int>& scratch,
                                std::vector<int>& best, bool& have_best) {
    const int m = static_cast<int>(partner.size());
    std::fill(scratch.begin(), scratch.end(), -1);
    int next = 0;
    bool smaller = !have_best;
    bool decided = !have_best;
    std::vector<int>& label = scratch;
    // label[pos] holds the letter at original position pos
    thread_local std::vector<int> seq;
    seq.resize(m);
    for (int k = 0; k < m; ++k) {
        const int pos = ((start + step * k) % m + m) % m;
        int c = label[pos];
        if (c < 0) c = label[pos] = label[partner[pos]] = next++;
        seq[k] = c;
        if (!decided) {
            if (c < best[k]) smaller = true, decided = true;
            else if (c > best[k]) return;
        }
    }
    if (smaller) {
        best.assign(seq.begin(), seq.end());
        have_best = true;
    }
}

} // namespace detail

/// Lexicographically least relabelled word over rotations (and reflections).
inline std::vector<int> canonical_letters(const ChordDiagram& d, Symmetry mode) {
    const auto& partner = d.pairing();
    const int m = d.points();
    std::vector<int> best, scratch(m);
    bool have = false;
    for (int s = 0; s < m; ++s) {
        detail::canonical_candidate(partner, s, 1, scratch, best, have);
        if (mode == Symmetry::dihedral) detail::canonical_candidate(partner, s, -1, scratch, best, have);
    }
    return best;
}

inline std::string letters_to_word(const std::vector<int>& w) {
    std::string s;
    for (int c : w) s += letter_name(c);
    return s;
}

inline std::string canonical_form(const ChordDiagram& d, Symmetry mode) {
    return letters_to_word(canonical_letters(d, mode));
}

/// Edge between two chords iff their endpoints alternate.
inline Graph interlace_graph(const ChordDiagram& d) {
    const int n = d.chords();
    Graph g(n);
    const auto w = d.letters();
    std::vector<int> first(n, -1), second(n, -1);
    for (int i = 0; i < d.points(); ++i) (first[w[i]] < 0 ? first[w[i]] : second[w[i]]) = i;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            const bool inside = first[a] < first[b] && first[b] < second[a];
            const bool inside2 = first[a] < second[b] && second[b] < second[a];
            if (inside != inside2) g.add_edge(a, b);
        }
    return g;
}

/// Moran: half the GF(2) rank of the interlace adjacency matrix.
inline int genus(const ChordDiagram& d) { return gf2_rank(interlace_graph(d)) / 2; }

/// Genus of the one-vertex ribbon graph: the faces are the cycles of (shift o pairing).
inline int ribbon_genus(const ChordDiagram& d) {
    const int m = d.points();
    if (m == 0) return 0;
    std::vector<bool> seen(m, false);
    int faces = 0;
    for (int i = 0; i < m; ++i) {
        if (seen[i]) continue;
        ++faces;
        for (int j = i; !seen[j]; j = (d.partner(j) + 1) % m) seen[j] = true;
    }
    return (d.chords() + 1 - faces) / 2;
}

// ---------------------------------------------------------------------------
// The reduction algorithm

enum class MoveKind { solitary, pitchfork, parallel, antiparallel };

inline const char* move_name(MoveKind k) {
    switch (k) {
    case MoveKind::solitary: return "solitary";
    case MoveKind::pitchfork: return "pitchfork";
    case MoveKind::parallel: return "parallel";
    case MoveKind::antiparallel: return "antiparallel";
    }
    return "";
}

struct ReductionMove {
    MoveKind kind;
    int chord;  ///< letter deleted, in the current word
};

/// All applicable reduction moves on a cyclic word, in priority order, scanning from position 0.
inline std::vector<ReductionMove> reduction_moves(const std::vector<int>& w) {
    const int m = static_cast<int>(w.size());
    std::vector<ReductionMove> out;
    if (m == 0) return out;
    auto at = [&](int i) { return w[((i % m) + m) % m]; };
    for (int i = 0; i < m; ++i)
        if (at(i) == at(i + 1)) out.push_back({MoveKind::solitary, at(i)});
    if (m >= 4)
        for (int i = 0; i < m; ++i)
            if (at(i) == at(i + 2) && at(i) != at(i + 1)) out.push_back({MoveKind::pitchfork, at(i)});
    // adjacent pairs (x, y) with x != y; look for (y, x) or (x, y) elsewhere
    for (int i = 0; i < m; ++i) {
        const int x = at(i), y = at(i + 1);
        if (x == y) continue;
        for (int j = i + 2; j < i + m - 1; ++j) {
            if (at(j) == y && at(j + 1) == x) out.push_back({MoveKind::parallel, y});
            if (at(j) == x && at(j + 1) == y) out.push_back({MoveKind::antiparallel, y});
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const ReductionMove& a, const ReductionMove& b) { return a.kind < b.kind; });
    return out;
}

inline std::vector<int> erase_letter(const std::vector<int>& w, int c) {
    std::vector<int> out;
    out.reserve(w.size());
    for (int x : w)
        if (x != c) out.push_back(x);
    return out;
}

struct ReductionTrace {
    bool analytic = false;
    std::vector<ReductionMove> moves;
    std::vector<int> stuck;  ///< remaining word when no move applies
};

/// Deterministic reduction with priority solitary > pitchfork > parallel > antiparallel.
inline ReductionTrace reduce(const ChordDiagram& d) {
    ReductionTrace tr;
    std::vector<int> w = d.letters();
    while (!w.empty()) {
        auto moves = reduction_moves(w);
        if (moves.empty()) {
            tr.stuck = w;
            return tr;
        }
        tr.moves.push_back(moves.front());
        w = erase_letter(w, moves.front().chord);
    }
    tr.analytic = true;
    return tr;
}

inline bool is_analytic(const ChordDiagram& d) { return reduce(d).analytic; }

/// Same algorithm, choosing uniformly among all applicable moves.
template <class Rng>
bool is_analytic_random_order(const ChordDiagram& d, Rng& rng) {
    std::vector<int> w = d.letters();
    while (!w.empty()) {
        auto moves = reduction_moves(w);
        if (moves.empty()) return false;
        std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
        w = erase_letter(w, moves[pick(rng)].chord);
    }
    return true;
}

// ---------------------------------------------------------------------------
// Forbidden sub-diagrams

struct ForbiddenWitness {
    std::string name;              ///< "C5", "C6", ..., "house", "gem", "domino"
    std::vector<int> chords;       ///< chord indices (first-occurrence order) in the input
    std::vector<int> positions;    ///< their endpoint positions, increasing
    std::string word;              ///< canonical (rotation) word of the sub-diagram
};

/// Deletes chords while the diagram stays non-analytic; the remainder is basic.
inline std::optional<ForbiddenWitness> forbidden_witness(const ChordDiagram& d) {
    if (is_analytic(d)) return std::nullopt;
    std::vector<bool> keep(d.chords(), true);
    for (bool changed = true; changed;) {
        changed = false;
        for (int c = 0; c < d.chords(); ++c) {
            if (!keep[c]) continue;
            keep[c] = false;
            if (!is_analytic(d.restrict_to(keep))) changed = true;
            else keep[c] = true;
        }
    }
    ForbiddenWitness w;
    const ChordDiagram sub = d.restrict_to(keep);
    w.name = forbidden_graph_name(interlace_graph(sub));
    if (w.name.empty()) throw InvalidInput("internal: minimal non-analytic diagram with unexpected interlace graph");
    for (int c = 0; c < d.chords(); ++c)
        if (keep[c]) w.chords.push_back(c);
    const auto letters = d.letters();
    for (int i = 0; i < d.points(); ++i)
        if (keep[letters[i]]) w.positions.push_back(i);
    w.word = canonical_form(sub, Symmetry::rotation);
    return w;
}

/// Non-analytic with every one-chord deletion analytic.
inline bool is_basic_non_analytic(const ChordDiagram& d) {
    if (is_analytic(d)) return false;
    for (int c = 0; c < d.chords(); ++c)
        if (!is_analytic(d.remove_chord(c))) return false;
    return true;
}

/// The diagram with chords 2k <-> 2k+3 on Z/2n; its interlace graph is the n-cycle.
inline ChordDiagram cycle_diagram(int n) {
    if (n < 3) throw InvalidInput("cycle diagram needs n >= 3");
    const int m = 2 * n;
    std::vector<int> partner(m);
    for (int k = 0; k < n; ++k) {
        const int a = 2 * k, b = (2 * k + 3) % m;
        partner[a] = b;
        partner[b] = a;
    }
    return ChordDiagram(std::move(partner));
}

// ---------------------------------------------------------------------------
// Enumeration

enum class EnumFilter { all, analytic, basic_non_analytic };

inline constexpr int default_size_cap = 8;

inline int size_cap_from_env() {
    if (const char* s = std::getenv("PROMENADE_SIZE_CAP")) {
        try {
            return std::stoi(s);
        } catch (const std::exception&) {
            throw InvalidInput("PROMENADE_SIZE_CAP must be an integer");
        }
    }
    return default_size_cap;
}

/// Calls f(partner) for every fixed-point-free involution on 2n points.
template <class F>
void for_each_matching(int n, F&& f) {
    const int m = 2 * n;
    std::vector<int> partner(m, -1);
    auto rec = [&](auto&& self) -> void {
        int i = 0;
        while (i < m && partner[i] >= 0) ++i;
        if (i == m) {
            f(partner);
            return;
        }
        for (int j = i + 1; j < m; ++j) {
            if (partner[j] >= 0) continue;
            partner[i] = j, partner[j] = i;
            self(self);
            partner[i] = partner[j] = -1;
        }
    };
    rec(rec);
}

struct EnumeratedDiagram {
    std::string word;
    bool analytic;
    int genus;
};

/// Canonical words of all diagrams with n chords, sorted, filtered.
inline std::vector<EnumeratedDiagram> enumerate_diagrams(int n, Symmetry mode, EnumFilter filter,
                                                         int cap = size_cap_from_env()) {
    if (n < 1) throw InvalidInput("enumeration needs n >= 1");
    if (n > cap) throw SizeCapExceeded("n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    std::set<std::vector<int>> classes;
    for_each_matching(n, [&](const std::vector<int>& partner) {
        ChordDiagram d{std::vector<int>(partner)};
        classes.insert(canonical_letters(d, mode));
    });
    std::vector<EnumeratedDiagram> out;
    for (const auto& w : classes) {
        const ChordDiagram d = ChordDiagram::from_letters(w);
        const bool analytic = is_analytic(d);
        if (filter == EnumFilter::analytic && !analytic) continue;
        if (filter == EnumFilter::basic_non_analytic && !is_basic_non_analytic(d)) continue;
        out.push_back({letters_to_word(w), analytic, genus(d)});
    }
    return out;
}

inline std::size_t count_diagrams(int n, Symmetry mode, EnumFilter filter, int cap = size_cap_from_env()) {
    return enumerate_diagrams(n, mode, filter, cap).size();
}

// ---------------------------------------------------------------------------
// Marked diagrams and insertion

/// Oriented chord end: label i >= 1 with sign +1 or -1.
struct ChordEnd {
    int label;
    int sign;
    friend bool operator==(const ChordEnd&, const ChordEnd&) = default;
};

/// Two sides, each listed bottom to top. The circle reads right side upwards, then left side downwards.
struct MarkedChordDiagram {
    std::vector<ChordEnd> left;
    std::vector<ChordEnd> right;

    int chords() const { return static_cast<int>(left.size() + right.size()) / 2; }

    void validate() const {
        const int n = chords();
        if ((left.size() + right.size()) % 2) throw InvalidInput("odd number of marked ends");
        std::vector<int> plus(n + 1, 0), minus(n + 1, 0);
        for (const auto* side : {&left, &right})
            for (const auto& e : *side) {
                if (e.label < 1 || e.label > n || (e.sign != 1 && e.sign != -1)) throw InvalidInput("bad marked end");
                (e.sign > 0 ? plus : minus)[e.label]++;
            }
        for (int i = 1; i <= n; ++i)
            if (plus[i] != 1 || minus[i] != 1) throw InvalidInput("each label needs one + and one - end");
    }

    std::vector<ChordEnd> cyclic_order() const {
        std::vector<ChordEnd> out(right);
        out.insert(out.end(), left.rbegin(), left.rend());
        return out;
    }

    ChordDiagram diagram() const {
        std::vector<int> w;
        for (const auto& e : cyclic_order()) w.push_back(e.label - 1);
        return ChordDiagram::from_letters(w);
    }

    friend bool operator==(const MarkedChordDiagram&, const MarkedChordDiagram&) = default;
};

inline MarkedChordDiagram unit_marked_diagram() { return {{{1, -1}}, {{1, +1}}}; }

/// Replaces chord i of `outer` by a thin rectangle carrying inners[i-1].
/// The inner right side lands at the + end and the inner left side at the - end, so that
/// counterclockwise order is preserved. Labels become (i, j) in lexicographic order.
inline MarkedChordDiagram insert_marked(const MarkedChordDiagram& outer, const std::vector<MarkedChordDiagram>& inners) {
    outer.validate();
    const int n = outer.chords();
    if (static_cast<int>(inners.size()) != n)
        throw ArityMismatch("outer has " + std::to_string(n) + " chords, got " + std::to_string(inners.size()) + " inners");
    std::vector<int> offset(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        inners[i - 1].validate();
        offset[i] = offset[i - 1] + inners[i - 1].chords();
    }
    auto shift = [&](std::vector<ChordEnd> v, int i) {
        for (auto& e : v) e.label += offset[i - 1];
        return v;
    };
    auto expand = [&](const std::vector<ChordEnd>& side, bool is_right) {
        std::vector<ChordEnd> out;
        for (const auto& e : side) {
            const auto& in = inners[e.label - 1];
            std::vector<ChordEnd> block;
            if (e.sign > 0) {
                block = in.right;
                if (!is_right) std::reverse(block.begin(), block.end());
            } else {
                block = in.left;
                if (is_right) std::reverse(block.begin(), block.end());
            }
            block = shift(std::move(block), e.label);
            out.insert(out.end(), block.begin(), block.end());
        }
        return out;
    };
    MarkedChordDiagram r{expand(outer.left, false), expand(outer.right, true)};
    r.validate();
    return r;
}

/// The six two-chord generators, given as counterclockwise blocks at the - end and the + end
/// of the unit chord: parallel, antiparallel, pitchfork at either end, solitary at either end.
inline const std::vector<MarkedChordDiagram>& marked_generators() {
    static const std::vector<MarkedChordDiagram> g = [] {
        // letters: x = 1, y = 2
        auto make = [](std::vector<ChordEnd> minus_block, std::vector<ChordEnd> plus_block) {
            std::reverse(minus_block.begin(), minus_block.end());
            MarkedChordDiagram m{std::move(minus_block), std::move(plus_block)};
            m.validate();
            return m;
        };
        const ChordEnd xm{1, -1}, xp{1, 1}, ym{2, -1}, yp{2, 1};
        return std::vector<MarkedChordDiagram>{
            make({xm, ym}, {yp, xp}),      // parallel
            make({xm, ym}, {xp, yp}),      // antiparallel
            make({xm}, {yp, xp, ym}),      // pitchfork at the + end
            make({ym, xm, yp}, {xp}),      // pitchfork at the - end
            make({xm, ym, yp}, {xp}),      // solitary at the - end
            make({xm}, {xp, ym, yp}),      // solitary at the + end
        };
    }();
    return g;
}

inline const std::vector<std::string>& marked_generator_names() {
    static const std::vector<std::string> names = {"parallel",      "antiparallel",    "pitchfork_plus",
                                                   "pitchfork_minus", "solitary_minus", "solitary_plus"};
    return names;
}

/// Binary tree whose internal nodes carry a generator index 0..5.
struct LabeledTree {
    int generator = -1;                ///< -1 for a leaf
    std::vector<LabeledTree> children; ///< empty or exactly two

    bool is_leaf() const noexcept { return children.empty(); }
    int leaves() const {
        if (is_leaf()) return 1;
        return children[0].leaves() + children[1].leaves();
    }
};

inline MarkedChordDiagram marked_from_labeled_tree(const LabeledTree& t) {
    if (t.is_leaf()) return unit_marked_diagram();
    if (t.children.size() != 2 || t.generator < 0 || t.generator >= 6) throw InvalidInput("labeled tree must be binary with generators 0..5");
    return insert_marked(marked_generators()[t.generator],
                         {marked_from_labeled_tree(t.children[0]), marked_from_labeled_tree(t.children[1])});
}

/// Recursive insertion of the children's diagrams into their parent's generator.
inline ChordDiagram generate_from_labeled_tree(const LabeledTree& t) { return marked_from_labeled_tree(t).diagram(); }

/// All generator labelings of a binary tree shape.
inline std::vector<LabeledTree> labelings(const TreeNode& shape) {
    if (shape.is_leaf()) return {LabeledTree{}};
    std::vector<LabeledTree> out;
    const auto ls = labelings(shape.children.at(0)), rs = labelings(shape.children.at(1));
    for (int g = 0; g < 6; ++g)
        for (const auto& l : ls)
            for (const auto& r : rs) out.push_back(LabeledTree{g, {l, r}});
    return out;
}

} // namespace promenade
