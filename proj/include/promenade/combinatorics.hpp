#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "promenade/error.hpp"

namespace promenade {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Permutation

/// One-line notation, values 1..n.
class Permutation {
public:
    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        const int n = size();
        if (n < 1) throw InvalidInput("permutation must have at least one element");
        std::vector<bool> seen(n + 1, false);
        for (int v : images_) {
            if (v < 1 || v > n || seen[v]) throw InvalidInput("not a permutation of 1.." + std::to_string(n));
            seen[v] = true;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 1);
        return Permutation(std::move(v));
    }

    /// Parses "2,4,1,3".
    static Permutation parse(std::string_view text) {
        std::vector<int> v;
        std::string tok;
        auto flush = [&] {
            if (tok.empty()) throw InvalidInput("empty entry in permutation");
            std::size_t used = 0;
            int x = 0;
            try {
                x = std::stoi(tok, &used);
            } catch (const std::exception&) {
                throw InvalidInput("bad permutation entry '" + tok + "'");
            }
            if (used != tok.size()) throw InvalidInput("bad permutation entry '" + tok + "'");
            v.push_back(x);
            tok.clear();
        };
        for (char c : text) {
            if (c == ',') flush();
            else if (c != ' ') tok += c;
        }
        flush();
        return Permutation(std::move(v));
    }

    int size() const noexcept { return static_cast<int>(images_.size()); }
    /// pi(i), 1-based.
    int operator()(int i) const { return images_.at(i - 1); }
    const std::vector<int>& images() const noexcept { return images_; }

    /// k -> n+1-pi(k)
    Permutation reversed() const {
        std::vector<int> v(images_);
        for (int& x : v) x = size() + 1 - x;
        return Permutation(std::move(v));
    }

    bool is_identity() const {
        for (int i = 0; i < size(); ++i)
            if (images_[i] != i + 1) return false;
        return true;
    }

    std::string to_string() const {
        std::string s;
        for (int i = 0; i < size(); ++i) {
            if (i) s += ',';
            s += std::to_string(images_[i]);
        }
        return s;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> images_;
};

/// All permutations of size n in lexicographic order.
inline std::vector<Permutation> all_permutations(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    std::vector<Permutation> out;
    do out.emplace_back(v);
    while (std::next_permutation(v.begin(), v.end()));
    return out;
}

/// Positions (1-based) of an occurrence of q inside p, if any.
inline std::optional<std::vector<int>> find_pattern(const Permutation& p, const Permutation& q) {
    const int n = p.size(), k = q.size();
    if (k > n) throw PatternLargerThanHost(std::to_string(k) + " > " + std::to_string(n));
    std::vector<int> pos;
    pos.reserve(k);
    auto sgn = [](int a) { return (a > 0) - (a < 0); };
    auto rec = [&](auto&& self, int start) -> bool {
        const int depth = static_cast<int>(pos.size());
        if (depth == k) return true;
        for (int i = start; i <= n - (k - depth); ++i) {
            bool ok = true;
            for (int j = 0; j < depth && ok; ++j)
                ok = sgn(p(i + 1) - p(pos[j])) == sgn(q(depth + 1) - q(j + 1));
            if (!ok) continue;
            pos.push_back(i + 1);
            if (self(self, i + 1)) return true;
            pos.pop_back();
        }
        return false;
    };
    if (rec(rec, 0)) return pos;
    return std::nullopt;
}

inline bool contains_pattern(const Permutation& p, const Permutation& q) {
    return find_pattern(p, q).has_value();
}

inline const Permutation& forbidden_2413() {
    static const Permutation p({2, 4, 1, 3});
    return p;
}
inline const Permutation& forbidden_3142() {
    static const Permutation p({3, 1, 4, 2});
    return p;
}

/// Merge adjacent blocks whose value ranges are adjacent until stuck.
inline bool is_separable(const Permutation& p) {
    struct Block {
        int lo, hi;
    };
    std::vector<Block> blocks;
    blocks.reserve(p.size());
    for (int v : p.images()) blocks.push_back({v, v});
    std::size_t i = 0;
    while (blocks.size() > 1 && i + 1 < blocks.size()) {
        const Block a = blocks[i], b = blocks[i + 1];
        if (a.hi + 1 == b.lo || b.hi + 1 == a.lo) {
            blocks[i] = {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
            blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(i) + 1);
            i = 0;
        } else {
            ++i;
        }
    }
    return blocks.size() == 1;
}

/// Which forbidden pattern p contains, with its positions.
struct SeparabilityWitness {
    Permutation pattern;
    std::vector<int> positions;
};

inline std::optional<SeparabilityWitness> separability_witness(const Permutation& p) {
    if (p.size() < 4) return std::nullopt;
    for (const Permutation* q : {&forbidden_2413(), &forbidden_3142()})
        if (auto pos = find_pattern(p, *q)) return SeparabilityWitness{*q, *pos};
    return std::nullopt;
}

/// Block sums with the block conventions
///   (p1 + p2)(k) = p1(k), n1 + p2(k - n1)
///   (p1 - p2)(k) = p2(k) + n1 for k <= n2, then p1(k - n2).
enum class SumSign { plus, minus };

inline Permutation direct_sum(const Permutation& p1, const Permutation& p2, SumSign sign) {
    const int n1 = p1.size(), n2 = p2.size();
    std::vector<int> v;
    v.reserve(n1 + n2);
    if (sign == SumSign::plus) {
        for (int x : p1.images()) v.push_back(x);
        for (int x : p2.images()) v.push_back(n1 + x);
    } else {
        for (int x : p2.images()) v.push_back(x + n1);
        for (int x : p1.images()) v.push_back(x);
    }
    return Permutation(std::move(v));
}

// ---------------------------------------------------------------------------
// Stack sorting

/// Runs a single pass of the stack; returns the output sequence.
inline std::vector<int> stack_sort_pass(const Permutation& p) {
    std::vector<int> stack, out;
    for (int v : p.images()) {
        while (!stack.empty() && stack.back() < v) {
            out.push_back(stack.back());
            stack.pop_back();
        }
        stack.push_back(v);
    }
    while (!stack.empty()) {
        out.push_back(stack.back());
        stack.pop_back();
    }
    return out;
}

inline bool is_stack_sortable(const Permutation& p) {
    static const Permutation q231({2, 3, 1});
    if (p.size() < 3) return true;
    return !contains_pattern(p, q231);
}

inline bool stack_simulation_sorts(const Permutation& p) {
    auto out = stack_sort_pass(p);
    return std::is_sorted(out.begin(), out.end());
}

// ---------------------------------------------------------------------------
// Counting

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// C_n from the convolution recurrence.
inline BigInt catalan(unsigned n) {
    std::vector<BigInt> c(n + 1);
    c[0] = 1;
    for (unsigned m = 1; m <= n; ++m)
        for (unsigned k = 1; k <= m; ++k) c[m] += c[k - 1] * c[m - k];
    return c[n];
}

inline BigInt catalan_closed_form(unsigned n) { return binomial(2 * n, n) / (n + 1); }

struct SchroederPair {
    BigInt a;
    BigInt b;
};

/// a(n) separable permutations, b(n) sum over compositions of n (k >= 2 parts) of b products.
inline std::vector<SchroederPair> schroeder_table(unsigned n_max) {
    // s(m) sums the products over all compositions of m, including the trivial one.
    std::vector<BigInt> b(n_max + 1), s(n_max + 1);
    s[0] = 1;
    if (n_max >= 1) b[1] = 1, s[1] = 1;
    for (unsigned m = 2; m <= n_max; ++m) {
        for (unsigned j = 1; j < m; ++j) b[m] += b[j] * s[m - j];
        s[m] = 2 * b[m];
    }
    std::vector<SchroederPair> out(n_max + 1);
    for (unsigned m = 1; m <= n_max; ++m) out[m] = {m == 1 ? BigInt(1) : 2 * b[m], b[m]};
    return out;
}

inline SchroederPair schroeder(unsigned n) {
    if (n < 1) throw InvalidInput("schroeder needs n >= 1");
    return schroeder_table(n)[n];
}

// ---------------------------------------------------------------------------
// Planar trees

/// Node of a rooted planar tree. Leaves carry labels 1..n, internal nodes carry 0.
struct TreeNode {
    int leaf = 0;
    std::vector<TreeNode> children;

    bool is_leaf() const noexcept { return children.empty(); }
    friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

inline int leaf_count(const TreeNode& t) {
    if (t.is_leaf()) return 1;
    int c = 0;
    for (const auto& ch : t.children) c += leaf_count(ch);
    return c;
}

namespace detail {

inline void write_tree(const TreeNode& t, std::string& out) {
    if (t.is_leaf()) {
        out += std::to_string(t.leaf);
        return;
    }
    out += '(';
    for (std::size_t i = 0; i < t.children.size(); ++i) {
        if (i) out += ' ';
        write_tree(t.children[i], out);
    }
    out += ')';
}

class TreeParser {
public:
    explicit TreeParser(std::string_view s) : s_(s) {}

    TreeNode parse() {
        TreeNode t = node();
        skip();
        if (i_ != s_.size()) fail("trailing characters");
        return t;
    }

private:
    void skip() {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == ',')) ++i_;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw InvalidInput("tree text: " + what + " at offset " + std::to_string(i_));
    }
    TreeNode node() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end");
        if (s_[i_] == '(') {
            ++i_;
            TreeNode t;
            for (;;) {
                skip();
                if (i_ >= s_.size()) fail("unbalanced parentheses");
                if (s_[i_] == ')') {
                    ++i_;
                    break;
                }
                t.children.push_back(node());
            }
            if (t.children.empty()) fail("empty node");
            return t;
        }
        std::size_t j = i_;
        while (j < s_.size() && s_[j] >= '0' && s_[j] <= '9') ++j;
        if (j == i_) fail("expected leaf label");
        TreeNode t;
        t.leaf = std::stoi(std::string(s_.substr(i_, j - i_)));
        i_ = j;
        return t;
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

inline void collect_leaves(const TreeNode& t, std::vector<int>& out) {
    if (t.is_leaf()) {
        out.push_back(t.leaf);
        return;
    }
    for (const auto& ch : t.children) collect_leaves(ch, out);
}

inline void relabel_leaves(TreeNode& t, int& next) {
    if (t.is_leaf()) {
        t.leaf = next++;
        return;
    }
    for (auto& ch : t.children) relabel_leaves(ch, next);
}

} // namespace detail

/// Rooted planar tree. The root sits at level 0.
class PlanarTree {
public:
    PlanarTree() : root_{1, {}} {}
    explicit PlanarTree(TreeNode root) : root_(std::move(root)) {
        std::vector<int> leaves;
        detail::collect_leaves(root_, leaves);
        for (std::size_t i = 0; i < leaves.size(); ++i)
            if (leaves[i] != static_cast<int>(i) + 1)
                throw InvalidInput("leaves must be labelled 1..n from left to right");
    }

    /// Accepts "((1 2) 3)".
    static PlanarTree parse(std::string_view text) { return PlanarTree(detail::TreeParser(text).parse()); }

    /// Builds a tree from shape only and numbers the leaves left to right.
    static PlanarTree from_shape(TreeNode shape) {
        int next = 1;
        detail::relabel_leaves(shape, next);
        return PlanarTree(std::move(shape));
    }

    const TreeNode& root() const noexcept { return root_; }
    int leaves() const { return leaf_count(root_); }

    /// Every non-root internal node has at least two children.
    bool is_pruned() const {
        auto rec = [](auto&& self, const TreeNode& t, bool is_root) -> bool {
            if (t.is_leaf()) return true;
            if (!is_root && t.children.size() < 2) return false;
            for (const auto& ch : t.children)
                if (!self(self, ch, false)) return false;
            return true;
        };
        return rec(rec, root_, true);
    }

    bool is_binary() const {
        auto rec = [](auto&& self, const TreeNode& t) -> bool {
            if (t.is_leaf()) return true;
            if (t.children.size() != 2) return false;
            return self(self, t.children[0]) && self(self, t.children[1]);
        };
        return rec(rec, root_);
    }

    std::string to_string() const {
        std::string s;
        detail::write_tree(root_, s);
        return s;
    }

    friend bool operator==(const PlanarTree&, const PlanarTree&) = default;

private:
    TreeNode root_;
};

/// Planar tree whose internal nodes all have exactly two children.
class BinaryTree {
public:
    explicit BinaryTree(PlanarTree t) : tree_(std::move(t)) {
        if (!tree_.is_binary()) throw InvalidInput("tree is not binary");
    }
    static BinaryTree parse(std::string_view text) { return BinaryTree(PlanarTree::parse(text)); }

    const PlanarTree& tree() const noexcept { return tree_; }
    const TreeNode& root() const noexcept { return tree_.root(); }
    int leaves() const { return tree_.leaves(); }
    std::string to_string() const { return tree_.to_string(); }

    friend bool operator==(const BinaryTree&, const BinaryTree&) = default;

private:
    PlanarTree tree_;
};

/// All binary tree shapes with n leaves, leaves numbered left to right.
inline std::vector<BinaryTree> all_binary_trees(int n) {
    std::vector<std::vector<TreeNode>> shapes(n + 1);
    if (n >= 1) shapes[1].push_back(TreeNode{});
    for (int m = 2; m <= n; ++m)
        for (int l = 1; l < m; ++l)
            for (const auto& a : shapes[l])
                for (const auto& b : shapes[m - l]) shapes[m].push_back(TreeNode{0, {a, b}});
    std::vector<BinaryTree> out;
    for (auto& s : shapes[n]) out.emplace_back(PlanarTree::from_shape(s));
    return out;
}

namespace detail {

// Schroeder shapes: every internal node has >= 2 children.
inline std::vector<std::vector<TreeNode>> schroeder_shapes(int n) {
    std::vector<std::vector<TreeNode>> shapes(n + 1);
    if (n >= 1) shapes[1].push_back(TreeNode{});
    // forests[m]: ordered lists of shapes with m leaves in total, any number of parts >= 1
    std::vector<std::vector<std::vector<TreeNode>>> forests(n + 1);
    for (int m = 1; m <= n; ++m) {
        // forests with >= 2 parts build the nodes of size m
        for (int first = 1; first < m; ++first)
            for (const auto& head : shapes[first])
                for (const auto& rest : forests[m - first]) {
                    TreeNode t;
                    t.children.push_back(head);
                    t.children.insert(t.children.end(), rest.begin(), rest.end());
                    shapes[m].push_back(std::move(t));
                }
        for (int first = 1; first <= m; ++first)
            for (const auto& head : shapes[first]) {
                if (first == m) {
                    forests[m].push_back({head});
                    continue;
                }
                for (const auto& rest : forests[m - first]) {
                    std::vector<TreeNode> f{head};
                    f.insert(f.end(), rest.begin(), rest.end());
                    forests[m].push_back(std::move(f));
                }
            }
    }
    return shapes;
}

} // namespace detail

/// All pruned trees with n leaves. For n = 1 only the bare leaf.
inline std::vector<PlanarTree> all_pruned_trees(int n) {
    auto shapes = detail::schroeder_shapes(n);
    std::vector<PlanarTree> out;
    for (const auto& s : shapes[n]) out.push_back(PlanarTree::from_shape(s));
    if (n >= 2)
        for (const auto& s : shapes[n]) out.push_back(PlanarTree::from_shape(TreeNode{0, {s}}));
    return out;
}

// ---------------------------------------------------------------------------
// Trees and separable permutations

/// Leaf i (left to right) gets the rank p(i) in the second order, where
/// a precedes b iff a is left of b and their closest common ancestor has even level,
/// or a is right of b and the level is odd.
inline Permutation perm_from_tree(const PlanarTree& t) {
    if (!t.is_pruned()) throw NotPruned(t.to_string());
    const int n = t.leaves();
    // level of the closest common ancestor for every ordered pair
    std::vector<std::vector<int>> lca(n + 1, std::vector<int>(n + 1, 0));
    auto rec = [&](auto&& self, const TreeNode& node, int level) -> std::vector<int> {
        if (node.is_leaf()) return {node.leaf};
        std::vector<std::vector<int>> parts;
        for (const auto& ch : node.children) parts.push_back(self(self, ch, level + 1));
        std::vector<int> all;
        for (std::size_t a = 0; a < parts.size(); ++a) {
            for (std::size_t b = a + 1; b < parts.size(); ++b)
                for (int x : parts[a])
                    for (int y : parts[b]) lca[x][y] = lca[y][x] = level;
            all.insert(all.end(), parts[a].begin(), parts[a].end());
        }
        return all;
    };
    rec(rec, t.root(), 0);
    std::vector<int> rank(n, 1);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            const bool j_before_i = (j < i) == (lca[i][j] % 2 == 0);
            if (j_before_i) ++rank[i - 1];
        }
    return Permutation(std::move(rank));
}

namespace detail {

// Splits a window of values (positions [lo, hi)) into the finest increasing-block
// decomposition (want_plus) or decreasing-block decomposition.
inline std::vector<std::pair<int, int>> finest_blocks(const std::vector<int>& v, int lo, int hi, bool want_plus) {
    std::vector<std::pair<int, int>> blocks;
    int start = lo;
    int run_min = std::numeric_limits<int>::max(), run_max = std::numeric_limits<int>::min();
    int wmin = std::numeric_limits<int>::max(), wmax = std::numeric_limits<int>::min();
    for (int k = lo; k < hi; ++k) wmin = std::min(wmin, v[k]), wmax = std::max(wmax, v[k]);
    for (int k = lo; k < hi; ++k) {
        run_min = std::min(run_min, v[k]);
        run_max = std::max(run_max, v[k]);
        const int len = k - start + 1;
        // prefix [start, k] is a block if its values form an interval at the bottom (plus) or top (minus)
        // of what remains
        const int done = start - lo;
        const bool interval = run_max - run_min + 1 == len;
        const bool placed = want_plus ? run_min == wmin + done : run_max == wmax - done;
        if (interval && placed) {
            blocks.emplace_back(start, k + 1);
            start = k + 1;
            run_min = std::numeric_limits<int>::max();
            run_max = std::numeric_limits<int>::min();
        }
    }
    return blocks;
}

inline TreeNode build_tree(const std::vector<int>& v, int lo, int hi, int level) {
    if (hi - lo == 1) return TreeNode{lo + 1, {}};
    const bool even = level % 2 == 0;
    auto blocks = finest_blocks(v, lo, hi, even);
    TreeNode node;
    if (blocks.size() == 1) {
        if (level != 0) throw NotSeparable("");
        node.children.push_back(build_tree(v, lo, hi, level + 1));
        return node;
    }
    for (auto [a, b] : blocks) node.children.push_back(build_tree(v, a, b, level + 1));
    return node;
}

} // namespace detail

/// The unique pruned tree realizing p.
inline PlanarTree tree_from_perm(const Permutation& p) {
    if (!is_separable(p)) throw NotSeparable(p.to_string());
    return PlanarTree(detail::build_tree(p.images(), 0, p.size(), 0));
}

// ---------------------------------------------------------------------------
// Polynomial interchanges

/// Dense univariate polynomial over Q, ascending degree.
class RationalPolynomial {
public:
    RationalPolynomial() = default;
    explicit RationalPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static RationalPolynomial monomial(Rational a, int degree) {
        std::vector<Rational> c(degree + 1);
        c[degree] = std::move(a);
        return RationalPolynomial(std::move(c));
    }

    const std::vector<Rational>& coefficients() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    Rational coeff(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : Rational(0); }

    /// Index of the first nonzero coefficient; nullopt stands for +infinity.
    std::optional<int> valuation() const {
        for (std::size_t k = 0; k < c_.size(); ++k)
            if (c_[k] != 0) return static_cast<int>(k);
        return std::nullopt;
    }

    /// Sign of P(x) for all sufficiently small x of the given sign (+1 or -1).
    int sign_near_zero(int side) const {
        auto v = valuation();
        if (!v) return 0;
        int s = c_[*v] > 0 ? 1 : -1;
        if (side < 0 && *v % 2 == 1) s = -s;
        return s;
    }

    friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
        return RationalPolynomial(std::move(c));
    }
    friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(static_cast<int>(k)) - b.coeff(static_cast<int>(k));
        return RationalPolynomial(std::move(c));
    }
    friend bool operator==(const RationalPolynomial&, const RationalPolynomial&) = default;

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string s;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            Rational a = c_[k];
            const bool neg = a < 0;
            if (neg) a = -a;
            if (s.empty()) s += neg ? "-" : "";
            else s += neg ? " - " : " + ";
            const bool unit = a == 1;
            if (!unit || k == 0) s += a.str();
            if (k > 0) {
                if (!unit) s += '*';
                s += 'x';
                if (k > 1) s += '^' + std::to_string(k);
            }
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// The permutation p with P_i the p(i)-th smallest for small x > 0,
/// provided P_1 < ... < P_n for small x < 0. Returns nullopt when that fails.
inline std::optional<Permutation> interchange_of(const std::vector<RationalPolynomial>& polys) {
    const int n = static_cast<int>(polys.size());
    if (n == 0) return std::nullopt;
    for (int i = 0; i + 1 < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if ((polys[j] - polys[i]).sign_near_zero(-1) <= 0) return std::nullopt;
    std::vector<int> rank(n, 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const int s = (polys[i] - polys[j]).sign_near_zero(+1);
            if (s == 0) return std::nullopt;
            if (s > 0) ++rank[i];
        }
    return Permutation(std::move(rank));
}

/// Polynomials vanishing at 0 whose order flips from 1..n (x < 0) to p (x > 0).
/// Built from the pruned tree of p: the child with index j of a node at level L
/// contributes (-1)^L * j * x^(L+2).
inline std::vector<RationalPolynomial> realize_polynomial_interchange(const Permutation& p) {
    const PlanarTree t = tree_from_perm(p);
    std::vector<RationalPolynomial> out(p.size());
    auto rec = [&](auto&& self, const TreeNode& node, int level, const RationalPolynomial& acc) -> void {
        if (node.is_leaf()) {
            out[node.leaf - 1] = acc;
            return;
        }
        const int sign = level % 2 == 0 ? 1 : -1;
        for (std::size_t j = 0; j < node.children.size(); ++j) {
            RationalPolynomial next = acc;
            if (j > 0) next = next + RationalPolynomial::monomial(Rational(sign * static_cast<int>(j)), level + 2);
            self(self, node.children[j], level + 1, next);
        }
    };
    rec(rec, t.root(), 0, RationalPolynomial{});
    return out;
}

// ---------------------------------------------------------------------------
// Loday's embedding of the associahedron

/// Coordinate i is (#leaves left of i v (i+1)) * (#leaves right of it).
inline std::vector<BigInt> loday_embedding(const BinaryTree& t) {
    const int n = t.leaves();
    if (n < 2) throw InvalidInput("loday embedding needs at least two leaves");
    std::vector<BigInt> x;
    x.reserve(n - 1);
    auto rec = [&](auto&& self, const TreeNode& node) -> int {
        if (node.is_leaf()) return 1;
        const int l = self(self, node.children[0]);
        // in-order: the node sits between its last left leaf and first right leaf
        x.push_back(BigInt(0));
        const std::size_t slot = x.size() - 1;
        const int r = self(self, node.children[1]);
        x[slot] = BigInt(l) * r;
        return l + r;
    };
    rec(rec, t.root());
    return x;
}

/// True when leaves p..p+q-1 are exactly the descendants of one node.
inline bool in_loday_face(const BinaryTree& t, int p, int q) {
    bool found = false;
    auto rec = [&](auto&& self, const TreeNode& node) -> std::pair<int, int> {
        if (node.is_leaf()) return {node.leaf, node.leaf};
        auto [a, b] = self(self, node.children[0]);
        auto [c, d] = self(self, node.children[1]);
        (void)b;
        (void)c;
        if (a == p && d == p + q - 1) found = true;
        return {a, d};
    };
    rec(rec, t.root());
    return found;
}

/// Supporting function of the face F_{p,q}: x_p + ... + x_{p+q-2}.
inline BigInt loday_face_function(const std::vector<BigInt>& x, int p, int q) {
    BigInt s = 0;
    for (int i = p; i <= p + q - 2; ++i) s += x.at(i - 1);
    return s;
}

} // namespace promenade
