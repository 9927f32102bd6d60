#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "promenade/bivariate.hpp"

namespace promenade {

/// nullopt stands for +infinity.
using Valuation = std::optional<int>;

/// Index of the first nonzero coefficient.
inline Valuation valuation(const std::vector<FieldElement>& series) {
    for (std::size_t k = 0; k < series.size(); ++k)
        if (!series[k].is_zero()) return static_cast<int>(k);
    return std::nullopt;
}

/// Valuation of F(0, y).
inline int multiplicity(const BivariatePolynomial& f) {
    if (f.is_zero()) throw ZeroPolynomial("multiplicity of 0");
    if (f.x_valuation() > 0) throw DivisibleByX(f.to_string());
    if (!f.coeff(0, 0).is_zero()) throw NonVanishingAtOrigin(f.to_string());
    return *f.at_x_zero().valuation();
}

// ---------------------------------------------------------------------------
// Newton polygon

/// Boundary segment on the line alpha*i + beta*j = gamma, gcd(alpha, beta) = 1.
struct NewtonSegment {
    int alpha = 1, beta = 1, gamma = 0;
    std::vector<BivariatePolynomial::Exponent> points;  ///< support points on the line, by increasing i

    friend bool operator==(const NewtonSegment& a, const NewtonSegment& b) {
        return a.alpha == b.alpha && a.beta == b.beta && a.gamma == b.gamma;
    }
};

struct NewtonPolygon {
    std::vector<NewtonSegment> segments;               ///< from the j-axis side towards the i-axis side
    std::vector<BivariatePolynomial::Exponent> vertices;
    std::vector<BivariatePolynomial::Exponent> support;
};

inline NewtonPolygon newton_polygon(const BivariatePolynomial& f) {
    if (f.is_zero()) throw ZeroPolynomial("Newton polygon of 0");
    NewtonPolygon poly;
    for (const auto& [e, c] : f.terms()) poly.support.push_back(e);
    // lower-left boundary: from the lowest point of the leftmost column to the leftmost point of the lowest row
    auto start = *std::min_element(poly.support.begin(), poly.support.end());
    int jmin = f.y_valuation();
    poly.vertices.push_back(start);
    auto cur = start;
    while (cur.second > jmin) {
        // steepest descent: minimise (j - cj)/(i - ci) over points with j < cj
        std::optional<BivariatePolynomial::Exponent> best;
        for (const auto& p : poly.support) {
            if (p.second >= cur.second) continue;
            if (!best) {
                best = p;
                continue;
            }
            // compare (p.j - cj)/(p.i - ci) < (b.j - cj)/(b.i - ci), denominators positive
            const long lhs = static_cast<long>(p.second - cur.second) * (best->first - cur.first);
            const long rhs = static_cast<long>(best->second - cur.second) * (p.first - cur.first);
            if (lhs < rhs || (lhs == rhs && p.first > best->first)) best = p;
        }
        const int di = best->first - cur.first, dj = cur.second - best->second;
        const int g = std::gcd(di, dj);
        NewtonSegment s;
        s.alpha = dj / g;
        s.beta = di / g;
        s.gamma = s.alpha * cur.first + s.beta * cur.second;
        for (const auto& p : poly.support)
            if (s.alpha * p.first + s.beta * p.second == s.gamma) s.points.push_back(p);
        std::sort(s.points.begin(), s.points.end());
        poly.segments.push_back(std::move(s));
        cur = *best;
        poly.vertices.push_back(cur);
    }
    return poly;
}

/// p(u) = sum of a_ij u^j over the support points of the segment.
inline FieldPolynomial dominant_polynomial(const BivariatePolynomial& f, const NewtonSegment& seg) {
    const auto poly = newton_polygon(f);
    if (std::find(poly.segments.begin(), poly.segments.end(), seg) == poly.segments.end())
        throw SegmentNotOnPolygon(std::to_string(seg.alpha) + "i + " + std::to_string(seg.beta) + "j = " + std::to_string(seg.gamma));
    std::vector<FieldElement> c(f.y_degree() + 1);
    for (const auto& [e, v] : f.terms())
        if (seg.alpha * e.first + seg.beta * e.second == seg.gamma) c[e.second] += v;
    return FieldPolynomial(std::move(c));
}

/// x^-gamma F(x^alpha, u0 x^beta (1 + y)), gamma the smallest alpha*i + beta*j on the support.
inline BivariatePolynomial substitute_step(const BivariatePolynomial& f, int alpha, int beta, const FieldElement& u0) {
    if (f.is_zero()) throw ZeroPolynomial("substitution into 0");
    if (alpha < 1 || beta < 1) throw InvalidInput("alpha and beta must be positive");
    if (u0.is_zero()) throw NotARoot("u0 = 0");
    int gamma = -1;
    for (const auto& [e, c] : f.terms()) {
        const int w = alpha * e.first + beta * e.second;
        gamma = gamma < 0 ? w : std::min(gamma, w);
    }
    const int jmax = f.y_degree();
    std::vector<std::vector<BigInt>> binom(jmax + 1);
    for (int j = 0; j <= jmax; ++j) {
        binom[j].assign(j + 1, 1);
        for (int k = 1; k < j; ++k) binom[j][k] = binom[j - 1][k - 1] + binom[j - 1][k];
    }
    std::vector<FieldElement> upow{FieldElement(1)};
    for (int j = 1; j <= jmax; ++j) upow.push_back(upow.back() * u0);
    BivariatePolynomial r;
    for (const auto& [e, c] : f.terms()) {
        const int i = alpha * e.first + beta * e.second - gamma;
        const FieldElement cu = c * upow[e.second];
        for (int k = 0; k <= e.second; ++k) r.add_term(i, k, cu * FieldElement(Rational(binom[e.second][k])));
    }
    if (!r.coeff(0, 0).is_zero()) throw NotARoot(u0.to_string() + " is not a root of the dominant polynomial");
    return r;
}

// ---------------------------------------------------------------------------
// Branches

enum class Side { positive, negative, complex };

inline std::string side_name(Side s) {
    switch (s) {
        case Side::positive: return "pos";
        case Side::negative: return "neg";
        case Side::complex: return "complex";
    }
    return "?";
}

struct NewtonStep {
    int alpha = 1, beta = 1, gamma = 0;
    FieldElement root;
};

/// x = sigma t^m, y = sum coeffs[k] t^k. Coefficients are exact through t^order.
struct PuiseuxBranch {
    int m = 1;
    int sigma = 1;
    std::vector<FieldElement> coeffs{FieldElement()};
    int order = 0;
    bool exact = false;              ///< g is the whole series
    Valuation residual_bound;        ///< lower bound on v_t F(sigma t^m, g(t)); nullopt when exact
    std::vector<NewtonStep> steps;
    std::vector<int> mult_trace;     ///< mult(F_k) along the path

    Valuation mu() const { return valuation(coeffs); }
    /// Multiplicity of the branch at the origin.
    int multiplicity() const {
        auto v = mu();
        return v ? std::min(m, *v) : m;
    }
    bool is_real() const {
        return std::all_of(coeffs.begin(), coeffs.end(), [](const FieldElement& c) { return c.is_real(); });
    }

    std::string x_string() const {
        std::string s = sigma < 0 ? "-t" : "t";
        if (m > 1) s += "^" + std::to_string(m);
        return s;
    }
    std::string y_string() const {
        std::string s;
        for (int k = 0; k < static_cast<int>(coeffs.size()); ++k) {
            const auto& c = coeffs[k];
            if (c.is_zero()) continue;
            const bool neg = c.is_rational() && c.a() < 0;
            std::string coef = neg ? (-c).to_string() : c.to_string();
            if (!c.is_rational() && !(c.a() == 0)) coef = "(" + coef + ")";
            if (s.empty()) s += neg ? "-" : "";
            else s += neg ? " - " : " + ";
            s += (coef == "1" ? std::string() : coef + "*") + "t";
            if (k > 1) s += "^" + std::to_string(k);
        }
        if (s.empty()) s = "0";
        if (!exact) s += " + O(t^" + std::to_string(order + 1) + ")";
        return s;
    }

    /// Point on the branch for a real parameter (real branches only).
    template <class T>
    std::pair<T, T> point(const T& t) const {
        T x = sigma;
        for (int k = 0; k < m; ++k) x *= t;
        T y = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) y = y * t + it->template to_real<T>();
        return {x, y};
    }
};

constexpr int default_truncation = 8;

namespace detail {

using Series = std::vector<FieldElement>;

inline Series series_mul(const Series& a, const Series& b, int n) {
    Series r(n + 1);
    for (int i = 0; i < static_cast<int>(a.size()) && i <= n; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < static_cast<int>(b.size()) && i + j <= n; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

/// Exact coefficients of F(sigma t^m, g(t)).
inline Series along_branch(const BivariatePolynomial& f, int m, int sigma, const Series& g) {
    const int deg_g = static_cast<int>(g.size()) - 1;
    const int jmax = f.y_degree();
    int imax = 0;
    for (const auto& [e, c] : f.terms()) imax = std::max(imax, e.first);
    const int n = imax * m + jmax * std::max(deg_g, 0);
    std::vector<Series> gp{Series{FieldElement(1)}};
    for (int j = 1; j <= jmax; ++j) gp.push_back(series_mul(gp.back(), g, n));
    Series r(n + 1);
    for (const auto& [e, c] : f.terms()) {
        const FieldElement s = (sigma < 0 && e.first % 2) ? -c : c;
        const int shift = e.first * m;
        const auto& p = gp[e.second];
        for (int k = 0; k < static_cast<int>(p.size()) && k + shift <= n; ++k)
            if (!p[k].is_zero()) r[k + shift] += s * p[k];
    }
    return r;
}

struct PathState {
    BivariatePolynomial f;
    int m = 1;
    std::map<int, FieldElement> p;  ///< y = P(t) + q t^qexp y_k
    FieldElement q = FieldElement(1);
    int qexp = 0;
    int terms = 0;
    std::vector<NewtonStep> steps;
    std::vector<int> mult_trace;
};

class Expander {
public:
    Expander(const BivariatePolynomial& g, int sigma, int truncation, bool real_only)
        : g_(g), gy_(g.derivative_y()), sigma_(sigma), t_(truncation), real_(real_only) {}

    std::vector<PuiseuxBranch> run() {
        PathState s;
        s.f = g_;
        walk(std::move(s));
        return std::move(out_);
    }

private:
    PuiseuxBranch make_branch(const PathState& s, bool exact) const {
        PuiseuxBranch b;
        b.m = s.m;
        b.sigma = sigma_;
        b.order = s.qexp;
        b.coeffs.assign(s.qexp + 1, FieldElement());
        for (const auto& [k, c] : s.p) b.coeffs[k] = c;
        b.exact = exact;
        b.steps = s.steps;
        b.mult_trace = s.mult_trace;
        if (!exact) {
            const Valuation vy = valuation(along_branch(gy_, b.m, 1, b.coeffs));
            const int cap = 2 * (b.order + 1);
            b.residual_bound = vy ? std::min(*vy + b.order + 1, cap) : cap;
        }
        return b;
    }

    void walk(PathState s) {
        if (const int r = s.f.y_valuation(); r > 0) {
            out_.push_back(make_branch(s, true));
            s.f = s.f.divided_by_monomial(0, r);
            if (!s.f.coeff(0, 0).is_zero()) return;
        }
        const int mult = multiplicity(s.f);
        s.mult_trace.push_back(mult);
        if (s.terms >= t_ && (mult == 1 || s.terms >= t_ + 32)) {
            out_.push_back(make_branch(s, false));
            return;
        }
        for (const auto& seg : newton_polygon(s.f).segments) {
            const auto p = dominant_polynomial_unchecked(s.f, seg);
            std::vector<FieldElement> kept;
            for (const auto& u : nonzero_roots(p, real_)) {
                if (real_ && !u.is_real()) continue;
                const FieldElement ua = u.pow(seg.alpha);
                bool conj = false;
                for (const auto& k : kept) conj = conj || k.pow(seg.alpha) == ua;
                if (conj) continue;
                kept.push_back(u);
                walk(advance(s, seg, u));
            }
        }
    }

    static FieldPolynomial dominant_polynomial_unchecked(const BivariatePolynomial& f, const NewtonSegment& seg) {
        std::vector<FieldElement> c(f.y_degree() + 1);
        for (const auto& e : seg.points) c[e.second] += f.coeff(e.first, e.second);
        return FieldPolynomial(std::move(c));
    }

    static PathState advance(const PathState& s, const NewtonSegment& seg, const FieldElement& u) {
        PathState n;
        n.f = substitute_step(s.f, seg.alpha, seg.beta, u);
        n.m = s.m * seg.alpha;
        for (const auto& [k, c] : s.p) n.p.emplace(k * seg.alpha, c);
        n.qexp = s.qexp * seg.alpha + seg.beta;
        n.q = s.q * u;
        n.p[n.qexp] += n.q;
        n.terms = s.terms + 1;
        n.steps = s.steps;
        n.steps.push_back({seg.alpha, seg.beta, seg.gamma, u});
        n.mult_trace = s.mult_trace;
        return n;
    }

    const BivariatePolynomial& g_;
    BivariatePolynomial gy_;
    int sigma_;
    int t_;
    bool real_;
    std::vector<PuiseuxBranch> out_;
};

} // namespace detail

/// Branches of F = 0 at the origin. Real sides keep only real roots at every step and run on
/// F(-x, y) for x < 0. Conjugate paths (u'^alpha = u^alpha) are reported once.
inline std::vector<PuiseuxBranch> expand_branches(const BivariatePolynomial& f, int truncation = default_truncation,
                                                  Side side = Side::positive) {
    multiplicity(f);
    if (truncation < 1) throw InvalidInput("truncation order must be positive");
    if (side != Side::complex && !f.is_rational()) throw InvalidInput("real sides need rational coefficients");
    const BivariatePolynomial g = side == Side::negative ? f.mirrored_x() : f;
    auto branches = detail::Expander(g, 1, truncation, side != Side::complex).run();
    if (side == Side::negative)
        for (auto& b : branches) b.sigma = -1;
    return branches;
}

/// Real branches through the origin: every branch for x > 0, plus the x < 0 branches of even m
/// (odd m branches already cover both sides).
inline std::vector<PuiseuxBranch> real_branches(const BivariatePolynomial& f, int truncation = default_truncation) {
    auto out = expand_branches(f, truncation, Side::positive);
    for (auto& b : expand_branches(f, truncation, Side::negative))
        if (b.m % 2 == 0) out.push_back(std::move(b));
    return out;
}

/// v_t F(sigma t^m, g(t)) with the truncated g.
inline Valuation residual_valuation(const BivariatePolynomial& f, const PuiseuxBranch& b) {
    return valuation(detail::along_branch(f, b.m, b.sigma, b.coeffs));
}

// ---------------------------------------------------------------------------
// Characteristic and intersection multiplicity

struct PuiseuxCharacteristic {
    int m = 1;
    std::vector<int> betas;

    std::string to_string() const {
        std::string s = "(" + std::to_string(m) + ";";
        for (std::size_t k = 0; k < betas.size(); ++k) s += (k ? ", " : " ") + std::to_string(betas[k]);
        return s + (betas.empty() ? " )" : ")");
    }
    friend bool operator==(const PuiseuxCharacteristic&, const PuiseuxCharacteristic&) = default;
};

namespace detail {

/// (1 + h)^(1/k), h(0) = 0, through degree n.
inline Series series_root(const Series& h, int k, int n) {
    Series r(n + 1), hp{FieldElement(1)};
    Rational binom = 1;
    const Rational e(1, k);
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i < static_cast<int>(hp.size()) && i <= n; ++i) r[i] += FieldElement(binom) * hp[i];
        binom = binom * (e - j) / (j + 1);
        hp = series_mul(hp, h, n);
    }
    return r;
}

/// f(g(s)) with g(0) = 0, through degree n.
inline Series series_compose(const Series& f, const Series& g, int n) {
    Series r(n + 1);
    for (int k = static_cast<int>(f.size()) - 1; k >= 0; --k) {
        r = series_mul(r, g, n);
        r[0] += f[k];
    }
    return r;
}

/// Given s = t w(t) with w(0) = 1, returns t(s) through degree n.
inline Series series_revert(const Series& w, int n) {
    Series t(n + 1);
    t[1] = FieldElement(1);
    for (int it = 0; it < n; ++it) {
        const Series wt = series_compose(w, t, n);
        // t = s / w(t)
        Series inv(n + 1);
        inv[0] = FieldElement(1) / wt[0];
        for (int k = 1; k <= n; ++k) {
            FieldElement acc;
            for (int j = 1; j <= k; ++j) acc += wt[j] * inv[k - j];
            inv[k] = -acc / wt[0];
        }
        Series next(n + 1);
        for (int k = 0; k + 1 <= n; ++k) next[k + 1] = inv[k];
        t = std::move(next);
    }
    return t;
}

inline PuiseuxCharacteristic greedy_characteristic(int m, const Series& g, int known_through) {
    PuiseuxCharacteristic c;
    c.m = m;
    int e = m;
    for (int k = 1; k <= known_through && k < static_cast<int>(g.size()) && e > 1; ++k) {
        if (g[k].is_zero() || k % e == 0) continue;
        c.betas.push_back(k);
        e = std::gcd(e, k);
    }
    if (e != 1) throw TruncationTooShort("exponents through t^" + std::to_string(known_through) + " generate only " + std::to_string(e) + "Z");
    return c;
}

} // namespace detail

/// m < beta_1 < ... < beta_g. When the y-valuation is below m the coordinates are swapped first.
inline PuiseuxCharacteristic puiseux_characteristic(const PuiseuxBranch& b) {
    const Valuation mu = b.mu();
    if (b.m == 1 || !mu) return {1, {}};
    if (*mu >= b.m) return detail::greedy_characteristic(b.m, b.coeffs, b.order);
    // y = c t^mu (1 + h(t)); s = t (1 + h)^(1/mu) so that y = c s^mu, then x = sigma t(s)^m
    const int k = *mu;
    const int known = b.exact ? b.order + b.m * k + 8 : b.order - k;
    const FieldElement lead = b.coeffs[k];
    detail::Series h(known + 1);
    for (int j = 1; j <= known; ++j)
        if (k + j < static_cast<int>(b.coeffs.size())) h[j] = b.coeffs[k + j] / lead;
    const auto w = detail::series_root(h, k, known);
    const auto t = detail::series_revert(w, known + 1);
    detail::Series xs{FieldElement(1)};
    for (int j = 0; j < b.m; ++j) xs = detail::series_mul(xs, t, b.m + known);
    return detail::greedy_characteristic(k, xs, b.m + known);
}

/// v_t F2(sigma t^m, g(t)); InfiniteMultiplicity when that exceeds what the truncation certifies.
inline int branch_intersection_multiplicity(const PuiseuxBranch& b, const BivariatePolynomial& f2) {
    const Valuation v = residual_valuation(f2, b);
    if (b.exact) {
        if (!v) throw InfiniteMultiplicity("the branch lies on the curve");
        return *v;
    }
    if (v && *v <= b.order) return *v;
    throw InfiniteMultiplicity("valuation exceeds the truncation order " + std::to_string(b.order));
}

} // namespace promenade
