#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "promenade/chord_diagrams.hpp"
#include "promenade/puiseux.hpp"

namespace promenade {

// ---------------------------------------------------------------------------------------------
// Chord diagram of a real singularity

namespace detail {

using CircleReal = boost::multiprecision::cpp_bin_float_100;

struct CirclePoint {
    CircleReal angle;  ///< in [0, 2pi)
    int branch;
    int end;           ///< 0 for t > 0, 1 for t < 0
};

/// Parameter t with |P(t)| = eps on one side of 0, by bisection on (0, eps^(1/m)].
inline CircleReal circle_parameter(const PuiseuxBranch& b, const CircleReal& eps, int side) {
    using boost::multiprecision::pow;
    CircleReal lo = 0, hi = pow(eps, CircleReal(1) / b.m);
    const CircleReal e2 = eps * eps;
    for (int it = 0; it < 340; ++it) {
        const CircleReal mid = (lo + hi) / 2;
        const auto [x, y] = b.point<CircleReal>(side * mid);
        if (x * x + y * y < e2) lo = mid;
        else hi = mid;
    }
    return side * (lo + hi) / 2;
}

inline CircleReal normalized_angle(const CircleReal& y, const CircleReal& x) {
    using boost::multiprecision::atan2;
    CircleReal a = atan2(y, x);
    if (a < 0) a += 2 * boost::math::constants::pi<CircleReal>();
    return a;
}

/// Branch labels in angular order, rotated so that (branch 0, end 0) comes first.
/// Empty when two points are too close to order.
inline std::vector<int> cyclic_labels(std::vector<CirclePoint> pts) {
    std::sort(pts.begin(), pts.end(), [](const CirclePoint& l, const CirclePoint& r) { return l.angle < r.angle; });
    const CircleReal tie = CircleReal(1) / CircleReal(boost::multiprecision::pow(CircleReal(2), 280));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CircleReal gap = (i + 1 < pts.size() ? pts[i + 1].angle : pts[0].angle + 2 * boost::math::constants::pi<CircleReal>()) -
                         pts[i].angle;
        if (pts.size() > 1 && gap < tie) return {};
    }
    std::vector<int> labels;
    for (const auto& p : pts) labels.push_back(2 * p.branch + p.end);
    auto start = std::find(labels.begin(), labels.end(), 0);
    std::rotate(labels.begin(), start, labels.end());
    return labels;
}

} // namespace detail

/// Circle crossings of the singularity's real branches, as a chord diagram. A factor x^r of F
/// contributes the vertical chord. The radius is halved from 1/4 until the cyclic order of the
/// crossings is the same on three consecutive circles.
inline ChordDiagram diagram_of_singularity(const BivariatePolynomial& f, int truncation = default_truncation) {
    if (f.is_zero()) throw ZeroPolynomial("F = 0");
    if (!f.is_rational()) throw InvalidInput("rational coefficients required");
    const int r = f.x_valuation();
    const BivariatePolynomial g = f.divided_by_monomial(r, 0);
    if (r == 0 && !g.coeff(0, 0).is_zero()) throw NonVanishingAtOrigin("F(0,0) != 0");

    std::vector<PuiseuxBranch> branches;
    if (g.coeff(0, 0).is_zero()) branches = real_branches(g, truncation);
    const int n = static_cast<int>(branches.size()) + (r > 0 ? 1 : 0);
    if (n == 0) throw NoRealBranches("the real locus near the origin is the origin itself");

    using detail::CircleReal;
    const CircleReal half_pi = boost::math::constants::half_pi<CircleReal>();
    CircleReal eps = CircleReal(1) / 4;
    std::vector<int> last;
    int repeats = 0;
    for (int halving = 0; halving <= 40; ++halving, eps /= 2) {
        std::vector<detail::CirclePoint> pts;
        for (int k = 0; k < static_cast<int>(branches.size()); ++k)
            for (int end = 0; end < 2; ++end) {
                const CircleReal t = detail::circle_parameter(branches[k], eps, end == 0 ? 1 : -1);
                const auto [x, y] = branches[k].point<CircleReal>(t);
                pts.push_back({detail::normalized_angle(y, x), k, end});
            }
        if (r > 0) {
            const int k = static_cast<int>(branches.size());
            pts.push_back({half_pi, k, 0});
            pts.push_back({3 * half_pi, k, 1});
        }
        auto labels = detail::cyclic_labels(std::move(pts));
        if (!labels.empty() && labels == last) ++repeats;
        else repeats = 0;
        last = std::move(labels);
        if (repeats == 2) {
            std::vector<int> word;
            for (int l : last) word.push_back(l / 2);
            auto d = ChordDiagram::from_letters(ChordDiagram::relabel(word));
            if (!is_analytic(d)) throw PrecisionExhausted("non-analytic order; raise the truncation");
            return d;
        }
    }
    throw PrecisionExhausted("circle order did not stabilise within 40 halvings");
}

// ---------------------------------------------------------------------------------------------
// Polygonal curves in space

struct Vec3 {
    double x = 0, y = 0, z = 0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend bool operator==(Vec3 a, Vec3 b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) { return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x}; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

/// Closed polygon; the last vertex joins the first.
class PolyCurve3D {
public:
    explicit PolyCurve3D(std::vector<Vec3> v) : v_(std::move(v)) {
        if (v_.size() >= 2 && v_.front() == v_.back()) v_.pop_back();
        if (v_.size() < 3) throw InvalidInput("a closed curve needs at least 3 vertices");
        for (std::size_t i = 0; i < v_.size(); ++i) {
            const Vec3& p = v_[i];
            if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) throw InvalidInput("non-finite vertex");
            if (p == v_[(i + 1) % v_.size()]) throw InvalidInput("consecutive vertices coincide at " + std::to_string(i));
        }
    }

    std::size_t size() const noexcept { return v_.size(); }
    const std::vector<Vec3>& vertices() const noexcept { return v_; }
    const Vec3& operator[](std::size_t i) const { return v_[i]; }
    const Vec3& next(std::size_t i) const { return v_[(i + 1) % v_.size()]; }

    template <class Map>
    PolyCurve3D mapped(Map&& f) const {
        std::vector<Vec3> w;
        w.reserve(v_.size());
        for (const auto& p : v_) w.push_back(f(p));
        return PolyCurve3D(std::move(w));
    }
    PolyCurve3D reversed() const { return PolyCurve3D(std::vector<Vec3>(v_.rbegin(), v_.rend())); }

    /// Largest coordinate magnitude, for scale-relative tolerances.
    double extent() const {
        double e = 0;
        for (const auto& p : v_) e = std::max({e, std::abs(p.x), std::abs(p.y), std::abs(p.z)});
        return e;
    }

private:
    std::vector<Vec3> v_;
};

/// n-gon sampled from a parametrised loop, t = 2 pi k / n.
template <class Param>
PolyCurve3D sample_curve(Param&& c, int n) {
    std::vector<Vec3> v;
    for (int k = 0; k < n; ++k) v.push_back(c(2 * M_PI * k / n));
    return PolyCurve3D(std::move(v));
}

struct Rotation {
    std::array<std::array<double, 3>, 3> m{};

    Vec3 operator()(Vec3 p) const {
        return {m[0][0] * p.x + m[0][1] * p.y + m[0][2] * p.z, m[1][0] * p.x + m[1][1] * p.y + m[1][2] * p.z,
                m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.z};
    }

    /// Uniform random rotation from a unit quaternion (Shoemake).
    template <class Rng>
    static Rotation random(Rng& rng) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double u1 = u(rng), u2 = u(rng), u3 = u(rng);
        const double a = std::sqrt(1 - u1), b = std::sqrt(u1);
        const double w = a * std::sin(2 * M_PI * u2), x = a * std::cos(2 * M_PI * u2);
        const double y = b * std::sin(2 * M_PI * u3), z = b * std::cos(2 * M_PI * u3);
        Rotation r;
        r.m = {{{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
                {2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
                {2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}}};
        return r;
    }
};

constexpr std::uint64_t default_link_seed = 0x5EED;
constexpr int link_rotation_attempts = 20;

namespace detail {

inline double segment_distance(Vec3 p0, Vec3 p1, Vec3 q0, Vec3 q1) {
    const Vec3 d1 = p1 - p0, d2 = q1 - q0, r = p0 - q0;
    const double a = dot(d1, d1), e = dot(d2, d2), f = dot(d2, r), c = dot(d1, r), b = dot(d1, d2);
    const double den = a * e - b * b;
    double s = den > 1e-300 ? std::clamp((b * f - c * e) / den, 0.0, 1.0) : 0.0;
    double t = (b * s + f) / e;
    if (t < 0) t = 0, s = std::clamp(-c / a, 0.0, 1.0);
    else if (t > 1) t = 1, s = std::clamp((b - c) / a, 0.0, 1.0);
    return norm((p0 + s * d1) - (q0 + t * d2));
}

inline double curve_distance(const PolyCurve3D& a, const PolyCurve3D& b) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) best = std::min(best, segment_distance(a[i], a.next(i), b[j], b.next(j)));
    return best;
}

inline double link_scale(const PolyCurve3D& a, const PolyCurve3D& b) { return std::max({a.extent(), b.extent(), 1e-300}); }

inline void require_disjoint(const PolyCurve3D& a, const PolyCurve3D& b) {
    const double d = curve_distance(a, b);
    if (d <= 1e-12 * link_scale(a, b)) throw CurvesIntersect("minimum distance " + std::to_string(d));
}

/// The rotation tried at a given attempt; the same sequence for every algorithm.
inline Rotation attempt_rotation(std::uint64_t seed, int attempt) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(attempt));
    return Rotation::random(rng);
}

struct Degenerate {};

inline double orient2(Vec3 a, Vec3 b, Vec3 c) { return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x); }

/// Signed count of crossings where a passes over b, viewed from +z.
inline int over_crossings(const PolyCurve3D& a, const PolyCurve3D& b, double tol) {
    int total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Vec3 p0 = a[i], p1 = a.next(i);
        for (std::size_t j = 0; j < b.size(); ++j) {
            const Vec3 q0 = b[j], q1 = b.next(j);
            const double o1 = orient2(p0, p1, q0), o2 = orient2(p0, p1, q1);
            const double o3 = orient2(q0, q1, p0), o4 = orient2(q0, q1, p1);
            const double l = norm(p1 - p0) * norm(q1 - q0);
            if (std::min({std::abs(o1), std::abs(o2), std::abs(o3), std::abs(o4)}) <= tol * l) {
                // a vertex lies (nearly) on the other projected segment or its line; only harmful when the
                // projected segments actually meet
                const bool near = std::max(std::min(p0.x, p1.x), std::min(q0.x, q1.x)) <=
                                      std::min(std::max(p0.x, p1.x), std::max(q0.x, q1.x)) + tol &&
                                  std::max(std::min(p0.y, p1.y), std::min(q0.y, q1.y)) <=
                                      std::min(std::max(p0.y, p1.y), std::max(q0.y, q1.y)) + tol;
                if (near) throw Degenerate{};
                continue;
            }
            if ((o1 > 0) == (o2 > 0) || (o3 > 0) == (o4 > 0)) continue;
            const double s = o3 / (o3 - o4), t = o1 / (o1 - o2);
            const double za = p0.z + s * (p1.z - p0.z), zb = q0.z + t * (q1.z - q0.z);
            if (std::abs(za - zb) <= tol) throw Degenerate{};
            if (za < zb) continue;
            const Vec3 d1 = p1 - p0, d2 = q1 - q0;
            total += d1.x * d2.y - d1.y * d2.x > 0 ? 1 : -1;
        }
    }
    return total;
}

} // namespace detail

/// Linking number from one generic projection: crossings where c1 passes over c2, +1 when the
/// tangents (c1, c2) form a positively oriented pair.
inline int linking_projection(const PolyCurve3D& c1, const PolyCurve3D& c2, std::uint64_t seed = default_link_seed) {
    detail::require_disjoint(c1, c2);
    const double tol = 1e-10 * detail::link_scale(c1, c2);
    for (int attempt = 0; attempt < link_rotation_attempts; ++attempt) {
        const Rotation rot = detail::attempt_rotation(seed, attempt);
        try {
            return detail::over_crossings(c1.mapped(rot), c2.mapped(rot), tol);
        } catch (const detail::Degenerate&) {
        }
    }
    throw DegenerateAfterRetries(std::to_string(link_rotation_attempts) + " rotations tried");
}

struct GaussIntegral {
    double value = 0;   ///< raw quadrature estimate
    int rounded = 0;
    int subdivisions = 0;  ///< midpoints per edge in the final grid
};

/// Gauss double integral, midpoint rule with k points per edge; k doubles until two estimates
/// differ by less than 1e-4 and the estimate is within 1e-3 of an integer.
inline GaussIntegral linking_gauss_integral(const PolyCurve3D& c1, const PolyCurve3D& c2, int max_subdivisions = 512) {
    detail::require_disjoint(c1, c2);
    auto estimate = [&](int k) {
        double sum = 0;
        for (std::size_t i = 0; i < c1.size(); ++i) {
            const Vec3 d1 = c1.next(i) - c1[i];
            for (std::size_t j = 0; j < c2.size(); ++j) {
                const Vec3 d2 = c2.next(j) - c2[j];
                const Vec3 n = cross(d1, d2);
                double s = 0;
                for (int a = 0; a < k; ++a) {
                    const Vec3 p = c1[i] + ((a + 0.5) / k) * d1;
                    for (int b = 0; b < k; ++b) {
                        const Vec3 r = p - (c2[j] + ((b + 0.5) / k) * d2);
                        const double len = norm(r);
                        s += dot(r, n) / (len * len * len);
                    }
                }
                sum += s / (static_cast<double>(k) * k);
            }
        }
        return sum / (4 * M_PI);
    };
    double prev = estimate(1);
    for (int k = 2; k <= max_subdivisions; k *= 2) {
        const double cur = estimate(k);
        const double rounded = std::round(cur);
        if (std::abs(cur - prev) < 1e-4 && std::abs(cur - rounded) < 1e-3)
            return {cur, static_cast<int>(rounded), k};
        prev = cur;
    }
    throw QuadratureNotConverged("no agreement to 1e-4 with " + std::to_string(max_subdivisions) + " points per edge");
}

namespace detail {

/// Sum over slabs and strand pairs of eps * winding / 2pi, heights along z.
inline double morse_slices(const PolyCurve3D& a, const PolyCurve3D& b, double tol) {
    std::vector<double> levels;
    for (const auto* c : {&a, &b})
        for (const auto& p : c->vertices()) levels.push_back(p.z);
    std::sort(levels.begin(), levels.end());
    for (std::size_t i = 0; i + 1 < levels.size(); ++i)
        if (levels[i + 1] - levels[i] <= tol) throw Degenerate{};

    struct Strand {
        double x0, y0, x1, y1;  ///< positions at the slab's bottom and top
        int dir;
    };
    auto strands = [](const PolyCurve3D& c, double lo, double hi) {
        std::vector<Strand> out;
        for (std::size_t i = 0; i < c.size(); ++i) {
            const Vec3 p = c[i], q = c.next(i);
            if (std::min(p.z, q.z) > lo || std::max(p.z, q.z) < hi) continue;
            auto at = [&](double z) {
                const double s = (z - p.z) / (q.z - p.z);
                return std::pair{p.x + s * (q.x - p.x), p.y + s * (q.y - p.y)};
            };
            const auto [x0, y0] = at(lo);
            const auto [x1, y1] = at(hi);
            out.push_back({x0, y0, x1, y1, q.z > p.z ? 1 : -1});
        }
        return out;
    };
    double total = 0;
    for (std::size_t l = 0; l + 1 < levels.size(); ++l) {
        const auto sa = strands(a, levels[l], levels[l + 1]), sb = strands(b, levels[l], levels[l + 1]);
        for (const auto& s : sa)
            for (const auto& t : sb) {
                const std::complex<double> w0(s.x0 - t.x0, s.y0 - t.y0), w1(s.x1 - t.x1, s.y1 - t.y1);
                if (std::abs(w0) <= tol || std::abs(w1) <= tol) throw Degenerate{};
                const double turn = std::arg(w1 * std::conj(w0));
                if (std::abs(std::abs(turn) - M_PI) <= 1e-9) throw Degenerate{};
                total += s.dir * t.dir * turn;
            }
    }
    return total / (2 * M_PI);
}

} // namespace detail

/// Linking number by slicing with horizontal planes through the vertices and summing the
/// signed winding of every strand pair.
inline int linking_morse_slices(const PolyCurve3D& c1, const PolyCurve3D& c2, std::uint64_t seed = default_link_seed) {
    detail::require_disjoint(c1, c2);
    const double tol = 1e-10 * detail::link_scale(c1, c2);
    for (int attempt = 0; attempt < link_rotation_attempts; ++attempt) {
        const Rotation rot = detail::attempt_rotation(seed, attempt);
        try {
            const double v = detail::morse_slices(c1.mapped(rot), c2.mapped(rot), tol);
            const double r = std::round(v);
            if (std::abs(v - r) > 1e-6) throw std::logic_error("slice sum " + std::to_string(v) + " is not an integer");
            return static_cast<int>(r);
        } catch (const detail::Degenerate&) {
        }
    }
    throw DegenerateAfterRetries(std::to_string(link_rotation_attempts) + " rotations tried");
}

/// Fixture curves. Hopf: unit circle in z = 0 and a unit circle in y = 0 through its centre.
inline PolyCurve3D hopf_first(int n = 64) {
    return sample_curve([](double t) { return Vec3{std::cos(t), std::sin(t), 0}; }, n);
}
inline PolyCurve3D hopf_second(int n = 64) {
    return sample_curve([](double t) { return Vec3{1 + std::cos(t), 0, std::sin(t)}; }, n);
}

/// Two disjoint random polygons with 5 to 9 vertices each, at distance at least 0.15.
inline std::pair<PolyCurve3D, PolyCurve3D> random_curve_pair(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto polygon = [&](Vec3 centre) {
        const Rotation rot = Rotation::random(rng);
        const int n = 5 + static_cast<int>(rng() % 5);
        std::vector<Vec3> v;
        for (int k = 0; k < n; ++k) {
            const double t = 2 * M_PI * (k + 0.3 * u(rng)) / n, r = 1 + 0.3 * u(rng);
            v.push_back(centre + rot(Vec3{r * std::cos(t), r * std::sin(t), 0.4 * u(rng)}));
        }
        return PolyCurve3D(std::move(v));
    };
    while (true) {
        auto a = polygon({0, 0, 0});
        auto b = polygon({u(rng), u(rng), u(rng)});
        if (detail::curve_distance(a, b) >= 0.15) return {std::move(a), std::move(b)};
    }
}

// ---------------------------------------------------------------------------------------------
// Torus knots

/// Integer polynomial, coefficient k of X^k.
class IntegerPolynomial {
public:
    IntegerPolynomial() = default;
    explicit IntegerPolynomial(std::vector<long long> c) : c_(std::move(c)) { trim(); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<long long>& coefficients() const noexcept { return c_; }
    long long coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : 0; }
    long long at(long long x) const {
        long long s = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * x + *it;
        return s;
    }

    friend IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b) {
        if (a.c_.empty() || b.c_.empty()) return {};
        std::vector<long long> r(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return IntegerPolynomial(std::move(r));
    }
    friend bool operator==(const IntegerPolynomial& a, const IntegerPolynomial& b) { return a.c_ == b.c_; }

    /// Quotient by a monic divisor; throws unless the remainder is zero.
    IntegerPolynomial exact_div(const IntegerPolynomial& d) const {
        if (d.c_.empty() || d.c_.back() != 1) throw InvalidInput("divisor must be monic");
        std::vector<long long> rem = c_;
        if (degree() < d.degree()) {
            if (!c_.empty()) throw InvalidInput("division is not exact");
            return {};
        }
        std::vector<long long> q(degree() - d.degree() + 1, 0);
        for (int k = degree() - d.degree(); k >= 0; --k) {
            const long long c = rem[k + d.degree()];
            q[k] = c;
            if (c == 0) continue;
            for (int i = 0; i <= d.degree(); ++i) rem[k + i] -= c * d.c_[i];
        }
        for (long long r : rem)
            if (r != 0) throw InvalidInput("division is not exact");
        return IntegerPolynomial(std::move(q));
    }

    /// "X^2 - X + 1"
    std::string to_string(char var = 'X') const {
        if (c_.empty()) return "0";
        std::string s;
        for (int k = degree(); k >= 0; --k) {
            const long long c = c_[k];
            if (c == 0) continue;
            const long long a = c < 0 ? -c : c;
            if (s.empty()) s += c < 0 ? "-" : "";
            else s += c < 0 ? " - " : " + ";
            std::string mono = k == 0 ? "" : std::string(1, var) + (k > 1 ? "^" + std::to_string(k) : "");
            if (mono.empty()) s += std::to_string(a);
            else s += (a == 1 ? "" : std::to_string(a) + "*") + mono;
        }
        return s;
    }

    /// X^k - 1
    static IntegerPolynomial x_power_minus_one(int k) {
        std::vector<long long> c(k + 1, 0);
        c[0] = -1;
        c[k] = 1;
        return IntegerPolynomial(std::move(c));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<long long> c_;
};

/// (X^pq - 1)(X - 1) / ((X^p - 1)(X^q - 1)), the Alexander polynomial of the (p, q) torus knot.
inline IntegerPolynomial torus_alexander(int p, int q) {
    if (p < 1 || q < 1) throw InvalidInput("p and q must be positive");
    if (static_cast<long long>(p) * q > 1000000) throw SizeCapExceeded("p*q above 10^6");
    if (std::gcd(p, q) != 1) throw NotCoprime("gcd(" + std::to_string(p) + ", " + std::to_string(q) + ") != 1");
    using P = IntegerPolynomial;
    const P num = P::x_power_minus_one(p * q) * P::x_power_minus_one(1);
    const P den = P::x_power_minus_one(p) * P::x_power_minus_one(q);
    return num.exact_div(den);
}

} // namespace promenade
