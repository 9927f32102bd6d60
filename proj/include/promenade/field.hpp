#pragma once

#include <algorithm>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "promenade/error.hpp"

namespace promenade {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline std::optional<BigInt> exact_isqrt(const BigInt& n) {
    if (n < 0) return std::nullopt;
    BigInt r = boost::multiprecision::sqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

/// n = s^2 * d with d squarefree (sign kept in d). Trial division up to 10^6, then a
/// perfect-square check on the cofactor.
inline std::pair<BigInt, BigInt> squarefree_decompose(BigInt n) {
    BigInt s = 1, d = n < 0 ? -1 : 1;
    if (n < 0) n = -n;
    for (long p = 2; p <= 1000000 && BigInt(p) * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (int k = 0; k < e / 2; ++k) s *= p;
        if (e % 2) d *= p;
    }
    if (auto r = exact_isqrt(n)) s *= *r;
    else d *= n;
    return {s, d};
}

inline std::optional<Rational> rational_sqrt(const Rational& c) {
    if (c < 0) return std::nullopt;
    auto p = exact_isqrt(numerator(c)), q = exact_isqrt(denominator(c));
    if (!p || !q) return std::nullopt;
    return Rational(*p, *q);
}

inline std::string rational_str(const Rational& r) {
    return denominator(r) == 1 ? numerator(r).str() : numerator(r).str() + "/" + denominator(r).str();
}

} // namespace detail

/// a + b*sqrt(d), d squarefree. d is 0 whenever b is 0. Mixing two different irrational
/// fields throws UnsupportedFieldExtension.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(long v) : a_(v) {}  // NOLINT implicit on purpose, so 0 and 1 read naturally
    FieldElement(Rational a) : a_(std::move(a)) {}  // NOLINT
    FieldElement(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) { normalize(); }

    /// sqrt(c) for rational c, in the smallest field containing it.
    static FieldElement sqrt_of(const Rational& c) {
        if (auto r = detail::rational_sqrt(c)) return FieldElement(*r);
        const BigInt pq = numerator(c) * denominator(c);
        auto [s, d] = detail::squarefree_decompose(pq);
        if (d > 1000000000000LL || d < -1000000000000LL) throw UnsupportedFieldExtension("radicand too large: " + d.str());
        return FieldElement(Rational(0), Rational(s, denominator(c)), d.convert_to<long>());
    }

    const Rational& a() const noexcept { return a_; }
    const Rational& b() const noexcept { return b_; }
    long d() const noexcept { return d_; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }
    bool is_real() const { return b_ == 0 || d_ > 0; }

    FieldElement conjugate() const { return FieldElement(a_, -b_, d_); }
    /// (a + b√d)(a - b√d)
    Rational norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }

    /// Sign of a real element.
    int sign() const {
        if (!is_real()) throw InvalidInput("sign of a non-real element");
        const int sa = a_ > 0 ? 1 : (a_ < 0 ? -1 : 0);
        const int sb = b_ > 0 ? 1 : (b_ < 0 ? -1 : 0);
        if (sb == 0) return sa;
        if (sa == 0 || sa == sb) return sb;
        return a_ * a_ > Rational(d_) * b_ * b_ ? sa : sb;
    }

    FieldElement operator-() const { return FieldElement(-a_, -b_, d_); }
    friend FieldElement operator+(const FieldElement& x, const FieldElement& y) {
        return FieldElement(x.a_ + y.a_, x.b_ + y.b_, common(x, y));
    }
    friend FieldElement operator-(const FieldElement& x, const FieldElement& y) {
        return FieldElement(x.a_ - y.a_, x.b_ - y.b_, common(x, y));
    }
    friend FieldElement operator*(const FieldElement& x, const FieldElement& y) {
        const long d = common(x, y);
        return FieldElement(x.a_ * y.a_ + Rational(d) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, d);
    }
    friend FieldElement operator/(const FieldElement& x, const FieldElement& y) {
        if (y.is_zero()) throw InvalidInput("division by zero");
        const Rational n = y.norm();
        const FieldElement c = y.conjugate();
        const FieldElement p = x * c;
        return FieldElement(p.a_ / n, p.b_ / n, p.d_);
    }
    FieldElement& operator+=(const FieldElement& y) { return *this = *this + y; }
    FieldElement& operator-=(const FieldElement& y) { return *this = *this - y; }
    FieldElement& operator*=(const FieldElement& y) { return *this = *this * y; }
    FieldElement& operator/=(const FieldElement& y) { return *this = *this / y; }

    friend bool operator==(const FieldElement& x, const FieldElement& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
    }

    FieldElement pow(int k) const {
        FieldElement r(1), base = *this;
        if (k < 0) {
            base = FieldElement(1) / base;
            k = -k;
        }
        for (; k > 0; k >>= 1) {
            if (k & 1) r *= base;
            base *= base;
        }
        return r;
    }

    template <class T = double>
    std::complex<T> to_complex() const {
        const T a = static_cast<T>(a_), b = static_cast<T>(b_);
        if (b_ == 0) return {a, T(0)};
        using std::sqrt;
        const T r = sqrt(static_cast<T>(d_ < 0 ? -d_ : d_));
        return d_ > 0 ? std::complex<T>(a + b * r, T(0)) : std::complex<T>(a, b * r);
    }
    template <class T = double>
    T to_real() const {
        if (!is_real()) throw InvalidInput("element is not real");
        return to_complex<T>().real();
    }

    /// "p/q", "p/q*sqrt(d)" or "p/q + r/s*sqrt(d)".
    std::string to_string() const {
        if (b_ == 0) return detail::rational_str(a_);
        const std::string root = "sqrt(" + std::to_string(d_) + ")";
        std::string irr;
        if (b_ == 1) irr = root;
        else if (b_ == -1) irr = "-" + root;
        else irr = detail::rational_str(b_) + "*" + root;
        if (a_ == 0) return irr;
        if (b_ < 0) return detail::rational_str(a_) + " - " + (b_ == -1 ? root : detail::rational_str(-b_) + "*" + root);
        return detail::rational_str(a_) + " + " + irr;
    }

private:
    static long common(const FieldElement& x, const FieldElement& y) {
        if (x.b_ == 0) return y.d_;
        if (y.b_ == 0 || x.d_ == y.d_) return x.d_;
        throw UnsupportedFieldExtension("elements of Q(sqrt(" + std::to_string(x.d_) + ")) and Q(sqrt(" +
                                        std::to_string(y.d_) + ")) cannot be combined");
    }
    void normalize() {
        if (b_ == 0) d_ = 0;
    }

    Rational a_, b_;
    long d_ = 0;
};

/// Dense univariate polynomial, coefficient k of u^k.
class FieldPolynomial {
public:
    FieldPolynomial() = default;
    explicit FieldPolynomial(std::vector<FieldElement> c) : c_(std::move(c)) { trim(); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<FieldElement>& coefficients() const { return c_; }
    FieldElement coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : FieldElement(); }
    bool is_rational() const {
        return std::all_of(c_.begin(), c_.end(), [](const FieldElement& e) { return e.is_rational(); });
    }

    std::optional<int> valuation() const {
        for (std::size_t k = 0; k < c_.size(); ++k)
            if (!c_[k].is_zero()) return static_cast<int>(k);
        return std::nullopt;
    }

    FieldElement operator()(const FieldElement& u) const {
        FieldElement r;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * u + *it;
        return r;
    }

    FieldPolynomial derivative() const {
        std::vector<FieldElement> d;
        for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * FieldElement(static_cast<long>(k)));
        return FieldPolynomial(std::move(d));
    }

    FieldPolynomial monic() const {
        if (c_.empty()) return *this;
        std::vector<FieldElement> c = c_;
        const FieldElement lead = c.back();
        for (auto& e : c) e /= lead;
        return FieldPolynomial(std::move(c));
    }

    /// {quotient, remainder}
    std::pair<FieldPolynomial, FieldPolynomial> divmod(const FieldPolynomial& b) const {
        if (b.is_zero()) throw InvalidInput("polynomial division by zero");
        std::vector<FieldElement> r = c_, q(std::max(0, degree() - b.degree() + 1));
        for (int k = degree() - b.degree(); k >= 0; --k) {
            const FieldElement f = r[k + b.degree()] / b.c_.back();
            q[k] = f;
            for (int j = 0; j <= b.degree(); ++j) r[k + j] -= f * b.c_[j];
        }
        return {FieldPolynomial(std::move(q)), FieldPolynomial(std::move(r))};
    }

    static FieldPolynomial gcd(FieldPolynomial a, FieldPolynomial b) {
        while (!b.is_zero()) {
            auto r = a.divmod(b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    /// p(u) with u replaced by u^k removed: only valid when every exponent is a multiple of k.
    std::optional<FieldPolynomial> deflate(int k) const {
        std::vector<FieldElement> c;
        for (int j = 0; j <= degree(); ++j) {
            if (j % k == 0) c.push_back(c_[j]);
            else if (!c_[j].is_zero()) return std::nullopt;
        }
        return FieldPolynomial(std::move(c));
    }

    friend bool operator==(const FieldPolynomial& a, const FieldPolynomial& b) { return a.c_ == b.c_; }

    std::string to_string(char var = 'u') const {
        if (c_.empty()) return "0";
        std::string s;
        for (int k = degree(); k >= 0; --k) {
            const auto& e = c_[k];
            if (e.is_zero()) continue;
            std::string coef = e.to_string();
            bool neg = false;
            if (e.is_rational() && e.a() < 0) {
                neg = true;
                coef = (-e).to_string();
            }
            if (!e.is_rational()) coef = "(" + coef + ")";
            if (s.empty()) s += neg ? "-" : "";
            else s += neg ? " - " : " + ";
            const bool unit = coef == "1";
            if (!unit || k == 0) s += coef;
            if (k > 0) {
                if (!unit) s += '*';
                s += var;
                if (k > 1) s += '^' + std::to_string(k);
            }
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<FieldElement> c_;
};

namespace detail {

inline std::vector<BigInt> positive_divisors(BigInt n) {
    if (n < 0) n = -n;
    if (n > BigInt(1000000000000LL)) throw UnsupportedFieldExtension("coefficient too large for rational root search");
    std::vector<BigInt> small, large;
    for (BigInt d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

/// Rational roots of a squarefree polynomial with rational coefficients; each root is divided out of p.
inline std::vector<Rational> extract_rational_roots(FieldPolynomial& p) {
    std::vector<Rational> roots;
    if (p.degree() < 1) return roots;
    BigInt l = 1;
    for (const auto& e : p.coefficients()) l = boost::multiprecision::lcm(l, denominator(e.a()));
    std::vector<BigInt> ic;
    for (const auto& e : p.coefficients()) ic.push_back(numerator(e.a() * Rational(l)));
    if (ic.front() == 0) throw InvalidInput("zero root must be stripped first");
    for (const auto& num : positive_divisors(ic.front()))
        for (const auto& den : positive_divisors(ic.back()))
            for (int s : {1, -1}) {
                const Rational r(s * num, den);
                if (std::find(roots.begin(), roots.end(), r) != roots.end()) continue;
                if (p(FieldElement(r)).is_zero()) roots.push_back(r);
            }
    for (const auto& r : roots) p = p.divmod(FieldPolynomial({FieldElement(-r), FieldElement(1)})).first;
    return roots;
}

inline std::optional<FieldElement> field_sqrt(const FieldElement& c) {
    if (c.is_rational()) {
        if (auto r = rational_sqrt(c.a())) return FieldElement(*r);
        return std::nullopt;
    }
    // (x + y√d)^2 = c.a + c.b√d with x^2 = z a root of z^2 - a z + d b^2 / 4
    auto disc = rational_sqrt(c.a() * c.a() - Rational(c.d()) * c.b() * c.b());
    if (!disc) return std::nullopt;
    for (int s : {1, -1}) {
        const Rational z = (c.a() + s * *disc) / 2;
        auto x = rational_sqrt(z);
        if (!x || *x == 0) continue;
        const FieldElement cand(*x, c.b() / (2 * *x), c.d());
        if (cand * cand == c) return cand;
    }
    // purely irrational root: (y√d)^2 = d y^2 is rational, so c.b == 0 case handled above
    return std::nullopt;
}

inline std::vector<FieldElement> quadratic_roots(const FieldPolynomial& q) {
    const auto a = q.coeff(2), b = q.coeff(1), c = q.coeff(0);
    const FieldElement disc = b * b - FieldElement(4) * a * c;
    std::optional<FieldElement> r;
    if (disc.is_rational()) r = FieldElement::sqrt_of(disc.a());
    else r = field_sqrt(disc);
    if (!r) throw UnsupportedFieldExtension("quadratic factor " + q.to_string() + " needs a nested radical");
    const FieldElement two_a = FieldElement(2) * a;
    return {(-b + *r) / two_a, (-b - *r) / two_a};
}

/// Distinct real roots of a rational polynomial (Sturm).
inline int real_root_count(const FieldPolynomial& p) {
    if (p.degree() < 1) return 0;
    std::vector<FieldPolynomial> seq{p, p.derivative()};
    while (seq.back().degree() > 0) {
        auto r = seq[seq.size() - 2].divmod(seq.back()).second;
        if (r.is_zero()) break;
        auto c = r.coefficients();
        for (auto& e : c) e = -e;
        seq.emplace_back(std::move(c));
    }
    auto changes = [&](bool at_plus) {
        int count = 0, last = 0;
        for (const auto& q : seq) {
            int s = q.coeff(q.degree()).a() > 0 ? 1 : -1;
            if (!at_plus && q.degree() % 2) s = -s;
            if (last != 0 && s != last) ++count;
            last = s;
        }
        return count;
    };
    return changes(false) - changes(true);
}

inline std::vector<FieldElement> rational_case_roots(FieldPolynomial p, bool real_only) {
    std::vector<FieldElement> out;
    for (auto& r : extract_rational_roots(p)) out.emplace_back(r);
    if (p.degree() <= 0) return out;
    if (real_only && real_root_count(p) == 0) return out;
    if (p.degree() == 2) {
        for (auto& r : quadratic_roots(p)) out.push_back(r);
        return out;
    }
    if (auto q = p.deflate(2)) {
        for (const auto& c : rational_case_roots(*q, false)) {
            if (!c.is_rational()) throw UnsupportedFieldExtension("factor " + p.to_string() + " needs a nested radical");
            const FieldElement s = FieldElement::sqrt_of(c.a());
            out.push_back(s);
            out.push_back(-s);
        }
        return out;
    }
    throw UnsupportedFieldExtension("irreducible factor of degree " + std::to_string(p.degree()) + ": " + p.to_string());
}

} // namespace detail

/// Distinct nonzero roots in Q or a quadratic extension. With real_only, a rational factor
/// without real roots is dropped instead of rejected.
/// Order: rational roots by decreasing value, then irrational ones with positive sqrt coefficient first.
inline std::vector<FieldElement> nonzero_roots(const FieldPolynomial& p, bool real_only = false) {
    if (p.is_zero()) throw ZeroPolynomial("roots of the zero polynomial");
    const int v = *p.valuation();
    std::vector<FieldElement> c(p.coefficients().begin() + v, p.coefficients().end());
    FieldPolynomial q(std::move(c));
    if (q.degree() <= 0) return {};
    const FieldPolynomial g = FieldPolynomial::gcd(q, q.derivative());
    FieldPolynomial s = q.divmod(g).first.monic();
    std::vector<FieldElement> roots;
    if (s.degree() == 1) roots.push_back(-s.coeff(0));
    else if (s.is_rational()) roots = detail::rational_case_roots(s, real_only);
    else if (s.degree() == 2) roots = detail::quadratic_roots(s);
    else throw UnsupportedFieldExtension("factor of degree " + std::to_string(s.degree()) + " over a quadratic field");
    std::sort(roots.begin(), roots.end(), [](const FieldElement& x, const FieldElement& y) {
        if (x.is_rational() != y.is_rational()) return x.is_rational();
        if (x.is_rational()) return x.a() > y.a();
        if (x.d() != y.d()) return x.d() > y.d();
        if (x.b() != y.b()) return x.b() > y.b();
        return x.a() > y.a();
    });
    return roots;
}

} // namespace promenade
