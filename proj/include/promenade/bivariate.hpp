#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "promenade/field.hpp"

namespace promenade {

/// Sparse polynomial sum a_ij x^i y^j; zero coefficients are never stored.
class BivariatePolynomial {
public:
    using Exponent = std::pair<int, int>;  ///< (i, j) for x^i y^j
    using Terms = std::map<Exponent, FieldElement>;

    BivariatePolynomial() = default;
    explicit BivariatePolynomial(Terms t) {
        for (auto& [e, c] : t) add_term(e.first, e.second, c);
    }

    static BivariatePolynomial monomial(int i, int j, FieldElement c = FieldElement(1)) {
        BivariatePolynomial p;
        p.add_term(i, j, std::move(c));
        return p;
    }
    static BivariatePolynomial x() { return monomial(1, 0); }
    static BivariatePolynomial y() { return monomial(0, 1); }

    /// "y^6 - 5*x*y^5 + 3/2*x^2": integer or rational coefficients, '*' optional between factors.
    static BivariatePolynomial parse(std::string_view text);

    void add_term(int i, int j, const FieldElement& c) {
        if (i < 0 || j < 0) throw InvalidInput("negative exponent");
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace({i, j}, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    FieldElement coeff(int i, int j) const {
        auto it = terms_.find({i, j});
        return it == terms_.end() ? FieldElement() : it->second;
    }
    bool is_rational() const {
        for (const auto& [e, c] : terms_)
            if (!c.is_rational()) return false;
        return true;
    }

    int x_valuation() const {
        int v = -1;
        for (const auto& [e, c] : terms_) v = v < 0 ? e.first : std::min(v, e.first);
        return v;
    }
    int y_valuation() const {
        int v = -1;
        for (const auto& [e, c] : terms_) v = v < 0 ? e.second : std::min(v, e.second);
        return v;
    }
    /// Smallest i + j.
    int order() const {
        int v = -1;
        for (const auto& [e, c] : terms_) v = v < 0 ? e.first + e.second : std::min(v, e.first + e.second);
        return v;
    }
    int y_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e.second);
        return d;
    }

    BivariatePolynomial divided_by_monomial(int a, int b) const {
        BivariatePolynomial r;
        for (const auto& [e, c] : terms_) r.add_term(e.first - a, e.second - b, c);
        return r;
    }
    /// F(-x, y)
    BivariatePolynomial mirrored_x() const {
        BivariatePolynomial r;
        for (const auto& [e, c] : terms_) r.add_term(e.first, e.second, e.first % 2 ? -c : c);
        return r;
    }
    /// F(y, x)
    BivariatePolynomial swapped() const {
        BivariatePolynomial r;
        for (const auto& [e, c] : terms_) r.add_term(e.second, e.first, c);
        return r;
    }
    BivariatePolynomial derivative_y() const {
        BivariatePolynomial r;
        for (const auto& [e, c] : terms_)
            if (e.second > 0) r.add_term(e.first, e.second - 1, c * FieldElement(e.second));
        return r;
    }
    /// Coefficients of F(0, y).
    FieldPolynomial at_x_zero() const {
        std::vector<FieldElement> c(y_degree() + 1);
        for (const auto& [e, v] : terms_)
            if (e.first == 0) c[e.second] = v;
        return FieldPolynomial(std::move(c));
    }

    friend BivariatePolynomial operator+(BivariatePolynomial a, const BivariatePolynomial& b) {
        for (const auto& [e, c] : b.terms_) a.add_term(e.first, e.second, c);
        return a;
    }
    friend BivariatePolynomial operator-(BivariatePolynomial a, const BivariatePolynomial& b) {
        for (const auto& [e, c] : b.terms_) a.add_term(e.first, e.second, -c);
        return a;
    }
    friend BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b) {
        BivariatePolynomial r;
        for (const auto& [e1, c1] : a.terms_)
            for (const auto& [e2, c2] : b.terms_) r.add_term(e1.first + e2.first, e1.second + e2.second, c1 * c2);
        return r;
    }
    friend BivariatePolynomial operator*(const FieldElement& s, const BivariatePolynomial& b) {
        BivariatePolynomial r;
        for (const auto& [e, c] : b.terms_) r.add_term(e.first, e.second, s * c);
        return r;
    }
    BivariatePolynomial pow(int k) const {
        BivariatePolynomial r = monomial(0, 0);
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }
    BivariatePolynomial operator-() const { return FieldElement(-1) * *this; }
    friend bool operator==(const BivariatePolynomial& a, const BivariatePolynomial& b) { return a.terms_ == b.terms_; }

    /// Real evaluation; coefficients must be real.
    template <class T>
    T evaluate(const T& xv, const T& yv) const {
        T s = 0;
        for (const auto& [e, c] : terms_) {
            T m = c.template to_real<T>();
            for (int k = 0; k < e.first; ++k) m *= xv;
            for (int k = 0; k < e.second; ++k) m *= yv;
            s += m;
        }
        return s;
    }

    /// Terms by decreasing y-degree, then increasing x-degree.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::vector<std::pair<Exponent, FieldElement>> order(terms_.begin(), terms_.end());
        std::stable_sort(order.begin(), order.end(), [](const auto& l, const auto& r) {
            if (l.first.second != r.first.second) return l.first.second > r.first.second;
            return l.first.first < r.first.first;
        });
        std::string s;
        for (const auto& [e, c] : order) {
            bool neg = c.is_rational() && c.a() < 0;
            std::string coef = neg ? (-c).to_string() : c.to_string();
            if (!c.is_rational()) coef = "(" + coef + ")";
            if (s.empty()) s += neg ? "-" : "";
            else s += neg ? " - " : " + ";
            std::string mono;
            auto var = [&](char v, int k) {
                if (k == 0) return;
                if (!mono.empty()) mono += '*';
                mono += v;
                if (k > 1) mono += '^' + std::to_string(k);
            };
            var('x', e.first);
            var('y', e.second);
            if (mono.empty()) s += coef;
            else if (coef == "1") s += mono;
            else s += coef + "*" + mono;
        }
        return s;
    }

private:
    Terms terms_;
};

namespace detail {

class PolyParser {
public:
    explicit PolyParser(std::string_view s) : s_(s) {}

    BivariatePolynomial run() {
        BivariatePolynomial out;
        skip();
        if (pos_ == s_.size()) throw InvalidInput("empty polynomial");
        bool first = true;
        while (pos_ < s_.size()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            term(out, sign);
            first = false;
            skip();
        }
        return out;
    }

private:
    void term(BivariatePolynomial& out, int sign) {
        Rational coef(sign);
        int i = 0, j = 0;
        bool any = false;
        while (true) {
            skip();
            const char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coef *= number();
            } else if (c == 'x' || c == 'y') {
                ++pos_;
                const int e = exponent();
                (c == 'x' ? i : j) += e;
            } else {
                fail("expected a number, x or y");
            }
            any = true;
            skip();
            if (peek() == '*') {
                ++pos_;
                continue;
            }
            if (peek() == 'x' || peek() == 'y') continue;
            break;
        }
        if (any) out.add_term(i, j, FieldElement(coef));
    }

    Rational number() {
        BigInt n = digits();
        if (peek() == '/') {
            ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a denominator");
            BigInt d = digits();
            if (d == 0) fail("zero denominator");
            return Rational(n, d);
        }
        return Rational(n);
    }
    BigInt digits() {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return BigInt(std::string(s_.substr(start, pos_ - start)));
    }
    int exponent() {
        skip();
        if (peek() != '^') return 1;
        ++pos_;
        skip();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an exponent");
        const BigInt e = digits();
        if (e > 100000) fail("exponent too large");
        return e.convert_to<int>();
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw InvalidInput(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline BivariatePolynomial BivariatePolynomial::parse(std::string_view text) { return detail::PolyParser(text).run(); }

} // namespace promenade
