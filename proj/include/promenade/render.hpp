#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <set>
#include <string>

#include "promenade/chord_diagrams.hpp"
#include "promenade/puiseux.hpp"

namespace promenade {

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", std::abs(v) < 5e-4 ? 0.0 : v);
    return buf;
}

inline std::string svg_open(int w, int h) {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           std::to_string(w) + "\" height=\"" + std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) + " " +
           std::to_string(h) + "\">\n";
}

} // namespace detail

/// Unit circle with 2n evenly spaced points (point k at angle 2 pi k / 2n, counterclockwise from
/// the right) and straight chords. Highlighted chords (first-occurrence indices) are drawn red and thick.
inline std::string render_chord_diagram_svg(const ChordDiagram& d, const std::set<int>& highlight = {}, int size = 400) {
    using detail::fmt;
    const double c = size / 2.0, r = size * 0.42;
    const int m = d.points();
    auto px = [&](int k) { return c + r * std::cos(2 * M_PI * k / m); };
    auto py = [&](int k) { return c - r * std::sin(2 * M_PI * k / m); };
    std::string s = detail::svg_open(size, size);
    s += "<circle cx=\"" + fmt(c) + "\" cy=\"" + fmt(c) + "\" r=\"" + fmt(r) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    const auto letters = d.letters();
    for (int k = 0; k < m; ++k) {
        const int j = d.partner(k);
        if (j < k) continue;
        const bool hi = highlight.count(letters[k]) > 0;
        s += "<line class=\"" + std::string(hi ? "chord witness" : "chord") + "\" x1=\"" + fmt(px(k)) + "\" y1=\"" +
             fmt(py(k)) + "\" x2=\"" + fmt(px(j)) + "\" y2=\"" + fmt(py(j)) + "\" stroke=\"" +
             (hi ? "#c0392b" : "#2c3e50") + "\" stroke-width=\"" + (hi ? "3" : "1.5") + "\"/>\n";
    }
    for (int k = 0; k < m; ++k)
        s += "<circle cx=\"" + fmt(px(k)) + "\" cy=\"" + fmt(py(k)) + "\" r=\"3\" fill=\"black\"/>\n";
    return s + "</svg>\n";
}

/// Lattice plot of the support (i right, j up), polygon edges, and the chosen segment in red with
/// its equation.
inline std::string render_newton_polygon_svg(const NewtonPolygon& poly, std::optional<std::size_t> chosen = std::nullopt,
                                             int cell = 40) {
    using detail::fmt;
    int imax = 1, jmax = 1;
    for (const auto& [i, j] : poly.support) imax = std::max(imax, i), jmax = std::max(jmax, j);
    const int margin = cell, w = (imax + 1) * cell + 2 * margin, h = (jmax + 1) * cell + 2 * margin;
    auto X = [&](int i) { return margin + i * cell; };
    auto Y = [&](int j) { return h - margin - j * cell; };
    std::string s = detail::svg_open(w, h);
    for (int i = 0; i <= imax + 1; ++i)
        for (int j = 0; j <= jmax + 1; ++j)
            s += "<circle cx=\"" + std::to_string(X(i)) + "\" cy=\"" + std::to_string(Y(j)) + "\" r=\"1.5\" fill=\"#bbbbbb\"/>\n";
    s += "<line x1=\"" + std::to_string(X(0)) + "\" y1=\"" + std::to_string(Y(0)) + "\" x2=\"" + std::to_string(X(imax + 1)) +
         "\" y2=\"" + std::to_string(Y(0)) + "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + std::to_string(X(0)) + "\" y1=\"" + std::to_string(Y(0)) + "\" x2=\"" + std::to_string(X(0)) +
         "\" y2=\"" + std::to_string(Y(jmax + 1)) + "\" stroke=\"black\"/>\n";
    for (std::size_t k = 0; k < poly.segments.size(); ++k) {
        const auto& seg = poly.segments[k];
        const auto& a = seg.points.front();
        const auto& b = seg.points.back();
        const bool hi = chosen && *chosen == k;
        s += "<line class=\"" + std::string(hi ? "segment chosen" : "segment") + "\" x1=\"" + std::to_string(X(a.first)) +
             "\" y1=\"" + std::to_string(Y(a.second)) + "\" x2=\"" + std::to_string(X(b.first)) + "\" y2=\"" +
             std::to_string(Y(b.second)) + "\" stroke=\"" + (hi ? "#c0392b" : "#2c3e50") + "\" stroke-width=\"" +
             (hi ? "3" : "2") + "\"/>\n";
        if (hi) {
            const std::string eq = std::to_string(seg.alpha) + "i + " + std::to_string(seg.beta) + "j = " + std::to_string(seg.gamma);
            s += "<text x=\"" + fmt((X(a.first) + X(b.first)) / 2.0 + 6) + "\" y=\"" + fmt((Y(a.second) + Y(b.second)) / 2.0 - 6) +
                 "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#c0392b\">" + eq + "</text>\n";
        }
    }
    for (const auto& [i, j] : poly.support)
        s += "<circle class=\"support\" cx=\"" + std::to_string(X(i)) + "\" cy=\"" + std::to_string(Y(j)) +
             "\" r=\"5\" fill=\"black\"/>\n";
    return s + "</svg>\n";
}

} // namespace promenade
