#pragma once

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "trace.hpp"

namespace dc {

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace detail

// Quadrilaterals side by side, each with its side labels; sides carrying the
// same label are glued in the surface.
inline std::string render_svg(const Quadrangulation& q, double unit = 60.0) {
    const double pad = 30.0, gap = 40.0;
    struct Placed {
        std::array<double, 8> xy;
        double lo, hi, top, bottom;
    };
    std::vector<Placed> placed;
    double max_up = 0, max_down = 0;
    for (int i = 1; i <= q.k(); ++i) {
        auto c = chart_corners(q, {i, {}});
        Placed p{};
        p.lo = p.hi = p.top = p.bottom = 0;
        for (int j = 0; j < 4; ++j) {
            p.xy[2 * j] = c[j].x.to_double() * unit;
            p.xy[2 * j + 1] = c[j].y.to_double() * unit;
            p.lo = std::min(p.lo, p.xy[2 * j]);
            p.hi = std::max(p.hi, p.xy[2 * j]);
            p.top = std::max(p.top, p.xy[2 * j + 1]);
            p.bottom = std::min(p.bottom, p.xy[2 * j + 1]);
        }
        max_up = std::max(max_up, p.top);
        max_down = std::min(max_down, p.bottom);
        placed.push_back(p);
    }
    double cursor = pad;
    std::vector<double> shift;
    for (const Placed& p : placed) {
        shift.push_back(cursor - p.lo);
        cursor += (p.hi - p.lo) + gap;
    }
    const double width = cursor - gap + pad;
    const double height = max_up - max_down + 2 * pad;
    auto X = [&](int i, double x) { return detail::fmt(x + shift[i]); };
    auto Y = [&](double y) { return detail::fmt(pad + max_up - y); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::fmt(width) << "\" height=\""
       << detail::fmt(height) << "\" viewBox=\"0 0 " << detail::fmt(width) << ' ' << detail::fmt(height) << "\">\n";
    os << "<g font-family=\"monospace\" font-size=\"12\">\n";
    for (int i = 0; i < q.k(); ++i) {
        const auto& p = placed[i];
        os << "<polygon class=\"quad\" data-index=\"" << i + 1 << "\" points=\"";
        for (int j = 0; j < 4; ++j) os << (j ? " " : "") << X(i, p.xy[2 * j]) << ',' << Y(p.xy[2 * j + 1]);
        os << "\" fill=\"#eef3fb\" stroke=\"#223\" stroke-width=\"1.5\"/>\n";
        os << "<line class=\"diagonal\" x1=\"" << X(i, p.xy[0]) << "\" y1=\"" << Y(p.xy[1]) << "\" x2=\"" << X(i, p.xy[4])
           << "\" y2=\"" << Y(p.xy[5]) << "\" stroke=\"#889\" stroke-dasharray=\"4 3\"/>\n";
        for (int e = 0; e < 4; ++e) {
            double mx = (p.xy[2 * e] + p.xy[2 * ((e + 1) % 4)]) / 2;
            double my = (p.xy[2 * e + 1] + p.xy[2 * ((e + 1) % 4) + 1]) / 2;
            os << "<text class=\"side\" x=\"" << X(i, mx) << "\" y=\"" << Y(my) << "\" text-anchor=\"middle\">"
               << edge_label(q, i + 1, e).str() << "</text>\n";
        }
        os << "<text class=\"index\" x=\"" << X(i, 0) << "\" y=\"" << Y(0 - 14) << "\" text-anchor=\"middle\">q"
           << i + 1 << "</text>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace dc
