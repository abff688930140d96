#include "speclab/contour.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace speclab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Frame {
    std::vector<double> c0, c1;
    bool wrap0 = false, wrap1 = false;
    double lo0 = 0.0, hi0 = 0.0, lo1 = 0.0, hi1 = 0.0;
    // SVG draws axis `horizontal` left to right.
    int horizontal = 0;
    std::string name0, name1;
};

Frame frameOf(const ScalarField2D& f) {
    Frame fr;
    const std::size_t r = f.rows(), c = f.cols();
    fr.c0.resize(r);
    fr.c1.resize(c);
    if (const auto* t = std::get_if<TorusPeriodic>(&f.topology)) {
        for (std::size_t i = 0; i < r; ++i) fr.c0[i] = t->x(i);
        for (std::size_t j = 0; j < c; ++j) fr.c1[j] = t->y(j);
        fr.wrap0 = fr.wrap1 = true;
        fr.hi0 = fr.hi1 = kTwoPi;
        fr.name0 = "x";
        fr.name1 = "y";
    } else if (const auto* s = std::get_if<SphereLatLong>(&f.topology)) {
        for (std::size_t i = 0; i < r; ++i) fr.c0[i] = s->theta(i);
        for (std::size_t j = 0; j < c; ++j) fr.c1[j] = s->phi(j);
        fr.wrap1 = true;
        fr.lo0 = s->theta0;
        fr.hi0 = s->theta1;
        fr.hi1 = kTwoPi;
        fr.horizontal = 1;
        fr.name0 = "theta";
        fr.name1 = "phi";
    } else {
        const auto& p = std::get<PlanarMasked>(f.topology);
        for (std::size_t i = 0; i < r; ++i) fr.c0[i] = p.x(i);
        for (std::size_t j = 0; j < c; ++j) fr.c1[j] = p.y(j);
        fr.lo0 = p.x0;
        fr.hi0 = p.x1;
        fr.lo1 = p.y0;
        fr.hi1 = p.y1;
        fr.name0 = "x";
        fr.name1 = "y";
    }
    return fr;
}

double reduce(double v, bool wrap, double lo, double hi) {
    if (!wrap) return v;
    const double p = hi - lo;
    v = lo + std::fmod(v - lo, p);
    if (v < lo) v += p;
    if (v >= hi) v -= p;
    return v;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace

std::size_t ContourSet::closedCount() const {
    return static_cast<std::size_t>(std::count_if(lines.begin(), lines.end(), [](const ContourLine& l) { return l.closed; }));
}

std::size_t ContourSet::vertexCount() const {
    std::size_t n = 0;
    for (const auto& l : lines) n += l.points.size();
    return n;
}

ContourSet extractContours(const ScalarField2D& f, double level) {
    requireFinite(f);
    const std::size_t R = f.rows(), C = f.cols();
    const Frame fr = frameOf(f);
    const auto* planar = std::get_if<PlanarMasked>(&f.topology);
    auto active = [&](std::size_t i, std::size_t j) { return !planar || planar->inside(i, j); };

    ContourSet out;
    out.level = level;
    out.minValue = std::numeric_limits<double>::infinity();
    out.maxValue = -out.minValue;
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j)
            if (active(i, j)) {
                out.minValue = std::min(out.minValue, f.at(i, j));
                out.maxValue = std::max(out.maxValue, f.at(i, j));
            }
    if (!(out.minValue <= out.maxValue)) return out;
    out.outOfRange = level < out.minValue || level > out.maxValue;
    if (out.outOfRange) return out;

    // Edge ids: horizontal (i,j)-(i,j+1) is i*C + j, vertical (i,j)-(i+1,j)
    // is R*C + i*C + j, with indices taken modulo the wrapped sizes.
    const std::size_t nEdges = 2 * R * C;
    auto above = [&](std::size_t i, std::size_t j) { return f.at(i, j) > level; };
    auto crossingPoint = [&](std::size_t e) {
        const bool vertical = e >= R * C;
        const std::size_t k = vertical ? e - R * C : e;
        const std::size_t i = k / C, j = k % C;
        const std::size_t i2 = vertical ? (i + 1) % R : i;
        const std::size_t j2 = vertical ? j : (j + 1) % C;
        const double a = f.at(i, j), b = f.at(i2, j2);
        const double t = (level - a) / (b - a);
        std::array<double, 2> p{fr.c0[i], fr.c1[j]};
        if (vertical) {
            const double next = i + 1 < R ? fr.c0[i + 1] : fr.c0[0] + (fr.hi0 - fr.lo0);
            p[0] = reduce(p[0] + t * (next - p[0]), fr.wrap0, fr.lo0, fr.hi0);
        } else {
            const double next = j + 1 < C ? fr.c1[j + 1] : fr.c1[0] + (fr.hi1 - fr.lo1);
            p[1] = reduce(p[1] + t * (next - p[1]), fr.wrap1, fr.lo1, fr.hi1);
        }
        return p;
    };

    // Segments as edge pairs; each edge touches at most two segments.
    std::vector<std::array<std::size_t, 2>> segs;
    const std::size_t rowsSq = fr.wrap0 ? R : R - 1;
    const std::size_t colsSq = fr.wrap1 ? C : C - 1;
    for (std::size_t i = 0; i < rowsSq; ++i) {
        const std::size_t i1 = (i + 1) % R;
        for (std::size_t j = 0; j < colsSq; ++j) {
            const std::size_t j1 = (j + 1) % C;
            if (!active(i, j) || !active(i, j1) || !active(i1, j1) || !active(i1, j)) continue;
            const bool sa = above(i, j), sb = above(i, j1), sc = above(i1, j1), sd = above(i1, j);
            const std::size_t e0 = i * C + j;            // a-b
            const std::size_t e1 = R * C + i * C + j1;   // b-c
            const std::size_t e2 = i1 * C + j;           // d-c
            const std::size_t e3 = R * C + i * C + j;    // a-d
            std::vector<std::size_t> cut;
            if (sa != sb) cut.push_back(e0);
            if (sb != sc) cut.push_back(e1);
            if (sd != sc) cut.push_back(e2);
            if (sa != sd) cut.push_back(e3);
            if (cut.size() == 2) {
                segs.push_back({cut[0], cut[1]});
            } else if (cut.size() == 4) {
                const double centre = 0.25 * (f.at(i, j) + f.at(i, j1) + f.at(i1, j1) + f.at(i1, j));
                if ((centre > level) == sa) {
                    segs.push_back({e0, e1});
                    segs.push_back({e2, e3});
                } else {
                    segs.push_back({e0, e3});
                    segs.push_back({e1, e2});
                }
            }
        }
    }

    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<std::array<std::size_t, 2>> edgeSegs(nEdges, {none, none});
    for (std::size_t s = 0; s < segs.size(); ++s)
        for (std::size_t e : segs[s]) (edgeSegs[e][0] == none ? edgeSegs[e][0] : edgeSegs[e][1]) = s;
    auto otherSeg = [&](std::size_t e, std::size_t s) { return edgeSegs[e][0] == s ? edgeSegs[e][1] : edgeSegs[e][0]; };
    auto otherEdge = [&](std::size_t s, std::size_t e) { return segs[s][0] == e ? segs[s][1] : segs[s][0]; };

    std::vector<char> used(segs.size(), 0);
    auto walk = [&](std::size_t s0, std::size_t startEdge) {
        ContourLine line;
        std::size_t e = startEdge, s = s0;
        line.points.push_back(crossingPoint(e));
        while (true) {
            used[s] = 1;
            e = otherEdge(s, e);
            if (e == startEdge) {
                line.closed = true;
                break;
            }
            line.points.push_back(crossingPoint(e));
            const std::size_t next = otherSeg(e, s);
            if (next == none || used[next]) break;
            s = next;
        }
        if (line.closed) line.points.push_back(line.points.front());
        out.lines.push_back(std::move(line));
    };
    // Open curves start at an edge with a single segment.
    for (std::size_t s = 0; s < segs.size(); ++s) {
        if (used[s]) continue;
        for (std::size_t e : segs[s])
            if (!used[s] && edgeSegs[e][1] == none) walk(s, e);
    }
    for (std::size_t s = 0; s < segs.size(); ++s)
        if (!used[s]) walk(s, segs[s][0]);
    return out;
}

std::string renderContourSVG(const ScalarField2D& f, double level, const std::string& title) {
    return renderContourSVG(extractContours(f, level), f, title);
}

std::string renderContourSVG(const ContourSet& c, const ScalarField2D& f, const std::string& title) {
    const Frame fr = frameOf(f);
    const double w = 640.0, margin = 40.0;
    const int h0 = fr.horizontal, v0 = 1 - fr.horizontal;
    const double hlo = h0 == 0 ? fr.lo0 : fr.lo1, hhi = h0 == 0 ? fr.hi0 : fr.hi1;
    const double vlo = v0 == 0 ? fr.lo0 : fr.lo1, vhi = v0 == 0 ? fr.hi0 : fr.hi1;
    const bool hwrap = h0 == 0 ? fr.wrap0 : fr.wrap1, vwrap = v0 == 0 ? fr.wrap0 : fr.wrap1;
    const double scale = w / (hhi - hlo);
    const double ht = (vhi - vlo) * scale;
    auto X = [&](double v) { return margin + (v - hlo) * scale; };
    auto Y = [&](double v) { return margin + (vhi - v) * scale; };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w + 2 * margin) + "\" height=\"" +
         num(ht + 2 * margin + 20) + "\">\n";
    s += "<rect x=\"" + num(margin) + "\" y=\"" + num(margin) + "\" width=\"" + num(w) + "\" height=\"" + num(ht) +
         "\" fill=\"none\" stroke=\"#888\"/>\n";
    std::string caption = title.empty() ? f.label : title;
    if (!caption.empty()) caption += "  ";
    caption += "level " + num(c.level) + ", " + std::to_string(c.lines.size()) + " curves (" +
               std::to_string(c.closedCount()) + " closed)";
    s += "<text x=\"" + num(margin) + "\" y=\"24\" font-family=\"monospace\" font-size=\"12\">" + caption +
         "</text>\n";
    s += "<text x=\"" + num(margin) + "\" y=\"" + num(ht + 2 * margin + 12) +
         "\" font-family=\"monospace\" font-size=\"11\">horizontal " + (h0 == 0 ? fr.name0 : fr.name1) +
         ", vertical " + (v0 == 0 ? fr.name0 : fr.name1) + "</text>\n";
    if (c.outOfRange)
        s += "<text class=\"warning\" x=\"" + num(margin + 8) + "\" y=\"" + num(margin + 20) +
             "\" font-family=\"monospace\" font-size=\"12\" fill=\"#b00\">warning: level outside field range [" +
             num(c.minValue) + ", " + num(c.maxValue) + "]</text>\n";
    for (const auto& line : c.lines) {
        std::string d;
        bool pen = false;
        for (std::size_t k = 0; k < line.points.size(); ++k) {
            const double hv = line.points[k][h0], vv = line.points[k][v0];
            if (k > 0) {
                // A jump of more than half a period is a seam crossing.
                const double dh = std::abs(hv - line.points[k - 1][h0]);
                const double dv = std::abs(vv - line.points[k - 1][v0]);
                if ((hwrap && dh > 0.5 * (hhi - hlo)) || (vwrap && dv > 0.5 * (vhi - vlo))) pen = false;
            }
            d += (pen ? " L" : (d.empty() ? "M" : " M")) + num(X(hv)) + " " + num(Y(vv));
            pen = true;
        }
        s += "<path d=\"" + d + "\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace speclab
