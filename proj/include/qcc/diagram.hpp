#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcc/exponent_calculus.hpp"

namespace qcc {

// Diagram elements live in the (1/p, s) plane. Coordinates are kept exact so
// emitted endpoints are the calculus outputs themselves, not re-derived
// floats; rendering converts at the last moment.
struct DiagramPoint {
    Scalar x;
    Scalar y;
    std::string label;
};

struct DiagramArrow {
    Scalar x1, y1, x2, y2;
    std::string label;
};

struct Diagram {
    int n = 2;
    Regime regime = Regime::critical;
    Scalar d;     // horizontal distance to the critical line
    Scalar gap;   // 1/q - 1/p
    Scalar c;     // Jacobian power used (gap * c == d)
    std::vector<DiagramPoint> points;
    std::vector<DiagramArrow> arrows;
};

// The action arrow (1/p, s) -> (1/q, s); nullopt when the theorem rejects.
inline std::optional<Diagram> composition_diagram(const Scalar& s, const Exponent& p,
                                                  const QCRegularity& reg) {
    const auto geo = gap_geometry(s, p, reg);
    if (!geo) return std::nullopt;
    Diagram dia;
    dia.n = reg.n;
    dia.regime = geo->regime;
    dia.d = geo->d;
    dia.gap = geo->gap;
    dia.c = geo->c;
    const Scalar u = p.reciprocal();
    const Scalar v = u + geo->gap;
    dia.points.push_back({u, s, "source"});
    dia.points.push_back({v, s, "target"});
    dia.arrows.push_back({u, s, v, s, "composition"});
    return dia;
}

// The interpolation layout: endpoint arrows at smoothness levels 0 and 1
// framing the fractional arrow at level s.
inline std::optional<Diagram> interpolation_diagram(const Scalar& s, const Exponent& p,
                                                    const QCRegularity& reg,
                                                    std::optional<double> eps0 = std::nullopt) {
    auto base = composition_diagram(s, p, reg);
    if (!base) return std::nullopt;
    const auto q = target_exponent(s, p, reg);
    const auto idx = interpolation_indices(s, p, *q, reg, base->regime, eps0);
    base->points.push_back({idx.p0().reciprocal(), Scalar(0), "p0"});
    base->points.push_back({idx.q0().reciprocal(), Scalar(0), "q0"});
    base->points.push_back({idx.p1().reciprocal(), Scalar(1), "p1"});
    base->points.push_back({idx.q1().reciprocal(), Scalar(1), "q1"});
    base->arrows.push_back({idx.p0().reciprocal(), Scalar(0), idx.q0().reciprocal(), Scalar(0),
                            "lebesgue-level"});
    base->arrows.push_back({idx.p1().reciprocal(), Scalar(1), idx.q1().reciprocal(), Scalar(1),
                            "sobolev-level"});
    return base;
}

// ---------------------------------------------------------------------------
// Rendering. The unit square (0,1)x(0,1) of the diagram maps to a fixed
// viewport so outputs are reproducible and diffable.
// ---------------------------------------------------------------------------
struct RenderMeta {
    std::string version;
    std::string spec_hash;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace detail

inline std::string to_svg(const Diagram& dia, const RenderMeta& meta) {
    const double width = 640, height = 520, margin = 60;
    const double span_x = width - 2 * margin, span_y = height - 2 * margin;
    auto X = [&](const Scalar& v) { return margin + v.to_double() * span_x; };
    auto Y = [&](const Scalar& v) { return height - margin - v.to_double() * span_y; };
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"520\" "
           "viewBox=\"0 0 640 520\">\n";
    svg += "<!-- qcc_version=" + meta.version + " spec_hash=" + meta.spec_hash +
           " seed=" + std::to_string(meta.seed) + " -->\n";
    svg += "<defs><marker id=\"tip\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"3\" "
           "orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\"/></marker></defs>\n";
    // axes
    svg += "<line x1=\"" + detail::fmt_double(margin) + "\" y1=\"" + detail::fmt_double(height - margin) +
           "\" x2=\"" + detail::fmt_double(width - margin) + "\" y2=\"" +
           detail::fmt_double(height - margin) + "\" stroke=\"#888\"/>\n";
    svg += "<line x1=\"" + detail::fmt_double(margin) + "\" y1=\"" + detail::fmt_double(height - margin) +
           "\" x2=\"" + detail::fmt_double(margin) + "\" y2=\"" + detail::fmt_double(margin) +
           "\" stroke=\"#888\"/>\n";
    svg += "<text x=\"" + detail::fmt_double(width - margin) + "\" y=\"" +
           detail::fmt_double(height - margin + 24) + "\" font-size=\"12\">1/p</text>\n";
    svg += "<text x=\"" + detail::fmt_double(margin - 30) + "\" y=\"" + detail::fmt_double(margin) +
           "\" font-size=\"12\">s</text>\n";
    // critical line s = n (1/p), from the origin up to s = 1
    svg += "<line x1=\"" + detail::fmt_double(X(Scalar(0))) + "\" y1=\"" +
           detail::fmt_double(Y(Scalar(0))) + "\" x2=\"" + detail::fmt_double(X(Scalar(1, dia.n))) +
           "\" y2=\"" + detail::fmt_double(Y(Scalar(1))) +
           "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
    svg += "<text x=\"" + detail::fmt_double(X(Scalar(1, dia.n)) + 4) + "\" y=\"" +
           detail::fmt_double(Y(Scalar(1)) + 4) + "\" font-size=\"11\" fill=\"#999\">sp=n</text>\n";
    for (const auto& a : dia.arrows) {
        svg += "<line x1=\"" + detail::fmt_double(X(a.x1)) + "\" y1=\"" + detail::fmt_double(Y(a.y1)) +
               "\" x2=\"" + detail::fmt_double(X(a.x2)) + "\" y2=\"" + detail::fmt_double(Y(a.y2)) +
               "\" stroke=\"#c22\" stroke-width=\"1.5\" marker-end=\"url(#tip)\"/>\n";
    }
    for (const auto& pt : dia.points) {
        svg += "<circle cx=\"" + detail::fmt_double(X(pt.x)) + "\" cy=\"" +
               detail::fmt_double(Y(pt.y)) + "\" r=\"3\" fill=\"#c22\"/>\n";
        svg += "<text x=\"" + detail::fmt_double(X(pt.x) + 5) + "\" y=\"" +
               detail::fmt_double(Y(pt.y) - 5) + "\" font-size=\"11\">" + pt.label + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

inline std::string to_csv(const Diagram& dia, const RenderMeta& meta) {
    std::string csv;
    csv += "# qcc_version=" + meta.version + " spec_hash=" + meta.spec_hash +
           " seed=" + std::to_string(meta.seed) + "\n";
    csv += "element,label,x1,y1,x2,y2,x1_exact,y1_exact,x2_exact,y2_exact\n";
    for (const auto& pt : dia.points) {
        csv += "point," + pt.label + "," + detail::fmt_double(pt.x.to_double()) + "," +
               detail::fmt_double(pt.y.to_double()) + ",,," + pt.x.str() + "," + pt.y.str() + ",,\n";
    }
    for (const auto& a : dia.arrows) {
        csv += "arrow," + a.label + "," + detail::fmt_double(a.x1.to_double()) + "," +
               detail::fmt_double(a.y1.to_double()) + "," + detail::fmt_double(a.x2.to_double()) +
               "," + detail::fmt_double(a.y2.to_double()) + "," + a.x1.str() + "," + a.y1.str() +
               "," + a.x2.str() + "," + a.y2.str() + "\n";
    }
    return csv;
}

} // namespace qcc
