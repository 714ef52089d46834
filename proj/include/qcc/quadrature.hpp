#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "qcc/errors.hpp"

namespace qcc::quad {

// Gauss-Legendre nodes/weights on [-1, 1], computed once per order by Newton
// iteration on the Legendre polynomial.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline GaussRule make_gauss_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return rule;
}

inline const GaussRule& gauss_rule(int n) {
    static const GaussRule g8 = make_gauss_rule(8);
    static const GaussRule g16 = make_gauss_rule(16);
    static const GaussRule g32 = make_gauss_rule(32);
    if (n <= 8) return g8;
    if (n <= 16) return g16;
    return g32;
}

using Fn = std::function<double(double)>;

inline double panel(const Fn& f, double a, double b, const GaussRule& rule) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return sum * half;
}

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 1e-15;
    int max_panels = 4000;
    int order = 16;
    double grade_floor = 1e-12;   // relative depth of graded endpoint meshes
};

struct Result {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
    bool converged = true;
    bool divergent = false;       // power-law divergence detected at a graded endpoint
    double tail = 0.0;            // analytic tail added beyond the graded mesh
    double tail_exponent = 0.0;   // fitted local power at the singular endpoint
};

// Adaptive bisection for integrands smooth in the interior of [a, b].
inline Result integrate_adaptive(const Fn& f, double a, double b, const Options& opts = {}) {
    Result res;
    if (!(b > a)) return res;
    const GaussRule& rule = gauss_rule(opts.order);
    struct Seg { double a, b, coarse; };
    std::vector<Seg> stack{{a, b, panel(f, a, b, rule)}};
    while (!stack.empty()) {
        if (res.panels > opts.max_panels)
            throw quadrature_error("adaptive quadrature exceeded panel budget");
        const Seg seg = stack.back();
        stack.pop_back();
        const double m = 0.5 * (seg.a + seg.b);
        const double left = panel(f, seg.a, m, rule);
        const double right = panel(f, m, seg.b, rule);
        const double fine = left + right;
        const double err = std::abs(fine - seg.coarse);
        const double scale = std::max(std::abs(fine), opts.abs_tol / opts.rel_tol);
        if (err <= opts.rel_tol * scale || (seg.b - seg.a) < 1e-15 * (b - a)) {
            res.value += fine;
            res.error += err;
            res.panels += 2;
        } else {
            stack.push_back({seg.a, m, left});
            stack.push_back({m, seg.b, right});
        }
    }
    return res;
}

namespace detail {

// Analytic tail of a locally power-like integrand: fit g(r) ~ C r^gamma from
// two samples near the endpoint and integrate the model exactly. For pure
// power integrands this is exact; it is what prevents false convergence when
// the graded mesh alone would just stop seeing a divergent endpoint.
struct Tail {
    double value = 0.0;
    double exponent = 0.0;
    bool divergent = false;
};

inline Tail power_tail(double g_eps, double g_half, double eps) {
    Tail t;
    if (g_eps <= 0.0 || g_half <= 0.0) return t;   // vanishing endpoint: nothing beyond
    t.exponent = std::log2(g_eps / g_half);        // g(eps/2)/g(eps) = 2^{-gamma}
    if (t.exponent <= -1.0 + 1e-9) {
        t.divergent = true;
        return t;
    }
    t.value = g_eps * eps / (t.exponent + 1.0);
    return t;
}

} // namespace detail

// Integral over (lo, b] of an integrand with (at worst) a power singularity
// as r -> lo. Geometric panels with ratio 1/2 from b down to relative depth
// grade_floor, then the analytic power tail for what remains.
inline Result integrate_singular_lower(const Fn& f, double lo, double b, const Options& opts = {}) {
    Result res;
    const double span = b - lo;
    if (!(span > 0.0)) return res;
    double hi = b;
    double width = span;
    while (width > opts.grade_floor * span) {
        width *= 0.5;
        const Result piece = integrate_adaptive(f, lo + width, hi, opts);
        res.value += piece.value;
        res.error += piece.error;
        res.panels += piece.panels;
        hi = lo + width;
    }
    const double eps = width;
    const auto tail = detail::power_tail(f(lo + eps), f(lo + 0.5 * eps), eps);
    res.tail = tail.value;
    res.tail_exponent = tail.exponent;
    res.divergent = tail.divergent;
    res.value += tail.value;
    return res;
}

// Mirror image: integral over [a, hi) with the singularity at the upper end.
inline Result integrate_singular_upper(const Fn& f, double a, double hi, const Options& opts = {}) {
    auto mirrored = [&](double w) { return f(hi - w); };
    return integrate_singular_lower(mirrored, 0.0, hi - a, opts);
}

// Integral over [a, b] with 0 < a, one adaptive panel per octave. Suited to
// integrands that decay like powers across many scales without being singular
// at either endpoint; no tail model is involved, so regime transitions within
// [a, b] cannot be misread as divergences.
inline Result integrate_octaves(const Fn& f, double a, double b, const Options& opts = {}) {
    Result res;
    double lo = a;
    while (lo < b) {
        const double hi = std::min(2.0 * lo, b);
        const Result piece = integrate_adaptive(f, lo, hi, opts);
        res.value += piece.value;
        res.error += piece.error;
        res.panels += piece.panels;
        lo = hi;
    }
    return res;
}

// Fixed-rule variants: two Gauss applications per geometric panel and no
// refinement loop. A 16-point rule per octave is near machine precision for
// power-like integrands, and a fixed mesh cannot be lured into chasing
// integrand noise (cancellation, interpolation kinks) the way adaptive
// bisection can.
inline double fixed_panel(const Fn& f, double a, double b, const GaussRule& rule) {
    const double mid = 0.5 * (a + b);
    return panel(f, a, mid, rule) + panel(f, mid, b, rule);
}

inline Result integrate_singular_lower_fixed(const Fn& f, double lo, double b,
                                             const Options& opts = {}) {
    Result res;
    const double span = b - lo;
    if (!(span > 0.0)) return res;
    const GaussRule& rule = gauss_rule(opts.order);
    double width = span;
    double hi = b;
    while (width > opts.grade_floor * span) {
        width *= 0.5;
        res.value += fixed_panel(f, lo + width, hi, rule);
        res.panels += 2;
        hi = lo + width;
    }
    const double eps = width;
    const auto tail = detail::power_tail(f(lo + eps), f(lo + 0.5 * eps), eps);
    res.tail = tail.value;
    res.tail_exponent = tail.exponent;
    res.divergent = tail.divergent;
    res.value += tail.value;
    return res;
}

inline Result integrate_octaves_fixed(const Fn& f, double a, double b, const Options& opts = {}) {
    Result res;
    const GaussRule& rule = gauss_rule(opts.order);
    double lo = a;
    while (lo < b) {
        const double hi = std::min(2.0 * lo, b);
        res.value += fixed_panel(f, lo, hi, rule);
        res.panels += 2;
        lo = hi;
    }
    return res;
}

} // namespace qcc::quad
