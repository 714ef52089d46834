#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "qcc/geometry.hpp"
#include "qcc/quadrature.hpp"
#include "qcc/radial_profiles.hpp"
#include "qcc/rng.hpp"

namespace qcc {

// ---------------------------------------------------------------------------
// Truncation ladder shared by every estimator: inner cutoffs eps_j = 2^-j for
// j = 2..12, divergence slope fitted by least squares on the last 6 points.
// ---------------------------------------------------------------------------
namespace cutoffs {
inline constexpr int kFirst = 2;
inline constexpr int kLast = 12;
inline constexpr int kCount = kLast - kFirst + 1;
inline constexpr int kFitPoints = 6;
inline double at(int j) { return std::ldexp(1.0, -j); }
inline std::vector<double> ladder() {
    std::vector<double> v(kCount);
    for (int j = kFirst; j <= kLast; ++j) v[j - kFirst] = at(j);
    return v;
}
} // namespace cutoffs

struct MeshDiagnostics {
    int radial_panels = 0;
    int diagonal_panels = 0;
    int kernel_table_size = 0;
    int direction_samples = 0;
    double quadrature_residual = 0.0;
};

// Numerical norm value plus the convergence diagnostics the membership
// classifier runs on. Partials are truncated norms over the cutoff ladder;
// they are nondecreasing as the cutoff shrinks because the integrands are
// nonnegative, and the fitted log-log slope is clamped to be nonpositive.
struct NormEstimate {
    bool divergent = false;
    double value = 0.0;
    std::vector<double> cutoffs;
    std::vector<double> partials;
    double log_slope = 0.0;
    double r2 = 1.0;
    double cauchy_rel = 0.0;
    std::uint64_t seed = kDefaultSeed;
    MeshDiagnostics mesh;
};

namespace detail {

struct SlopeFit {
    double slope = 0.0;
    double r2 = 1.0;
    double cauchy_rel = 0.0;
};

inline SlopeFit fit_divergence_slope(const std::vector<double>& cuts,
                                     const std::vector<double>& partials) {
    SlopeFit fit;
    const int count = static_cast<int>(partials.size());
    if (count >= 2) {
        const double last = partials[count - 1], prev = partials[count - 2];
        fit.cauchy_rel = std::abs(last - prev) / std::max(last, 1e-300);
    }
    std::vector<double> xs, ys;
    const int lo = std::max(0, count - cutoffs::kFitPoints);
    for (int i = lo; i < count; ++i) {
        if (partials[i] > 0.0) {
            xs.push_back(std::log(cuts[i]));
            ys.push_back(std::log(partials[i]));
        }
    }
    if (xs.size() < 2) return fit;
    const auto m = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) { mx += xs[i]; my += ys[i]; }
    mx /= m; my /= m;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    fit.slope = std::min(sxy / sxx, 0.0);
    if (syy <= 1e-28) {
        fit.r2 = 1.0;
    } else {
        double ssres = 0.0;
        const double b0 = my - fit.slope * mx;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double res = ys[i] - (b0 + fit.slope * xs[i]);
            ssres += res * res;
        }
        fit.r2 = 1.0 - ssres / syy;
    }
    return fit;
}

inline void finish_estimate(NormEstimate& est) {
    const auto fit = fit_divergence_slope(est.cutoffs, est.partials);
    est.log_slope = fit.slope;
    est.r2 = fit.r2;
    est.cauchy_rel = fit.cauchy_rel;
}

// Sum of profile breakpoints restricted to (lo, hi), used to split panels.
inline std::vector<double> breaks_between(const RadialProfile& prof, double lo, double hi) {
    std::vector<double> out;
    for (double b : prof.breakpoints())
        if (b > lo && b < hi) out.push_back(b);
    return out;
}

inline double integrate_with_breaks(const std::function<double(double)>& g, double lo, double hi,
                                    const std::vector<double>& breaks, const quad::Options& opts) {
    double total = 0.0, a = lo;
    std::vector<double> cuts = breaks;
    cuts.push_back(hi);
    for (double cut : cuts) {
        if (cut <= a) continue;
        total += quad::integrate_adaptive(g, a, cut, opts).value;
        a = cut;
    }
    return total;
}

} // namespace detail

// ---------------------------------------------------------------------------
// L^p norm of a radial profile over an origin-centered ball, by 1D radial
// quadrature. Divergence is decided by the exact power test at the origin
// (n + p * lead <= 0), independently of the numerical partials.
// ---------------------------------------------------------------------------
namespace detail {

// Shared machinery for the two endpoint norms: h(r) is |F|^p r^{n-1} or
// |F'|^p r^{n-1}; divergent_exact is the closed-form exponent test.
inline NormEstimate radial_power_estimate(const RadialProfile& prof,
                                          const std::function<double(double)>& h, double p,
                                          double radius, bool divergent_exact, double scale) {
    NormEstimate est;
    est.divergent = divergent_exact;
    est.cutoffs = cutoffs::ladder();
    quad::Options opts;
    opts.rel_tol = 1e-11;

    const double head_lo = std::min(cutoffs::at(cutoffs::kFirst), radius);
    double core = detail::integrate_with_breaks(h, head_lo, radius,
                                                detail::breaks_between(prof, head_lo, radius), opts);
    est.partials.reserve(cutoffs::kCount);
    est.partials.push_back(std::pow(scale * core, 1.0 / p));
    int panels = 1;
    for (int j = cutoffs::kFirst + 1; j <= cutoffs::kLast; ++j) {
        const double lo = std::min(cutoffs::at(j), radius);
        const double hi = std::min(cutoffs::at(j - 1), radius);
        if (hi > lo) {
            core += detail::integrate_with_breaks(h, lo, hi, detail::breaks_between(prof, lo, hi),
                                                  opts);
            ++panels;
        }
        est.partials.push_back(std::pow(scale * core, 1.0 / p));
    }
    est.mesh.radial_panels = panels;
    if (est.divergent) {
        est.value = est.partials.back();
    } else {
        const double floor_hi = std::min(cutoffs::at(cutoffs::kLast), radius);
        const auto origin_piece = quad::integrate_singular_lower(h, 0.0, floor_hi, opts);
        est.mesh.quadrature_residual = origin_piece.error;
        est.value = std::pow(scale * (core + origin_piece.value), 1.0 / p);
    }
    detail::finish_estimate(est);
    return est;
}

} // namespace detail

inline NormEstimate lp_norm(const RadialProfile& prof, const Exponent& p, const Ball& ball) {
    if (!ball.origin_centered())
        throw invalid_input("norm estimation needs an origin-centered ball");
    if (p.is_infinite()) throw invalid_input("L^p estimation needs a finite exponent");
    const double pd = p.value().to_double();
    if (pd <= 0.0) throw invalid_input("L^p estimation needs p > 0");
    const int n = ball.dim();
    // exact divergence test: |F|^p r^{n-1} ~ r^{p*lead + n - 1} at the origin
    const Scalar test = Scalar(n) + p.value() * prof.leading_exponent_at_zero();
    const bool divergent = ball.contains_origin() && test.sign() <= 0;
    auto h = [&](double r) { return std::pow(std::abs(prof(r)), pd) * std::pow(r, n - 1); };
    return detail::radial_power_estimate(prof, h, pd, ball.radius, divergent,
                                         unit_sphere_measure(n));
}

// First-order gradient seminorm ||grad f||_{L^p}; for radial f the gradient
// magnitude is |F'(r)|.
inline NormEstimate sobolev_seminorm(const RadialProfile& prof, const Exponent& p,
                                     const Ball& ball) {
    if (!ball.origin_centered())
        throw invalid_input("norm estimation needs an origin-centered ball");
    if (p.is_infinite()) throw invalid_input("gradient seminorm needs a finite exponent");
    const double pd = p.value().to_double();
    const int n = ball.dim();
    const Scalar test = Scalar(n) + p.value() * prof.gradient_exponent_at_zero();
    const bool divergent = ball.contains_origin() && test.sign() <= 0;
    auto h = [&](double r) { return std::pow(std::abs(prof.derivative(r)), pd) * std::pow(r, n - 1); };
    return detail::radial_power_estimate(prof, h, pd, ball.radius, divergent,
                                         unit_sphere_measure(n));
}

// ---------------------------------------------------------------------------
// Fractional seminorm specification.
// ---------------------------------------------------------------------------
enum class EstimatorKind { gagliardo_double_integral, modulus_of_smoothness };

struct FractionalNormSpec {
    Scalar s;
    Exponent p;
    int n;
    Ball domain;
    EstimatorKind estimator = EstimatorKind::gagliardo_double_integral;

    FractionalNormSpec(Scalar smoothness, Exponent integrability, int dim, Ball ball,
                       EstimatorKind kind = EstimatorKind::gagliardo_double_integral)
        : s(std::move(smoothness)), p(std::move(integrability)), n(dim), domain(std::move(ball)),
          estimator(kind) {
        if (s.sign() < 0 || s > Scalar(1)) throw invalid_input("smoothness s must lie in [0,1]");
        if (p.is_infinite() || p.value() <= Scalar(1))
            throw invalid_input("fractional estimation needs 1 < p < infinity");
        if (domain.dim() != n) throw invalid_input("domain dimension mismatch");
        if (!domain.origin_centered())
            throw invalid_input("norm estimation needs an origin-centered ball");
        if (domain.radius < 0.5)
            throw invalid_input("the cutoff ladder needs a domain radius of at least 1/2");
    }
};

// ---------------------------------------------------------------------------
// Angular kernel of the double-integral seminorm. For points at radii r > t
// with angle theta between them,
//   A(r, t) = int_0^pi sin^{n-2}(theta) |x - y|^{-beta} dtheta = r^{-beta} W(t/r),
// where, after u = sin^2(theta/2),
//   W(x) = 2^{n-2} int_0^1 (u(1-u))^{(n-3)/2} ((1-x)^2 + 4xu)^{-beta/2} du.
// W blows up like (1-x)^{n-1-beta} on the diagonal; the factored profile
// m(x) = W(x) (1-x)^{beta-n+1} stays smooth and is tabulated on a log grid.
// ---------------------------------------------------------------------------
class AngularKernel {
public:
    AngularKernel(int n, double beta) : n_(n), beta_(beta) {
        z_lo_ = std::log(1e-13);
        z_hi_ = std::log(0.9999);
        table_.resize(kTable);
        dz_ = (z_hi_ - z_lo_) / (kTable - 1);
        for (int i = 0; i < kTable; ++i) {
            const double x = 1.0 - std::exp(z_lo_ + i * dz_);
            // log(W(x) (1-x)^{beta-(n-1)}) assembled from the scaled value
            table_[i] = std::log(scaled_direct(x)) - (n_ - 1) * std::log(1.0 - x);
        }
    }

    int table_size() const { return kTable; }
    double beta() const { return beta_; }

    // Scaled quadrature evaluation W(x) (1-x)^beta, bounded uniformly in x,
    // so large beta cannot overflow intermediate values. The kernel factor is
    // written as exp(-beta/2 log1p(4xu/(1-x)^2)), which lives in (0, 1].
    double scaled_direct(double x) const {
        if (x < 1e-300) {
            // closed form at x = 0: Beta((n-1)/2, (n-1)/2) * 2^{n-2}
            return std::pow(2.0, n_ - 2) * std::exp(2.0 * std::lgamma(0.5 * (n_ - 1)) -
                                                    std::lgamma(n_ - 1.0));
        }
        if (x >= 1.0) throw invalid_input("angular kernel needs x = t/r < 1");
        const double c2 = (1.0 - x) * (1.0 - x);
        const double half_pow = 0.5 * (n_ - 3);
        auto h = [&](double u) {
            return std::pow(u * (1.0 - u), half_pow) *
                   std::exp(-0.5 * beta_ * std::log1p(4.0 * x * u / c2));
        };
        quad::Options opts;
        opts.rel_tol = 1e-11;
        // Below u* the kernel factor is flat and the endpoint power of h is
        // genuine; above it h decays across many octaves, so octave panels
        // avoid misreading the transition as an endpoint divergence.
        const double u_star = std::min(0.25, c2 / (4.0 * x));
        double lower;
        if (u_star > 1e-3) {
            lower = quad::integrate_singular_lower(h, 0.0, 0.5, opts).value;
        } else {
            lower = quad::integrate_singular_lower(h, 0.0, u_star, opts).value +
                    quad::integrate_octaves(h, u_star, 0.5, opts).value;
        }
        const double upper = quad::integrate_singular_upper(h, 0.5, 1.0, opts).value;
        return std::pow(2.0, n_ - 2) * (lower + upper);
    }

    double direct(double x) const { return scaled_direct(x) * std::pow(1.0 - x, -beta_); }

    // Fast path: linear interpolation of the factored profile in log(1-x).
    double operator()(double x) const {
        if (x <= 0.0) return direct(0.0);
        const double z = std::log(1.0 - x);
        if (z < z_lo_ || z > z_hi_) return direct(x);
        const double pos = (z - z_lo_) / dz_;
        const int i = std::min(static_cast<int>(pos), kTable - 2);
        const double frac = pos - i;
        const double logm = table_[i] * (1.0 - frac) + table_[i + 1] * frac;
        return std::exp(logm) * std::pow(1.0 - x, (n_ - 1) - beta_);
    }

    static const AngularKernel& cached(int n, double beta) {
        static std::map<std::pair<int, long long>, AngularKernel> cache;
        static std::mutex mutex;
        const auto key = std::make_pair(n, static_cast<long long>(std::llround(beta * 1e12)));
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, AngularKernel(n, beta)).first;
        return it->second;
    }

private:
    static constexpr int kTable = 2048;
    int n_;
    double beta_;
    double z_lo_, z_hi_, dz_;
    std::vector<double> table_;
};

// ---------------------------------------------------------------------------
// Double-integral fractional seminorm (the B^s_{p,p}-equivalent proxy).
//
// Radial reduction: with C = omega_{n-1} omega_{n-2},
//   |f|^p_{s,p} = 2C int_{0<t<r<R} |F(r)-F(t)|^p W(t/r) r^{-beta} (rt)^{n-1} dr dt.
// The t-range is sliced into the dyadic slabs of the cutoff ladder so each
// truncated value is a prefix sum of slab contributions (hence exactly
// monotone). Inside a slab, Gauss nodes in t; the inner r-integral splits
// into a diagonal band r in (t, 2t] handled by a mesh graded toward r = t,
// and a far part handled per octave.
// ---------------------------------------------------------------------------
inline NormEstimate gagliardo_seminorm(const RadialProfile& prof, const FractionalNormSpec& spec) {
    if (spec.s.sign() <= 0 || spec.s >= Scalar(1))
        throw invalid_input("double-integral estimator needs 0 < s < 1");
    const int n = spec.n;
    const double p = spec.p.value().to_double();
    const double sp = spec.s.to_double() * p;
    const double beta = n + sp;
    const double R = spec.domain.radius;
    const AngularKernel& kernel = AngularKernel::cached(n, beta);

    NormEstimate est;
    est.cutoffs = cutoffs::ladder();
    est.mesh.kernel_table_size = kernel.table_size();

    const double prefactor = 2.0 * unit_sphere_measure(n) * unit_sphere_measure(n - 1);
    quad::Options band_opts;
    // cap the mesh depth so (1-x)^{(n-1)-beta} stays inside double range; the
    // mass below the floor scales like floor^{p(1-s)} and is negligible
    band_opts.grade_floor = std::max(1e-10, std::pow(10.0, -250.0 / std::max(beta - n + 1.0, 1.0)));
    quad::Options far_opts;

    const auto prof_breaks = prof.breakpoints();
    int band_panels = 0, far_panels = 0;

    // Inner integral over r in (t, R] for fixed t.
    auto inner = [&](double t) {
        auto r_integrand = [&](double r) {
            return std::pow(std::abs(prof.difference(t, r)), p) * kernel(t / r) *
                   std::pow(r, -beta) * std::pow(r * t, n - 1);
        };
        auto w_integrand = [&](double w) { return r_integrand(t + w); };
        const double band_hi = std::min(2.0 * t, R);
        double total = 0.0;
        // diagonal band, graded toward w = 0 with the analytic power tail
        {
            double lo = 0.0;
            std::vector<double> cuts;
            for (double b : prof_breaks)
                if (b > t && b < band_hi) cuts.push_back(b - t);
            cuts.push_back(band_hi - t);
            for (double cut : cuts) {
                if (cut <= lo) continue;
                const auto piece =
                    lo == 0.0 ? quad::integrate_singular_lower_fixed(w_integrand, 0.0, cut, band_opts)
                              : quad::integrate_octaves_fixed(
                                    [&](double w) { return w_integrand(w); }, lo, cut, band_opts);
                total += piece.value;
                band_panels += piece.panels;
                lo = cut;
            }
        }
        // far part, fixed panels per octave, split at profile breakpoints
        double lo = band_hi;
        while (lo < R) {
            double hi = std::min(2.0 * lo, R);
            for (double b : prof_breaks)
                if (b > lo && b < hi) hi = b;
            const auto piece = quad::integrate_octaves_fixed(r_integrand, lo, hi, far_opts);
            total += piece.value;
            far_panels += piece.panels;
            lo = hi;
        }
        return total;
    };

    // t-slab contribution by Gauss quadrature.
    const auto& rule = quad::gauss_rule(16);
    auto slab_value = [&](double t_lo, double t_hi) {
        const double mid = 0.5 * (t_lo + t_hi), half = 0.5 * (t_hi - t_lo);
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            sum += rule.weights[i] * inner(mid + half * rule.nodes[i]);
        return sum * half;
    };

    std::vector<double> slabs;
    slabs.push_back(slab_value(cutoffs::at(cutoffs::kFirst), R));   // head: t in [1/4, R]
    for (int l = cutoffs::kFirst; l < cutoffs::kLast; ++l)
        slabs.push_back(slab_value(cutoffs::at(l + 1), cutoffs::at(l)));

    double core = 0.0;
    for (int j = 0; j < cutoffs::kCount; ++j) {
        core += slabs[j];
        est.partials.push_back(std::pow(prefactor * core, 1.0 / p));
    }
    est.mesh.diagonal_panels = band_panels;
    est.mesh.radial_panels = far_panels;

    detail::finish_estimate(est);
    // geometric extrapolation of the remaining slabs for the reported value
    const double last = slabs[cutoffs::kCount - 1];
    const double prev = slabs[cutoffs::kCount - 2];
    double tail = 0.0;
    if (prev > 0.0 && last > 0.0) {
        const double ratio = last / prev;
        if (ratio < 0.9) tail = last * ratio / (1.0 - ratio);
    }
    est.value = std::pow(prefactor * (core + tail), 1.0 / p);
    return est;
}

// ---------------------------------------------------------------------------
// Modulus-of-smoothness estimator, the independent cross-check:
//   |f|^p ~ int_0^1 (t^{-s} w_p(f, t))^p dt/t,
// with w_p(f,t)^p = int_B avg_u |f(x + t u) - f(x)|^p dx estimated by seeded
// Monte Carlo over shift directions at dyadic shift scales. The truncated
// partials drop scales below the cutoff, so divergence shows up as growth of
// the small-scale contributions.
// ---------------------------------------------------------------------------
inline NormEstimate modulus_seminorm(const RadialProfile& prof, const FractionalNormSpec& spec,
                                     std::uint64_t seed = kDefaultSeed, int samples_per_scale = 100000) {
    if (spec.s.sign() <= 0 || spec.s >= Scalar(1))
        throw invalid_input("modulus estimator needs 0 < s < 1");
    const int n = spec.n;
    const double p = spec.p.value().to_double();
    const double sp = spec.s.to_double() * p;
    const double R = spec.domain.radius;

    // The estimator needs f in L^p; the exact power test guards the radial
    // integral so Monte Carlo noise can never fake a convergent tail.
    const Scalar lp_test = Scalar(n) + spec.p.value() * prof.leading_exponent_at_zero();
    if (lp_test.sign() <= 0) {
        NormEstimate est;
        est.seed = seed;
        est.divergent = true;
        est.cutoffs = cutoffs::ladder();
        est.partials.assign(cutoffs::kCount, 0.0);
        est.log_slope = -std::numeric_limits<double>::infinity();
        return est;
    }

    NormEstimate est;
    est.seed = seed;
    est.cutoffs = cutoffs::ladder();

    // radial panels for the x-integral, graded around the shift scale t and
    // toward the origin; Gauss nodes inside each panel
    const auto& rule = quad::gauss_rule(8);
    struct Node { double r, w; };

    auto make_nodes = [&](double t) {
        std::vector<Node> nodes;
        auto add_panel = [&](double a, double b) {
            if (!(b > a)) return;
            const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                nodes.push_back({mid + half * rule.nodes[i], half * rule.weights[i]});
        };
        // geometric panels toward 0 on (0, t/2]
        const double floor0 = t * 1e-7;
        double hi = 0.5 * t;
        while (hi > floor0) { add_panel(0.5 * hi, hi); hi *= 0.5; }
        add_panel(0.0, hi);
        // graded toward the diagonal r = t from below and above
        const double floor_d = t * 1e-7;
        double gap = 0.5 * t;
        while (gap > floor_d) { add_panel(t - gap, t - 0.5 * gap); gap *= 0.5; }
        gap = std::min(t, R - t);
        while (gap > floor_d) { add_panel(t + 0.5 * gap, t + gap); gap *= 0.5; }
        // octaves from 2t out to R
        double lo = std::min(2.0 * t, R);
        while (lo < R) { const double h2 = std::min(2.0 * lo, R); add_panel(lo, h2); lo = h2; }
        return nodes;
    };

    std::vector<double> scale_terms;   // t_i^{-sp} w_p^p(t_i) * ln 2
    int scale_count = 0;
    for (int i = 1; i <= cutoffs::kLast; ++i) {
        const double t = std::ldexp(std::sqrt(0.5), -(i - 1));   // 2^{-i+1/2}
        const auto nodes = make_nodes(t);
        const int per_node = std::max(64, samples_per_scale / std::max<int>(1, nodes.size()));
        double integral = 0.0;
        for (std::size_t nd = 0; nd < nodes.size(); ++nd) {
            const double r = nodes[nd].r;
            if (r <= 0.0 || r >= R) continue;
            Xoshiro256 rng(derive_stream(seed, i, nd));
            double acc = 0.0;
            for (int m = 0; m < per_node; ++m) {
                // direction cosine between x and the shift, via a gaussian vector
                double g1 = 0.0, norm_sq = 0.0;
                for (int j = 0; j < n; j += 2) {
                    const double u1 = std::max(rng.uniform01(), 1e-300);
                    const double u2 = rng.uniform01();
                    const double mag = std::sqrt(-2.0 * std::log(u1));
                    const double a = mag * std::cos(2.0 * M_PI * u2);
                    const double b = mag * std::sin(2.0 * M_PI * u2);
                    if (j == 0) g1 = a;
                    norm_sq += a * a;
                    if (j + 1 < n) norm_sq += b * b;
                }
                const double c = g1 / std::sqrt(norm_sq);
                const double shifted = std::sqrt(std::max(r * r + t * t + 2.0 * r * t * c, 1e-30));
                acc += std::pow(std::abs(prof.difference(r, shifted)), p);
            }
            integral += nodes[nd].w * std::pow(r, n - 1) * (acc / per_node);
            est.mesh.direction_samples += per_node;
        }
        scale_terms.push_back(std::pow(t, -sp) * unit_sphere_measure(n) * integral * std::log(2.0));
        ++scale_count;
        est.mesh.radial_panels += static_cast<int>(nodes.size());
    }

    // partial at cutoff 2^-j keeps shift scales t >= 2^-j, i.e. i <= j
    double core = 0.0;
    for (int i = 1; i <= cutoffs::kLast; ++i) {
        core += scale_terms[i - 1];
        if (i >= cutoffs::kFirst) est.partials.push_back(std::pow(core, 1.0 / p));
    }
    detail::finish_estimate(est);
    const double last = scale_terms[scale_count - 1], prev = scale_terms[scale_count - 2];
    double tail = 0.0;
    if (prev > 0.0 && last > 0.0) {
        const double ratio = last / prev;
        if (ratio < 0.9) tail = last * ratio / (1.0 - ratio);
    }
    est.value = std::pow(core + tail, 1.0 / p);
    return est;
}

// ---------------------------------------------------------------------------
// Membership classifier.
// ---------------------------------------------------------------------------
enum class Verdict { member, non_member, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::member: return "member";
        case Verdict::non_member: return "non-member";
        default: return "inconclusive";
    }
}

struct ClassifierOptions {
    double slope_threshold = 0.05;
    double cauchy_rel = 1e-2;
    double min_r2 = 0.99;
};

inline Verdict classify_from_estimate(const NormEstimate& est, const ClassifierOptions& opts = {}) {
    if (std::isinf(est.log_slope)) return Verdict::non_member;   // exact divergence test fired
    if (est.log_slope > -opts.slope_threshold && est.cauchy_rel <= opts.cauchy_rel)
        return Verdict::member;
    if (est.log_slope < -opts.slope_threshold && est.r2 >= opts.min_r2)
        return Verdict::non_member;
    return Verdict::inconclusive;
}

// The endpoint smoothness values are routed to the L^p / gradient estimators;
// fractional values go to the estimator named in the spec.
inline NormEstimate fractional_seminorm(const RadialProfile& prof, const FractionalNormSpec& spec,
                                        std::uint64_t seed = kDefaultSeed) {
    if (spec.s.is_zero()) return lp_norm(prof, spec.p, spec.domain);
    if (spec.s == Scalar(1)) return sobolev_seminorm(prof, spec.p, spec.domain);
    if (spec.estimator == EstimatorKind::gagliardo_double_integral)
        return gagliardo_seminorm(prof, spec);
    return modulus_seminorm(prof, spec, seed);
}

inline Verdict classify_membership(const RadialProfile& prof, const FractionalNormSpec& spec,
                                   const ClassifierOptions& opts = {},
                                   std::uint64_t seed = kDefaultSeed) {
    return classify_from_estimate(fractional_seminorm(prof, spec, seed), opts);
}

} // namespace qcc
