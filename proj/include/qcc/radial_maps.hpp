#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "qcc/geometry.hpp"
#include "qcc/quadrature.hpp"
#include "qcc/radial_profiles.hpp"
#include "qcc/rng.hpp"

namespace qcc {

// The radial stretch x -> x |x|^{k-1} in R^n, with Jacobian k |x|^{n(k-1)}.
// These are the extremal quasiconformal maps the sharpness constructions use;
// the stretch exponent k is kept exact so admissibility windows and the
// divergence boundary of the power integrals can be decided without roundoff.
struct RadialStretch {
    Scalar k;
    int n;

    RadialStretch(Scalar stretch, int dim) : k(std::move(stretch)), n(dim) {
        if (k.sign() <= 0) throw invalid_input("stretch exponent k must be positive");
        if (n < 2) throw invalid_input("ambient dimension must be >= 2");
    }

    double distortion() const {
        const double kd = k.to_double();
        if (kd >= 1.0) return std::pow(kd, n - 1);
        return std::pow(2.0 - kd, n) / kd;
    }

    RadialStretch inverse() const { return RadialStretch(k.reciprocal(), n); }
};

inline RadialStretch compose(const RadialStretch& outer, const RadialStretch& inner) {
    if (outer.n != inner.n) throw invalid_input("cannot compose stretches across dimensions");
    return RadialStretch(outer.k * inner.k, outer.n);
}

inline std::vector<double> evaluate(const RadialStretch& map, std::span<const double> x) {
    if (static_cast<int>(x.size()) != map.n)
        throw invalid_input("point dimension does not match the map");
    double sq = 0.0;
    for (double xi : x) sq += xi * xi;
    std::vector<double> out(x.begin(), x.end());
    if (sq == 0.0) return out;   // continuous extension at the origin
    const double factor = std::pow(std::sqrt(sq), map.k.to_double() - 1.0);
    for (double& v : out) v *= factor;
    return out;
}

inline double jacobian_radial(const RadialStretch& map, double r) {
    const double kd = map.k.to_double();
    if (r == 0.0) {
        if (kd < 1.0) throw singularity_error("Jacobian blows up at the origin for k < 1");
        return kd == 1.0 ? 1.0 : 0.0;
    }
    return kd * std::pow(r, map.n * (kd - 1.0));
}

inline double jacobian(const RadialStretch& map, std::span<const double> x) {
    if (static_cast<int>(x.size()) != map.n)
        throw invalid_input("point dimension does not match the map");
    double sq = 0.0;
    for (double xi : x) sq += xi * xi;
    return jacobian_radial(map, std::sqrt(sq));
}

// f_rho o phi_k = f_{k rho} and g_rho o phi_k = g_{k rho}, exactly.
inline RadialProfile compose_with_stretch(const RadialProfile& prof, const RadialStretch& map) {
    switch (prof.kind()) {
        case ProfileKind::singular_power: return RadialProfile::singular(map.k * prof.rho());
        case ProfileKind::flat_power: return RadialProfile::flat(map.k * prof.rho());
        default:
            throw invalid_input("composition with a stretch is only exact for the two families");
    }
}

// ---------------------------------------------------------------------------
// Jacobian power integrals over balls.
// ---------------------------------------------------------------------------
struct PowerIntegral {
    bool divergent = false;
    double value = 0.0;
    Scalar exponent = Scalar(0);   // n + n(k-1)t, decides convergence exactly
};

// The integral converges iff n + n(k-1) t > 0; equivalently t > -1/(k-1) for
// k > 1 and t < 1/(1-k) for k < 1 (any t for k = 1). Exact in k and t.
inline bool power_integrable(const Scalar& k, int n, const Scalar& t) {
    const Scalar e = Scalar(n) * (Scalar(1) + (k - Scalar(1)) * t);
    return e.sign() > 0;
}

// Closed form over an origin-centered ball:
//   integral = k^t * omega_{n-1} * R^{n + n(k-1)t} / (n + n(k-1)t).
inline PowerIntegral jacobian_power_integral(const RadialStretch& map, const Ball& ball,
                                             const Scalar& t) {
    if (ball.dim() != map.n) throw invalid_input("ball dimension does not match the map");
    if (!ball.origin_centered())
        throw invalid_input("closed-form Jacobian power integral needs an origin-centered ball");
    PowerIntegral out;
    out.exponent = Scalar(map.n) * (Scalar(1) + (map.k - Scalar(1)) * t);
    if (out.exponent.sign() <= 0) {
        out.divergent = true;
        return out;
    }
    const double e = out.exponent.to_double();
    out.value = std::pow(map.k.to_double(), t.to_double()) * unit_sphere_measure(map.n) *
                std::pow(ball.radius, e) / e;
    return out;
}

// Independent check path: the same integral by graded radial quadrature.
inline PowerIntegral jacobian_power_integral_quadrature(const RadialStretch& map, double radius,
                                                        double t, const quad::Options& opts = {}) {
    PowerIntegral out;
    out.exponent = Scalar(map.n) * (Scalar(1) + (map.k - Scalar(1)) * Scalar(t));
    const double kd = map.k.to_double();
    auto integrand = [&](double r) {
        return std::pow(kd * std::pow(r, map.n * (kd - 1.0)), t) * std::pow(r, map.n - 1);
    };
    const auto res = quad::integrate_singular_lower(integrand, 0.0, radius, opts);
    out.divergent = res.divergent;
    out.value = res.divergent ? 0.0 : unit_sphere_measure(map.n) * res.value;
    return out;
}

// Off-center balls have no radial reduction; estimate by seeded Monte Carlo.
// The divergence test is still exact when the closed ball reaches the origin.
inline PowerIntegral jacobian_power_integral_monte_carlo(const RadialStretch& map, const Ball& ball,
                                                         const Scalar& t,
                                                         std::uint64_t seed = kDefaultSeed,
                                                         int samples = 400000) {
    if (ball.dim() != map.n) throw invalid_input("ball dimension does not match the map");
    PowerIntegral out;
    out.exponent = Scalar(map.n) * (Scalar(1) + (map.k - Scalar(1)) * t);
    double center_sq = 0.0;
    for (double c : ball.center) center_sq += c * c;
    const bool touches_origin = center_sq <= ball.radius * ball.radius;
    if (touches_origin && out.exponent.sign() <= 0) {
        out.divergent = true;
        return out;
    }
    Xoshiro256 rng(derive_stream(seed, 0xba11));
    const int n = map.n;
    const double td = t.to_double();
    const double kd = map.k.to_double();
    double sum = 0.0;
    std::vector<double> dir(n);
    for (int i = 0; i < samples; ++i) {
        // uniform point in the ball: gaussian direction, radius ~ R u^{1/n}
        double norm_sq = 0.0;
        for (int j = 0; j < n; j += 2) {
            const double u1 = std::max(rng.uniform01(), 1e-300);
            const double u2 = rng.uniform01();
            const double mag = std::sqrt(-2.0 * std::log(u1));
            dir[j] = mag * std::cos(2.0 * M_PI * u2);
            if (j + 1 < n) dir[j + 1] = mag * std::sin(2.0 * M_PI * u2);
        }
        for (double d : dir) norm_sq += d * d;
        const double scale = ball.radius * std::pow(rng.uniform01(), 1.0 / n) / std::sqrt(norm_sq);
        double r_sq = 0.0;
        for (int j = 0; j < n; ++j) {
            const double xj = ball.center[j] + scale * dir[j];
            r_sq += xj * xj;
        }
        sum += std::pow(kd * std::pow(std::sqrt(r_sq), n * (kd - 1.0)), td);
    }
    out.value = ball_volume(n, ball.radius) * sum / samples;
    return out;
}

// ---------------------------------------------------------------------------
// Change-of-variables self test. For an origin-centered ball B_R, compares
//   LHS = int_B f(phi(z)) |J_phi(z)| dz   and   RHS = int_{phi(B)} f(w) dw
// by two independent radial quadratures and returns |LHS - RHS| / max(|RHS|,1).
// ---------------------------------------------------------------------------
namespace detail {

inline double radial_integral_with_breaks(const std::function<double(double)>& g, double hi,
                                          const std::vector<double>& breaks,
                                          const quad::Options& opts) {
    double total = 0.0;
    double lo = 0.0;
    bool first = true;
    std::vector<double> cuts;
    for (double b : breaks)
        if (b > 0.0 && b < hi) cuts.push_back(b);
    cuts.push_back(hi);
    for (double cut : cuts) {
        const auto piece = first ? quad::integrate_singular_lower(g, 0.0, cut, opts)
                                 : quad::integrate_adaptive(g, lo, cut, opts);
        if (piece.divergent)
            throw quadrature_error("radial integrand is not integrable at the origin");
        total += piece.value;
        lo = cut;
        first = false;
    }
    return total;
}

} // namespace detail

inline double change_of_variables_residual(const RadialStretch& map, const RadialProfile& prof,
                                           const Ball& ball, const quad::Options& opts = {}) {
    if (ball.dim() != map.n) throw invalid_input("ball dimension does not match the map");
    if (!ball.origin_centered())
        throw invalid_input("change-of-variables check needs an origin-centered ball");
    const int n = map.n;
    const double kd = map.k.to_double();
    const double omega = unit_sphere_measure(n);
    const double image_radius = std::pow(ball.radius, kd);

    const auto breaks = prof.breakpoints();
    std::vector<double> pre_breaks;
    for (double b : breaks) pre_breaks.push_back(std::pow(b, 1.0 / kd));

    auto lhs_integrand = [&](double r) {
        return prof(std::pow(r, kd)) * kd * std::pow(r, n * (kd - 1.0)) * std::pow(r, n - 1);
    };
    auto rhs_integrand = [&](double u) { return prof(u) * std::pow(u, n - 1); };

    const double lhs = omega * detail::radial_integral_with_breaks(lhs_integrand, ball.radius,
                                                                   pre_breaks, opts);
    const double rhs = omega * detail::radial_integral_with_breaks(rhs_integrand, image_radius,
                                                                   breaks, opts);
    return std::abs(lhs - rhs) / std::max(std::abs(rhs), 1.0);
}

} // namespace qcc
