#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "qcc/exponents.hpp"

namespace qcc {

// ---------------------------------------------------------------------------
// Target integrability exponent for the composition operator.
//
// 1/q = 1/p + (1/c) |s/n - 1/p|, with c = a on and above the critical line
// (s p >= n) and c = b below it. Returns nullopt when q <= 1; the bounded
// composition statement has nothing to say there, so rejection is a value,
// not an error.
// ---------------------------------------------------------------------------
inline std::optional<Exponent> target_exponent(const Scalar& s, const Exponent& p,
                                               const QCRegularity& reg) {
    if (s.sign() < 0 || s > Scalar(1)) throw invalid_input("smoothness s must lie in [0,1]");
    if (!p.is_infinite() && p.value() <= Scalar(1))
        throw invalid_input("integrability exponent p must exceed 1");
    const Scalar u = p.reciprocal();
    const Scalar d = abs(s / Scalar(reg.n) - u);
    const Scalar c = regime_of(s, p, reg.n) == Regime::subcritical ? reg.b : reg.a;
    const Scalar inv_q = u + d / c;
    if (inv_q >= Scalar(1)) return std::nullopt;
    return Exponent::from_reciprocal(inv_q);
}

// The gap 1/q - 1/p and the horizontal distance d = |1/p - s/n| to the
// critical line, for diagram emission. Both exact for rational inputs.
struct GapGeometry {
    Scalar d;        // horizontal distance to the critical line
    Scalar gap;      // 1/q - 1/p = d / c
    Scalar c;        // Jacobian power used
    Regime regime;
};

inline std::optional<GapGeometry> gap_geometry(const Scalar& s, const Exponent& p,
                                               const QCRegularity& reg) {
    const auto q = target_exponent(s, p, reg);
    if (!q) return std::nullopt;
    const Regime regime = regime_of(s, p, reg.n);
    const Scalar c = regime == Regime::subcritical ? reg.b : reg.a;
    const Scalar d = abs(s / Scalar(reg.n) - p.reciprocal());
    return GapGeometry{d, q->reciprocal() - p.reciprocal(), c, regime};
}

// ---------------------------------------------------------------------------
// Planar supremum powers a_K = K/(K-1), b_K = 1/(K-1). Conformal maps (K = 1)
// admit every power, reported as the unbounded marker.
// ---------------------------------------------------------------------------
struct PlanarPowerBounds {
    std::optional<Scalar> a_sup;
    std::optional<Scalar> b_sup;
    bool unbounded() const { return !a_sup.has_value(); }
};

inline PlanarPowerBounds planar_power_bounds(const Scalar& K) {
    if (K < Scalar(1)) throw invalid_input("distortion K must be >= 1, got " + K.str());
    if (K == Scalar(1)) return {};
    const Scalar denom = K - Scalar(1);
    return {K / denom, Scalar(1) / denom};
}

// Planar open bound: admissible targets satisfy 1/q > 1/p + (1/c_K)|s/2 - 1/p|
// strictly, because the supremum powers a_K, b_K are themselves not attained.
// Conformal maps (K = 1) lose nothing and the bound degenerates to 1/q = 1/p.
struct PlanarTargetBound {
    Scalar inv_q_bound;
    bool strict = true;   // false only in the conformal case
};

inline PlanarTargetBound planar_target_bound(const Scalar& s, const Exponent& p, const Scalar& K) {
    if (s.sign() < 0 || s > Scalar(1)) throw invalid_input("smoothness s must lie in [0,1]");
    const auto bounds = planar_power_bounds(K);
    const Scalar d = abs(s / Scalar(2) - p.reciprocal());
    if (bounds.unbounded()) return {p.reciprocal(), false};
    const Scalar c = regime_of(s, p, 2) == Regime::subcritical ? *bounds.b_sup : *bounds.a_sup;
    return {p.reciprocal() + d / c, true};
}

// ---------------------------------------------------------------------------
// Lebesgue composition target: 1/q = (1/p)(1 + 1/b). No q > 1 restriction.
// ---------------------------------------------------------------------------
inline Exponent lebesgue_target(const Exponent& p, const Scalar& b) {
    if (b.sign() <= 0) throw invalid_input("Jacobian power b must be positive");
    const Scalar inv_q = p.reciprocal() * (Scalar(1) + b.reciprocal());
    return Exponent::from_reciprocal(inv_q);
}

// ---------------------------------------------------------------------------
// First-order Sobolev composition target.
//   p > n : 1/q = 1/p + (1/a)(1/n - 1/p)
//   p = n : q = n
//   p < n : 1/q = 1/p + (1/b)(1/p - 1/n), admissible iff p >= 1 + (n-1)/(nb+1)
// The subcritical admissibility threshold is exactly the q >= 1 condition.
// ---------------------------------------------------------------------------
inline std::optional<Exponent> sobolev_target(const Exponent& p, const QCRegularity& reg) {
    if (!p.is_infinite() && p.value() <= Scalar(1))
        throw invalid_input("integrability exponent p must exceed 1");
    const Scalar u = p.reciprocal();
    const Scalar inv_n = Scalar(1, reg.n);
    const int c = cmp(u, inv_n);
    if (c == 0) return Exponent::from_value(Scalar(reg.n));
    if (c < 0) return Exponent::from_reciprocal(u + (inv_n - u) / reg.a);
    const Scalar threshold = Scalar(1) + Scalar(reg.n - 1) / (Scalar(reg.n) * reg.b + Scalar(1));
    if (p.value() < threshold) return std::nullopt;
    return Exponent::from_reciprocal(u + (u - inv_n) / reg.b);
}

// ---------------------------------------------------------------------------
// Interpolation endpoint indices. The four indices (p0, p1) and (q0, q1)
// are chosen so that the s-convex combinations of their reciprocals recover
// 1/p and 1/q, the 0-indices obey the Lebesgue composition relation and the
// 1-indices the Sobolev one. In the critical and supercritical regimes the
// construction perturbs by a small parameter and the recovered pair
// (p_eff, q_eff) sits within that perturbation of the requested one.
// ---------------------------------------------------------------------------
class InterpolationIndices {
public:
    InterpolationIndices(Exponent p0, Exponent p1, Exponent q0, Exponent q1, Scalar s,
                         Regime regime)
        : p0_(p0), p1_(p1), q0_(q0), q1_(q1), s_(std::move(s)), regime_(regime) {
        if (s_ <= Scalar(0) || s_ >= Scalar(1))
            throw invalid_input("interpolation parameter s must lie in (0,1)");
        if (!q0_.is_infinite() && q0_.value() <= Scalar(1))
            throw invalid_input("interpolation endpoint q0 must exceed 1");
        if (!q1_.is_infinite() && q1_.value() <= Scalar(1))
            throw invalid_input("interpolation endpoint q1 must exceed 1");
    }

    const Exponent& p0() const { return p0_; }
    const Exponent& p1() const { return p1_; }
    const Exponent& q0() const { return q0_; }
    const Exponent& q1() const { return q1_; }
    const Scalar& s() const { return s_; }
    Regime regime() const { return regime_; }

    // (1-s)/p0 + s/p1 and (1-s)/q0 + s/q1, the recovered interpolands.
    Exponent p_effective() const {
        return Exponent::from_reciprocal((Scalar(1) - s_) * p0_.reciprocal() + s_ * p1_.reciprocal());
    }
    Exponent q_effective() const {
        return Exponent::from_reciprocal((Scalar(1) - s_) * q0_.reciprocal() + s_ * q1_.reciprocal());
    }

private:
    Exponent p0_, p1_, q0_, q1_;
    Scalar s_;
    Regime regime_;
};

// Default perturbation parameter, halving the two proof-side constraints:
// eps0 < log 2 / log C_b and (1-s) eps0 / s < |1/(sp) - 1/n| / 2.
inline double default_perturbation(Regime regime, const Scalar& s, const Exponent& p,
                                   const QCRegularity& reg) {
    const double cb = reg.C_b.to_double();
    double bound = cb > 1.0 ? std::log(2.0) / std::log(cb) : 1.0;
    if (regime == Regime::supercritical) {
        const double sd = s.to_double();
        const double inv_sp = p.reciprocal().to_double() / sd;
        const double slack = 0.5 * std::abs(inv_sp - 1.0 / reg.n) * sd / (1.0 - sd);
        bound = std::min(bound, slack);
    }
    return bound / 2.0;
}

inline InterpolationIndices interpolation_indices(const Scalar& s, const Exponent& p,
                                                  const Exponent& q, const QCRegularity& reg,
                                                  Regime regime,
                                                  std::optional<double> eps0 = std::nullopt) {
    if (s <= Scalar(0) || s >= Scalar(1))
        throw invalid_input("interpolation parameter s must lie in (0,1)");
    const Scalar n(reg.n);
    const Scalar inv_n = Scalar(1) / n;
    const Scalar u = p.reciprocal();
    const Scalar v = q.reciprocal();

    if (regime == Regime::subcritical) {
        // (1 - 1/p)/(n - s) = (1 - 1/p_l)/(n - l) for l in {0, 1}, same for q.
        if (regime_of(s, p, reg.n) != Regime::subcritical)
            throw invalid_input("subcritical indices require sp < n");
        const Scalar expected = u + (u - s * inv_n) / reg.b;
        if (abs(v - expected).to_double() > 1e-12)
            throw invalid_input("q is not the subcritical composition target for (s,p,b)");
        auto lambda_index = [&](const Scalar& inv, int lambda) {
            const Scalar ratio = (Scalar(1) - inv) / (n - s);
            return Exponent::from_reciprocal(Scalar(1) - ratio * (n - Scalar(lambda)));
        };
        return InterpolationIndices(lambda_index(u, 0), lambda_index(u, 1),
                                    lambda_index(v, 0), lambda_index(v, 1), s, regime);
    }

    if (regime == Regime::critical) {
        // Approximate the self-map exponent from the subcritical side: pick
        // 1/q_aux slightly above s/n, recover p_aux from the composition
        // relation, then send the 0-indices through the straight lines meeting
        // the critical axis and put both 1-indices at n.
        if (regime_of(s, p, reg.n) != Regime::critical)
            throw invalid_input("critical indices require sp = n");
        const double e0 = eps0.value_or(default_perturbation(regime, s, p, reg));
        if (e0 <= 0.0) throw invalid_input("perturbation parameter must be positive");
        const double window = (1.0 - s.to_double()) / reg.n;   // keeps 1/q_aux below 1/n
        const Scalar eps(std::min(e0, window) / 2.0);
        const Scalar inv_q_aux = s * inv_n + eps;
        const Scalar inv_p_aux = (inv_q_aux + s * inv_n / reg.b) / (Scalar(1) + reg.b.reciprocal());
        const Scalar one_minus_s = Scalar(1) - s;
        const Exponent p0 = Exponent::from_reciprocal(inv_n - (inv_n - inv_p_aux) / one_minus_s);
        const Exponent q0 = Exponent::from_reciprocal(inv_n - (inv_n - inv_q_aux) / one_minus_s);
        const Exponent at_n = Exponent::from_value(n);
        return InterpolationIndices(p0, at_n, q0, at_n, s, regime);
    }

    // Supercritical: 1/q0 sits inside (0, eps0), p0 pairs with it through the
    // Lebesgue relation, p1 restores the p-convex combination and q1 is the
    // Sobolev target of p1.
    if (regime_of(s, p, reg.n) != Regime::supercritical)
        throw invalid_input("supercritical indices require sp > n");
    const Scalar expected = u + (s * inv_n - u) / reg.a;
    if (abs(v - expected).to_double() > 1e-12)
        throw invalid_input("q is not the supercritical composition target for (s,p,a)");
    const double e0 = eps0.value_or(default_perturbation(regime, s, p, reg));
    if (e0 <= 0.0) throw invalid_input("perturbation parameter must be positive");
    const Scalar inv_q0(std::min(e0, u.to_double()) / 2.0);
    const Scalar inv_p0 = inv_q0 * reg.b / (reg.b + Scalar(1));
    const Scalar inv_p1 = (u - (Scalar(1) - s) * inv_p0) / s;
    const Scalar inv_q1 = inv_p1 + (inv_n - inv_p1) / reg.a;
    return InterpolationIndices(Exponent::from_reciprocal(inv_p0), Exponent::from_reciprocal(inv_p1),
                                Exponent::from_reciprocal(inv_q0), Exponent::from_reciprocal(inv_q1),
                                s, regime);
}

// ---------------------------------------------------------------------------
// Smoothness-loss exponents.
// ---------------------------------------------------------------------------

// Planar: beta = s - (K-1)(2/p - s) when positive, else rejection.
inline std::optional<Scalar> smoothness_loss_planar(const Scalar& s, const Exponent& p,
                                                    const Scalar& K) {
    if (K < Scalar(1)) throw invalid_input("distortion K must be >= 1");
    if (regime_of(s, p, 2) != Regime::subcritical)
        throw invalid_input("planar smoothness loss requires sp < 2");
    const Scalar beta = s - (K - Scalar(1)) * (Scalar(2) * p.reciprocal() - s);
    if (beta.sign() <= 0) return std::nullopt;
    return beta;
}

// Volume-growth exponent alpha = (b+1)/b.
inline Scalar growth_exponent_from_b(const Scalar& b) {
    if (b.sign() <= 0) throw invalid_input("Jacobian power b must be positive");
    return (b + Scalar(1)) / b;
}

// General: beta = n/q - alpha (n/q - s), valid on and below the critical line
// (at sq = n it degenerates to beta = s).
inline Scalar smoothness_loss_from_growth(const Scalar& s, const Exponent& q, const Scalar& alpha,
                                          int n) {
    if (alpha < Scalar(1)) throw invalid_input("growth exponent alpha must be >= 1");
    if (regime_of(s, q, n) == Regime::supercritical)
        throw invalid_input("smoothness loss requires sq <= n");
    const Scalar n_over_q = Scalar(n) * q.reciprocal();
    return n_over_q - alpha * (n_over_q - s);
}

} // namespace qcc
