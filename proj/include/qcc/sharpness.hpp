#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcc/exponent_calculus.hpp"
#include "qcc/norm_estimation.hpp"
#include "qcc/radial_maps.hpp"

namespace qcc {

enum class WitnessRegime { subcritical, supercritical };

inline const char* to_string(WitnessRegime r) {
    return r == WitnessRegime::subcritical ? "subcritical" : "supercritical";
}

// One verified strict inequality lhs > rhs, kept as exact scalars so reports
// can show both sides and the margin.
struct InequalityCheck {
    std::string name;
    Scalar lhs;
    Scalar rhs;
    bool holds = false;
    double margin = 0.0;
};

// Witness that a target exponent q' better than the composition theorem
// allows is falsified by an explicit pair (stretch, profile): the base
// profile lies in the source space while its composition with the stretch
// escapes the target space.
struct SharpnessWitness {
    WitnessRegime regime;
    int n = 2;
    Scalar s;
    Exponent p = Exponent::infinity();
    Exponent q_prime = Exponent::infinity();
    Scalar jacobian_power;          // b below the critical line, a above it
    Scalar epsilon;                  // slack of q' over the theorem target
    double delta_max = 0.0;
    std::string delta_binding;       // which constraint capped delta_max
    Scalar delta;                    // dyadic, strictly inside (0, delta_max)
    Scalar k;                        // stretch exponent
    Scalar rho;                      // base profile exponent
    Scalar composed_rho;             // k * rho
    Scalar base_threshold;           // membership threshold at (s, p)
    Scalar target_threshold;         // membership threshold at (s, q')
    std::vector<InequalityCheck> checks;

    bool all_hold() const {
        for (const auto& c : checks)
            if (!c.holds) return false;
        return true;
    }

    ProfileKind family() const {
        return regime == WitnessRegime::subcritical ? ProfileKind::singular_power
                                                    : ProfileKind::flat_power;
    }
    RadialProfile base_profile() const {
        return regime == WitnessRegime::subcritical ? RadialProfile::singular(rho)
                                                    : RadialProfile::flat(rho);
    }
    RadialProfile composed_profile() const {
        return regime == WitnessRegime::subcritical ? RadialProfile::singular(composed_rho)
                                                    : RadialProfile::flat(composed_rho);
    }
    RadialStretch stretch() const { return RadialStretch(k, n); }
};

namespace detail {

// delta_max/2 rounded down to a dyadic rational with a small denominator so
// the whole inequality chain stays inside exact int64 arithmetic.
inline std::optional<Scalar> dyadic_half(double delta_max) {
    for (int bits : {20, 40}) {
        const double scaled = std::ldexp(delta_max / 2.0, bits);
        if (scaled >= 1.0 && scaled < 9.0e18)
            return Scalar(Rat(static_cast<std::int64_t>(scaled), std::int64_t(1) << bits));
    }
    return std::nullopt;
}

inline void push_check(std::vector<InequalityCheck>& checks, std::string name, const Scalar& lhs,
                       const Scalar& rhs) {
    InequalityCheck c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.holds = lhs > rhs;
    c.margin = (lhs - rhs).to_double();
    checks.push_back(std::move(c));
}

} // namespace detail

// ---------------------------------------------------------------------------
// Witness construction. Returns nullopt exactly when q' does not strictly
// beat the theorem target (epsilon <= 0) — nothing to falsify then.
// ---------------------------------------------------------------------------
inline std::optional<SharpnessWitness> build_witness(WitnessRegime regime, const Scalar& s,
                                                     const Exponent& p, const Exponent& q_prime,
                                                     int n, const Scalar& a_or_b) {
    if (n < 2) throw invalid_input("ambient dimension must be >= 2");
    if (s.sign() < 0 || s > Scalar(1)) throw invalid_input("smoothness s must lie in [0,1]");
    if (p.is_infinite() || p.value() <= Scalar(1))
        throw invalid_input("witness construction needs 1 < p < infinity");
    if (q_prime.is_infinite() || q_prime.value() <= Scalar(1))
        throw invalid_input("witness construction needs 1 < q' < infinity");
    if (a_or_b.sign() <= 0) throw invalid_input("Jacobian power must be positive");

    SharpnessWitness w;
    w.regime = regime;
    w.n = n;
    w.s = s;
    w.p = p;
    w.q_prime = q_prime;
    w.jacobian_power = a_or_b;

    const Scalar u = p.reciprocal();
    const Scalar v = q_prime.reciprocal();
    const Scalar nn(n);

    if (regime == WitnessRegime::subcritical) {
        if (regime_of(s, p, n) != Regime::subcritical)
            throw invalid_input("subcritical witness needs sp < n");
        const Scalar& b = a_or_b;
        w.epsilon = u + (u - s / nn) / b - v;
        if (w.epsilon.sign() <= 0) return std::nullopt;   // q' does not beat the theorem

        const Scalar X = nn * v - s;                      // n/q' - s
        const Scalar lift = X + nn * w.epsilon;           // equals (1 + 1/b)(n/p - s) > 0
        double dmax = 1.0;
        w.delta_binding = "unconstrained";
        if (X.sign() > 0) {
            dmax = 1.0 - std::sqrt(X.to_double() / lift.to_double());
            w.delta_binding = "slack-inequality";
        }
        w.delta_max = dmax;
        const auto delta = detail::dyadic_half(dmax);
        if (!delta) return std::nullopt;                  // slack too thin to represent
        w.delta = *delta;
        const Scalar one_minus = Scalar(1) - w.delta;
        w.k = one_minus * (b.reciprocal() + Scalar(1));
        const Scalar T = nn * u - s;                      // n/p - s > 0
        w.rho = T * (Scalar(2) - w.delta) / Scalar(2);    // midpoint of ((1-d)T, T)
        w.composed_rho = w.k * w.rho;
        w.base_threshold = T;
        w.target_threshold = X;

        const Scalar chain = one_minus * one_minus * lift;
        detail::push_check(w.checks, "epsilon-positive", w.epsilon, Scalar(0));
        detail::push_check(w.checks, "delta-positive", w.delta, Scalar(0));
        detail::push_check(w.checks, "delta-slack-inequality", chain, X);
        detail::push_check(w.checks, "rho-above-lower-edge", w.rho, one_minus * T);
        detail::push_check(w.checks, "rho-below-source-threshold", T, w.rho);
        detail::push_check(w.checks, "rho-positive", w.rho, Scalar(0));
        detail::push_check(w.checks, "chain-lower-bound", w.composed_rho, chain);
        detail::push_check(w.checks, "composition-escapes-target", w.composed_rho, X);
        return w;
    }

    if (regime_of(s, p, n) != Regime::supercritical)
        throw invalid_input("supercritical witness needs sp > n");
    const Scalar& a = a_or_b;
    if (a <= Scalar(1)) throw invalid_input("supercritical witness needs a > 1");
    w.epsilon = u + (s / nn - u) / a - v;
    if (w.epsilon.sign() <= 0) return std::nullopt;

    const Scalar X = s - nn * v;                          // s - n/q' > 0 here
    const Scalar drop = X - nn * w.epsilon;               // equals (1 - 1/a)(s - n/p)
    double dmax_slack = std::numeric_limits<double>::infinity();
    if (drop.sign() > 0) dmax_slack = std::sqrt(X.to_double() / drop.to_double()) - 1.0;
    const double dmax_cap = (a - Scalar(1)).reciprocal().to_double();   // keeps k < 1
    if (dmax_slack <= dmax_cap) {
        w.delta_max = dmax_slack;
        w.delta_binding = "slack-inequality";
    } else {
        w.delta_max = dmax_cap;
        w.delta_binding = "stretch-cap";
    }
    const auto delta = detail::dyadic_half(w.delta_max);
    if (!delta) return std::nullopt;
    w.delta = *delta;
    const Scalar one_plus = Scalar(1) + w.delta;
    w.k = one_plus * (Scalar(1) - a.reciprocal());
    const Scalar T = s - nn * u;                          // s - n/p > 0
    w.rho = T * (Scalar(2) + w.delta) / Scalar(2);        // midpoint of (T, (1+d)T)
    w.composed_rho = w.k * w.rho;
    w.base_threshold = T;
    w.target_threshold = X;

    const Scalar chain = one_plus * one_plus * drop;
    detail::push_check(w.checks, "epsilon-positive", w.epsilon, Scalar(0));
    detail::push_check(w.checks, "delta-positive", w.delta, Scalar(0));
    detail::push_check(w.checks, "delta-slack-inequality", X, chain);
    detail::push_check(w.checks, "stretch-contracts", Scalar(1), w.k);
    detail::push_check(w.checks, "rho-above-source-threshold", w.rho, T);
    detail::push_check(w.checks, "rho-below-upper-edge", one_plus * T, w.rho);
    detail::push_check(w.checks, "chain-upper-bound", chain, w.composed_rho);
    detail::push_check(w.checks, "composition-escapes-target", X, w.composed_rho);
    return w;
}

// ---------------------------------------------------------------------------
// Numerical verification of a witness: the analytic criteria must give
// (member, non-member) for (base at (s,p), composed at (s,q')) and the
// numerical classifier is compared against them. Disagreements are reported,
// never raised.
// ---------------------------------------------------------------------------
struct MembershipComparison {
    Membership analytic = Membership::boundary;
    Verdict numerical = Verdict::inconclusive;
    NormEstimate estimate;
    double margin = 0.0;   // |rho - threshold| at the space in question
};

struct WitnessReport {
    SharpnessWitness witness;
    MembershipComparison base;
    MembershipComparison composed;
    bool analytic_as_expected = false;
    bool numerical_consistent = false;   // no definite verdict contradicts the analytic one
};

inline WitnessReport verify_witness(const SharpnessWitness& w,
                                    const ClassifierOptions& opts = {},
                                    std::uint64_t seed = kDefaultSeed) {
    WitnessReport rep;
    rep.witness = w;
    const Ball domain = Ball::origin(w.n);

    const auto base_prof = w.base_profile();
    rep.base.analytic = analytic_membership(base_prof, w.s, w.p, w.n);
    rep.base.margin = std::abs((w.rho - w.base_threshold).to_double());
    const FractionalNormSpec base_spec(w.s, w.p, w.n, domain);
    rep.base.estimate = fractional_seminorm(base_prof, base_spec, seed);
    rep.base.numerical = classify_from_estimate(rep.base.estimate, opts);

    const auto comp_prof = w.composed_profile();
    rep.composed.analytic = analytic_membership(comp_prof, w.s, w.q_prime, w.n);
    rep.composed.margin = std::abs((w.composed_rho - w.target_threshold).to_double());
    const FractionalNormSpec comp_spec(w.s, w.q_prime, w.n, domain);
    rep.composed.estimate = fractional_seminorm(comp_prof, comp_spec, seed);
    rep.composed.numerical = classify_from_estimate(rep.composed.estimate, opts);

    rep.analytic_as_expected = rep.base.analytic == Membership::member &&
                               rep.composed.analytic == Membership::non_member;
    auto consistent = [](Membership truth, Verdict v) {
        if (v == Verdict::inconclusive) return true;
        return (v == Verdict::member) == (truth == Membership::member);
    };
    rep.numerical_consistent = consistent(rep.base.analytic, rep.base.numerical) &&
                               consistent(rep.composed.analytic, rep.composed.numerical);
    return rep;
}

// ---------------------------------------------------------------------------
// Positive direction: inside the admissible window the composed profile must
// stay a member of the theorem's target space — no false sharpness.
// ---------------------------------------------------------------------------
struct SweepCase {
    Scalar k;
    Scalar rho;
    Exponent q = Exponent::infinity();
    Scalar composed_rho;
    Membership analytic = Membership::boundary;
    Verdict numerical = Verdict::inconclusive;
    double composed_margin = 0.0;
};

struct SweepReport {
    std::vector<SweepCase> cases;
    bool all_members(bool allow_inconclusive = false) const {
        for (const auto& c : cases) {
            if (c.analytic != Membership::member) return false;
            if (c.numerical == Verdict::non_member) return false;
            if (!allow_inconclusive && c.numerical != Verdict::member) return false;
        }
        return true;
    }
};

// The stretch must satisfy the Jacobian power bounds for the given data:
// b < 1/(k-1) when k > 1, a < 1/(1-k) when k < 1.
inline bool stretch_admissible(const Scalar& k, const QCRegularity& reg) {
    if (k == Scalar(1)) return true;
    if (k > Scalar(1)) return power_integrable(k, reg.n, -reg.b);
    return power_integrable(k, reg.n, reg.a);
}

inline SweepReport positive_direction_sweep(const Scalar& s, const Exponent& p,
                                            const QCRegularity& reg,
                                            const std::vector<Scalar>& k_grid,
                                            const std::vector<Scalar>& rho_factors,
                                            const ClassifierOptions& opts = {},
                                            std::uint64_t seed = kDefaultSeed) {
    const auto q = target_exponent(s, p, reg);
    if (!q) throw invalid_input("the composition theorem rejects this (s, p); nothing to sweep");
    const Regime regime = regime_of(s, p, reg.n);
    const Scalar threshold_p = membership_threshold(
        regime == Regime::subcritical ? ProfileKind::singular_power : ProfileKind::flat_power, s, p,
        reg.n);
    SweepReport report;
    const Ball domain = Ball::origin(reg.n);
    for (const auto& k : k_grid) {
        if (!stretch_admissible(k, reg))
            throw invalid_input("stretch exponent outside the admissible window for (a, b)");
        for (const auto& factor : rho_factors) {
            SweepCase c;
            c.k = k;
            c.q = *q;
            if (regime == Regime::subcritical) {
                // rho strictly inside (0, n/p - s): factor in (0, 1)
                if (factor.sign() <= 0 || factor >= Scalar(1))
                    throw invalid_input("subcritical sweep factors must lie in (0,1)");
                c.rho = factor * threshold_p;
            } else {
                // rho strictly above s - n/p: factor > 1
                if (factor <= Scalar(1))
                    throw invalid_input("supercritical sweep factors must exceed 1");
                c.rho = factor * threshold_p;
            }
            c.composed_rho = k * c.rho;
            const auto composed = regime == Regime::subcritical
                                      ? RadialProfile::singular(c.composed_rho)
                                      : RadialProfile::flat(c.composed_rho);
            c.analytic = analytic_membership(composed, s, *q, reg.n);
            const Scalar threshold_q = membership_threshold(composed.kind(), s, *q, reg.n);
            c.composed_margin = std::abs((c.composed_rho - threshold_q).to_double());
            const FractionalNormSpec spec(s, *q, reg.n, domain);
            c.numerical = classify_from_estimate(fractional_seminorm(composed, spec, seed), opts);
            report.cases.push_back(std::move(c));
        }
    }
    return report;
}

} // namespace qcc
