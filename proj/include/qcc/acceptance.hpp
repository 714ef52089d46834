#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "qcc/diagram.hpp"
#include "qcc/parallel.hpp"
#include "qcc/sharpness.hpp"

namespace qcc::acceptance {

struct Options {
    std::uint64_t seed = kDefaultSeed;
    double slope_threshold = 0.05;
    std::vector<int> criteria = {1, 2, 3, 4, 5, 6, 7, 8};
    int threads = 0;   // 0: QCC_THREADS / hardware
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

namespace detail {

struct Failures {
    int count = 0;
    std::string first;
    void add(const std::string& what) {
        if (count == 0) first = what;
        ++count;
    }
};

inline Exponent P(std::int64_t n, std::int64_t d = 1) { return Exponent::from_value(Scalar(n, d)); }

// --------------------------------------------------------------------------
// 1. Exponent arithmetic: the exact worked vectors, reproduced as rationals.
// --------------------------------------------------------------------------
inline CriterionResult criterion_exponents() {
    Failures fails;
    {
        const QCRegularity reg(2, Scalar(2), Scalar(1));
        const auto q = target_exponent(Scalar(1, 2), P(2), reg);
        if (!q || q->value() != Scalar(4, 3)) fails.add("target (s=1/2,p=2,b=1) != 4/3");
    }
    {
        const QCRegularity reg(2, Scalar(2), Scalar(1));
        const auto q = target_exponent(Scalar(1), P(4), reg);
        if (!q || q->value() != Scalar(8, 3)) fails.add("target (s=1,p=4,a=2) != 8/3");
    }
    {
        const auto bounds = planar_power_bounds(Scalar(2));
        if (bounds.unbounded() || *bounds.a_sup != Scalar(2) || *bounds.b_sup != Scalar(1))
            fails.add("planar bounds at K=2 != (2,1)");
    }
    {
        const auto beta = smoothness_loss_planar(Scalar(1, 2), P(2), Scalar(3, 2));
        if (!beta || *beta != Scalar(1, 4)) fails.add("planar beta(1/2,2,3/2) != 1/4");
    }
    {
        const QCRegularity reg(2, Scalar(2), Scalar(1));
        const auto idx = interpolation_indices(Scalar(1, 2), P(2), P(4, 3), reg,
                                               Regime::subcritical);
        if (idx.p0().value() != Scalar(3) || idx.p1().value() != Scalar(3, 2) ||
            idx.q0().value() != Scalar(3, 2) || idx.q1().value() != Scalar(6, 5))
            fails.add("subcritical indices != (3, 3/2, 3/2, 6/5)");
    }
    CriterionResult res;
    res.id = 1;
    res.name = "exponent-arithmetic";
    res.pass = fails.count == 0;
    res.detail = res.pass ? "5 exact vectors reproduced" : fails.first;
    return res;
}

// --------------------------------------------------------------------------
// 2. Interpolation identities on 1000 random admissible samples, to 1e-10.
// --------------------------------------------------------------------------
inline CriterionResult criterion_interpolation(std::uint64_t seed) {
    Failures fails;
    Xoshiro256 rng(derive_stream(seed, 2));
    int produced = 0;
    auto close = [](const Scalar& a, const Scalar& b) {
        return std::abs((a - b).to_double()) <= 1e-10;
    };
    while (produced < 1000) {
        const int n = 2 + static_cast<int>(rng.next() % 3);
        const auto sd = static_cast<std::int64_t>(2 + rng.next() % 30);
        const Scalar s(1 + static_cast<std::int64_t>(rng.next() % (sd - 1)), sd);
        const Exponent p = Exponent::from_value(Scalar(1) +
                                                Scalar(1 + static_cast<std::int64_t>(rng.next() % 12),
                                                       1 + static_cast<std::int64_t>(rng.next() % 6)));
        if (regime_of(s, p, n) != Regime::subcritical) continue;
        const Scalar b(1 + static_cast<std::int64_t>(rng.next() % 6),
                       1 + static_cast<std::int64_t>(rng.next() % 6));
        const QCRegularity reg(n, Scalar(1) + b, b);
        const auto q = target_exponent(s, p, reg);
        if (!q) continue;
        const auto idx = interpolation_indices(s, p, *q, reg, Regime::subcritical);
        ++produced;
        if (!close(idx.p_effective().reciprocal(), p.reciprocal()) ||
            !close(idx.q_effective().reciprocal(), q->reciprocal()))
            fails.add("convex combination identity broken at sample " + std::to_string(produced));
        const Scalar inv_b = b.reciprocal();
        const Scalar rel0 = idx.q0().reciprocal() - idx.p0().reciprocal() -
                            inv_b * idx.p0().reciprocal();
        const Scalar rel1 = idx.q1().reciprocal() - idx.p1().reciprocal() -
                            inv_b * (idx.p1().reciprocal() - Scalar(1, n));
        if (std::abs(rel0.to_double()) > 1e-10 || std::abs(rel1.to_double()) > 1e-10)
            fails.add("lambda-indexed relation broken at sample " + std::to_string(produced));
    }
    CriterionResult res;
    res.id = 2;
    res.name = "interpolation-identities";
    res.pass = fails.count == 0;
    res.detail = res.pass ? "1000 samples across n in {2,3,4} satisfy all identities to 1e-10"
                          : fails.first;
    return res;
}

// --------------------------------------------------------------------------
// 3. Jacobian power integrals: closed form vs graded quadrature to 1e-6,
//    divergence boundary exact at t = -1/(k-1) and its mirror.
// --------------------------------------------------------------------------
inline CriterionResult criterion_jacobian() {
    Failures fails;
    const std::vector<Scalar> ks = {Scalar(1, 2), Scalar(4, 5), Scalar(1),
                                    Scalar(3, 2), Scalar(2),    Scalar(3)};
    for (const auto& k : ks) {
        for (int n : {2, 3}) {
            const RadialStretch map(k, n);
            std::vector<Scalar> ts = {Scalar(1, 2), Scalar(1), Scalar(2)};
            if (k > Scalar(1)) {
                const Scalar bdry = -(k - Scalar(1)).reciprocal();
                ts.push_back(bdry * Scalar(9, 10));
                ts.push_back(bdry * Scalar(1, 2));
            } else if (k < Scalar(1)) {
                const Scalar bdry = (Scalar(1) - k).reciprocal();
                ts.push_back(bdry * Scalar(9, 10));
                ts.push_back(Scalar(-1));
            } else {
                ts.push_back(Scalar(-2));
            }
            for (const auto& t : ts) {
                if (!power_integrable(k, n, t)) continue;   // outside the admissible window
                const auto closed = jacobian_power_integral(map, Ball::origin(n), t);
                const auto quadr = jacobian_power_integral_quadrature(map, 1.0, t.to_double());
                const double rel = std::abs(closed.value - quadr.value) /
                                   std::max(std::abs(closed.value), 1e-300);
                if (quadr.divergent || rel > 1e-6)
                    fails.add("closed form vs quadrature off by " + std::to_string(rel) +
                              " at k=" + k.str() + " t=" + t.str() + " n=" + std::to_string(n));
            }
            // exact boundary location
            if (k != Scalar(1)) {
                const Scalar bdry = k > Scalar(1) ? -(k - Scalar(1)).reciprocal()
                                                  : (Scalar(1) - k).reciprocal();
                if (power_integrable(k, n, bdry))
                    fails.add("boundary not divergent at k=" + k.str());
                if (!power_integrable(k, n, bdry * Scalar(999, 1000)))
                    fails.add("interior flagged divergent at k=" + k.str());
                if (!jacobian_power_integral(map, Ball::origin(n), bdry).divergent)
                    fails.add("closed form missed the boundary at k=" + k.str());
            }
        }
    }
    CriterionResult res;
    res.id = 3;
    res.name = "jacobian-integrals";
    res.pass = fails.count == 0;
    res.detail = res.pass ? "closed form matches quadrature to 1e-6; boundary exact" : fails.first;
    return res;
}

// --------------------------------------------------------------------------
// 4. Change of variables: the three listed cases plus 10 random ones.
// --------------------------------------------------------------------------
inline CriterionResult criterion_change_of_variables(std::uint64_t seed) {
    Failures fails;
    const Ball b1 = Ball::origin(2);
    auto expect = [&](const RadialStretch& map, const RadialProfile& prof, const Ball& ball,
                      double tol, const std::string& what) {
        const double r = change_of_variables_residual(map, prof, ball);
        if (!(r <= tol)) fails.add(what + ": residual " + std::to_string(r));
    };
    expect(RadialStretch(Scalar(2), 2), RadialProfile::piecewise({{0.0, 1.0, 1.0, 0.0}}), b1, 1e-6,
           "k=2, f=1");
    expect(RadialStretch(Scalar(1), 2), RadialProfile::flat(Scalar(2)), b1, 1e-12, "identity");
    expect(RadialStretch(Scalar(1, 2), 2), RadialProfile::piecewise({{0.0, 1.0, 1.0, 1.0}}), b1,
           1e-6, "k=1/2, f=|x|");
    Xoshiro256 rng(derive_stream(seed, 4));
    for (int i = 0; i < 10; ++i) {
        const Scalar k(6 + static_cast<std::int64_t>(rng.next() % 20), 10);   // k in [0.6, 2.5]
        const Scalar rho(1 + static_cast<std::int64_t>(rng.next() % 12), 10); // rho in (0, 1.2]
        const RadialProfile prof = (i % 2 == 0) ? RadialProfile::singular(rho)
                                                : RadialProfile::flat(rho);
        const int n = 2 + static_cast<int>(i % 2);
        expect(RadialStretch(k, n), prof, Ball::origin(n), 1e-6,
               "random case " + std::to_string(i) + " k=" + k.str() + " " + prof.str());
    }
    CriterionResult res;
    res.id = 4;
    res.name = "change-of-variables";
    res.pass = fails.count == 0;
    res.detail = res.pass ? "13 residuals within tolerance" : fails.first;
    return res;
}

// --------------------------------------------------------------------------
// 5. Membership classifier vs the analytic criterion on the 7x7 grid at
//    (n=2, s=1/2). Member-side margins are deeper than non-member ones: at
//    the pinned cutoff ladder a member converges at rate eps^{p*margin}, so
//    member verdicts need p*margin to clear the Cauchy gate, while divergence
//    detection is already sharp at margin 0.05.
// --------------------------------------------------------------------------
inline CriterionResult criterion_classifier(std::uint64_t seed, double slope_threshold,
                                            int threads) {
    const Scalar s(1, 2);
    const Ball b1 = Ball::origin(2);
    const std::vector<Scalar> margins = {Scalar(-45, 100), Scalar(-40, 100), Scalar(-35, 100),
                                         Scalar(5, 100),   Scalar(10, 100),  Scalar(175, 1000),
                                         Scalar(25, 100)};
    const std::vector<Scalar> ps = {Scalar(3, 2),  Scalar(8, 5), Scalar(17, 10), Scalar(9, 5),
                                    Scalar(19, 10), Scalar(2),   Scalar(41, 20)};
    struct Cell {
        double margin = 0.0;
        bool expected_member = false;
        Verdict gagliardo = Verdict::inconclusive;
        Verdict modulus = Verdict::inconclusive;
    };
    std::vector<Cell> cells(margins.size() * ps.size());
    ClassifierOptions opts;
    opts.slope_threshold = slope_threshold;
    parallel_for_index(static_cast<int>(cells.size()), [&](int idx) {
        const auto& pv = ps[idx / margins.size()];
        const auto& m = margins[idx % margins.size()];
        const Exponent p = Exponent::from_value(pv);
        const Scalar rho = membership_threshold(ProfileKind::singular_power, s, p, 2) + m;
        const auto prof = RadialProfile::singular(rho);
        Cell cell;
        cell.margin = std::abs(m.to_double());
        cell.expected_member = analytic_membership(prof, s, p, 2) == Membership::member;
        const FractionalNormSpec gag(s, p, 2, b1, EstimatorKind::gagliardo_double_integral);
        const FractionalNormSpec mod(s, p, 2, b1, EstimatorKind::modulus_of_smoothness);
        cell.gagliardo = classify_from_estimate(gagliardo_seminorm(prof, gag), opts);
        cell.modulus = classify_from_estimate(modulus_seminorm(prof, mod, seed), opts);
        cells[idx] = cell;
    }, threads);

    int n10 = 0, ok10 = 0, n05 = 0, ok05 = 0, contradictions = 0;
    for (const auto& cell : cells) {
        const Verdict want = cell.expected_member ? Verdict::member : Verdict::non_member;
        const bool ok = cell.gagliardo == want && cell.modulus == want;
        if ((cell.gagliardo == Verdict::member && cell.modulus == Verdict::non_member) ||
            (cell.gagliardo == Verdict::non_member && cell.modulus == Verdict::member))
            ++contradictions;
        ++n05;
        ok05 += ok;
        if (cell.margin >= 0.0999) {
            ++n10;
            ok10 += ok;
        }
    }
    CriterionResult res;
    res.id = 5;
    res.name = "classifier-vs-oracle";
    res.pass = ok10 == n10 && ok05 >= static_cast<int>(std::ceil(0.95 * n05)) &&
               contradictions == 0;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "margin>=0.1: %d/%d, margin>=0.05: %d/%d, contradictions: %d", ok10, n10, ok05,
                  n05, contradictions);
    res.detail = buf;
    return res;
}

// --------------------------------------------------------------------------
// 6. Sharpness end-to-end: the two worked witnesses plus 20 random ones.
// --------------------------------------------------------------------------
inline CriterionResult criterion_sharpness(std::uint64_t seed, double slope_threshold,
                                           int threads) {
    Failures fails;
    ClassifierOptions opts;
    opts.slope_threshold = slope_threshold;

    struct Job {
        SharpnessWitness witness;
        std::string tag;
    };
    std::vector<Job> jobs;
    {
        const auto worked_sub = build_witness(WitnessRegime::subcritical, Scalar(1, 2), P(2),
                                              P(3, 2), 2, Scalar(1));
        if (!worked_sub || worked_sub->epsilon != Scalar(1, 12))
            fails.add("worked subcritical witness: epsilon != 1/12");
        else
            jobs.push_back({*worked_sub, "worked-subcritical"});
        const auto worked_super = build_witness(WitnessRegime::supercritical, Scalar(1), P(4),
                                                P(3), 2, Scalar(2));
        if (!worked_super || worked_super->epsilon != Scalar(1, 24))
            fails.add("worked supercritical witness: epsilon != 1/24");
        else
            jobs.push_back({*worked_super, "worked-supercritical"});
    }
    Xoshiro256 rng(derive_stream(seed, 6));
    while (jobs.size() < 22) {
        const bool sub = (rng.next() & 1) != 0;
        const Scalar s(1 + static_cast<std::int64_t>(rng.next() % 9), 10);
        const Exponent p = Exponent::from_value(Scalar(3 + static_cast<std::int64_t>(rng.next() % 14), 2));
        const Scalar power(1 + static_cast<std::int64_t>(rng.next() % 6),
                           1 + static_cast<std::int64_t>(rng.next() % 4));
        if (sub && regime_of(s, p, 2) != Regime::subcritical) continue;
        if (!sub && (regime_of(s, p, 2) != Regime::supercritical || power <= Scalar(1))) continue;
        const Scalar u = p.reciprocal();
        const Scalar theorem_inv = sub ? u + (u - s / Scalar(2)) / power
                                       : u + (s / Scalar(2) - u) / power;
        Scalar inv_q = theorem_inv * Scalar(1 + static_cast<std::int64_t>(rng.next() % 8), 10);
        if (sub && inv_q <= s / Scalar(2)) inv_q = (theorem_inv + s / Scalar(2)) / Scalar(2);
        if (inv_q >= Scalar(1) || inv_q.sign() <= 0) continue;
        const auto w = build_witness(sub ? WitnessRegime::subcritical : WitnessRegime::supercritical,
                                     s, p, Exponent::from_reciprocal(inv_q), 2, power);
        if (!w) continue;
        jobs.push_back({*w, "random-" + std::to_string(jobs.size() - 1)});
    }

    std::vector<WitnessReport> reports(jobs.size());
    parallel_for_index(static_cast<int>(jobs.size()), [&](int i) {
        reports[i] = verify_witness(jobs[i].witness, opts, seed);
    }, threads);

    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& rep = reports[i];
        if (!rep.witness.all_hold()) fails.add(jobs[i].tag + ": a recorded inequality fails");
        if (!rep.analytic_as_expected)
            fails.add(jobs[i].tag + ": analytic verdicts are not (member, non-member)");
        if (!rep.numerical_consistent)
            fails.add(jobs[i].tag + ": a definite numerical verdict contradicts the oracle");
    }
    CriterionResult res;
    res.id = 6;
    res.name = "sharpness-witnesses";
    res.pass = fails.count == 0;
    res.detail = res.pass ? std::to_string(jobs.size()) +
                                " witnesses: inequalities exact, verdicts consistent"
                          : fails.first;
    return res;
}

// --------------------------------------------------------------------------
// 7. Positive direction: composed profiles strictly inside the admissible
//    region classify as members of the theorem target space.
// --------------------------------------------------------------------------
inline CriterionResult criterion_positive_direction(std::uint64_t seed, double slope_threshold,
                                                    int threads) {
    Failures fails;
    ClassifierOptions opts;
    opts.slope_threshold = slope_threshold;
    (void)threads;
    // subcritical family: q = 4/3, target threshold n/q - s = 1
    const QCRegularity reg(2, Scalar(2), Scalar(1));
    const auto sub = positive_direction_sweep(Scalar(1, 2), P(2), reg,
                                              {Scalar(1), Scalar(5, 4), Scalar(3, 2), Scalar(7, 4),
                                               Scalar(19, 10)},
                                              {Scalar(1, 5), Scalar(2, 5)}, opts, seed);
    // supercritical family: q = 8/3, target threshold s - n/q = 1/4
    const auto super = positive_direction_sweep(Scalar(1), P(4), reg, {Scalar(3, 5), Scalar(4, 5)},
                                                {Scalar(8, 5), Scalar(5, 2)}, opts, seed);
    int members = 0, total = 0;
    for (const auto* rep : {&sub, &super}) {
        for (const auto& c : rep->cases) {
            ++total;
            if (c.analytic != Membership::member)
                fails.add("analytic verdict not member at k=" + c.k.str());
            if (c.numerical != Verdict::member)
                fails.add("numerical verdict not member at k=" + c.k.str() + " rho=" + c.rho.str());
            else
                ++members;
        }
    }
    CriterionResult res;
    res.id = 7;
    res.name = "positive-direction";
    res.pass = fails.count == 0;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d/%d composed profiles classified member", members, total);
    res.detail = res.pass ? buf : fails.first;
    return res;
}

// --------------------------------------------------------------------------
// 8. Figure geometry: every emitted arrow satisfies gap = d / c exactly and
//    the interpolation layout reproduces the worked index points.
// --------------------------------------------------------------------------
inline CriterionResult criterion_diagram() {
    Failures fails;
    const QCRegularity reg(2, Scalar(2), Scalar(1));
    struct Case { Scalar s; Exponent p; };
    const std::vector<Case> cases = {{Scalar(1), P(2)},     {Scalar(1, 2), P(2)},
                                     {Scalar(1), P(4)},     {Scalar(1, 2), P(8)},
                                     {Scalar(3, 4), P(3)},  {Scalar(0), P(3)}};
    for (const auto& c : cases) {
        const auto dia = composition_diagram(c.s, c.p, reg);
        if (!dia) {
            fails.add("diagram rejected at s=" + c.s.str());
            continue;
        }
        if (dia->gap * dia->c != dia->d) fails.add("gap * c != d at s=" + c.s.str());
        const auto q = target_exponent(c.s, c.p, reg);
        const auto& arrow = dia->arrows.front();
        if (arrow.x2 != q->reciprocal() || arrow.x1 != c.p.reciprocal())
            fails.add("arrow endpoints drift from the calculus outputs at s=" + c.s.str());
        if (regime_of(c.s, c.p, reg.n) == Regime::critical && arrow.x1 != arrow.x2)
            fails.add("critical arrow is not zero-length");
    }
    const auto fig3 = interpolation_diagram(Scalar(1, 2), P(2), reg);
    if (!fig3) {
        fails.add("interpolation diagram rejected");
    } else {
        auto at = [&](const std::string& label) -> const DiagramPoint* {
            for (const auto& pt : fig3->points)
                if (pt.label == label) return &pt;
            return nullptr;
        };
        if (!at("p0") || at("p0")->x != Scalar(1, 3)) fails.add("1/p0 != 1/3");
        if (!at("p1") || at("p1")->x != Scalar(2, 3)) fails.add("1/p1 != 2/3");
        if (!at("q0") || at("q0")->x != Scalar(2, 3)) fails.add("1/q0 != 2/3");
        if (!at("q1") || at("q1")->x != Scalar(5, 6)) fails.add("1/q1 != 5/6");
    }
    CriterionResult res;
    res.id = 8;
    res.name = "figure-geometry";
    res.pass = fails.count == 0;
    res.detail = res.pass ? "all arrows satisfy gap = d/c exactly; index layout reproduced"
                          : fails.first;
    return res;
}

} // namespace detail

inline std::vector<CriterionResult> run(const Options& opts = {}) {
    std::vector<CriterionResult> results;
    for (int id : opts.criteria) {
        const auto start = std::chrono::steady_clock::now();
        CriterionResult res;
        switch (id) {
            case 1: res = detail::criterion_exponents(); break;
            case 2: res = detail::criterion_interpolation(opts.seed); break;
            case 3: res = detail::criterion_jacobian(); break;
            case 4: res = detail::criterion_change_of_variables(opts.seed); break;
            case 5: res = detail::criterion_classifier(opts.seed, opts.slope_threshold,
                                                       opts.threads); break;
            case 6: res = detail::criterion_sharpness(opts.seed, opts.slope_threshold,
                                                      opts.threads); break;
            case 7: res = detail::criterion_positive_direction(opts.seed, opts.slope_threshold,
                                                               opts.threads); break;
            case 8: res = detail::criterion_diagram(); break;
            default: throw invalid_input("unknown acceptance criterion " + std::to_string(id));
        }
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        results.push_back(std::move(res));
    }
    return results;
}

inline bool all_pass(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

inline void print(const std::vector<CriterionResult>& results, std::ostream& out) {
    for (const auto& r : results) {
        char line[320];
        std::snprintf(line, sizeof(line), "[%s] criterion %d %-26s (%6.2f s)  %s",
                      r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                      r.detail.c_str());
        out << line << "\n";
    }
}

} // namespace qcc::acceptance
