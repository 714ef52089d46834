#include <doctest.h>

#include "qcc/exponent_calculus.hpp"
#include "qcc/rng.hpp"

using namespace qcc;

namespace {

Exponent P(std::int64_t n, std::int64_t d = 1) { return Exponent::from_value(Scalar(n, d)); }

// Small random rationals for property tests.
struct RatGen {
    Xoshiro256 rng;
    explicit RatGen(std::uint64_t seed) : rng(seed) {}
    Scalar in_unit(std::int64_t den_max = 64) {
        const auto d = static_cast<std::int64_t>(2 + rng.next() % (den_max - 1));
        const auto n = static_cast<std::int64_t>(1 + rng.next() % (d - 1));
        return Scalar(n, d);   // in (0, 1)
    }
    Scalar positive(std::int64_t num_max = 8, std::int64_t den_max = 8) {
        const auto n = static_cast<std::int64_t>(1 + rng.next() % num_max);
        const auto d = static_cast<std::int64_t>(1 + rng.next() % den_max);
        return Scalar(n, d);
    }
};

} // namespace

TEST_SUITE("exponent_calculus") {

TEST_CASE("target exponent worked values") {
    const QCRegularity reg_b1(2, Scalar(2), Scalar(1));
    // on the critical line the gap vanishes
    CHECK(target_exponent(Scalar(1), P(2), reg_b1).value().value() == Scalar(2));
    // subcritical, b = 1: 1/q = 1/2 + (1/2 - 1/4) = 3/4
    {
        const Scalar inv_q = Scalar(1, 2) + (Scalar(1, 2) - Scalar(1, 4));
        const auto q = target_exponent(Scalar(1, 2), P(2), reg_b1);
        REQUIRE(q.has_value());
        CHECK(q->reciprocal() == inv_q);
        CHECK(q->value() == Scalar(4, 3));
    }
    // supercritical, a = 2: 1/q = 1/4 + (1/2)(1/2 - 1/4) = 3/8
    {
        const QCRegularity reg_a2(2, Scalar(2), Scalar(1));
        const Scalar inv_q = Scalar(1, 4) + (Scalar(1, 2) - Scalar(1, 4)) / Scalar(2);
        const auto q = target_exponent(Scalar(1), P(4), reg_a2);
        REQUIRE(q.has_value());
        CHECK(q->reciprocal() == inv_q);
        CHECK(q->value() == Scalar(8, 3));
    }
    // rejection: 1/q = 10/11 + 10 (10/11 - 1/4) > 1
    {
        const QCRegularity reg(2, Scalar(2), Scalar(1, 10));
        const auto q = target_exponent(Scalar(1, 2), P(11, 10), reg);
        CHECK_FALSE(q.has_value());
    }
    CHECK_THROWS_AS(target_exponent(Scalar(1, 2), P(1), reg_b1), invalid_input);
}

TEST_CASE("target exponent endpoint p = infinity") {
    const QCRegularity reg(2, Scalar(2), Scalar(1));
    // s = 0, p = inf sits on the critical line through the corner: q = inf
    const auto q0 = target_exponent(Scalar(0), Exponent::infinity(), reg);
    REQUIRE(q0.has_value());
    CHECK(q0->is_infinite());
    // s = 1, p = inf is supercritical: 1/q = (1/a)(1/n) = 1/4
    const auto q1 = target_exponent(Scalar(1), Exponent::infinity(), reg);
    REQUIRE(q1.has_value());
    CHECK(q1->value() == Scalar(4));
}

TEST_CASE("planar supremum powers") {
    const auto k2 = planar_power_bounds(Scalar(2));
    CHECK(k2.a_sup.value() == Scalar(2));
    CHECK(k2.b_sup.value() == Scalar(1));
    CHECK(planar_power_bounds(Scalar(1)).unbounded());
    const auto k3 = planar_power_bounds(Scalar(3));
    CHECK(k3.a_sup.value() == Scalar(3, 2));
    CHECK(k3.b_sup.value() == Scalar(1, 2));
    CHECK_THROWS_AS(planar_power_bounds(Scalar(1, 2)), invalid_input);
}

TEST_CASE("planar target bound") {
    // K = 2, s = 1/2, p = 2: subcritical, 1/q > 1/2 + (1/b_K)(1/2 - 1/4) = 3/4
    const auto sub = planar_target_bound(Scalar(1, 2), P(2), Scalar(2));
    CHECK(sub.inv_q_bound == Scalar(3, 4));
    CHECK(sub.strict);
    // conformal maps lose nothing
    const auto conf = planar_target_bound(Scalar(1, 2), P(2), Scalar(1));
    CHECK(conf.inv_q_bound == Scalar(1, 2));
    CHECK_FALSE(conf.strict);
    // supercritical side uses a_K
    const auto super = planar_target_bound(Scalar(1), P(4), Scalar(2));
    CHECK(super.inv_q_bound == Scalar(1, 4) + (Scalar(1, 2) - Scalar(1, 4)) / Scalar(2));
}

TEST_CASE("lebesgue target") {
    CHECK(lebesgue_target(Exponent::infinity(), Scalar(1)).is_infinite());
    CHECK(lebesgue_target(P(2), Scalar(1)).value() == Scalar(1));   // q <= 1 allowed here
    CHECK(lebesgue_target(P(3), Scalar(2)).value() == Scalar(2));
    CHECK_THROWS_AS(lebesgue_target(P(2), Scalar(0)), invalid_input);
}

TEST_CASE("sobolev target") {
    const QCRegularity reg(2, Scalar(2), Scalar(1));
    CHECK(sobolev_target(P(2), reg).value().value() == Scalar(2));   // p = n self-map
    CHECK(sobolev_target(P(4), reg).value().value() == Scalar(8, 3));
    // subcritical with threshold 1 + (n-1)/(nb+1) = 4/3 <= 3/2
    const auto q = sobolev_target(P(3, 2), reg);
    REQUIRE(q.has_value());
    CHECK(q->reciprocal() == Scalar(2, 3) + (Scalar(2, 3) - Scalar(1, 2)));
    CHECK(q->value() == Scalar(6, 5));
    // below the threshold: rejection
    const QCRegularity tight(2, Scalar(2), Scalar(1, 4));
    CHECK_FALSE(sobolev_target(P(13, 10), tight).has_value());
}

TEST_CASE("subcritical interpolation indices worked example") {
    const QCRegularity reg(2, Scalar(2), Scalar(1));
    const auto idx = interpolation_indices(Scalar(1, 2), P(2), P(4, 3), reg, Regime::subcritical);
    CHECK(idx.p0().value() == Scalar(3));
    CHECK(idx.p1().value() == Scalar(3, 2));
    CHECK(idx.q0().value() == Scalar(3, 2));
    CHECK(idx.q1().value() == Scalar(6, 5));
    CHECK(idx.p_effective().value() == Scalar(2));
    CHECK(idx.q_effective().value() == Scalar(4, 3));
    // lambda-indexed relation 1/q_l - 1/p_l = (1/b)(1/p_l - l/n)
    CHECK(idx.q0().reciprocal() - idx.p0().reciprocal() == idx.p0().reciprocal());
    CHECK(idx.q1().reciprocal() - idx.p1().reciprocal() ==
          idx.p1().reciprocal() - Scalar(1, 2));
}

TEST_CASE("critical interpolation indices put the 1-endpoints at n") {
    const QCRegularity reg(2, Scalar(2), Scalar(1));
    const Scalar s(1, 2);
    const auto idx = interpolation_indices(s, P(4), P(4), reg, Regime::critical, 0.05);
    CHECK(idx.p1().value() == Scalar(2));
    CHECK(idx.q1().value() == Scalar(2));
    CHECK(idx.q0().value() > Scalar(2));
    CHECK(idx.p0().value() > idx.q0().value());
    // recovered pair approximates the self-map exponent from the subcritical side
    const double inv_q_eff = idx.q_effective().reciprocal().to_double();
    CHECK(inv_q_eff > s.to_double() / 2);
    CHECK(inv_q_eff - s.to_double() / 2 < 0.05);
    // the 0-endpoints keep the Lebesgue composition relation
    const double lhs = idx.q0().reciprocal().to_double();
    const double rhs = 2.0 * idx.p0().reciprocal().to_double();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("supercritical interpolation indices") {
    const QCRegularity reg(2, Scalar(2), Scalar(1));
    const Scalar s(1, 2);
    const auto q = target_exponent(s, P(8), reg);   // sp = 4 > 2
    REQUIRE(q.has_value());
    const auto idx = interpolation_indices(s, P(8), *q, reg, Regime::supercritical, 0.01);
    CHECK(idx.q0().value() > Scalar(1));
    CHECK(idx.q1().value() > Scalar(1));
    // p-side convex combination is exact by construction
    CHECK(std::abs(idx.p_effective().reciprocal().to_double() - 1.0 / 8.0) < 1e-15);
    // q-side lands within the paper's eps-window of the target
    const double drift = std::abs(idx.q_effective().reciprocal().to_double() -
                                  q->reciprocal().to_double());
    const double bound = 0.01 * (1.0 - 0.5) * (2.0 * 2.0 - 1.0) / 2.0;
    CHECK(drift <= bound + 1e-15);
    // 1-endpoints stay supercritical
    CHECK(idx.p1().value() > Scalar(2));
}

TEST_CASE("interpolation rejects mismatched targets") {
    const QCRegularity reg(2, Scalar(2), Scalar(1));
    CHECK_THROWS_AS(interpolation_indices(Scalar(1, 2), P(2), P(3, 2), reg, Regime::subcritical),
                    invalid_input);
}

TEST_CASE("exponent point invariants") {
    CHECK_NOTHROW(ExponentPoint(Scalar(0), Scalar(1)));
    CHECK_NOTHROW(ExponentPoint(Scalar(99, 100), Scalar(0)));
    CHECK_THROWS_AS(ExponentPoint(Scalar(1), Scalar(1, 2)), invalid_input);    // 1/p = 1 means p = 1
    CHECK_THROWS_AS(ExponentPoint(Scalar(-1, 2), Scalar(1, 2)), invalid_input);
    CHECK_THROWS_AS(ExponentPoint(Scalar(1, 2), Scalar(3, 2)), invalid_input);
}

TEST_CASE("planar regularity keeps powers strictly inside the windows") {
    CHECK_NOTHROW(QCRegularity::planar(Scalar(2), Scalar(3, 2), Scalar(1, 2)));
    // a = K/(K-1) = 2 exactly: not allowed
    CHECK_THROWS_AS(QCRegularity::planar(Scalar(2), Scalar(2), Scalar(1, 2)), invalid_input);
    // b = 1/(K-1) = 1 exactly: not allowed
    CHECK_THROWS_AS(QCRegularity::planar(Scalar(2), Scalar(3, 2), Scalar(1)), invalid_input);
    // conformal case has no windows to violate
    CHECK_NOTHROW(QCRegularity::planar(Scalar(1), Scalar(100), Scalar(100)));
}

TEST_CASE("default perturbation drives the critical and supercritical indices") {
    const QCRegularity reg(2, Scalar(2), Scalar(1), Scalar(2), Scalar(4));
    const Scalar s(1, 2);
    // critical: eps0 defaults to log2/log(C_b)/2 = 1/4
    const auto crit = interpolation_indices(s, P(4), P(4), reg, Regime::critical);
    CHECK(crit.p1().value() == Scalar(2));
    CHECK(crit.q0().value() > Scalar(2));
    // supercritical: both proof constraints are folded in
    const auto q = target_exponent(s, P(8), reg);
    const auto super = interpolation_indices(s, P(8), *q, reg, Regime::supercritical);
    CHECK(super.q0().value() > Scalar(1));
    CHECK(std::abs(super.p_effective().reciprocal().to_double() - 0.125) < 1e-15);
}

TEST_CASE("planar smoothness loss") {
    CHECK(smoothness_loss_planar(Scalar(1, 2), P(2), Scalar(1)).value() == Scalar(1, 2));
    CHECK(smoothness_loss_planar(Scalar(1, 2), P(2), Scalar(3, 2)).value() == Scalar(1, 4));
    CHECK_FALSE(smoothness_loss_planar(Scalar(1, 2), P(2), Scalar(3)).has_value());
}

TEST_CASE("growth smoothness loss") {
    CHECK(smoothness_loss_from_growth(Scalar(1, 2), P(3), Scalar(1), 2) == Scalar(1, 2));
    CHECK(smoothness_loss_from_growth(Scalar(1, 2), P(2), Scalar(2), 2) == Scalar(0));
    CHECK(smoothness_loss_from_growth(Scalar(1, 2), P(4), Scalar(2), 2) == Scalar(1, 2));
    CHECK(growth_exponent_from_b(Scalar(1)) == Scalar(2));
    CHECK_THROWS_AS(smoothness_loss_from_growth(Scalar(1), P(3), Scalar(2), 2), invalid_input);
}

TEST_CASE("property: critical fixed point q = p") {
    RatGen gen(0xC417);
    for (int n = 2; n <= 4; ++n) {
        for (int i = 0; i < 50; ++i) {
            const Scalar s = gen.in_unit();
            const Exponent p = Exponent::from_value(Scalar(n) / s);
            const QCRegularity reg(n, Scalar(1) + gen.positive(), gen.positive());
            const auto q = target_exponent(s, p, reg);
            REQUIRE(q.has_value());
            CHECK(q->reciprocal() == p.reciprocal());
        }
    }
}

TEST_CASE("property: gap equals d / c exactly") {
    RatGen gen(0x6A9);
    for (int i = 0; i < 200; ++i) {
        const int n = 2 + static_cast<int>(i % 3);
        const Scalar s = gen.in_unit();
        const Exponent p = Exponent::from_value(Scalar(1) + gen.positive(16, 4));
        const QCRegularity reg(n, Scalar(1) + gen.positive(), gen.positive());
        const auto geo = gap_geometry(s, p, reg);
        if (!geo) continue;
        CHECK(geo->gap * geo->c == geo->d);
        const auto q = target_exponent(s, p, reg);
        CHECK(q->reciprocal() - p.reciprocal() == geo->gap);
    }
}

TEST_CASE("property: monotone in the Jacobian power, q -> p as c -> infinity") {
    RatGen gen(0xB0B);
    for (int i = 0; i < 100; ++i) {
        const int n = 2 + static_cast<int>(i % 3);
        const Scalar s = gen.in_unit();
        const Exponent p = Exponent::from_value(Scalar(1) + gen.positive(12, 4));
        const Scalar b1 = gen.positive(), b2 = b1 + gen.positive();
        const QCRegularity lo(n, Scalar(1) + b1, b1), hi(n, Scalar(1) + b2, b2);
        const auto q_lo = target_exponent(s, p, lo);
        const auto q_hi = target_exponent(s, p, hi);
        if (q_lo && q_hi) CHECK(q_hi->reciprocal() <= q_lo->reciprocal());
        // enormous c pins q to p
        const QCRegularity huge(n, Scalar(1000000000), Scalar(1000000000));
        const auto q_inf = target_exponent(s, p, huge);
        REQUIRE(q_inf.has_value());
        const Scalar gap = q_inf->reciprocal() - p.reciprocal();
        CHECK(gap * Scalar(1000000000) == abs(s / Scalar(n) - p.reciprocal()));
    }
}

TEST_CASE("property: s = 0 agrees with the Lebesgue target") {
    RatGen gen(0x135);
    for (int i = 0; i < 100; ++i) {
        const int n = 2 + static_cast<int>(i % 3);
        const Exponent p = Exponent::from_value(Scalar(1) + gen.positive(10, 5));
        const Scalar b = gen.positive();
        const QCRegularity reg(n, Scalar(1) + b, b);
        const auto q = target_exponent(Scalar(0), p, reg);
        const Exponent expected = lebesgue_target(p, b);
        if (expected.reciprocal() >= Scalar(1)) {
            CHECK_FALSE(q.has_value());
        } else {
            REQUIRE(q.has_value());
            CHECK(q->reciprocal() == expected.reciprocal());
        }
    }
}

TEST_CASE("property: s = 1 agrees with the Sobolev target") {
    RatGen gen(0x246);
    for (int i = 0; i < 100; ++i) {
        const int n = 2 + static_cast<int>(i % 3);
        const Exponent p = Exponent::from_value(Scalar(1) + gen.positive(10, 5));
        const QCRegularity reg(n, Scalar(1) + gen.positive(), gen.positive());
        const auto via_target = target_exponent(Scalar(1), p, reg);
        const auto via_sobolev = sobolev_target(p, reg);
        if (via_target.has_value()) {
            REQUIRE(via_sobolev.has_value());
            CHECK(via_target->reciprocal() == via_sobolev->reciprocal());
        }
    }
}

TEST_CASE("property: subcritical interpolation identities, 300 samples") {
    RatGen gen(0x777);
    int produced = 0;
    while (produced < 300) {
        const int n = 2 + static_cast<int>(gen.rng.next() % 3);
        const Scalar s = gen.in_unit(32);
        const Exponent p = Exponent::from_value(Scalar(1) + gen.positive(12, 6));
        if (regime_of(s, p, n) != Regime::subcritical) continue;
        const Scalar b = gen.positive(6, 6);
        const QCRegularity reg(n, Scalar(1) + b, b);
        const auto q = target_exponent(s, p, reg);
        if (!q) continue;
        InterpolationIndices idx =
            interpolation_indices(s, p, *q, reg, Regime::subcritical);
        ++produced;
        CHECK(idx.p_effective().reciprocal() == p.reciprocal());
        CHECK(idx.q_effective().reciprocal() == q->reciprocal());
        const Scalar inv_b = b.reciprocal();
        CHECK(idx.q0().reciprocal() - idx.p0().reciprocal() == inv_b * idx.p0().reciprocal());
        CHECK(idx.q1().reciprocal() - idx.p1().reciprocal() ==
              inv_b * (idx.p1().reciprocal() - Scalar(1, n)));
        CHECK(idx.q0().value() > Scalar(1));
        CHECK(idx.q1().value() > Scalar(1));
    }
}

} // TEST_SUITE
