#include <doctest.h>

#include <cmath>

#include "qcc/radial_maps.hpp"

using namespace qcc;

TEST_SUITE("radial_maps") {

TEST_CASE("evaluation") {
    const RadialStretch phi2(Scalar(2), 2);
    const double unit[2] = {1.0, 0.0};
    CHECK(evaluate(phi2, unit)[0] == doctest::Approx(1.0));
    const double half[2] = {0.5, 0.0};
    CHECK(evaluate(phi2, half)[0] == doctest::Approx(0.25));
    const double zero[2] = {0.0, 0.0};
    CHECK(evaluate(phi2, zero)[0] == 0.0);
    CHECK(evaluate(RadialStretch(Scalar(1, 3), 2), zero)[1] == 0.0);
}

TEST_CASE("jacobian") {
    const RadialStretch id(Scalar(1), 3);
    const double x[3] = {0.2, -0.4, 0.7};
    CHECK(jacobian(id, x) == doctest::Approx(1.0));
    const RadialStretch phi2(Scalar(2), 2);
    CHECK(jacobian_radial(phi2, 0.5) == doctest::Approx(0.5));
    CHECK(jacobian_radial(phi2, 1.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(jacobian_radial(RadialStretch(Scalar(1, 2), 2), 0.0), singularity_error);
    CHECK(jacobian_radial(phi2, 0.0) == 0.0);
}

TEST_CASE("inverse round trip") {
    CHECK(RadialStretch(Scalar(1), 2).inverse().k == Scalar(1));
    CHECK(RadialStretch(Scalar(2), 2).inverse().k == Scalar(1, 2));
    const RadialStretch phi3(Scalar(3), 2);
    const double x[2] = {0.3, 0.4};
    const auto fwd = evaluate(phi3, x);
    const auto back = evaluate(phi3.inverse(), fwd);
    CHECK(back[0] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(back[1] == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("power-law semigroup: phi_k o phi_j = phi_{kj}") {
    const RadialStretch a(Scalar(3, 2), 3), b(Scalar(4, 5), 3);
    const RadialStretch ab = compose(a, b);
    CHECK(ab.k == Scalar(6, 5));
    const double x[3] = {0.3, -0.1, 0.9};
    const auto lhs = evaluate(a, evaluate(b, x));
    const auto rhs = evaluate(ab, x);
    for (int i = 0; i < 3; ++i) CHECK(lhs[i] == doctest::Approx(rhs[i]).epsilon(1e-12));
}

TEST_CASE("distortion is >= 1 with equality only at the identity") {
    for (double k : {0.2, 0.5, 0.8, 1.0, 1.5, 2.0, 4.0}) {
        for (int n : {2, 3, 4}) {
            const double K = RadialStretch(Scalar(k), n).distortion();
            if (k == 1.0)
                CHECK(K == doctest::Approx(1.0));
            else
                CHECK(K > 1.0);
        }
    }
    CHECK(RadialStretch(Scalar(2), 3).distortion() == doctest::Approx(4.0));
    CHECK(RadialStretch(Scalar(1, 2), 2).distortion() == doctest::Approx(4.5));
}

TEST_CASE("jacobian power integral closed forms") {
    const Ball b1 = Ball::origin(2);
    // k = 1: the integral is the ball volume for any t
    const auto vol = jacobian_power_integral(RadialStretch(Scalar(1), 2), b1, Scalar(7, 3));
    CHECK_FALSE(vol.divergent);
    CHECK(vol.value == doctest::Approx(M_PI).epsilon(1e-14));
    const RadialStretch phi2(Scalar(2), 2);
    // t = 1: 2 * 2pi / 4 = pi
    const auto t1 = jacobian_power_integral(phi2, b1, Scalar(1));
    CHECK(t1.value == doctest::Approx(M_PI).epsilon(1e-14));
    // t = -1/2: 2^{-1/2} * 2pi / 1 = pi sqrt(2)
    const auto th = jacobian_power_integral(phi2, b1, Scalar(-1, 2));
    CHECK(th.value == doctest::Approx(M_PI * std::sqrt(2.0)).epsilon(1e-14));
    // t = -1 hits the divergence boundary exactly
    const auto tm = jacobian_power_integral(phi2, b1, Scalar(-1));
    CHECK(tm.divergent);
    CHECK(tm.exponent == Scalar(0));
}

TEST_CASE("divergence boundary is exact in k and t") {
    // boundary t = -1/(k-1) for k > 1, t = 1/(1-k) for k < 1
    CHECK_FALSE(power_integrable(Scalar(3, 2), 2, Scalar(-2)));
    CHECK(power_integrable(Scalar(3, 2), 2, Scalar(-1999, 1000)));
    CHECK_FALSE(power_integrable(Scalar(3, 2), 3, Scalar(-2001, 1000)));
    CHECK_FALSE(power_integrable(Scalar(1, 2), 2, Scalar(2)));
    CHECK(power_integrable(Scalar(1, 2), 2, Scalar(1999, 1000)));
    CHECK(power_integrable(Scalar(1), 4, Scalar(-1000000)));
}

TEST_CASE("closed form vs graded quadrature") {
    for (double k : {0.5, 0.8, 1.0, 1.5, 2.0, 3.0}) {
        for (int n : {2, 3}) {
            const RadialStretch map(Scalar(k), n);
            for (double t : {-0.4, 0.5, 1.0, 2.0}) {
                if (!power_integrable(Scalar(k), n, Scalar(t))) continue;
                const auto closed = jacobian_power_integral(map, Ball::origin(n), Scalar(t));
                const auto quadr = jacobian_power_integral_quadrature(map, 1.0, t);
                CHECK(std::abs(closed.value - quadr.value) <=
                      1e-6 * std::max(std::abs(closed.value), 1e-30));
            }
        }
    }
}

TEST_CASE("monte carlo path for off-center balls") {
    const RadialStretch phi2(Scalar(2), 2);
    // off-center ball avoiding the origin: smooth integrand, MC within a few percent
    const Ball shifted({1.0, 0.5}, 0.4);
    const auto mc = jacobian_power_integral_monte_carlo(phi2, shifted, Scalar(1), 42, 200000);
    // reference by 2d tensor quadrature in polar coordinates about the center
    const auto ref = quad::integrate_adaptive(
        [&](double rho) {
            const auto inner = quad::integrate_adaptive(
                [&](double theta) {
                    const double x = 1.0 + rho * std::cos(theta);
                    const double y = 0.5 + rho * std::sin(theta);
                    return 2.0 * (x * x + y * y);
                },
                0.0, 2.0 * M_PI);
            return rho * inner.value;
        },
        0.0, 0.4);
    CHECK(mc.value == doctest::Approx(ref.value).epsilon(0.02));
    // divergent marker when the closed ball reaches the origin and t is out of range
    const Ball touching({0.1, 0.0}, 0.2);
    CHECK(jacobian_power_integral_monte_carlo(phi2, touching, Scalar(-1)).divergent);
    // the closed form rejects off-center balls
    CHECK_THROWS_AS(jacobian_power_integral(phi2, shifted, Scalar(1)), invalid_input);
}

TEST_CASE("change of variables residuals") {
    // k = 2, f == 1 on the unit ball: both sides equal |phi_2(B_1)| = pi
    const RadialProfile one = RadialProfile::piecewise({{0.0, 1.0, 1.0, 0.0}});
    CHECK(change_of_variables_residual(RadialStretch(Scalar(2), 2), one, Ball::origin(2)) <= 1e-6);
    // identity map: exact for any profile
    CHECK(change_of_variables_residual(RadialStretch(Scalar(1), 2),
                                       RadialProfile::flat(Scalar(2)), Ball::origin(2)) <= 1e-12);
    // k = 1/2, f = |x|: both sides equal 2 pi / 3
    const RadialProfile radial = RadialProfile::piecewise({{0.0, 1.0, 1.0, 1.0}});
    CHECK(change_of_variables_residual(RadialStretch(Scalar(1, 2), 2), radial, Ball::origin(2)) <=
          1e-6);
    // singular profile composed with a stretch
    CHECK(change_of_variables_residual(RadialStretch(Scalar(3, 2), 2),
                                       RadialProfile::singular(Scalar(1, 2)),
                                       Ball::origin(2)) <= 1e-6);
}

} // TEST_SUITE
