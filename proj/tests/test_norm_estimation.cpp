#include <doctest.h>

#include <cmath>

#include "qcc/norm_estimation.hpp"

using namespace qcc;

namespace {

const Ball B1 = Ball::origin(2);
const Exponent p2 = Exponent::from_value(Scalar(2));

// Independent angular integral: plain theta quadrature of
// int_0^pi sin^{n-2}(theta) ((r-t)^2 + 4 r t sin^2(theta/2))^{-beta/2} dtheta,
// with a graded mesh near theta = 0. Written symmetrically in (r, t).
double angular_direct_theta(int n, double beta, double r, double t) {
    auto f = [&](double theta) {
        const double s2 = std::sin(0.5 * theta) * std::sin(0.5 * theta);
        const double d2 = (r - t) * (r - t) + 4.0 * r * t * s2;
        return std::pow(std::sin(theta), n - 2) * std::pow(d2, -0.5 * beta);
    };
    quad::Options opts;
    opts.rel_tol = 1e-11;
    return quad::integrate_singular_lower(f, 0.0, M_PI / 2, opts).value +
           quad::integrate_adaptive(f, M_PI / 2, M_PI, opts).value;
}

} // namespace

TEST_SUITE("norm_estimation") {

TEST_CASE("lp norm closed forms") {
    // ||g_2||_{L^2(B_1)} = sqrt(pi/3): 2 pi int_0^1 (1-r^2)^2 r dr = pi/3
    const auto g2 = lp_norm(RadialProfile::flat(Scalar(2)), p2, B1);
    CHECK_FALSE(g2.divergent);
    CHECK(g2.value == doctest::Approx(std::sqrt(M_PI / 3.0)).epsilon(1e-9));
    // ||f_{1/2}||_{L^2(B_1)} = sqrt(pi/3): 2 pi int_0^1 (r^{-1/2}-1)^2 r dr = pi/3
    const auto fh = lp_norm(RadialProfile::singular(Scalar(1, 2)), p2, B1);
    CHECK_FALSE(fh.divergent);
    CHECK(fh.value == doctest::Approx(std::sqrt(M_PI / 3.0)).epsilon(1e-9));
    // rho = n/p sits exactly on the L^p divergence boundary
    const auto diverged = lp_norm(RadialProfile::singular(Scalar(1)), p2, B1);
    CHECK(diverged.divergent);
}

TEST_CASE("lp partials are nondecreasing and slope is nonpositive") {
    for (const auto& prof : {RadialProfile::singular(Scalar(3, 4)), RadialProfile::flat(Scalar(1))}) {
        const auto est = lp_norm(prof, p2, B1);
        REQUIRE(est.partials.size() == est.cutoffs.size());
        for (std::size_t i = 1; i < est.partials.size(); ++i) {
            CHECK(est.partials[i] >= est.partials[i - 1]);
            CHECK(est.cutoffs[i] < est.cutoffs[i - 1]);
        }
        CHECK(est.log_slope <= 0.0);
    }
}

TEST_CASE("lp scaling law for pure powers") {
    // ||c r^e||_{L^p(B_R)} scales like R^{e + n/p}
    const auto piece = RadialProfile::piecewise({{0.0, 100.0, 0.7, -0.4}});
    const Exponent p3 = Exponent::from_value(Scalar(3));
    const auto small = lp_norm(piece, p3, Ball::origin(2, 1.0));
    const auto large = lp_norm(piece, p3, Ball::origin(2, 2.0));
    const double expected = std::pow(2.0, -0.4 + 2.0 / 3.0);
    CHECK(large.value / small.value == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("gradient seminorm closed forms") {
    // constant profile: zero gradient
    const auto flat = sobolev_seminorm(RadialProfile::piecewise({{0.0, 2.0, 3.0, 0.0}}), p2, B1);
    CHECK(flat.value == doctest::Approx(0.0));
    // |g_1'| = 1 on (0,1): seminorm = sqrt(2 pi / 2) = sqrt(pi)
    const auto g1 = sobolev_seminorm(RadialProfile::flat(Scalar(1)), p2, B1);
    CHECK(g1.value == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-9));
    // |f_{1/2}'|^4 ~ r^{-6} is not integrable against r dr
    const Exponent p4 = Exponent::from_value(Scalar(4));
    CHECK(sobolev_seminorm(RadialProfile::singular(Scalar(1, 2)), p4, B1).divergent);
}

TEST_CASE("angular kernel agrees with an independent theta quadrature") {
    for (int n : {2, 3}) {
        for (double sp : {1.0, 1.6}) {
            const double beta = n + sp;
            const AngularKernel kernel(n, beta);
            for (auto [r, t] : {std::pair{0.8, 0.3}, {0.5, 0.45}, {1.0, 0.999}, {0.9, 0.2}}) {
                const double via_theta = angular_direct_theta(n, beta, r, t);
                const double via_kernel = std::pow(r, -beta) * kernel.direct(t / r);
                CHECK(via_kernel == doctest::Approx(via_theta).epsilon(1e-8));
                // symmetry of the (r, t) kernel is exact by construction
                CHECK(angular_direct_theta(n, beta, r, t) == angular_direct_theta(n, beta, t, r));
            }
        }
    }
}

TEST_CASE("angular kernel closed form in three dimensions") {
    // n = 3: W(x) = ((1+x)^{2-beta} - (1-x)^{2-beta}) / (x (2-beta))
    const double beta = 3.0 + 1.2;
    const AngularKernel kernel(3, beta);
    for (double x : {0.05, 0.3, 0.7, 0.95, 0.9995}) {
        const double closed = (std::pow(1.0 + x, 2.0 - beta) - std::pow(1.0 - x, 2.0 - beta)) /
                              (x * (2.0 - beta));
        CHECK(kernel.direct(x) == doctest::Approx(closed).epsilon(1e-9));
        CHECK(kernel(x) == doctest::Approx(closed).epsilon(5e-4));
    }
}

TEST_CASE("double-integral seminorm: constants vanish") {
    const FractionalNormSpec spec(Scalar(1, 2), p2, 2, B1);
    const auto est = gagliardo_seminorm(RadialProfile::piecewise({{0.0, 2.0, 0.7, 0.0}}), spec);
    CHECK(est.value == doctest::Approx(0.0));
    CHECK(classify_from_estimate(est) == Verdict::member);
}

TEST_CASE("double-integral seminorm tracks the analytic criterion at s = 1/2") {
    // threshold n/p - s = 1/2: rho = 1/4 inside, rho = 3/4 outside
    const FractionalNormSpec spec(Scalar(1, 2), p2, 2, B1);
    const auto inside = gagliardo_seminorm(RadialProfile::singular(Scalar(1, 4)), spec);
    CHECK_FALSE(inside.divergent);
    CHECK(inside.log_slope > -0.05);
    CHECK(inside.log_slope <= 0.0);
    CHECK(classify_from_estimate(inside) == Verdict::member);

    const auto outside = gagliardo_seminorm(RadialProfile::singular(Scalar(3, 4)), spec);
    CHECK(outside.log_slope < -0.05);
    CHECK(classify_from_estimate(outside) == Verdict::non_member);
    // the divergence rate of the truncated seminorm is the membership margin
    CHECK(outside.log_slope == doctest::Approx(-0.25).epsilon(0.2));
}

TEST_CASE("double-integral value against brute-force monte carlo") {
    // g_1 at (n=2, s=0.3, p=2): mild kernel, so plain MC over B_1 x B_1 works
    const double s = 0.3, p = 2.0;
    const FractionalNormSpec spec(Scalar(3, 10), p2, 2, B1);
    const auto est = gagliardo_seminorm(RadialProfile::flat(Scalar(1)), spec);
    REQUIRE_FALSE(est.divergent);

    Xoshiro256 rng(0xABCD);
    auto sample_disc = [&](double& x, double& y) {
        do {
            x = rng.uniform(-1.0, 1.0);
            y = rng.uniform(-1.0, 1.0);
        } while (x * x + y * y >= 1.0);
    };
    const int N = 2000000;
    double acc = 0.0;
    for (int i = 0; i < N; ++i) {
        double x1, y1, x2, y2;
        sample_disc(x1, y1);
        sample_disc(x2, y2);
        const double r1 = std::sqrt(x1 * x1 + y1 * y1), r2 = std::sqrt(x2 * x2 + y2 * y2);
        const double diff = std::abs(r2 - r1);   // |g_1(x) - g_1(y)| = ||x| - |y||
        const double dist2 = (x1 - x2) * (x1 - x2) + (y1 - y2) * (y1 - y2);
        acc += std::pow(diff, p) * std::pow(dist2, -0.5 * (2.0 + s * p));
    }
    const double mc = std::pow(acc / N * M_PI * M_PI, 1.0 / p);
    CHECK(est.value == doctest::Approx(mc).epsilon(0.05));
}

TEST_CASE("modulus estimator: constants vanish and the criterion is tracked") {
    const FractionalNormSpec spec(Scalar(1, 2), p2, 2, B1, EstimatorKind::modulus_of_smoothness);
    const auto zero = modulus_seminorm(RadialProfile::piecewise({{0.0, 2.0, 1.0, 0.0}}), spec);
    CHECK(zero.value == doctest::Approx(0.0));

    const auto inside = modulus_seminorm(RadialProfile::singular(Scalar(1, 4)), spec);
    CHECK(classify_from_estimate(inside) == Verdict::member);
    const auto outside = modulus_seminorm(RadialProfile::singular(Scalar(3, 4)), spec);
    CHECK(classify_from_estimate(outside) == Verdict::non_member);

    // flat family, supercritical smoothness: threshold s - n/p = 0.65 > 0.4
    const FractionalNormSpec high(Scalar(9, 10), Exponent::from_value(Scalar(8)), 2, B1,
                                  EstimatorKind::modulus_of_smoothness);
    const auto g_fail = modulus_seminorm(RadialProfile::flat(Scalar(2, 5)), high);
    CHECK(classify_from_estimate(g_fail) == Verdict::non_member);
    const auto g_ok = modulus_seminorm(RadialProfile::flat(Scalar(9, 10)), high);
    CHECK(classify_from_estimate(g_ok) == Verdict::member);
}

TEST_CASE("estimators never contradict each other on clear cases") {
    const Scalar s(1, 2);
    for (std::int64_t num : {1, 2, 6, 7}) {   // rho in {0.1, 0.2, 0.6, 0.7}, threshold 0.5
        const auto prof = RadialProfile::singular(Scalar(num, 10));
        const FractionalNormSpec gag(s, p2, 2, B1);
        const FractionalNormSpec mod(s, p2, 2, B1, EstimatorKind::modulus_of_smoothness);
        const auto v1 = classify_membership(prof, gag);
        const auto v2 = classify_membership(prof, mod);
        const bool contradict = (v1 == Verdict::member && v2 == Verdict::non_member) ||
                                (v1 == Verdict::non_member && v2 == Verdict::member);
        CHECK_FALSE(contradict);
        const auto expected = analytic_membership(prof, s, p2, 2) == Membership::member
                                  ? Verdict::member
                                  : Verdict::non_member;
        CHECK(v1 == expected);
        CHECK(v2 == expected);
    }
}

TEST_CASE("endpoint smoothness routes to the endpoint estimators") {
    // s = 0: plain L^p; rho = 1.2 > n/p = 1 diverges
    const FractionalNormSpec l2(Scalar(0), p2, 2, B1);
    CHECK(classify_membership(RadialProfile::singular(Scalar(6, 5)), l2) == Verdict::non_member);
    CHECK(classify_membership(RadialProfile::singular(Scalar(1, 2)), l2) == Verdict::member);
    // s = 1: gradient norm; threshold n/p - 1 = 0 for the singular family
    const FractionalNormSpec w12(Scalar(1), p2, 2, B1);
    CHECK(classify_membership(RadialProfile::singular(Scalar(1, 2)), w12) == Verdict::non_member);
    // flat family at s = 1: threshold 1 - n/p = 0, any rho > 0 is a member
    CHECK(classify_membership(RadialProfile::flat(Scalar(1, 2)), w12) == Verdict::member);
}

TEST_CASE("boundary classification is allowed to be inconclusive") {
    const FractionalNormSpec spec(Scalar(1, 2), p2, 2, B1);
    CHECK_NOTHROW(classify_membership(RadialProfile::singular(Scalar(1, 2)), spec));
}

TEST_CASE("degenerate slope threshold yields no definite members") {
    const FractionalNormSpec spec(Scalar(1, 2), p2, 2, B1);
    ClassifierOptions opts;
    opts.slope_threshold = 0.0;
    CHECK(classify_membership(RadialProfile::singular(Scalar(1, 4)), spec, opts) !=
          Verdict::member);
}

} // TEST_SUITE
