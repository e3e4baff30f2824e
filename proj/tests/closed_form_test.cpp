#include "bpskink/closed_form.hpp"
#include "bpskink/errors.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

using namespace bpskink;

TEST(VRange, EndpointsAreLogSingularities) {
    for (const double kappa : {0.1, 0.5, 1.0, 3.0, 100.0}) {
        const ModelParams p = ModelParams::from_kappa(kappa, 1.0);
        const VRange r = v_range(p);
        EXPECT_LT(r.v_min, 0.0);
        EXPECT_GT(r.v_max, 0.0);
        EXPECT_NEAR(r.v_min, 1.0 - std::sqrt(1.0 + kappa), 1e-15);
        EXPECT_NEAR(r.v_max * r.v_max + 2 * r.v_max - kappa, 0.0, 1e-13 * kappa);
        EXPECT_NEAR(r.v_min * r.v_min - 2 * r.v_min - kappa, 0.0, 1e-13 * kappa);
        EXPECT_TRUE(r.contains_open(0.0));
        EXPECT_FALSE(r.contains_open(r.v_max));
        EXPECT_TRUE(r.contains_closed(r.v_max));
    }
}

TEST(UOfV, Examples) {
    for (const double kappa : {0.5, 1.0, 3.0}) {
        const ModelParams p = ModelParams::from_kappa(kappa, 1.0);
        const VRange r = v_range(p);
        EXPECT_EQ(u_of_v(0.0, p), 0.0);
        EXPECT_NEAR(u_of_v(r.v_min, p), 1.0, 1e-14);
        EXPECT_NEAR(u_of_v(r.v_max, p), -1.0, 1e-14);
        EXPECT_THROW(u_of_v(r.v_max * 1.01, p), DomainError);
        EXPECT_THROW(u_of_v(r.v_min * 1.01, p), DomainError);
    }
}

TEST(VOfAlpha, Examples) {
    const ModelParams p(1.0, 1.0);
    // pi/2 is not exactly representable, so v is zero only to rounding
    EXPECT_NEAR(v_of_alpha(pi / 2, p), 0.0, 1e-16);
    EXPECT_NEAR(v_of_alpha(1e-9, p), v_range(p).v_min, 1e-15);
    EXPECT_NEAR(v_of_alpha(pi - 1e-9, p), v_range(p).v_max, 1e-15);
    EXPECT_THROW(v_of_alpha(0.0, p), DomainError);
    EXPECT_THROW(v_of_alpha(pi, p), DomainError);
    EXPECT_THROW(v_of_alpha(4.0, p), DomainError);
}

// Direct formula (sqrt(1 + k sin^2) - sqrt(1 + k)) / cos away from pi/2.
TEST(VOfAlpha, MatchesDefinitionAndIsContinuous) {
    for (const double kappa : {0.1, 1.0, 10.0}) {
        const ModelParams p = ModelParams::from_kappa(kappa, 2.0);
        for (double a = 0.05; a < pi - 0.05; a += 0.01) {
            if (std::abs(a - pi / 2) < 0.02) {
                continue;
            }
            const double s = std::sin(a);
            const double direct = (std::sqrt(1 + kappa * s * s) - std::sqrt(1 + kappa)) / std::cos(a);
            EXPECT_NEAR(v_of_alpha(a, p), direct, 1e-13);
        }
        const double left = v_of_alpha(pi / 2 - 1e-9, p);
        const double right = v_of_alpha(pi / 2 + 1e-9, p);
        EXPECT_NEAR(left, 0.0, 1e-8);
        EXPECT_NEAR(right, 0.0, 1e-8);
        EXPECT_GT(right, left);
    }
}

TEST(VOfAlpha, RoundTripThroughU) {
    const ModelParams p(1.0, 1.0);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> a(1e-6, pi - 1e-6);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double alpha = a(rng);
        worst = std::max(worst, std::abs(u_of_v(v_of_alpha(alpha, p), p) - std::cos(alpha)));
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(Antiderivative, Examples) {
    const ModelParams p(1.0, 1.0);
    EXPECT_EQ(antiderivative(0.0, p), 0.0);
    std::mt19937_64 rng(32);
    const VRange r = v_range(p);
    std::uniform_real_distribution<double> v(r.v_min * 0.999, r.v_max * 0.999);
    for (int i = 0; i < 200; ++i) {
        const double x = v(rng);
        EXPECT_NEAR(antiderivative(-x, p), -antiderivative(x, p), 1e-13);
    }
    EXPECT_THROW(antiderivative(r.v_max, p), SingularityError);
    EXPECT_THROW(antiderivative(r.v_min, p), SingularityError);
    EXPECT_THROW(antiderivative(r.v_max + 0.1, p), SingularityError);
}

TEST(Antiderivative, MatchesTermwiseFormula) {
    for (const double kappa : {0.5, 1.0, 3.0}) {
        const ModelParams p = ModelParams::from_kappa(kappa, 1.0);
        const VRange r = v_range(p);
        for (int i = 1; i < 50; ++i) {
            const double v = r.v_min + (r.v_max - r.v_min) * i / 50.0;
            const double direct =
                0.5 * std::log(std::abs((v * v + 2 * v - kappa) / (v * v - 2 * v - kappa))) -
                2 * std::sqrt(kappa) * std::atan(v / std::sqrt(kappa));
            EXPECT_NEAR(antiderivative(v, p), direct, 1e-12 * (1 + std::abs(direct)));
        }
    }
}

TEST(Antiderivative, DerivativeMatchesIntegrand) {
    std::mt19937_64 rng(33);
    for (const double kappa : {0.5, 1.0, 3.0}) {
        const ModelParams p = ModelParams::from_kappa(kappa, 1.0);
        const VRange r = v_range(p);
        std::uniform_real_distribution<double> v(0.9 * r.v_min, 0.9 * r.v_max);
        for (int i = 0; i < 200; ++i) {
            const double x = v(rng);
            const double fd =
                oracle::derivative([&](double t) { return antiderivative(t, p); }, x, 1e-4);
            const double exact = oracle::antiderivative_integrand(x, kappa);
            EXPECT_LT(std::abs(fd - exact), 1e-6 * std::abs(exact)) << "v=" << x;
        }
    }
}

TEST(PartialFractions, Examples) {
    const IdentitySides b = partial_fraction_identity(0.0, 1.0);
    // lhs = -2(1+k) k^2 / (k^2 k) = -4 at k = 1
    EXPECT_NEAR(b.lhs, -4.0, 1e-13);
    EXPECT_NEAR(b.rhs, -4.0, 1e-13);
    const IdentitySides c = partial_fraction_identity(1.0, 2.0);
    EXPECT_NEAR(c.lhs, c.rhs, 1e-13 * (1 + std::abs(c.lhs)));
    // v = 1 is a root of v^2 + 2v - 3, so both sides blow up there.
    EXPECT_THROW(partial_fraction_identity(1.0, 3.0), SingularityError);
    EXPECT_THROW(partial_fraction_identity(-1.0, 3.0), SingularityError);
}

TEST(PartialFractions, RandomisedIdentity) {
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> vd(-5.0, 5.0);
    std::uniform_real_distribution<double> kd(0.01, 10.0);
    int checked = 0;
    while (checked < 1000) {
        const double v = vd(rng);
        const double k = kd(rng);
        const double d1 = v * v + 2 * v - k;
        const double d2 = v * v - 2 * v - k;
        if (std::abs(d1) < 1e-3 || std::abs(d2) < 1e-3) {
            continue;
        }
        const IdentitySides s = partial_fraction_identity(v, k);
        const double lhs = -2 * (1 + k) * (v * v - k) * (v * v - k) / (d1 * d2 * (v * v + k));
        EXPECT_NEAR(s.lhs, lhs, 1e-12 * (1 + std::abs(lhs)));
        EXPECT_NEAR(s.rhs, oracle::antiderivative_integrand(v, k), 1e-12 * (1 + std::abs(lhs)));
        EXPECT_LT(std::abs(s.lhs - s.rhs), 1e-10 * (1 + std::abs(s.lhs)));
        ++checked;
    }
}

TEST(XOfV, Examples) {
    const ModelParams p(1.0, 1.0);
    const ImplicitSolution sol(p, 0.75, KinkSign::minus);
    EXPECT_EQ(x_of_v(0.0, sol), 0.75);
    const VRange r = v_range(p);
    const double a = x_of_v(0.99 * r.v_max, sol);
    const double b = x_of_v(0.999 * r.v_max, sol);
    EXPECT_GT(a, 0.75);
    EXPECT_GT(b, a);
}

TEST(XOfV, AgreesWithQuadratureOfFirstOrderEquation) {
    const ModelParams p(1.0, 1.0);
    const ImplicitSolution sol(p, 0.0, KinkSign::minus);
    for (const double v : {0.2, -0.3, 0.4}) {
        const double alpha = std::acos(u_of_v(v, p));
        EXPECT_NEAR(x_of_v(v, sol), oracle::position_by_quadrature(alpha, 1.0, 1.0), 1e-10);
    }
    const ModelParams q(4.0, 2.0);
    const ImplicitSolution s2(q, 0.0, KinkSign::minus);
    const double alpha = std::acos(u_of_v(0.2, q));
    EXPECT_NEAR(x_of_v(0.2, s2), oracle::position_by_quadrature(alpha, 1.0, 2.0), 1e-10);
}

TEST(XOfV, StrictlyIncreasing) {
    for (const double kappa : {0.1, 1.0, 10.0}) {
        const ModelParams p = ModelParams::from_kappa(kappa, 1.0);
        const ImplicitSolution sol(p, 0.0, KinkSign::minus);
        const VRange r = v_range(p);
        const double eps = 1e-9 * (r.v_max - r.v_min);
        double prev = -std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 10000; ++i) {
            const double v = r.v_min + eps + (r.v_max - r.v_min - 2 * eps) * i / 10000.0;
            const double x = x_of_v(v, sol);
            ASSERT_GT(x, prev) << "kappa=" << kappa << " v=" << v;
            prev = x;
        }
    }
}

TEST(AlphaOfX, Examples) {
    const ModelParams p(1.0, 1.0);
    for (const long base : {0L, 2L, -2L}) {
        const ImplicitSolution sol(p, 1.5, KinkSign::minus, base);
        EXPECT_NEAR(alpha_of_x(1.5, sol), base * pi + pi / 2, 1e-15);
        EXPECT_NEAR(alpha_of_x(-1e3, sol), base * pi, 1e-15);
        EXPECT_NEAR(alpha_of_x(1e3, sol), (base + 1) * pi, 1e-15);
    }
}

TEST(AlphaOfX, ChainRoundTrip) {
    std::mt19937_64 rng(35);
    for (const double kappa : {0.1, 1.0, 10.0}) {
        const ModelParams p = ModelParams::from_kappa(kappa, 1.7);
        const ImplicitSolution sol(p, -0.4, KinkSign::minus);
        const VRange r = v_range(p);
        std::uniform_real_distribution<double> vd(0.999 * r.v_min, 0.999 * r.v_max);
        for (int i = 0; i < 200; ++i) {
            const double v = vd(rng);
            const double alpha = alpha_of_x(x_of_v(v, sol), sol);
            EXPECT_NEAR(v_of_alpha(alpha, p), v, 1e-10) << "kappa=" << kappa;
        }
    }
}

TEST(AlphaOfX, MatchesQuadratureInverse) {
    for (const double kappa : {0.1, 1.0, 10.0}) {
        const ModelParams p = ModelParams::from_kappa(kappa, 1.0);
        const ImplicitSolution sol(p, 0.0, KinkSign::minus);
        for (double a = 0.05; a < pi; a += 0.15) {
            const double x = oracle::position_by_quadrature(a, kappa, 1.0);
            EXPECT_NEAR(alpha_of_x(x, sol), a, 1e-10);
        }
    }
}

TEST(AlphaOfX, SolvesFirstOrderEquation) {
    for (const double kappa : {0.1, 1.0, 10.0}) {
        const ModelParams p = ModelParams::from_kappa(kappa, 1.3);
        const ImplicitSolution sol(p, 0.2, KinkSign::minus);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double x = -12.0 + 24.0 * i / 999.0;
            const double d = oracle::derivative([&](double t) { return alpha_of_x(t, sol); }, x, 1e-3);
            worst = std::max(worst, std::abs(bps_residual({alpha_of_x(x, sol), d}, KinkSign::minus, p)));
        }
        EXPECT_LT(worst, 1e-8) << "kappa=" << kappa;
    }
}

TEST(AlphaOfX, SolvesSecondOrderEquation) {
    for (const double kappa : {0.1, 1.0, 10.0}) {
        const ModelParams p = ModelParams::from_kappa(kappa, 1.0);
        const ImplicitSolution sol(p, 0.0, KinkSign::minus);
        const auto f = [&](double t) { return alpha_of_x(t, sol); };
        double worst = 0.0;
        for (int i = 0; i < 400; ++i) {
            const double x = -8.0 + 16.0 * i / 399.0;
            const double d1 = oracle::derivative(f, x, 1e-3);
            const double d2 = oracle::second_derivative(f, x, 1e-2);
            worst = std::max(worst, std::abs(second_order_residual(f(x), d1, d2, p)));
        }
        EXPECT_LT(worst, 1e-6) << "kappa=" << kappa;
    }
}

TEST(AlphaOfX, StateSlopeMatchesFiniteDifference) {
    const ModelParams p(2.0, 0.8);
    for (const KinkSign k : {KinkSign::plus, KinkSign::minus}) {
        for (const long base : {0L, 1L, -3L}) {
            const ImplicitSolution sol(p, 0.3, k, base);
            for (double x = -3.0; x <= 3.0; x += 0.37) {
                const double fd = oracle::derivative([&](double t) { return sol.alpha(t); }, x, 1e-3);
                EXPECT_NEAR(sol.state(x).dalpha, fd, 1e-9);
                EXPECT_NEAR(bps_residual(sol.state(x), k, p), 0.0, 1e-14);
            }
        }
    }
}

TEST(ImplicitSolution, TranslationCovariance) {
    const ModelParams p(1.0, 1.0);
    const ImplicitSolution sol(p, 0.0, KinkSign::minus);
    for (const double delta : {0.5, -2.25, 7.0}) {
        const ImplicitSolution moved = sol.shifted(delta);
        EXPECT_EQ(moved.x0(), delta);
        for (double x = -6.0; x <= 6.0; x += 0.25) {
            EXPECT_NEAR(alpha_of_x(x + delta, moved), alpha_of_x(x, sol), 1e-12);
        }
    }
}

TEST(ImplicitSolution, ReflectionIsMirrorImage) {
    const ModelParams p(3.0, 1.4);
    const ImplicitSolution kink(p, 0.6, KinkSign::minus);
    const ImplicitSolution anti = kink.reflected();
    EXPECT_EQ(anti.sign(), KinkSign::plus);
    EXPECT_EQ(anti.orientation(), -1);
    for (double x = -8.0; x <= 8.0; x += 0.2) {
        EXPECT_NEAR(anti.alpha(x), kink.alpha(2 * 0.6 - x), 1e-12);
    }
}

TEST(ImplicitSolution, Orientation) {
    const ModelParams p(1.0, 1.0);
    EXPECT_EQ(kink_orientation(KinkSign::minus, 0), 1);
    EXPECT_EQ(kink_orientation(KinkSign::plus, 0), -1);
    EXPECT_EQ(kink_orientation(KinkSign::minus, 1), -1);
    EXPECT_EQ(kink_orientation(KinkSign::plus, 1), 1);
    EXPECT_EQ(kink_orientation(KinkSign::minus, -2), 1);
    const ImplicitSolution s(p, 0.0, KinkSign::plus, 1);
    EXPECT_EQ(s.left_vacuum(), 1);
    EXPECT_EQ(s.right_vacuum(), 2);
}

TEST(BranchMap, Examples) {
    const BranchMapping a = branch_map(0, 1);
    EXPECT_TRUE(a.valid);
    EXPECT_EQ(a.vacuum_base, 0);
    EXPECT_EQ(a.sign, KinkSign::minus);
    const BranchMapping b = branch_map(1, 0);
    EXPECT_TRUE(b.valid);
    EXPECT_EQ(b.vacuum_base, 0);
    EXPECT_EQ(b.sign, KinkSign::plus);
    EXPECT_FALSE(branch_map(0, 2).valid);
    EXPECT_FALSE(branch_map(0, 0).valid);
    EXPECT_FALSE(branch_map(3, -1).valid);
}

TEST(BranchMap, EveryAdjacentPairHasMatchingBoundaryValues) {
    const ModelParams p(1.0, 1.0);
    for (long m = -4; m <= 4; ++m) {
        for (long n = -4; n <= 4; ++n) {
            const BranchMapping b = branch_map(m, n);
            EXPECT_EQ(b.valid, std::abs(m - n) == 1);
            if (!b.valid) {
                EXPECT_THROW(ImplicitSolution::for_branch(p, 0.0, m, n), DomainError);
                continue;
            }
            const ImplicitSolution s = ImplicitSolution::for_branch(p, 0.0, m, n);
            EXPECT_EQ(s.left_vacuum(), m);
            EXPECT_EQ(s.right_vacuum(), n);
            EXPECT_NEAR(s.alpha(-50.0), m * pi, 1e-12);
            EXPECT_NEAR(s.alpha(50.0), n * pi, 1e-12);
            for (double x = -4.0; x <= 4.0; x += 0.5) {
                EXPECT_NEAR(bps_residual(s.state(x), b.sign, p), 0.0, 1e-14);
            }
        }
    }
}

TEST(ReducedPosition, OddAboutCentre) {
    for (const double kappa : {0.1, 1.0, 10.0}) {
        EXPECT_NEAR(reduced_position(pi / 2, kappa), 0.0, 1e-15);
        for (double a = 0.01; a < pi / 2; a += 0.05) {
            EXPECT_NEAR(reduced_position(pi - a, kappa), -reduced_position(a, kappa), 1e-11);
            EXPECT_NEAR(reduced_position(a, kappa), oracle::position_by_quadrature(a, kappa, 1.0), 1e-10);
        }
    }
}

TEST(SineGordonLimit, MatchesClassicalKink) {
    for (const double kappa : {1e-9, 1e-12}) {
        for (const double big_l : {1.0, 2.5}) {
            const ModelParams p = ModelParams::from_kappa(kappa, big_l);
            const ImplicitSolution sol(p, 0.3, KinkSign::minus);
            for (const double x : {-2.0, 0.0, 2.0, -10.0, 9.0}) {
                EXPECT_NEAR(alpha_of_x(x, sol), oracle::sine_gordon(x, 0.3, big_l), 1e-8);
            }
        }
    }
}

TEST(SineGordonLimit, ContinuousAcrossThreshold) {
    const ModelParams below = ModelParams::from_kappa(0.99 * sine_gordon_kappa_threshold, 1.0);
    const ModelParams above = ModelParams::from_kappa(1.01 * sine_gordon_kappa_threshold, 1.0);
    const ImplicitSolution a(below, 0.0, KinkSign::minus);
    const ImplicitSolution b(above, 0.0, KinkSign::minus);
    for (double x = -10.0; x <= 10.0; x += 0.5) {
        EXPECT_NEAR(a.alpha(x), b.alpha(x), 1e-8);
    }
}
