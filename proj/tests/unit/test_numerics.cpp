#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "phasespace/numerics.hpp"
#include "test_support.hpp"

namespace ps = phasespace;
using ps::Complex;
using ps::testing::near_complex;
using ps::testing::near_relative;

TEST(HermitePoly, BaseCaseIsOne) {
    EXPECT_EQ(ps::hermite_poly(0, Complex(3.7, -1.2)), Complex(1.0));
    EXPECT_EQ(ps::hermite_poly(0, Complex(0.0)), Complex(1.0));
}

TEST(HermitePoly, LowOrderValues) {
    EXPECT_EQ(ps::hermite_poly(2, Complex(0.0)), Complex(-2.0));
    EXPECT_EQ(ps::hermite_poly(3, Complex(1.0)), Complex(-4.0));
    // H_2 = 4x² - 2 and H_3 = 8x³ - 12x at a complex point.
    const Complex x(0.3, 0.7);
    EXPECT_TRUE(near_complex(ps::hermite_poly(2, x), 4.0 * x * x - 2.0, 1e-14));
    EXPECT_TRUE(near_complex(ps::hermite_poly(3, x), 8.0 * x * x * x - 12.0 * x, 1e-14));
}

TEST(HermitePoly, RecurrenceResidualVanishes) {
    for (double xr = -5.0; xr <= 5.0; xr += 0.5) {
        for (double xi : {0.0, -1.5, 2.0}) {
            const Complex x(xr, xi);
            for (int n = 1; n < 20; ++n) {
                const Complex hn = ps::hermite_poly(n, x);
                const Complex hm = ps::hermite_poly(n - 1, x);
                const Complex next = 2.0 * x * hn - 2.0 * static_cast<double>(n) * hm;
                EXPECT_EQ(ps::hermite_poly(n + 1, x) - next, Complex(0.0)) << "n=" << n << " x=" << x;
            }
        }
    }
}

TEST(HermitePoly, GuardRejectsHighOrder) {
    EXPECT_NO_THROW(ps::hermite_poly(ps::kMaxHermiteOrder, Complex(0.5)));
    EXPECT_THROW(ps::hermite_poly(ps::kMaxHermiteOrder + 1, Complex(0.5)), ps::RangeError);
    EXPECT_THROW(ps::hermite_poly(-1, Complex(0.5)), ps::RangeError);
}

TEST(HermiteFunctions, OrthonormalOnTheLine) {
    const auto quad = ps::QuadratureSpec::make(0.0, 14.0, 2801);
    for (int m = 0; m <= 6; ++m) {
        for (int n = 0; n <= 6; ++n) {
            const Complex s = ps::quad_real_line(
                [&](double x) { return ps::hermite_function(m, x) * ps::hermite_function(n, x); }, quad);
            EXPECT_NEAR(s.real(), m == n ? 1.0 : 0.0, 1e-12) << m << "," << n;
        }
    }
}

TEST(HermiteFunctions, MatchesPolynomialForm) {
    for (double x : {-2.5, -0.3, 0.0, 1.1, 3.0}) {
        const auto psi = ps::hermite_functions(8, x);
        for (int n = 0; n <= 8; ++n) {
            const double direct = std::pow(ps::kPi, -0.25) / std::sqrt(std::ldexp(std::tgamma(n + 1.0), n))
                                  * ps::hermite_poly(n, Complex(x)).real() * std::exp(-0.5 * x * x);
            EXPECT_NEAR(psi[n], direct, 1e-13 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST(GaussianMomentIntegral, StandardValues) {
    EXPECT_TRUE(near_complex(ps::gaussian_moment_integral(0, 1.0, 0.0), std::sqrt(ps::kPi), 1e-15));
    EXPECT_TRUE(near_complex(ps::gaussian_moment_integral(1, 1.0, 0.0), 0.0, 1e-15));
    EXPECT_TRUE(near_complex(ps::gaussian_moment_integral(2, 0.5, 0.0), std::sqrt(2.0 * ps::kPi), 1e-13));
}

TEST(GaussianMomentIntegral, SecondMomentAgainstTrapezoid) {
    const auto quad = ps::QuadratureSpec::make(0.0, 12.0, 4001);
    const Complex brute = ps::quad_real_line([](double x) { return x * x * std::exp(-0.5 * x * x); }, quad);
    EXPECT_TRUE(near_relative(ps::gaussian_moment_integral(2, 0.5, 0.0), brute, 1e-12));
}

TEST(GaussianMomentIntegral, ZerothMomentIsExact) {
    for (double a : {0.1, 0.5, 1.0, 2.0, 7.5}) {
        const Complex v = ps::gaussian_moment_integral(0, a, 0.0);
        EXPECT_NEAR(v.real(), std::sqrt(ps::kPi / a), 4 * std::numeric_limits<double>::epsilon() * v.real());
        EXPECT_EQ(v.imag(), 0.0);
    }
}

TEST(GaussianMomentIntegral, MatchesQuadratureAcrossParameters) {
    const Complex bs[] = {{0.0, 0.0}, {1.5, 0.0}, {-2.0, 0.0}, {1.0, 1.0}, {-0.7, -0.9}, {0.0, 1.0}, {1.2, -1.0}};
    for (double a : {0.5, 1.0, 2.0}) {
        for (Complex b : bs) {
            const double shift = b.real() / (2.0 * a);
            const auto quad = ps::QuadratureSpec::make(shift, 16.0 / std::sqrt(a) + 4.0, 6001);
            for (int n = 0; n <= 8; ++n) {
                const Complex brute = ps::quad_real_line(
                    [&](double x) { return std::pow(x, n) * std::exp(-a * x * x + b * x); }, quad);
                const Complex closed = ps::gaussian_moment_integral(n, a, b);
                // Odd moments at b = 0 vanish; compare those absolutely.
                const double scale = std::max(std::abs(brute), std::sqrt(ps::kPi / a) * 1e-6);
                EXPECT_LE(std::abs(closed - brute), 1e-8 * scale) << "n=" << n << " a=" << a << " b=" << b;
            }
        }
    }
}

TEST(GaussianMomentIntegral, RejectsNonPositiveA) {
    EXPECT_THROW(ps::gaussian_moment_integral(0, 0.0, 0.0), ps::DomainError);
    EXPECT_THROW(ps::gaussian_moment_integral(2, -1.0, 0.0), ps::DomainError);
}

TEST(QuadRealLine, GaussianIntegral) {
    const auto quad = ps::QuadratureSpec::make(0.0, 8.0, 4001);
    const Complex v = ps::quad_real_line([](double x) { return std::exp(-x * x); }, quad);
    EXPECT_NEAR(v.real(), std::sqrt(ps::kPi), 1e-10);
}

TEST(QuadRealLine, ZeroAndOddIntegrands) {
    const auto quad = ps::QuadratureSpec::make(0.0, 5.0, 101);
    EXPECT_EQ(ps::quad_real_line([](double) { return 0.0; }, quad), Complex(0.0));
    const Complex odd = ps::quad_real_line([](double x) { return x * std::exp(-x * x); }, quad);
    EXPECT_LE(std::abs(odd), 1e-12);
}

TEST(QuadRealLine, NonFiniteSampleNamesNode) {
    const auto quad = ps::QuadratureSpec::make(0.0, 1.0, 5); // nodes -1, -0.5, 0, 0.5, 1
    try {
        ps::quad_real_line([](double x) { return 1.0 / x; }, quad);
        FAIL() << "expected NumericError";
    } catch (const ps::NumericError& e) {
        EXPECT_EQ(e.node_index(), 2u);
    }
}

TEST(QuadratureSpec, ValidatesConstruction) {
    EXPECT_THROW(ps::QuadratureSpec::make(0.0, 1.0, 1), ps::DomainError);
    EXPECT_THROW(ps::QuadratureSpec::make(0.0, 0.0, 10), ps::DomainError);
    EXPECT_THROW(ps::QuadratureSpec::make(0.0, -2.0, 10), ps::DomainError);
    EXPECT_THROW(ps::QuadratureSpec::make(0.0, std::numeric_limits<double>::infinity(), 10), ps::DomainError);
    const auto q = ps::QuadratureSpec::make(1.0, 2.0, 5);
    EXPECT_DOUBLE_EQ(q.lower(), -1.0);
    EXPECT_DOUBLE_EQ(q.upper(), 3.0);
    EXPECT_DOUBLE_EQ(q.step(), 1.0);
    EXPECT_DOUBLE_EQ(q.weight(0), 0.5);
    EXPECT_DOUBLE_EQ(q.weight(2), 1.0);
    EXPECT_DOUBLE_EQ(q.recentered(4.0).node(0), 2.0);
}

TEST(Ipow, SmallPowers) {
    const Complex z(0.4, -1.3);
    EXPECT_EQ(ps::ipow(z, 0), Complex(1.0));
    EXPECT_EQ(ps::ipow(Complex(0.0), 0), Complex(1.0));
    EXPECT_TRUE(near_complex(ps::ipow(z, 5), z * z * z * z * z, 1e-14));
    EXPECT_TRUE(near_complex(ps::ipow(Complex(0.0, 1.0), 4), 1.0, 1e-15));
}

TEST(LogFactorial, AgreesWithDirectProduct) {
    double acc = 0.0;
    for (int n = 1; n <= 170; ++n) {
        acc += std::log(static_cast<double>(n));
        EXPECT_NEAR(ps::log_factorial(n), acc, 1e-12 * std::max(1.0, acc));
    }
    EXPECT_EQ(ps::log_factorial(0), 0.0);
}
