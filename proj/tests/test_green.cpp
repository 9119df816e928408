#include <doctest.h>

#include <robin/green.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"

using robin::Complex;
using robin::GreenKernelEvaluator;
using robin::RobinCoupling;
using robin::SpectralPoint;

namespace {
const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;
}

TEST_CASE("kernel sign is fixed by the solve oracle")
{
    for (Complex a : {Complex(0.0, 0.0), Complex(0.5, 0.0), Complex(1.0, 0.0),
                      Complex(2.0, 0.0), Complex(0.0, kPhi)}) {
        CHECK(GreenKernelEvaluator(RobinCoupling(a)).sign() == -1.0);
    }
}

TEST_CASE("free kernel values at z = 2.5")
{
    const GreenKernelEvaluator ev{RobinCoupling()};
    const SpectralPoint p = SpectralPoint::from_z(Complex(2.5, 0.0));
    CHECK(std::abs(ev.entry(p, 1, 1) - Complex(-0.5, 0.0)) < 1e-14);
    CHECK(std::abs(ev.entry(p, 1, 3) - Complex(-0.125, 0.0)) < 1e-14);
    CHECK(ev.entry(p, 2, 5) == ev.entry(p, 5, 2));
}

TEST_CASE("kernel matches the pivoted-solve oracle")
{
    std::mt19937_64 rng(11);
    const RobinCoupling a(Complex(0.5, 0.0));
    const GreenKernelEvaluator ev(a);
    for (int trial = 0; trial < 20; ++trial) {
        const Complex k = oracles::random_in_disk(rng, 0.9);
        const SpectralPoint p = SpectralPoint::from_k(k);
        const int m = 1 + static_cast<int>(rng() % 20);
        const int n = 1 + static_cast<int>(rng() % 20);
        const robin::ComplexSeq col = oracles::resolvent_column(a, {}, p.z, 800, n);
        double scale = 0.0;
        for (const Complex& x : col) {
            scale = std::max(scale, std::abs(x));
        }
        CHECK(std::abs(ev.entry(p, m, n) - col[static_cast<std::size_t>(m - 1)]) <= 1e-8 * scale);
    }
}

TEST_CASE("resolvent identity column residuals")
{
    const int n = 1000;
    for (Complex av : {Complex(0.5, 0.0), Complex(2.0, 0.0)}) {
        const RobinCoupling a(av);
        const GreenKernelEvaluator ev(a);
        const Complex z(0.7, 1.3);
        const SpectralPoint p = SpectralPoint::from_z(z);
        const robin::TridiagonalMatrix trunc = robin::build_truncation(a, {}, n);
        for (int col : {1, 7, 100, 500}) {
            robin::ComplexSeq g(static_cast<std::size_t>(n));
            for (int m = 1; m <= n; ++m) {
                g[static_cast<std::size_t>(m - 1)] = ev.entry(p, m, col);
            }
            robin::ComplexSeq res = trunc.apply(g);
            double worst = 0.0;
            for (int row = 0; row < n; ++row) {
                Complex r = res[static_cast<std::size_t>(row)] - z * g[static_cast<std::size_t>(row)];
                if (row == col - 1) {
                    r -= 1.0;
                }
                worst = std::max(worst, std::abs(r));
            }
            CHECK(worst <= 1e-9);
        }
    }
}

TEST_CASE("kernel pole and domain errors")
{
    const GreenKernelEvaluator ev{RobinCoupling(Complex(2.0, 0.0))};
    const SpectralPoint pole{Complex(2.5, 0.0), Complex(0.5, 0.0)};
    CHECK_THROWS_AS(ev.entry(pole, 1, 1), robin::PoleError);
    CHECK_THROWS_AS(ev.entry(SpectralPoint{Complex(1.0, 0.0), std::polar(1.0, 1.0)}, 1, 1),
                    robin::DomainError);
    CHECK_THROWS_AS(ev.entry(pole, 0, 1), robin::DomainError);
}

TEST_CASE("kernel sup factor")
{
    const RobinCoupling zero;
    CHECK(robin::green_sup_factor(SpectralPoint::from_z(Complex(2.5, 0.0)), zero)
          == doctest::Approx(1.0).epsilon(1e-12));

    // k = 0.9i: terms |1 - (-0.81)^n| peak at n = 1.
    CHECK(robin::green_sup_factor(SpectralPoint::from_k(Complex(0.0, 0.9)), zero)
          == doctest::Approx(1.81).epsilon(1e-12));

    // Pole of the coupled operator.
    const RobinCoupling two(Complex(2.0, 0.0));
    CHECK(std::isinf(robin::green_sup_factor(SpectralPoint::from_z(Complex(2.5, 0.0)), two)));

    CHECK_THROWS_AS(robin::green_sup_factor(SpectralPoint::from_k(std::polar(1.0 - 1e-10, 0.3)), zero),
                    robin::DomainError);
}

TEST_CASE("kernel sup factor against brute force")
{
    std::mt19937_64 rng(3);
    for (Complex av : {Complex(0.0, 0.0), Complex(0.7, 0.0), Complex(0.0, kPhi), Complex(1.0, 0.0)}) {
        const RobinCoupling a(av);
        for (int trial = 0; trial < 50; ++trial) {
            Complex k = oracles::random_in_disk(rng, 0.93);
            if (a.is_super_unit() && std::abs(k - 1.0 / av) < 1e-3) {
                continue;
            }
            const SpectralPoint p = SpectralPoint::from_k(k);
            const double got = robin::green_sup_factor(p, a);
            const double want = oracles::sup_factor(k, av);
            CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, want));
            CHECK(got >= std::abs(1.0 - (k - av) / (1.0 - av * k) * k) - 1e-12);
            CHECK(got >= 1.0 - 1e-12);
        }
    }
}

TEST_CASE("closed-form upper bound covers the sup factor up to the circle")
{
    std::mt19937_64 rng(4);
    const RobinCoupling a(Complex(0.6, 0.0));
    for (int trial = 0; trial < 40; ++trial) {
        const Complex k = oracles::random_in_disk(rng, 0.9);
        const SpectralPoint p = SpectralPoint::from_k(k);
        CHECK(robin::green_sup_factor(p, a) <= robin::green_sup_factor_upper_bound(p, a) + 1e-12);
    }
    // Evaluable on the circle itself, where the sup is refused.
    const SpectralPoint band = SpectralPoint::from_z(Complex(1.2, 0.0));
    const Complex kappa = (band.k - 0.6) / (1.0 - 0.6 * band.k);
    CHECK(robin::green_sup_factor_upper_bound(band, a)
          == doctest::Approx(1.0 + std::abs(kappa)).epsilon(1e-15));
}

TEST_CASE("conjugation symmetry for real couplings")
{
    std::mt19937_64 rng(5);
    const RobinCoupling a(Complex(0.4, 0.0));
    const GreenKernelEvaluator ev(a);
    for (int trial = 0; trial < 30; ++trial) {
        const Complex k = oracles::random_in_disk(rng, 0.9);
        const SpectralPoint p = SpectralPoint::from_k(k);
        const SpectralPoint pc = SpectralPoint::from_k(std::conj(k));
        CHECK(robin::green_sup_factor(p, a) == robin::green_sup_factor(pc, a));
        CHECK(ev.entry(pc, 2, 3) == std::conj(ev.entry(p, 2, 3)));
    }
}

TEST_CASE("resolvent sup")
{
    const RobinCoupling zero;
    const SpectralPoint p = SpectralPoint::from_z(Complex(2.5, 0.0));
    const double gamma = robin::resolvent_sup(p, zero);
    CHECK(gamma == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    const GreenKernelEvaluator ev(zero);
    CHECK(std::abs(ev.entry(p, 1, 1)) <= gamma + 1e-15);

    // Brute-force sup over sites m, n <= 200, sampled well inside the disk.
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const Complex k = oracles::random_in_disk(rng, 0.9);
        const SpectralPoint q = SpectralPoint::from_k(k);
        double brute = 0.0;
        for (int m = 1; m <= 200; ++m) {
            for (int n = m; n <= std::min(200, m + 60); ++n) {
                brute = std::max(brute, std::abs(ev.entry(q, m, n)));
            }
        }
        CHECK(std::abs(brute - robin::resolvent_sup(q, zero)) <= 1e-8);
    }
}

TEST_CASE("unit circle kernel profile")
{
    // theta -> 0 limits
    CHECK(robin::unit_circle_kernel(0.0, 0.0, 3) == doctest::Approx(3.0));
    CHECK(robin::unit_circle_kernel(0.0, 0.5, 4) == doctest::Approx(5.0));
    CHECK(robin::unit_circle_kernel(0.0, 0.5, 1) == doctest::Approx(2.0));

    // m = 1 closed form at general theta
    for (double theta : {0.3, 1.1, 2.7}) {
        const double a = 0.6;
        CHECK(robin::unit_circle_kernel(theta, a, 1)
              == doctest::Approx(1.0 / std::sqrt(1.0 + a * a - 2.0 * a * std::cos(theta))));
    }

    // even in theta
    for (double theta : {0.2, 0.9, 2.2, 3.0}) {
        CHECK(robin::unit_circle_kernel(theta, 0.3, 5)
              == doctest::Approx(robin::unit_circle_kernel(-theta, 0.3, 5)).epsilon(1e-15));
    }

    // grid maximum sits at theta = 0
    for (int m : {1, 2, 7, 23}) {
        for (double a : {0.0, 0.3, 0.9}) {
            double grid_max = 0.0;
            for (int i = -4000; i <= 4000; ++i) {
                grid_max = std::max(grid_max,
                                    robin::unit_circle_kernel(3.14159265358979323846 * i / 4000.0, a, m));
            }
            const double at_zero = (m - a * (m - 1)) / (1.0 - a);
            CHECK(grid_max <= at_zero + 1e-12);
            CHECK(grid_max >= at_zero - 1e-6 * at_zero);
        }
    }

    CHECK_THROWS_AS(robin::unit_circle_kernel(0.1, 1.0, 3), robin::ParamError);
}

TEST_CASE("global kernel bound dominates sampled entries")
{
    CHECK(robin::kernel_global_bound(0.0, 3, 7) == doctest::Approx(3.0));
    CHECK(robin::kernel_global_bound(0.5, 1, 1) == doctest::Approx(2.0));

    const double a = 0.5;
    const GreenKernelEvaluator ev{RobinCoupling(Complex(a, 0.0))};
    for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 5}, {4, 3}, {9, 9}}) {
        const double bound = robin::kernel_global_bound(a, m, n);
        double sampled = 0.0;
        for (int ir = 1; ir <= 100; ++ir) {
            for (int it = 0; it < 100; ++it) {
                const double rho = 0.0099 * ir;
                const double theta = -3.1 + 6.2 * it / 99.0;
                sampled = std::max(sampled, std::abs(ev.entry(SpectralPoint::from_k(std::polar(rho, theta)), m, n)));
            }
        }
        CHECK(sampled <= bound + 1e-9);
    }
}

TEST_CASE("eigen solution")
{
    // The formal solution satisfies every row, including the boundary one.
    std::mt19937_64 rng(13);
    for (Complex av : {Complex(0.3, 0.2), Complex(2.0, 0.0)}) {
        const robin::EigenSolution psi{RobinCoupling(av), oracles::random_in_disk(rng, 0.8)};
        const Complex z = psi.z();
        const double boundary = std::abs(av * psi.value(1) + psi.value(2) - z * psi.value(1));
        CHECK(boundary <= 1e-12 * (std::abs(psi.value(1)) + std::abs(psi.value(2))));
        for (int n = 2; n <= 40; ++n) {
            const double scale = std::abs(psi.value(n - 1)) + std::abs(psi.value(n)) + std::abs(psi.value(n + 1));
            CHECK(std::abs(psi.value(n - 1) + psi.value(n + 1) - z * psi.value(n)) <= 1e-12 * scale);
        }
    }

    // Square-summable branch at k = 1/a: genuine eigenvector residual.
    for (Complex av : {Complex(2.0, 0.0), Complex(0.0, kPhi), Complex(1.5, 0.0)}) {
        const robin::EigenSolution psi{RobinCoupling(av), 1.0 / av};
        CHECK(psi.truncation_residual(100) <= 1e-10);
        CHECK(std::abs(psi.z() - (av + 1.0 / av)) < 1e-14);
    }

    // Polynomial profiles at the band edges.
    const robin::EigenSolution plus{RobinCoupling(Complex(0.25, 0.0)), Complex(1.0, 0.0)};
    CHECK(std::abs(plus.value(3) - Complex(3.0 - 0.25 * 2.0, 0.0)) < 1e-15);
    const robin::EigenSolution minus{RobinCoupling(Complex(0.25, 0.0)), Complex(-1.0, 0.0)};
    CHECK(std::abs(minus.value(3) - Complex(-(3.0 + 0.25 * 2.0), 0.0)) < 1e-15);
}
