#include <doctest.h>

#include <robin/lattice.hpp>
#include <robin/potential.hpp>
#include <robin/spectra.hpp>
#include <robin/tridiagonal.hpp>

#include <random>

#include "oracles.hpp"

using robin::Complex;
using robin::ComplexSeq;

TEST_CASE("joukowski map")
{
    CHECK(std::abs(robin::joukowski(Complex(0.5, 0.0)) - Complex(2.5, 0.0)) < 1e-15);
    CHECK(std::abs(robin::joukowski(Complex(0.0, 0.5)) - Complex(0.0, -1.5)) < 1e-15);
    const double pi3 = 3.14159265358979323846 / 3.0;
    CHECK(std::abs(robin::joukowski(std::polar(1.0, pi3)) - Complex(1.0, 0.0)) < 1e-14);

    CHECK_THROWS_AS(robin::joukowski(Complex(0.0, 0.0)), robin::DomainError);
    CHECK_THROWS_AS(robin::joukowski(Complex(1.5, 0.0)), robin::DomainError);
    CHECK_THROWS_AS(robin::joukowski(Complex(std::nan(""), 0.0)), robin::DomainError);
}

TEST_CASE("inverse joukowski branch selection")
{
    CHECK(std::abs(robin::inverse_joukowski(Complex(2.5, 0.0)).k - Complex(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(robin::inverse_joukowski(Complex(2.0, 0.0)).k - Complex(1.0, 0.0)) < 1e-12);
    // Of the two roots +-0.5i, only -0.5i maps back to 1.5i.
    const robin::SpectralPoint p = robin::inverse_joukowski(Complex(0.0, 1.5));
    CHECK(std::abs(p.k - Complex(0.0, -0.5)) < 1e-15);
    CHECK(std::abs(robin::joukowski(p.k) - Complex(0.0, 1.5)) < 1e-15);

    // Band points pick the upper-half root.
    const robin::SpectralPoint band = robin::inverse_joukowski(Complex(1.0, 0.0));
    CHECK(band.k.imag() > 0.0);
    CHECK(std::abs(std::abs(band.k) - 1.0) < 1e-12);

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> unif(-4.0, 4.0);
    for (int i = 0; i < 200; ++i) {
        Complex z(unif(rng), unif(rng));
        if (std::abs(z.imag()) < 1e-3) {
            z += Complex(0.0, 0.1);
        }
        const robin::SpectralPoint q = robin::inverse_joukowski(z);
        CHECK(std::abs(q.k) <= 1.0 + 1e-12);
        CHECK(std::abs(robin::joukowski(q.k) - z) <= 1e-12 * std::abs(z));
    }
}

TEST_CASE("spectral point invariants")
{
    CHECK_THROWS_AS(robin::SpectralPoint::from_k(Complex(0.0, 0.0)), robin::DomainError);
    CHECK_THROWS_AS(robin::SpectralPoint::from_k(Complex(1.2, 0.0)), robin::DomainError);
    const robin::SpectralPoint p = robin::SpectralPoint::from_k(Complex(0.3, 0.4));
    CHECK(std::abs(p.z - (p.k + 1.0 / p.k)) < 1e-15);
}

TEST_CASE("coupling classification")
{
    CHECK(robin::RobinCoupling(Complex(0.5, 0.0)).classify() == robin::CouplingClass::RealUnitInterval);
    CHECK(robin::RobinCoupling(Complex(-0.5, 0.0)).classify() == robin::CouplingClass::RealSymmetric);
    CHECK(robin::RobinCoupling(Complex(0.0, 0.9)).classify() == robin::CouplingClass::SubUnit);
    CHECK(robin::RobinCoupling(Complex(0.0, 1.5)).classify() == robin::CouplingClass::SuperUnit);
    CHECK(robin::RobinCoupling(Complex(2.0, 0.0)).classify() == robin::CouplingClass::SuperUnit);

    CHECK(std::abs(robin::RobinCoupling(Complex(2.0, 0.0)).eigenvalue() - Complex(2.5, 0.0)) < 1e-15);
    CHECK_THROWS_AS(robin::RobinCoupling(Complex(0.5, 0.0)).eigenvalue(), robin::DomainError);
}

TEST_CASE("difference operators")
{
    const ComplexSeq e1{Complex(1.0, 0.0)};
    const ComplexSeq d = robin::difference_backward(e1);
    REQUIRE(d.size() == 2);
    CHECK(d[0] == Complex(-1.0, 0.0));
    CHECK(d[1] == Complex(1.0, 0.0));

    const ComplexSeq f = robin::difference_forward(e1);
    REQUIRE(f.size() == 1);
    CHECK(f[0] == Complex(-1.0, 0.0));

    // <psi, D*D psi> for psi = (1,1,0,...) by direct summation of
    // |psi_{n-1} - psi_n|^2: the three contributing terms give 1 + 0 + 1.
    const ComplexSeq psi{Complex(1.0, 0.0), Complex(1.0, 0.0)};
    CHECK(robin::dirichlet_form(psi) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("dirichlet form equals free-operator quadratic form")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int support = 1 + static_cast<int>(rng() % 40);
        ComplexSeq psi(static_cast<std::size_t>(support));
        for (Complex& x : psi) {
            x = Complex(unif(rng), unif(rng));
        }
        const int n = support + 1;
        const robin::TridiagonalMatrix j0 = robin::build_truncation(robin::RobinCoupling(), {}, n);
        ComplexSeq padded = psi;
        padded.resize(static_cast<std::size_t>(n), Complex(0.0, 0.0));
        // 2 ||psi||^2 - <psi, J_0 psi>
        Complex form = -j0.quadratic_form(padded);
        for (const Complex& x : psi) {
            form += 2.0 * std::norm(x);
        }
        const double direct = robin::dirichlet_form(psi);
        CHECK(std::abs(form.imag()) < 1e-12);
        CHECK(std::abs(form.real() - direct) <= 1e-12 * std::max(1.0, direct));
    }
}

TEST_CASE("build_truncation")
{
    const robin::TridiagonalMatrix m0 = robin::build_truncation(robin::RobinCoupling(), {}, 3);
    CHECK(m0.diag(0) == Complex(0.0, 0.0));
    CHECK(m0.diag(1) == Complex(0.0, 0.0));
    CHECK(m0.diag(2) == Complex(0.0, 0.0));
    CHECK(m0.off_diagonal() == Complex(1.0, 0.0));

    const robin::TridiagonalMatrix m2 = robin::build_truncation(robin::RobinCoupling(Complex(2.0, 0.0)), {}, 2);
    CHECK(m2.diag(0) == Complex(2.0, 0.0));
    CHECK(m2.diag(1) == Complex(0.0, 0.0));

    const robin::Potential v = robin::Potential::single_site(1, Complex(0.0, 2.0));
    const robin::TridiagonalMatrix mv = robin::build_truncation(robin::RobinCoupling(), v, 2);
    CHECK(mv.diag(0) == Complex(0.0, 2.0));
    CHECK(mv.diag(1) == Complex(0.0, 0.0));

    CHECK_THROWS_AS(robin::build_truncation(robin::RobinCoupling(), {}, 1), robin::SizeError);
}

TEST_CASE("duality transform")
{
    const robin::RobinCoupling a(Complex(0.3, 0.0));
    const robin::TridiagonalMatrix m = robin::build_truncation(a, {}, 50);
    const robin::TridiagonalMatrix t = robin::duality_transform(m);

    // Diagonal preserved entrywise, double transform is the identity.
    for (int i = 0; i < m.size(); ++i) {
        CHECK(t.diag(i) == m.diag(i));
    }
    CHECK(robin::duality_transform(t).off_diagonal() == m.off_diagonal());

    // Spectra of the transform and of the negated reflected coupling agree.
    auto negated = [](const robin::TridiagonalMatrix& x) {
        std::vector<Complex> diag;
        for (int i = 0; i < x.size(); ++i) {
            diag.push_back(-x.diag(i));
        }
        return robin::TridiagonalMatrix(diag, -x.off_diagonal());
    };
    for (int n : {50, 500}) {
        const robin::TridiagonalMatrix lhs =
            robin::duality_transform(robin::build_truncation(a, {}, n));
        const robin::TridiagonalMatrix rhs =
            negated(robin::build_truncation(robin::RobinCoupling(Complex(-0.3, 0.0)), {}, n));
        const auto le = robin::eigenvalues_dense(lhs).eigenvalues;
        const auto re = robin::eigenvalues_dense(rhs).eigenvalues;
        REQUIRE(le.size() == re.size());
        double hausdorff = 0.0;
        for (std::size_t i = 0; i < le.size(); ++i) {
            hausdorff = std::max(hausdorff, std::abs(le[i] - re[i]));
        }
        CHECK(hausdorff <= (n <= 50 ? 1e-10 : 1e-8));
    }
}

TEST_CASE("potential json round trip and validation")
{
    const std::string text = R"({"entries":[{"n":1,"re":0.5,"im":-0.25},{"n":3,"re":0.0,"im":1.0}]})";
    const robin::Potential v = robin::Potential::from_json(text);
    CHECK(v.value(1) == Complex(0.5, -0.25));
    CHECK(v.value(2) == Complex(0.0, 0.0));
    CHECK(v.value(3) == Complex(0.0, 1.0));
    CHECK(v.support_max() == 3);
    CHECK(v.l1_norm() == doctest::Approx(std::abs(Complex(0.5, -0.25)) + 1.0));

    const robin::Potential round = robin::Potential::from_json(v.to_json());
    CHECK(round.value(1) == v.value(1));
    CHECK(round.value(3) == v.value(3));

    CHECK_THROWS_AS(robin::Potential::from_json(R"({"entries":[{"n":2,"re":1},{"n":2,"re":3}]})"),
                    robin::ConfigError);
    CHECK_THROWS_AS(robin::Potential::from_json(R"({"entries":[{"n":0,"re":1}]})"), robin::ConfigError);
    CHECK_THROWS_AS(robin::Potential::from_json(R"({"entries":[{"n":1.5,"re":1}]})"), robin::ConfigError);
    CHECK_THROWS_AS(robin::Potential::from_json("not json"), robin::ConfigError);

    const robin::Potential single = robin::Potential::single_site(4, Complex(0.0, 2.0));
    CHECK(single.entries().size() == 1);
    CHECK(single.l1_norm() == doctest::Approx(2.0));
    CHECK_THROWS_AS(robin::Potential::single_site(0, Complex(1.0, 0.0)), robin::DomainError);
}

TEST_CASE("potential tail bounds")
{
    robin::Potential v = robin::Potential::single_site(1, Complex(0.5, 0.0));
    v.declare_tail({0.1, 4.5, 10});
    CHECK(v.l1_norm() > 0.5);
    CHECK(v.weighted_site_sum(0.0) < 1.0);

    robin::Potential slow = robin::Potential::single_site(1, Complex(0.5, 0.0));
    slow.declare_tail({0.1, 2.5, 10});
    CHECK_THROWS_AS(slow.weighted_site_sum(0.0), robin::DivergentTailError);
}
