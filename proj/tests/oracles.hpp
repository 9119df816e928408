#pragma once

// Test-only oracles.  These deliberately avoid the library's closed-form
// evaluation paths: resolvent columns come from a pivoted sparse solve, sups
// from plain bounded scans, and spectra from the dense eigensolver.

#include <random>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <robin/lattice.hpp>
#include <robin/potential.hpp>
#include <robin/tridiagonal.hpp>

namespace oracles {

using robin::Complex;

/// Column `col` (1-based) of (J_a + V - z)^{-1} on the N x N truncation,
/// via sparse LU with pivoting.
inline robin::ComplexSeq resolvent_column(const robin::RobinCoupling& a, const robin::Potential& v,
                                          Complex z, int n, int col)
{
    using Sparse = Eigen::SparseMatrix<Complex>;
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(static_cast<std::size_t>(3 * n));
    for (int i = 0; i < n; ++i) {
        Complex d = v.value(i + 1) - z;
        if (i == 0) {
            d += a.value();
        }
        trips.emplace_back(i, i, d);
        if (i + 1 < n) {
            trips.emplace_back(i, i + 1, Complex(1.0, 0.0));
            trips.emplace_back(i + 1, i, Complex(1.0, 0.0));
        }
    }
    Sparse m(n, n);
    m.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseLU<Sparse> lu;
    lu.compute(m);
    if (lu.info() != Eigen::Success) {
        throw std::runtime_error("oracle: sparse LU failed");
    }
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
    rhs(col - 1) = 1.0;
    Eigen::VectorXcd x = lu.solve(rhs);
    return robin::ComplexSeq(x.data(), x.data() + n);
}

/// Brute-force sup_n |1 - ((k-a)/(1-ak)) k^{2n-1}| over n <= limit, with the
/// limit candidate 1 included.
inline double sup_factor(Complex k, Complex a, int limit = 2000)
{
    const Complex kappa = (k - a) / (1.0 - a * k);
    double sup = 1.0;
    Complex power = k;
    for (int n = 1; n <= limit; ++n) {
        sup = std::max(sup, std::abs(1.0 - kappa * power));
        power *= k * k;
    }
    return sup;
}

/// Random finite-support potential with a prescribed l1 norm.
inline robin::Potential random_potential(std::mt19937_64& rng, int max_site, int max_entries,
                                         double l1_target)
{
    std::uniform_int_distribution<int> count(1, max_entries);
    std::uniform_int_distribution<int> site(1, max_site);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    robin::Potential v;
    const int entries = count(rng);
    for (int i = 0; i < entries; ++i) {
        v.set(site(rng), Complex(unif(rng), unif(rng)) + Complex(0.05, 0.05));
    }
    return v.scaled(l1_target / v.l1_norm());
}

inline Complex random_in_disk(std::mt19937_64& rng, double radius)
{
    std::uniform_real_distribution<double> unif(-radius, radius);
    while (true) {
        const Complex k(unif(rng), unif(rng));
        if (std::abs(k) <= radius && std::abs(k) > 0.02) {
            return k;
        }
    }
}

} // namespace oracles
