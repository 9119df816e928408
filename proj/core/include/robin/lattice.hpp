#pragma once

#include <complex>
#include <vector>

#include "robin/errors.hpp"

namespace robin {

using Complex = std::complex<double>;

/// Sequence over the half-line sites 1,2,3,...; element i stores the value at
/// site i+1. The virtual site 0 carries the Dirichlet value 0 and is never stored.
using ComplexSeq = std::vector<Complex>;

bool is_finite(Complex value);

/// Throws DomainError when value has a NaN or Inf component.
void require_finite(Complex value, const char* what);

/// z = k + 1/k.  Maps the punctured closed unit disk onto the complement of
/// the open band (-2,2); the open disk maps one-to-one onto C minus [-2,2].
/// Throws DomainError for k = 0 or |k| > 1 (tolerance 1e-12 on the circle).
Complex joukowski(Complex k);

/// A z-plane point paired with its disk preimage k, |k| <= 1, z = k + 1/k.
struct SpectralPoint {
    Complex z;
    Complex k;

    /// Validates |k| <= 1, k != 0 and recomputes z from k.
    static SpectralPoint from_k(Complex k);

    /// Root selection: |k| <= 1 always; for z on the band [-2,2] (where both
    /// roots sit on the unit circle) the one with Im k >= 0.
    static SpectralPoint from_z(Complex z);
};

/// Root of k^2 - z k + 1 = 0 with the branch choice of SpectralPoint::from_z.
SpectralPoint inverse_joukowski(Complex z);

/// Coarse classification of the boundary coupling.
enum class CouplingClass {
    RealUnitInterval, ///< a real, a in [0,1)
    RealSymmetric,    ///< a real, a in (-1,1) but not in [0,1)
    SubUnit,          ///< |a| <= 1 otherwise
    SuperUnit,        ///< |a| > 1
};

/// Boundary coupling constant of the half-line operator.  a = 0 is the
/// Dirichlet case, a = 1 the Neumann case; |a| > 1 produces the sole
/// eigenvalue a + 1/a.
class RobinCoupling {
public:
    RobinCoupling() : a_(0.0) {}
    explicit RobinCoupling(Complex a) : a_(a) { require_finite(a, "coupling"); }
    RobinCoupling(double re, double im) : RobinCoupling(Complex(re, im)) {}

    Complex value() const { return a_; }
    bool is_real() const { return a_.imag() == 0.0; }
    bool is_super_unit() const { return std::abs(a_) > 1.0; }
    bool is_sub_unit() const { return !is_super_unit(); }
    bool in_real_unit_interval() const { return is_real() && a_.real() >= 0.0 && a_.real() < 1.0; }
    bool in_real_symmetric_interval() const { return is_real() && a_.real() > -1.0 && a_.real() < 1.0; }

    /// Most specific class first; always derived from the value.
    CouplingClass classify() const;

    /// The point eigenvalue a + 1/a; only meaningful when is_super_unit().
    Complex eigenvalue() const;

private:
    Complex a_;
};

/// (D psi)_n = psi_{n-1} - psi_n with psi_0 = 0.  Output has one more element
/// than the input (the trailing psi_L survives at site L+1).
ComplexSeq difference_backward(const ComplexSeq& psi);

/// (D* psi)_n = psi_{n+1} - psi_n.
ComplexSeq difference_forward(const ComplexSeq& psi);

/// Dirichlet energy sum_{n>=1} |psi_n - psi_{n-1}|^2 with psi_0 = 0,
/// accumulated directly from the sequence.
double dirichlet_form(const ComplexSeq& psi);

} // namespace robin
