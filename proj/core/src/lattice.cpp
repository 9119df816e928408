#include "robin/lattice.hpp"

#include <cmath>

namespace robin {

namespace {
constexpr double kCircleTol = 1e-12;
}

bool is_finite(Complex value)
{
    return std::isfinite(value.real()) && std::isfinite(value.imag());
}

void require_finite(Complex value, const char* what)
{
    if (!is_finite(value)) {
        throw DomainError(std::string(what) + ": non-finite value");
    }
}

Complex joukowski(Complex k)
{
    require_finite(k, "joukowski");
    const double r = std::abs(k);
    if (r == 0.0) {
        throw DomainError("joukowski: k = 0");
    }
    if (r > 1.0 + kCircleTol) {
        throw DomainError("joukowski: |k| > 1");
    }
    return k + 1.0 / k;
}

SpectralPoint SpectralPoint::from_k(Complex k)
{
    return SpectralPoint{joukowski(k), k};
}

SpectralPoint SpectralPoint::from_z(Complex z)
{
    require_finite(z, "inverse_joukowski");
    const Complex w = std::sqrt(z * z - 4.0);
    const Complex r1 = (z - w) / 2.0;
    const Complex r2 = (z + w) / 2.0;
    // Roots multiply to 1; take the larger-magnitude one first and invert it,
    // which avoids cancellation when |z| is large.
    Complex big = (std::abs(r1) >= std::abs(r2)) ? r1 : r2;
    Complex k = 1.0 / big;
    if (std::abs(std::abs(k) - 1.0) <= kCircleTol) {
        // z on the band: both roots on the unit circle, pick Im k >= 0.
        k = (r1.imag() >= r2.imag()) ? r1 : r2;
        if (k.imag() < 0.0 && std::abs(k.imag()) <= kCircleTol) {
            k = Complex(k.real(), 0.0); // z = +-2 up to rounding
        }
    }
    return SpectralPoint{z, k};
}

SpectralPoint inverse_joukowski(Complex z)
{
    return SpectralPoint::from_z(z);
}

CouplingClass RobinCoupling::classify() const
{
    if (in_real_unit_interval()) {
        return CouplingClass::RealUnitInterval;
    }
    if (in_real_symmetric_interval()) {
        return CouplingClass::RealSymmetric;
    }
    return is_super_unit() ? CouplingClass::SuperUnit : CouplingClass::SubUnit;
}

Complex RobinCoupling::eigenvalue() const
{
    if (!is_super_unit()) {
        throw DomainError("RobinCoupling::eigenvalue: no point spectrum for |a| <= 1");
    }
    return a_ + 1.0 / a_;
}

ComplexSeq difference_backward(const ComplexSeq& psi)
{
    ComplexSeq out(psi.size() + 1);
    Complex prev = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        out[i] = prev - psi[i];
        prev = psi[i];
    }
    out[psi.size()] = prev;
    return out;
}

ComplexSeq difference_forward(const ComplexSeq& psi)
{
    if (psi.empty()) {
        return {};
    }
    ComplexSeq out(psi.size());
    for (std::size_t i = 0; i + 1 < psi.size(); ++i) {
        out[i] = psi[i + 1] - psi[i];
    }
    out[psi.size() - 1] = -psi.back();
    return out;
}

double dirichlet_form(const ComplexSeq& psi)
{
    double sum = 0.0;
    Complex prev = 0.0;
    for (const Complex& v : psi) {
        sum += std::norm(v - prev);
        prev = v;
    }
    sum += std::norm(prev);
    return sum;
}

} // namespace robin
