#pragma once

#include "robin/lattice.hpp"
#include "robin/tridiagonal.hpp"

namespace robin {

/// Result of the kernel sup factor: the supremum of |1 - kappa k^{2n-1}| over
/// sites n, together with the smallest site attaining it.  attained_site = 0
/// means the sup equals the n -> infinity limit value 1 and is not attained.
struct SupFactorResult {
    double value = 0.0;
    long long attained_site = 0;
};

/// sup_n |1 - ((k-a)/(1-ak)) k^{2n-1}| for the point z = k + 1/k.
///
/// Scans sites until the geometric tail |kappa| |k|^{2n-1} drops below 1e-14
/// and always includes the limit candidate 1.  Returns +infinity at the
/// resolvent pole k = 1/a (|a| > 1).  Points with |k| >= 1 - 1e-9 are refused
/// (DomainError): the sup does not stabilize without decay; use
/// green_sup_factor_upper_bound for those.
double green_sup_factor(const SpectralPoint& p, const RobinCoupling& a);

SupFactorResult green_sup_factor_detailed(const SpectralPoint& p, const RobinCoupling& a);

/// The closed-form bound 1 + |(k-a)/(1-ak)|, valid up to |k| = 1.
double green_sup_factor_upper_bound(const SpectralPoint& p, const RobinCoupling& a);

/// sup_{m,n} |(J_a - z)^{-1}_{m,n}| = green_sup_factor / |sqrt(z^2-4)|.
double resolvent_sup(const SpectralPoint& p, const RobinCoupling& a);

/// Magnitude of the resolvent kernel on the unit circle z = 2 cos(theta):
/// |sin(m theta) - a sin((m-1) theta)| / (|sin theta| sqrt(1 + a^2 - 2a cos theta)),
/// extended continuously to theta = 0 and theta = +-pi.  Requires a in [0,1).
double unit_circle_kernel(double theta, double a, int m);

/// Global bound a/(1-a) + min(m,n) on |(J_a - z)^{-1}_{m,n}| over all z, for
/// a in [0,1).
double kernel_global_bound(double a, int m, int n);

/// Exact resolvent entries of the unperturbed operator.
///
/// The construction solves one diagonally dominant truncated system to fix
/// the overall sign of the closed-form kernel against the linear-solve value;
/// the closed form is used verbatim afterwards.
class GreenKernelEvaluator {
public:
    explicit GreenKernelEvaluator(const RobinCoupling& a);

    const RobinCoupling& coupling() const { return a_; }

    /// +1 or -1; the factor that makes the closed form solve (J_a - z)G = I.
    double sign() const { return sign_; }

    /// (J_a - z)^{-1}_{m,n} at z = p.z.  Requires 0 < |k| < 1; throws
    /// PoleError at k = 1/a for |a| > 1.
    Complex entry(const SpectralPoint& p, int m, int n) const;

    Complex entry(Complex z, int m, int n) const { return entry(SpectralPoint::from_z(z), m, n); }

private:
    RobinCoupling a_;
    double sign_;
};

/// Formal solution psi(k) of the eigenvalue equation at z = k + 1/k.  It
/// satisfies every row of the operator including the boundary row; it is
/// square summable exactly when k = 1/a with |a| > 1.
struct EigenSolution {
    RobinCoupling a;
    Complex k;

    Complex z() const { return k + 1.0 / k; }

    /// psi_n(k); at k = +-1 the polynomial profile (+-1)^n (n -+ a(n-1)).
    Complex value(int n) const;

    /// ||(J_a - z) psi|| / ||psi|| over the first n_sites sites.
    double truncation_residual(int n_sites) const;
};

} // namespace robin
