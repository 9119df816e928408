#include "robin/green.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace robin {

namespace {

constexpr double kTailCutoff = 1e-14;
constexpr double kCircleExclusion = 1e-9;
constexpr double kArgmaxTie = 1e-12;
constexpr double kPi = 3.14159265358979323846;
constexpr double kPiHalf = kPi / 2.0;

// kappa = (k - a)/(1 - ak); infinite at the resolvent pole k = 1/a.
Complex kappa_of(Complex k, Complex a, bool* at_pole)
{
    const Complex denom = 1.0 - a * k;
    if (std::abs(denom) == 0.0) {
        *at_pole = true;
        return Complex(0.0, 0.0);
    }
    *at_pole = false;
    return (k - a) / denom;
}

void check_sup_domain(const SpectralPoint& p)
{
    const double r = std::abs(p.k);
    if (r == 0.0) {
        throw DomainError("green_sup_factor: k = 0");
    }
    if (r >= 1.0 - kCircleExclusion) {
        throw DomainError("green_sup_factor: |k| too close to the unit circle");
    }
}

} // namespace

SupFactorResult green_sup_factor_detailed(const SpectralPoint& p, const RobinCoupling& a)
{
    check_sup_domain(p);
    bool at_pole = false;
    const Complex kappa = kappa_of(p.k, a.value(), &at_pole);
    if (at_pole) {
        return {std::numeric_limits<double>::infinity(), 0};
    }

    const Complex ratio = p.k * p.k;
    // First pass: the supremum itself.
    double sup = 1.0; // limit candidate, always a member of the closure
    Complex term = kappa * p.k;
    for (long long n = 1;; ++n) {
        const double mag = std::abs(term);
        const double value = std::abs(1.0 - term);
        if (value > sup) {
            sup = value;
        }
        // Once 1 + |term| cannot beat the current max, later sites cannot either.
        if (mag < kTailCutoff || 1.0 + mag <= sup) {
            break;
        }
        term *= ratio;
    }

    // Second pass: smallest site within the tie tolerance of the sup.
    long long attained = 0;
    term = kappa * p.k;
    for (long long n = 1;; ++n) {
        const double mag = std::abs(term);
        if (std::abs(1.0 - term) >= sup - kArgmaxTie) {
            attained = n;
            break;
        }
        if (mag < kTailCutoff || 1.0 + mag < sup - kArgmaxTie) {
            break; // sup is the limit value
        }
        term *= ratio;
    }
    return {sup, attained};
}

double green_sup_factor(const SpectralPoint& p, const RobinCoupling& a)
{
    return green_sup_factor_detailed(p, a).value;
}

double green_sup_factor_upper_bound(const SpectralPoint& p, const RobinCoupling& a)
{
    const double r = std::abs(p.k);
    if (r == 0.0 || r > 1.0 + 1e-12) {
        throw DomainError("green_sup_factor_upper_bound: need 0 < |k| <= 1");
    }
    bool at_pole = false;
    const Complex kappa = kappa_of(p.k, a.value(), &at_pole);
    if (at_pole) {
        return std::numeric_limits<double>::infinity();
    }
    return 1.0 + std::abs(kappa);
}

double resolvent_sup(const SpectralPoint& p, const RobinCoupling& a)
{
    const double g = green_sup_factor(p, a);
    return g / std::abs(p.k - 1.0 / p.k);
}

double unit_circle_kernel(double theta, double a, int m)
{
    if (!(a >= 0.0 && a < 1.0)) {
        throw ParamError("unit_circle_kernel: need a in [0,1)");
    }
    if (m < 1) {
        throw ParamError("unit_circle_kernel: need m >= 1");
    }
    double phi = std::abs(theta);
    if (phi > kPiHalf) {
        // Reflect onto [0, pi/2]: sin(m theta) at theta = pi - phi reduces to
        // +-(sin(m phi) + a sin((m-1) phi)) with small sine arguments.  The
        // direct formula near +-pi loses every digit to the rounding of the
        // products m*theta.
        phi = kPi - phi;
        if (phi == 0.0) {
            return (m + a * (m - 1)) / (1.0 + a);
        }
        const double numer = std::abs(std::sin(m * phi) + a * std::sin((m - 1) * phi));
        const double denom = std::abs(std::sin(phi)) * std::sqrt(1.0 + a * a + 2.0 * a * std::cos(phi));
        return numer / denom;
    }
    if (phi == 0.0) {
        return (m - a * (m - 1)) / (1.0 - a);
    }
    const double numer = std::abs(std::sin(m * phi) - a * std::sin((m - 1) * phi));
    const double denom = std::sin(phi) * std::sqrt(1.0 + a * a - 2.0 * a * std::cos(phi));
    return numer / denom;
}

double kernel_global_bound(double a, int m, int n)
{
    if (!(a >= 0.0 && a < 1.0)) {
        throw ParamError("kernel_global_bound: need a in [0,1)");
    }
    if (m < 1 || n < 1) {
        throw ParamError("kernel_global_bound: sites are 1-based");
    }
    return a / (1.0 - a) + static_cast<double>(std::min(m, n));
}

namespace {

// k^p for p >= 0 by binary exponentiation.
Complex cpow_int(Complex k, long long p)
{
    Complex acc(1.0, 0.0);
    Complex base = k;
    while (p > 0) {
        if (p & 1) {
            acc *= base;
        }
        base *= base;
        p >>= 1;
    }
    return acc;
}

// Closed-form kernel before the sign fix:
// k^{|m-n|} (kappa k^{2 min(m,n)-1} - 1) / (k - 1/k).
Complex raw_kernel(Complex k, Complex a, int m, int n)
{
    bool at_pole = false;
    const Complex kappa = kappa_of(k, a, &at_pole);
    if (at_pole) {
        throw PoleError("green kernel: z is the eigenvalue a + 1/a");
    }
    const int lo = std::min(m, n);
    const int hi = std::max(m, n);
    const Complex decay = cpow_int(k, hi - lo);
    const Complex inner = kappa * cpow_int(k, 2 * lo - 1) - 1.0;
    return decay * inner / (k - 1.0 / k);
}

} // namespace

GreenKernelEvaluator::GreenKernelEvaluator(const RobinCoupling& a)
    : a_(a), sign_(1.0)
{
    // Fix the sign once against a diagonally dominant truncated solve at a
    // real point beyond the numerical range.
    const double z0 = std::abs(a.value()) + 4.0;
    const SpectralPoint p = SpectralPoint::from_z(Complex(z0, 0.0));
    const int n = 480;
    TridiagonalMatrix trunc = build_truncation(a_, Potential{}, n);
    ComplexSeq e1(static_cast<std::size_t>(n), Complex(0.0, 0.0));
    e1[0] = 1.0;
    const ComplexSeq u = solve_shifted_dominant(trunc, p.z, e1);
    const Complex formula = raw_kernel(p.k, a_.value(), 1, 1);
    const double err_plus = std::abs(formula - u[0]);
    const double err_minus = std::abs(-formula - u[0]);
    sign_ = (err_minus < err_plus) ? -1.0 : 1.0;
    const double err = std::min(err_plus, err_minus);
    if (!(err <= 1e-6 * std::max(1.0, std::abs(u[0])))) {
        throw ConvergenceFailure("GreenKernelEvaluator: sign oracle mismatch");
    }
}

Complex GreenKernelEvaluator::entry(const SpectralPoint& p, int m, int n) const
{
    if (m < 1 || n < 1) {
        throw DomainError("green entry: sites are 1-based");
    }
    const double r = std::abs(p.k);
    if (r == 0.0 || r >= 1.0) {
        throw DomainError("green entry: need 0 < |k| < 1");
    }
    if (a_.is_super_unit()) {
        const Complex pole_k = 1.0 / a_.value();
        if (std::abs(p.k - pole_k) <= 1e-13 * std::abs(pole_k)) {
            throw PoleError("green entry: z at the eigenvalue a + 1/a");
        }
    }
    return sign_ * raw_kernel(p.k, a_.value(), m, n);
}

Complex EigenSolution::value(int n) const
{
    if (n < 1) {
        throw DomainError("EigenSolution: sites are 1-based");
    }
    const Complex av = a.value();
    if (k == Complex(1.0, 0.0)) {
        return Complex(static_cast<double>(n), 0.0) - av * static_cast<double>(n - 1);
    }
    if (k == Complex(-1.0, 0.0)) {
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        return sgn * (Complex(static_cast<double>(n), 0.0) + av * static_cast<double>(n - 1));
    }
    return (k - av) * cpow_int(k, n - 1) - (1.0 / k - av) * cpow_int(1.0 / k, n - 1);
}

double EigenSolution::truncation_residual(int n_sites) const
{
    if (n_sites < 2) {
        throw SizeError("EigenSolution::truncation_residual: need N >= 2");
    }
    const Complex zz = z();
    ComplexSeq psi(static_cast<std::size_t>(n_sites));
    for (int i = 0; i < n_sites; ++i) {
        psi[static_cast<std::size_t>(i)] = value(i + 1);
    }
    TridiagonalMatrix trunc = build_truncation(a, Potential{}, n_sites);
    const ComplexSeq mp = trunc.apply(psi);
    double res = 0.0;
    double norm = 0.0;
    for (int i = 0; i < n_sites; ++i) {
        res += std::norm(mp[static_cast<std::size_t>(i)] - zz * psi[static_cast<std::size_t>(i)]);
        norm += std::norm(psi[static_cast<std::size_t>(i)]);
    }
    return std::sqrt(res / norm);
}

} // namespace robin
