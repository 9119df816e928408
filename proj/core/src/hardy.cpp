#include "robin/hardy.hpp"

#include <cmath>
#include <vector>

#include <nlohmann/json.hpp>

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace robin {

double q_max(double a)
{
    if (!(a >= 0.0 && a < 1.0)) {
        throw DomainError("q_max: need a in [0,1)");
    }
    return std::min(std::log2(2.0 - a), 0.5);
}

namespace {

constexpr long long kSeriesFrom = 8;

// 2 - (1-x)^q - (1+x)^q as the positive even series
// 2q sum_k (1-q)_{2k-1}/(2k)! x^{2k}; all terms positive for q in (0,1).
double power_weight_series(double q, double x2)
{
    double coeff = (1.0 - q) / 2.0; // (1-q)_1 / 2!
    double xpow = x2;
    double sum = 0.0;
    for (int k = 1; k < 64; ++k) {
        const double term = coeff * xpow;
        sum += term;
        if (term < sum * 1e-18) {
            break;
        }
        const double two_k = 2.0 * k;
        coeff *= (two_k - q) * (two_k + 1.0 - q) / ((two_k + 1.0) * (two_k + 2.0));
        xpow *= x2;
    }
    return 2.0 * q * sum;
}

double power_weight(double q, long long n)
{
    if (n >= kSeriesFrom) {
        const double x = 1.0 / static_cast<double>(n);
        return power_weight_series(q, x * x);
    }
    const double x = 1.0 / static_cast<double>(n);
    return 2.0 - std::pow(1.0 - x, q) - std::pow(1.0 + x, q);
}

} // namespace

HardyWeight HardyWeight::classical()
{
    return HardyWeight(WeightKind::Classical, 0.0, 0.0);
}

HardyWeight HardyWeight::power(double q)
{
    if (!(q > 0.0 && q <= 0.5)) {
        throw ParamError("HardyWeight::power: need q in (0, 1/2]");
    }
    return HardyWeight(WeightKind::PowerGenerated, q, 0.0);
}

HardyWeight HardyWeight::robin(double q, double a)
{
    const double qa = q_max(a); // validates a
    if (!(q > 0.0 && q <= qa + 1e-12)) {
        throw ParamError("HardyWeight::robin: need q in (0, q_max(a)]");
    }
    return HardyWeight(WeightKind::RobinCoupled, q, a);
}

double HardyWeight::value(long long n) const
{
    if (n < 1) {
        throw DomainError("HardyWeight: sites are 1-based");
    }
    switch (kind_) {
    case WeightKind::Classical:
        return 1.0 / (4.0 * static_cast<double>(n) * static_cast<double>(n));
    case WeightKind::PowerGenerated:
        return power_weight(q_, n);
    case WeightKind::RobinCoupled:
        return power_weight(q_, n) - (n == 1 ? a_ : 0.0);
    }
    return 0.0;
}

GeneratorSequence::GeneratorSequence(std::function<double(long long)> g)
    : g_(std::move(g))
{
}

GeneratorSequence GeneratorSequence::power(double q)
{
    return GeneratorSequence([q](long long n) { return std::pow(static_cast<double>(n), q); });
}

double GeneratorSequence::g(long long n) const
{
    if (n == 0) {
        return 0.0;
    }
    if (n < 0) {
        throw DomainError("GeneratorSequence: negative site");
    }
    const double v = g_(n);
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError("GeneratorSequence: g must be positive and finite");
    }
    return v;
}

double GeneratorSequence::weight(long long n) const
{
    if (n < 1) {
        throw DomainError("GeneratorSequence::weight: sites are 1-based");
    }
    const double gm = (n == 1) ? 0.0 : g(n - 1);
    const double gn = g(n);
    const double gp = g(n + 1);
    const double laplacian = 2.0 * gn - gm - gp;
    const double scale = 2.0 * gn + gm + gp;
    if (laplacian < -1e-12 * scale) {
        throw SuperharmonicityViolation("GeneratorSequence: (-Delta g)_" + std::to_string(n) + " < 0");
    }
    return laplacian / gn;
}

void GeneratorSequence::check_superharmonic(long long up_to) const
{
    for (long long n = 1; n <= up_to; ++n) {
        (void)weight(n);
    }
}

double IdentityParts::residual() const
{
    return std::abs(dirichlet - weighted - remainder);
}

IdentityParts hardy_identity_parts(const ComplexSeq& u, const GeneratorSequence& gen)
{
    const long long support = static_cast<long long>(u.size());
    auto at = [&](long long n) -> Complex {
        return (n >= 1 && n <= support) ? u[static_cast<std::size_t>(n - 1)] : Complex(0.0, 0.0);
    };

    IdentityParts parts;
    parts.dirichlet = dirichlet_form(u);
    for (long long n = 1; n <= support; ++n) {
        parts.weighted += gen.weight(n) * std::norm(at(n));
    }
    // |sqrt(g_{n-1}/g_n) u_n - sqrt(g_n/g_{n-1}) u_{n-1}|^2 expanded; the
    // cross coefficient is exactly 1, so no square roots are needed.
    for (long long n = 2; n <= support + 1; ++n) {
        const double gm = gen.g(n - 1);
        const double gn = gen.g(n);
        const Complex un = at(n);
        const Complex um = at(n - 1);
        parts.remainder += (gm / gn) * std::norm(un) + (gn / gm) * std::norm(um)
                         - 2.0 * (std::conj(un) * um).real();
    }
    return parts;
}

double identity_residual(const ComplexSeq& u, const GeneratorSequence& gen)
{
    return hardy_identity_parts(u, gen).residual();
}

double CutoffSequence::value(long long site) const
{
    if (site < 1) {
        throw DomainError("CutoffSequence: sites are 1-based");
    }
    if (kind == Kind::LogCutoff) {
        if (site < n) {
            return 1.0;
        }
        if (site > n * n) {
            return 0.0;
        }
        const double logn = std::log(static_cast<double>(n));
        return (2.0 * logn - std::log(static_cast<double>(site))) / logn;
    }
    if (site < n) {
        return 1.0;
    }
    if (site > 2 * n) {
        return 0.0;
    }
    return static_cast<double>(2 * n - site) / static_cast<double>(n);
}

CutoffSequence CutoffSequence::log_cutoff(long long n)
{
    if (n < 2) {
        throw SizeError("CutoffSequence::log_cutoff: need N >= 2");
    }
    return CutoffSequence{Kind::LogCutoff, n};
}

CutoffSequence CutoffSequence::linear_ramp(long long n)
{
    if (n < 1) {
        throw SizeError("CutoffSequence::linear_ramp: need N >= 1");
    }
    return CutoffSequence{Kind::LinearRamp, n};
}

double optimality_certificate(double q, long long n)
{
    if (n < 2) {
        throw SizeError("optimality_certificate: need N >= 2");
    }
    if (!(q > 0.0 && q <= 0.5)) {
        throw ParamError("optimality_certificate: need q in (0, 1/2]");
    }
    // Only sites N+1 .. N^2 contribute: the cutoff is flat elsewhere.
    const double inv_log2 = 1.0 / std::pow(std::log(static_cast<double>(n)), 2);
    const long long hi = n * n;
    double sum = 0.0;
    double comp = 0.0; // Kahan
    for (long long m = n + 1; m <= hi; ++m) {
        const double prod = static_cast<double>(m) * static_cast<double>(m - 1);
        const double gg = (q == 0.5) ? std::sqrt(prod) : std::pow(prod, q);
        const double step = std::log1p(1.0 / static_cast<double>(m - 1));
        const double term = gg * step * step;
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum * inv_log2;
}

CertificateReport certify_optimality(double q, long long n)
{
    CertificateReport rep;
    rep.n = n;
    rep.s = optimality_certificate(q, n);
    rep.bound = 4.0 / std::log(static_cast<double>(n));
    return rep;
}

std::string CertificateReport::to_json() const
{
    nlohmann::ordered_json j;
    j["N"] = n;
    j["S"] = s;
    j["bound"] = bound;
    return j.dump();
}

std::pair<double, double> neumann_criticality_demo(long long n)
{
    if (n < 1) {
        throw SizeError("neumann_criticality_demo: need N >= 1");
    }
    // psi_k = p_k / N with integer numerators; the forward differences are
    // integers as well, so the energy N/N^2 is computed exactly.
    auto numer = [n](long long k) -> long long {
        if (k < n) {
            return n;
        }
        if (k <= 2 * n) {
            return 2 * n - k;
        }
        return 0;
    };
    long long sum = 0;
    for (long long k = 1; k <= 2 * n + 1; ++k) {
        const long long d = numer(k + 1) - numer(k);
        sum += d * d;
    }
    const double energy = static_cast<double>(sum)
        / (static_cast<double>(n) * static_cast<double>(n));
    return {energy, 1.0 / static_cast<double>(n)};
}

double tail_energy_ratio(const HardyWeight& w, long long from, int window)
{
    if (from < 1 || window < 1) {
        throw ParamError("tail_energy_ratio: need from >= 1 and window >= 1");
    }
    // For psi supported on the window the Dirichlet energy is the quadratic
    // form of the free section (diag 2, off-diag -1); dividing out the weight
    // symmetrically leaves a tridiagonal pencil B^{-1/2} M B^{-1/2}.
    const int dim = window + 1;
    std::vector<double> wval(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        wval[static_cast<std::size_t>(i)] = w.value(from + i);
        if (!(wval[static_cast<std::size_t>(i)] > 0.0)) {
            throw ParamError("tail_energy_ratio: weight must be positive on the window");
        }
    }
    std::vector<double> d(static_cast<std::size_t>(dim));
    std::vector<double> e(static_cast<std::size_t>(dim - 1));
    for (int i = 0; i < dim; ++i) {
        d[static_cast<std::size_t>(i)] = 2.0 / wval[static_cast<std::size_t>(i)];
        if (i + 1 < dim) {
            e[static_cast<std::size_t>(i)] =
                -1.0 / std::sqrt(wval[static_cast<std::size_t>(i)] * wval[static_cast<std::size_t>(i + 1)]);
        }
    }
    const int info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'N', dim, d.data(), e.data(), nullptr, dim);
    if (info != 0) {
        throw ConvergenceFailure("tail_energy_ratio: dstev info=" + std::to_string(info));
    }
    return d[0];
}

} // namespace robin
