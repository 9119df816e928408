#include "robin/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <nlohmann/json.hpp>

#include "robin/hardy.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace robin {

namespace {

constexpr int kMaxDense = 4000;

bool lex_less(const Complex& x, const Complex& y)
{
    if (x.real() != y.real()) {
        return x.real() < y.real();
    }
    return x.imag() < y.imag();
}

// One inverse-iteration step against a fixed pseudo-random right-hand side:
// returns ||b|| / ||(M - lambda)^{-1} b||, the residual of a unit vector.
double certify_eigenvalue(const TridiagonalMatrix& m, Complex lambda)
{
    const int n = m.size();
    std::vector<Complex> dl(static_cast<std::size_t>(n - 1), m.off_diagonal());
    std::vector<Complex> du(dl);
    std::vector<Complex> d(static_cast<std::size_t>(n));
    std::vector<Complex> b(static_cast<std::size_t>(n));
    std::mt19937 rng(0x5eedu);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    double bnorm = 0.0;
    for (int i = 0; i < n; ++i) {
        d[static_cast<std::size_t>(i)] = m.diag(i) - lambda;
        b[static_cast<std::size_t>(i)] = Complex(unif(rng), unif(rng));
        bnorm += std::norm(b[static_cast<std::size_t>(i)]);
    }
    bnorm = std::sqrt(bnorm);
    const int info = LAPACKE_zgtsv(LAPACK_COL_MAJOR, n, 1, dl.data(), d.data(), du.data(), b.data(), n);
    if (info > 0) {
        return 0.0; // exact zero pivot: lambda is an eigenvalue of the factored section
    }
    if (info < 0) {
        throw ConvergenceFailure("zgtsv: bad argument");
    }
    double unorm = 0.0;
    for (const Complex& x : b) {
        unorm += std::norm(x);
    }
    unorm = std::sqrt(unorm);
    return unorm > 0.0 ? bnorm / unorm : 0.0;
}

EigenReport finalize_report(const TridiagonalMatrix& m, std::vector<Complex> eigs)
{
    std::sort(eigs.begin(), eigs.end(), lex_less);
    double worst = 0.0;
    for (const Complex& lambda : eigs) {
        worst = std::max(worst, certify_eigenvalue(m, lambda));
    }
    if (!(worst <= 1e-8)) {
        throw ConvergenceFailure("eigenvalues_dense: residual above 1e-8");
    }
    EigenReport rep;
    rep.n = m.size();
    rep.eigenvalues = std::move(eigs);
    rep.residual = worst;
    return rep;
}

std::vector<Complex> symmetric_real_eigenvalues(const TridiagonalMatrix& m)
{
    const int n = m.size();
    std::vector<double> d(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        d[static_cast<std::size_t>(i)] = m.diag(i).real();
    }
    std::vector<double> e(static_cast<std::size_t>(n - 1), m.off_diagonal().real());
    const int info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'N', n, d.data(), e.data(), nullptr, n);
    if (info != 0) {
        throw ConvergenceFailure("dstev: info=" + std::to_string(info));
    }
    std::vector<Complex> eigs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        eigs[static_cast<std::size_t>(i)] = Complex(d[static_cast<std::size_t>(i)], 0.0);
    }
    return eigs;
}

std::vector<Complex> hessenberg_eigenvalues(const TridiagonalMatrix& m)
{
    const int n = m.size();
    std::vector<Complex> h(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), Complex(0.0, 0.0));
    for (int i = 0; i < n; ++i) {
        h[static_cast<std::size_t>(i) * (static_cast<std::size_t>(n) + 1)] = m.diag(i);
        if (i + 1 < n) {
            h[static_cast<std::size_t>(i + 1) + static_cast<std::size_t>(i) * n] = m.off_diagonal();
            h[static_cast<std::size_t>(i) + static_cast<std::size_t>(i + 1) * n] = m.off_diagonal();
        }
    }
    std::vector<Complex> w(static_cast<std::size_t>(n));
    const int info = LAPACKE_zhseqr(LAPACK_COL_MAJOR, 'E', 'N', n, 1, n, h.data(), n, w.data(), nullptr, 1);
    if (info < 0) {
        throw ConvergenceFailure("zhseqr: bad argument");
    }
    if (info > 0) {
        throw ConvergenceFailure("zhseqr: QR iteration failed to converge ("
                                 + std::to_string(info) + " eigenvalues unconverged)");
    }
    return w;
}

} // namespace

EigenReport eigenvalues_dense(const TridiagonalMatrix& m)
{
    if (m.size() > kMaxDense) {
        throw SizeError("eigenvalues_dense: N > 4000");
    }
    std::vector<Complex> eigs = m.is_real() ? symmetric_real_eigenvalues(m)
                                            : hessenberg_eigenvalues(m);
    return finalize_report(m, std::move(eigs));
}

std::string EigenReport::to_json() const
{
    nlohmann::ordered_json j;
    j["N"] = n;
    j["eigenvalues"] = nlohmann::ordered_json::array();
    for (const Complex& z : eigenvalues) {
        j["eigenvalues"].push_back({{"re", z.real()}, {"im", z.imag()}});
    }
    j["residual"] = residual;
    return j.dump(2);
}

namespace {

// Characteristic polynomial of the truncation through the three-term
// recurrence, rescaled on the fly; only the argument is meaningful.
Complex char_poly_direction(const TridiagonalMatrix& m, Complex z, bool* degenerate)
{
    const Complex off2 = m.off_diagonal() * m.off_diagonal();
    Complex prev(1.0, 0.0);
    Complex cur = m.diag(0) - z;
    for (int i = 1; i < m.size(); ++i) {
        const Complex next = (m.diag(i) - z) * cur - off2 * prev;
        prev = cur;
        cur = next;
        const double scale = std::max(std::abs(cur), std::abs(prev));
        if (scale > 1e140) {
            prev /= scale;
            cur /= scale;
        }
    }
    *degenerate = (cur == Complex(0.0, 0.0));
    const double mag = std::abs(cur);
    return *degenerate ? cur : cur / mag;
}

struct ContourPoint {
    double t;
    Complex dir;
};

Complex stadium_point(double t, double margin)
{
    // t in [0,4): right cap, top edge, left cap, bottom edge.
    const double pi = 3.14159265358979323846;
    if (t < 1.0) {
        const double phi = -pi / 2.0 + pi * t;
        return Complex(2.0 + margin * std::cos(phi), margin * std::sin(phi));
    }
    if (t < 2.0) {
        return Complex(2.0 - 4.0 * (t - 1.0), margin);
    }
    if (t < 3.0) {
        const double phi = pi / 2.0 + pi * (t - 2.0);
        return Complex(-2.0 + margin * std::cos(phi), margin * std::sin(phi));
    }
    return Complex(-2.0 + 4.0 * (t - 3.0), -margin);
}

} // namespace

int count_outside_band(const TridiagonalMatrix& m, double band_margin)
{
    if (!(band_margin > 0.0)) {
        throw ParamError("count_outside_band: margin must be positive");
    }
    const int n = m.size();
    auto eval = [&](double t) {
        bool degenerate = false;
        const Complex dir = char_poly_direction(m, stadium_point(t, band_margin), &degenerate);
        if (degenerate) {
            throw ContourTooCloseError("count_outside_band: contour hits an eigenvalue");
        }
        return dir;
    };

    const int initial = std::max(8 * n, 256);
    std::vector<ContourPoint> pts;
    pts.reserve(static_cast<std::size_t>(initial) + 1);
    for (int i = 0; i <= initial; ++i) {
        const double t = 4.0 * static_cast<double>(i) / static_cast<double>(initial);
        pts.push_back({t, eval(t)});
    }
    pts.back().dir = pts.front().dir; // closed contour

    double winding = 0.0;
    const double max_step = 1.5; // radians; refine beyond this
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        // Refine the interval until each phase step is small.
        std::vector<ContourPoint> stack{pts[i + 1]};
        ContourPoint left = pts[i];
        int depth = 0;
        while (!stack.empty()) {
            const ContourPoint right = stack.back();
            const double dphi = std::arg(right.dir / left.dir);
            if (std::abs(dphi) <= max_step) {
                winding += dphi;
                left = right;
                stack.pop_back();
            } else if (right.t - left.t < 1e-12) {
                throw ContourTooCloseError("count_outside_band: unresolved phase jump");
            } else {
                if (++depth > 4096) {
                    throw ContourTooCloseError("count_outside_band: refinement limit");
                }
                const double tm = 0.5 * (left.t + right.t);
                stack.push_back({tm, eval(tm)});
            }
        }
    }
    const double raw = winding / (2.0 * 3.14159265358979323846);
    const long long inside = std::llround(raw);
    if (std::abs(raw - static_cast<double>(inside)) > 0.05) {
        throw ContourTooCloseError("count_outside_band: non-integer winding");
    }
    return n - static_cast<int>(inside);
}

namespace {

// Roots of a complex polynomial sum c_i k^i via QR on the companion matrix.
std::vector<Complex> polynomial_roots(std::vector<Complex> c)
{
    while (!c.empty() && std::abs(c.back()) == 0.0) {
        c.pop_back();
    }
    if (c.size() < 2) {
        return {};
    }
    const int deg = static_cast<int>(c.size()) - 1;
    const Complex lead = c.back();
    std::vector<Complex> h(static_cast<std::size_t>(deg) * static_cast<std::size_t>(deg), Complex(0.0, 0.0));
    for (int i = 0; i + 1 < deg; ++i) {
        h[static_cast<std::size_t>(i + 1) + static_cast<std::size_t>(i) * deg] = 1.0;
    }
    for (int i = 0; i < deg; ++i) {
        h[static_cast<std::size_t>(i) + static_cast<std::size_t>(deg - 1) * deg] =
            -c[static_cast<std::size_t>(i)] / lead;
    }
    std::vector<Complex> w(static_cast<std::size_t>(deg));
    const int info = LAPACKE_zhseqr(LAPACK_COL_MAJOR, 'E', 'N', deg, 1, deg, h.data(), deg, w.data(), nullptr, 1);
    if (info != 0) {
        throw ConvergenceFailure("polynomial_roots: zhseqr info=" + std::to_string(info));
    }
    return w;
}

Complex horner(const std::vector<Complex>& c, Complex x)
{
    Complex acc(0.0, 0.0);
    for (std::size_t i = c.size(); i-- > 0;) {
        acc = acc * x + c[i];
    }
    return acc;
}

Complex horner_derivative(const std::vector<Complex>& c, Complex x)
{
    Complex acc(0.0, 0.0);
    for (std::size_t i = c.size(); i-- > 1;) {
        acc = acc * x + static_cast<double>(i) * c[i];
    }
    return acc;
}

} // namespace

std::vector<Complex> rank_one_eigenvalues_exact(const RobinCoupling& a, Complex omega, int site)
{
    if (site < 1) {
        throw DomainError("rank_one_eigenvalues_exact: sites are 1-based");
    }
    if (omega == Complex(0.0, 0.0)) {
        return {};
    }
    const GreenKernelEvaluator evaluator(a);
    const Complex av = a.value();
    const Complex ws = omega * evaluator.sign();

    // Clearing denominators in 1 + omega G_{site,site}(z) = 0 leaves
    // (1 - a k)(k^2 - 1) + ws [ (k - a) k^{2 site} - (1 - a k) k ] = 0.
    std::vector<Complex> c(static_cast<std::size_t>(2 * site + 2), Complex(0.0, 0.0));
    c[0] -= 1.0;
    c[1] += av;
    c[2] += 1.0;
    c[3] -= av;
    c[1] -= ws;
    c[2] += ws * av;
    c[static_cast<std::size_t>(2 * site)] -= ws * av;
    c[static_cast<std::size_t>(2 * site + 1)] += ws;

    std::vector<Complex> out;
    for (Complex k : polynomial_roots(c)) {
        // Newton polish on the cleared polynomial.
        for (int it = 0; it < 3; ++it) {
            const Complex f = horner(c, k);
            const Complex df = horner_derivative(c, k);
            if (std::abs(df) == 0.0) {
                break;
            }
            k -= f / df;
        }
        const double r = std::abs(k);
        if (r <= 1e-10 || r >= 1.0 - 1e-10) {
            continue; // artifacts of clearing denominators, or band points
        }
        if (a.is_super_unit() && std::abs(k - 1.0 / av) <= 1e-10) {
            continue;
        }
        const Complex z = k + 1.0 / k;

        // Verify through the explicit eigenvector u_m = G_{m,site}(z): the
        // perturbed operator applied to it must vanish row by row.  The last
        // row gets its missing neighbor from the closed form as well.
        const SpectralPoint p{z, k};
        const int depth = static_cast<int>(std::min(200000.0,
            std::max(64.0, std::ceil(std::log(1e-14) / std::log(r)) + site)));
        ComplexSeq u(static_cast<std::size_t>(depth + 1));
        for (int i = 0; i <= depth; ++i) {
            u[static_cast<std::size_t>(i)] = evaluator.entry(p, i + 1, site);
        }
        double unorm = 0.0;
        for (const Complex& x : u) {
            unorm += std::norm(x);
        }
        unorm = std::sqrt(unorm);
        double res = 0.0;
        for (int i = 0; i < depth; ++i) {
            Complex acc = -z * u[static_cast<std::size_t>(i)] + u[static_cast<std::size_t>(i + 1)];
            if (i > 0) {
                acc += u[static_cast<std::size_t>(i - 1)];
            }
            if (i == 0) {
                acc += av * u[0];
            }
            if (i + 1 == site) {
                acc += omega * u[static_cast<std::size_t>(i)];
            }
            res += std::norm(acc);
        }
        if (std::sqrt(res) / unorm > 1e-8) {
            continue;
        }
        out.push_back(z);
    }
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Complex& x, const Complex& y) { return std::abs(x - y) <= 1e-9; }),
              out.end());
    return out;
}

BirmanSchwingerSection birman_schwinger_section(const SpectralPoint& p, const RobinCoupling& a,
                                                const Potential& v, int section)
{
    BirmanSchwingerSection out;
    out.z = p.z;
    for (const auto& [n, val] : v.entries()) {
        if (n <= section && val != Complex(0.0, 0.0)) {
            out.sites.push_back(n);
        }
    }
    if (out.sites.empty()) {
        return out;
    }
    const GreenKernelEvaluator evaluator(a);
    const std::size_t s = out.sites.size();
    out.entries.resize(s * s);
    for (std::size_t i = 0; i < s; ++i) {
        const double sqrt_vi = std::sqrt(std::abs(v.value(out.sites[i])));
        for (std::size_t j = 0; j < s; ++j) {
            const Complex vj = v.value(out.sites[j]);
            const double avj = std::abs(vj);
            const Complex sgn = avj > 0.0 ? vj / avj : Complex(0.0, 0.0);
            out.entries[i * s + j] =
                sqrt_vi * evaluator.entry(p, out.sites[i], out.sites[j]) * std::sqrt(avj) * sgn;
        }
    }
    return out;
}

double bs_norm(const SpectralPoint& p, const RobinCoupling& a, const Potential& v, int section)
{
    const BirmanSchwingerSection sec = birman_schwinger_section(p, a, v, section);
    if (sec.sites.empty()) {
        return 0.0;
    }
    const int s = static_cast<int>(sec.sites.size());
    Eigen::MatrixXcd k_matrix(s, s);
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
            k_matrix(i, j) = sec.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(k_matrix);
    return svd.singularValues()(0);
}

EigenReport critical_operator_spectrum(int n)
{
    if (n < 2) {
        throw SizeError("critical_operator_spectrum: need N >= 2");
    }
    const HardyWeight w = HardyWeight::power(0.5);
    std::vector<Complex> diag(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        diag[static_cast<std::size_t>(i - 1)] = Complex(-w.value(i), 0.0);
    }
    return eigenvalues_dense(TridiagonalMatrix(std::move(diag), 1.0));
}

namespace {

double orthopoly_coeff(long long j)
{
    // Recurrence coefficient of the shifted critical operator: 2 - w_j.
    const double x = 1.0 / static_cast<double>(j);
    return std::sqrt(1.0 - x) + std::sqrt(1.0 + x);
}

} // namespace

std::vector<double> orthopoly_eval(double x, int n_max)
{
    if (n_max < 1) {
        throw ParamError("orthopoly_eval: need n_max >= 1");
    }
    std::vector<double> p(static_cast<std::size_t>(n_max) + 1);
    p[0] = 1.0;
    p[1] = x - std::sqrt(2.0);
    for (int n = 1; n < n_max; ++n) {
        p[static_cast<std::size_t>(n + 1)] =
            (x - orthopoly_coeff(n + 1)) * p[static_cast<std::size_t>(n)] - p[static_cast<std::size_t>(n - 1)];
    }
    return p;
}

std::vector<double> orthopoly_zeros(int n)
{
    if (n < 1) {
        throw ParamError("orthopoly_zeros: need n >= 1");
    }
    if (n == 1) {
        return {std::sqrt(2.0)};
    }
    std::vector<double> d(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        d[static_cast<std::size_t>(j - 1)] = orthopoly_coeff(j);
    }
    std::vector<double> e(static_cast<std::size_t>(n - 1), 1.0);
    const int info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'N', n, d.data(), e.data(), nullptr, n);
    if (info != 0) {
        throw ConvergenceFailure("orthopoly_zeros: dstev info=" + std::to_string(info));
    }
    return d;
}

Complex nearest_truncation_eigenvalue(const TridiagonalMatrix& m, Complex guess)
{
    // Fixed-shift inverse iteration.  Updating the shift from the Rayleigh
    // quotient can capture a band state while the iterate is still mixed;
    // with the shift pinned at the guess the iteration converges to the
    // eigenvalue nearest the guess, which is what the doubling tests need.
    const int n = m.size();
    std::mt19937 rng(0xabcdu);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    ComplexSeq u(static_cast<std::size_t>(n));
    for (Complex& x : u) {
        x = Complex(unif(rng), unif(rng));
    }
    Complex lambda = guess;
    for (int it = 0; it < 60; ++it) {
        std::vector<Complex> dl(static_cast<std::size_t>(n - 1), m.off_diagonal());
        std::vector<Complex> du(dl);
        std::vector<Complex> d(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            d[static_cast<std::size_t>(i)] = m.diag(i) - guess;
        }
        ComplexSeq rhs = u;
        const int info = LAPACKE_zgtsv(LAPACK_COL_MAJOR, n, 1, dl.data(), d.data(), du.data(), rhs.data(), n);
        if (info > 0) {
            return guess; // hit the eigenvalue exactly
        }
        if (info < 0) {
            throw ConvergenceFailure("nearest_truncation_eigenvalue: zgtsv failure");
        }
        double norm = 0.0;
        for (const Complex& x : rhs) {
            norm += std::norm(x);
        }
        norm = std::sqrt(norm);
        if (norm == 0.0) {
            throw ConvergenceFailure("nearest_truncation_eigenvalue: zero iterate");
        }
        for (Complex& x : rhs) {
            x /= norm;
        }
        u = rhs;
        const ComplexSeq mu = m.apply(u);
        Complex num(0.0, 0.0), den(0.0, 0.0);
        for (int i = 0; i < n; ++i) {
            num += std::conj(u[static_cast<std::size_t>(i)]) * mu[static_cast<std::size_t>(i)];
            den += std::conj(u[static_cast<std::size_t>(i)]) * u[static_cast<std::size_t>(i)];
        }
        const Complex next = num / den;
        if (std::abs(next - lambda) < 1e-14 * std::max(1.0, std::abs(next)) && it >= 3) {
            return next;
        }
        lambda = next;
    }
    return lambda;
}

} // namespace robin
