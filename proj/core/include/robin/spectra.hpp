#pragma once

#include <string>

#include "robin/green.hpp"
#include "robin/potential.hpp"
#include "robin/tridiagonal.hpp"

namespace robin {

/// Full spectrum of a finite truncation with a certified residual bound.
struct EigenReport {
    int n = 0;
    std::vector<Complex> eigenvalues; ///< sorted by (Re, Im)
    double residual = 0.0;            ///< max over eigenvalues of a unit-vector residual

    std::string to_json() const;
};

/// All N eigenvalues of the truncation.  Real symmetric input goes through
/// the symmetric tridiagonal path; otherwise QR iteration on the matrix as a
/// Hessenberg form.  Every eigenvalue is certified afterwards by one
/// inverse-iteration step; the report carries the worst residual and the
/// call fails (ConvergenceFailure) if it exceeds 1e-8.  N <= 4000.
EigenReport eigenvalues_dense(const TridiagonalMatrix& m);

/// Number of eigenvalues at distance > band_margin from the band [-2,2],
/// counted independently of the eigensolver: winding of the characteristic
/// polynomial (by its three-term recurrence) around a stadium contour at
/// distance band_margin from the band.  Throws ContourTooCloseError when the
/// contour cannot resolve the phase, i.e. an eigenvalue sits within ~1e-6.
int count_outside_band(const TridiagonalMatrix& m, double band_margin);

/// Exact eigenvalues of the rank-one perturbation by omega at one site:
/// roots k of the characteristic equation inside the punctured unit disk,
/// mapped to z = k + 1/k.  Every root is verified through the explicit
/// eigenvector residual on an adaptive truncation; the list may be empty.
std::vector<Complex> rank_one_eigenvalues_exact(const RobinCoupling& a, Complex omega, int site);

/// Finite section of |V|^{1/2} (J_a - z)^{-1} |V|^{1/2} sgn V over the
/// support sites up to `section`, row-major over `sites`; sgn(0) = 0.
struct BirmanSchwingerSection {
    Complex z;
    std::vector<int> sites;
    std::vector<Complex> entries;

    Complex at(std::size_t i, std::size_t j) const { return entries[i * sites.size() + j]; }
};

BirmanSchwingerSection birman_schwinger_section(const SpectralPoint& p, const RobinCoupling& a,
                                                const Potential& v, int section);

/// Dominant singular value of the Birman-Schwinger section.
double bs_norm(const SpectralPoint& p, const RobinCoupling& a, const Potential& v, int section);

/// Spectrum of the truncated critical operator: the free half-line operator
/// minus the diagonal of optimal Hardy weights.
EigenReport critical_operator_spectrum(int n);

/// Values p_0(x), ..., p_{n_max}(x) of the monic polynomial family attached
/// to the critical operator, by its three-term recurrence.
std::vector<double> orthopoly_eval(double x, int n_max);

/// Zeros of p_n: eigenvalues of the associated symmetric tridiagonal matrix,
/// ascending.
std::vector<double> orthopoly_zeros(int n);

/// Refines a guess to the nearest eigenvalue of the truncation via
/// shift-inverted Rayleigh iteration.  Used for truncation-doubling checks.
Complex nearest_truncation_eigenvalue(const TridiagonalMatrix& m, Complex guess);

} // namespace robin
