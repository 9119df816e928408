#pragma once

#include <optional>

#include "robin/green.hpp"
#include "robin/lattice.hpp"

namespace robin {

/// F(z) = sqrt(|z^2-4|) - g_a(z) Q.  F <= 0 exactly when z belongs to the
/// eigenvalue enclosure at budget Q = ||v||_1.
/// Returns 0 at the band thresholds +-2 and -infinity at the pole a + 1/a.
double enclosure_indicator(Complex z, const RobinCoupling& a, double q_budget);

/// The simplified superset test:
/// |1/k - k| |1 - ak| <= (|1 - ak| + |k - a|) Q, plus the thresholds +-2.
bool simple_enclosure_member(Complex z, const RobinCoupling& a, double q_budget);

struct GridSpec {
    int n = 0;
    double delta = 0.0;
    int threads = 1;
};

/// Zero contour of the indicator, traced over a polar grid in the k-annulus
/// delta <= |k| <= 1 - delta and pushed to the z-plane.
struct EnclosureCurve {
    Complex a;
    double q_budget = 0.0;
    std::vector<std::vector<Complex>> polylines;
    std::vector<Complex> thresholds;  ///< the always-enclosed points -2, 2
    std::optional<Complex> pole;      ///< a + 1/a when |a| > 1
    GridSpec grid;
};

/// Marching squares on grid_n x grid_n polar cells (wrapping in angle);
/// ambiguous cells are split by the indicator sign at the cell center.
/// threads <= 0 picks ROBIN_SPECTRA_THREADS or the hardware count.
/// Throws EmptyCurveError when the indicator never changes sign.
EnclosureCurve trace_boundary(const RobinCoupling& a, double q_budget, int grid_n,
                              double delta = 1e-3, int threads = 0);

/// Bisects the indicator along the ray arg k = theta; returns the boundary
/// point when the sign changes inside the annulus.
std::optional<SpectralPoint> find_boundary_point(const RobinCoupling& a, double q_budget,
                                                 double theta, double delta = 1e-3,
                                                 int scan_points = 400);

/// Rank-one potential realizing a prescribed non-real boundary point as an
/// eigenvalue: site where the kernel sup is attained, amplitude of modulus Q
/// with the phase solving the characteristic equation.
struct OptimalityWitness {
    int site = 0;
    Complex omega;
    Complex z;
};

/// Requires sqrt(|z^2-4|) = g_a(z) Q within 1e-8 (NotOnBoundaryError) and
/// Im z != 0 (RealTargetError).
OptimalityWitness construct_optimality_witness(const RobinCoupling& a, double q_budget, Complex z);

} // namespace robin
