#pragma once

#include <functional>
#include <utility>

#include "robin/lattice.hpp"

namespace robin {

/// Largest admissible power q for the coupled weight family at coupling
/// a in [0,1): min(log2(2-a), 1/2).
double q_max(double a);

enum class WeightKind { Classical, PowerGenerated, RobinCoupled };

/// Diagonal Hardy weight.
///
/// Classical:           w_n = 1/(4n^2)
/// PowerGenerated(q):   w_n = 2 - (1-1/n)^q - (1+1/n)^q,      q in (0, 1/2]
/// RobinCoupled(q,a):   PowerGenerated(q) minus a at n = 1,   q in (0, q_max(a)]
///
/// The power weights are evaluated by their even series in 1/n^2 from n = 8
/// on; the direct form loses all significant digits once n is large while
/// the series terms are positive and cancellation free.
class HardyWeight {
public:
    static HardyWeight classical();
    static HardyWeight power(double q);
    static HardyWeight robin(double q, double a);

    double value(long long n) const;

    WeightKind kind() const { return kind_; }
    double q() const { return q_; }
    double a() const { return a_; }

private:
    HardyWeight(WeightKind kind, double q, double a) : kind_(kind), q_(q), a_(a) {}

    WeightKind kind_;
    double q_;
    double a_;
};

/// Positive sequence g with (2 g_n - g_{n-1} - g_{n+1}) >= 0 (g_0 = 0); every
/// such sequence generates a Hardy weight w_n = (2 g_n - g_{n-1} - g_{n+1})/g_n.
class GeneratorSequence {
public:
    explicit GeneratorSequence(std::function<double(long long)> g);

    /// g_n = n^q.
    static GeneratorSequence power(double q);

    /// g_n for n >= 1; the n = 0 value is the fixed convention 0.
    double g(long long n) const;

    /// Generated weight at site n; throws SuperharmonicityViolation when the
    /// discrete Laplacian of g turns negative there.
    double weight(long long n) const;

    /// Checks positivity and superharmonicity for all sites up to the bound.
    void check_superharmonic(long long up_to) const;

private:
    std::function<double(long long)> g_;
};

/// Both sides of the generated-weight identity for a finitely supported u
/// (u_0 = 0): the Dirichlet energy splits into the weighted sum plus a
/// nonnegative remainder.
struct IdentityParts {
    double dirichlet = 0.0;
    double weighted = 0.0;
    double remainder = 0.0;

    double residual() const;
};

IdentityParts hardy_identity_parts(const ComplexSeq& u, const GeneratorSequence& g);

/// |dirichlet - weighted - remainder|.
double identity_residual(const ComplexSeq& u, const GeneratorSequence& g);

/// Finitely supported cutoff families used in optimality and criticality
/// arguments: the logarithmic cutoff (1 up to N, log-linear down to 0 at N^2)
/// and the linear ramp (1 up to N, linear down to 0 at 2N).
struct CutoffSequence {
    enum class Kind { LogCutoff, LinearRamp };

    Kind kind;
    long long n;

    double value(long long site) const;

    static CutoffSequence log_cutoff(long long n);  // n >= 2
    static CutoffSequence linear_ramp(long long n); // n >= 1
};

/// Optimality certificate S(N) = sum_{n>=2} g_n g_{n-1} |xi_n - xi_{n-1}|^2
/// for g_n = n^q and the logarithmic cutoff.  Bounded by 4/log N and decaying
/// in N, which certifies that no larger weight can dominate the generated one.
double optimality_certificate(double q, long long n);

struct CertificateReport {
    long long n;
    double s;
    double bound; ///< 4 / log n

    std::string to_json() const;
};

CertificateReport certify_optimality(double q, long long n);

/// Energy of the linear ramp against the Neumann-coupled operator, computed
/// in integer arithmetic, paired with the closed value 1/N.  The vanishing of
/// the energy as N grows is the criticality obstruction: no nonzero weight
/// fits under the Neumann operator.
std::pair<double, double> neumann_criticality_demo(long long n);

/// Smallest ratio of Dirichlet energy to weighted mass over sequences
/// supported on the window [from, from + window].  Always >= 1 by the Hardy
/// inequality; how close it comes to 1 on growing windows is numerical
/// evidence for the null-sequence strengthening of optimality, never a proof.
double tail_energy_ratio(const HardyWeight& w, long long from, int window);

} // namespace robin
