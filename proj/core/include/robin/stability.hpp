#pragma once

#include <optional>
#include <string>

#include "robin/potential.hpp"

namespace robin {

/// Kernel weight alpha = |a|/(1-|a|) for a in (-1,1).  Negative couplings are
/// reflected onto [0,1): the comparison kernel depends on |V| only and the
/// sign-flip duality maps the spectrum of the reflected operator onto the
/// original one.
double stability_alpha(double a);

/// Comparison kernel K'_{mn} = sqrt|v_m| (alpha + min(m,n)) sqrt|v_n|,
/// dominating |K(z)| entrywise for every z.  ||K'|| < 1 forces a purely
/// continuous spectrum, ||K'|| <= 1 still forbids discrete eigenvalues.
class StabilityKernel {
public:
    StabilityKernel(double a, Potential v);

    double alpha() const { return alpha_; }
    const Potential& potential() const { return v_; }
    const std::vector<int>& sites() const { return sites_; }

    double entry(int m, int n) const;

    /// Dense support block restricted to sites <= section (0 = all),
    /// row-major, symmetric.
    std::vector<double> section_block(int section, int* dim) const;

private:
    double alpha_;
    Potential v_;
    std::vector<int> sites_;
};

/// Squared Hilbert-Schmidt norm sum |v_m| (alpha+min)^2 |v_n|; exact for
/// finite support.  A declared decay tail is folded in as a certified upper
/// bound and must stay below tail_tol (else DivergentTailError).
double kprime_hs_norm_sq(double a, const Potential& v, double tail_tol = 1e-10);

struct OpNormEstimate {
    double lower = 0.0;
    double upper = 0.0;
    bool exact = false;
};

/// Certified two-sided estimate of ||K'||: power iteration on K'^T K' over
/// the section block (tolerance 1e-10) plus the Hilbert-Schmidt bound on the
/// complement.  Rank-one potentials give the exact value |v_n| (alpha + n).
/// section = 0 takes the whole stored support and requires any declared-tail
/// complement to certify below 1e-8 (else DivergentTailError).
OpNormEstimate kprime_op_norm(double a, const Potential& v, int section = 0);

/// sum_n (alpha + n^2) |v_n|; < 1 implies the Hilbert-Schmidt condition,
/// which implies the operator-norm condition.
double weighted_l1_sum(double a, const Potential& v);

/// Pointwise test |v_n| <= c * w_n against the coupled Hardy weight with
/// power q; c < 1 certifies a purely continuous spectrum, c = 1 still rules
/// out discrete eigenvalues.
bool hardy_pointwise_condition(double a, const Potential& v, double q, double c);

enum class StabilityLevel { PurelyContinuous, NoDiscreteSpectrum, Inconclusive };

const char* to_string(StabilityLevel level);

struct Evidence {
    std::string condition;
    double value = 0.0;
    double threshold = 1.0;
};

struct StabilityVerdict {
    StabilityLevel level = StabilityLevel::Inconclusive;
    std::vector<Evidence> evidence;

    std::string to_json() const;
};

/// Strongest level whose certified bound passes, with the evaluated
/// condition chain as evidence.  Optional hardy (q, c) adds the pointwise
/// test to the chain.
StabilityVerdict stability_verdict(double a, const Potential& v,
                                   std::optional<std::pair<double, double>> hardy_qc = std::nullopt);

} // namespace robin
