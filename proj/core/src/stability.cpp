#include "robin/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "robin/hardy.hpp"

namespace robin {

double stability_alpha(double a)
{
    if (!(a > -1.0 && a < 1.0)) {
        throw ParamError("stability_alpha: need a in (-1,1)");
    }
    const double m = std::abs(a);
    return m / (1.0 - m);
}

StabilityKernel::StabilityKernel(double a, Potential v)
    : alpha_(stability_alpha(a)), v_(std::move(v))
{
    for (const auto& [site, value] : v_.entries()) {
        if (value != Complex(0.0, 0.0)) {
            sites_.push_back(site);
        }
    }
}

double StabilityKernel::entry(int m, int n) const
{
    const double vm = std::abs(v_.value(m));
    const double vn = std::abs(v_.value(n));
    return std::sqrt(vm) * (alpha_ + std::min(m, n)) * std::sqrt(vn);
}

std::vector<double> StabilityKernel::section_block(int section, int* dim) const
{
    std::vector<int> active;
    for (int s : sites_) {
        if (section <= 0 || s <= section) {
            active.push_back(s);
        }
    }
    const int d = static_cast<int>(active.size());
    *dim = d;
    std::vector<double> block(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            block[static_cast<std::size_t>(i) * d + j] = entry(active[static_cast<std::size_t>(i)],
                                                               active[static_cast<std::size_t>(j)]);
        }
    }
    return block;
}

double kprime_hs_norm_sq(double a, const Potential& v, double tail_tol)
{
    const double alpha = stability_alpha(a);
    double exact = 0.0;
    for (const auto& [m, vm] : v.entries()) {
        for (const auto& [n, vn] : v.entries()) {
            const double w = alpha + static_cast<double>(std::min(m, n));
            exact += std::abs(vm) * w * w * std::abs(vn);
        }
    }
    if (v.has_tail() && v.tail()->coeff > 0.0) {
        // (alpha+min)^2 <= (alpha+m^2)(alpha+n^2) splits the tail off as
        // cross terms against the weighted sums.
        const double total = v.weighted_site_sum(alpha); // throws if exponent <= 3
        double explicit_part = 0.0;
        for (const auto& [n, vn] : v.entries()) {
            explicit_part += (alpha + static_cast<double>(n) * n) * std::abs(vn);
        }
        const double tail_part = total - explicit_part;
        const double bound = 2.0 * explicit_part * tail_part + tail_part * tail_part;
        if (bound > tail_tol) {
            throw DivergentTailError("kprime_hs_norm_sq: tail bound above tolerance");
        }
        exact += bound;
    }
    return exact;
}

namespace {

// Power iteration on B^2 (B symmetric, entrywise nonnegative) started from
// the all-ones vector.  Returns (rayleigh, residual) for B^2.
std::pair<double, double> dominant_sq(const std::vector<double>& block, int d)
{
    auto matvec = [&](const std::vector<double>& x, std::vector<double>& y) {
        for (int i = 0; i < d; ++i) {
            double acc = 0.0;
            for (int j = 0; j < d; ++j) {
                acc += block[static_cast<std::size_t>(i) * d + j] * x[static_cast<std::size_t>(j)];
            }
            y[static_cast<std::size_t>(i)] = acc;
        }
    };
    std::vector<double> v(static_cast<std::size_t>(d), 1.0 / std::sqrt(static_cast<double>(d)));
    std::vector<double> bv(static_cast<std::size_t>(d)), bbv(static_cast<std::size_t>(d));
    double rayleigh = 0.0;
    for (int it = 0; it < 20000; ++it) {
        matvec(v, bv);
        matvec(bv, bbv);
        rayleigh = 0.0;
        for (int i = 0; i < d; ++i) {
            rayleigh += v[static_cast<std::size_t>(i)] * bbv[static_cast<std::size_t>(i)];
        }
        double res = 0.0;
        for (int i = 0; i < d; ++i) {
            const double r = bbv[static_cast<std::size_t>(i)] - rayleigh * v[static_cast<std::size_t>(i)];
            res += r * r;
        }
        res = std::sqrt(res);
        if (res <= 1e-10 * std::max(1.0, rayleigh)) {
            return {rayleigh, res};
        }
        double norm = 0.0;
        for (double x : bbv) {
            norm += x * x;
        }
        norm = std::sqrt(norm);
        if (norm == 0.0) {
            return {0.0, 0.0};
        }
        for (int i = 0; i < d; ++i) {
            v[static_cast<std::size_t>(i)] = bbv[static_cast<std::size_t>(i)] / norm;
        }
    }
    throw ConvergenceFailure("kprime_op_norm: power iteration did not converge");
}

} // namespace

OpNormEstimate kprime_op_norm(double a, const Potential& v, int section)
{
    const double alpha = stability_alpha(a);
    StabilityKernel kernel(a, v);
    if (kernel.sites().empty()) {
        return {0.0, 0.0, true};
    }
    if (kernel.sites().size() == 1) {
        const int n = kernel.sites().front();
        const double value = std::abs(v.value(n)) * (alpha + n);
        if (section <= 0 || n <= section) {
            return {value, value, true};
        }
    }
    int effective = section;
    if (effective <= 0) {
        effective = v.support_max();
    }
    int d = 0;
    const std::vector<double> block = kernel.section_block(effective, &d);
    if (d == 0) {
        return {0.0, 0.0, true};
    }
    const auto [rayleigh_sq, residual_sq] = dominant_sq(block, d);
    double lower = std::sqrt(std::max(0.0, rayleigh_sq));
    double upper = std::sqrt(rayleigh_sq + residual_sq) + 1e-12 * (1.0 + lower);

    // Complement of the section, bounded in Hilbert-Schmidt norm.
    double complement_sq = 0.0;
    for (const auto& [m, vm] : v.entries()) {
        for (const auto& [n, vn] : v.entries()) {
            if (m <= effective && n <= effective) {
                continue;
            }
            const double w = alpha + static_cast<double>(std::min(m, n));
            complement_sq += std::abs(vm) * w * w * std::abs(vn);
        }
    }
    if (v.has_tail() && v.tail()->coeff > 0.0) {
        // Cross terms of the declared tail against everything, certified via
        // (alpha+min)^2 <= (alpha+m^2)(alpha+n^2); throws when not summable.
        const double total = v.weighted_site_sum(alpha);
        double explicit_part = 0.0;
        for (const auto& [n, vn] : v.entries()) {
            explicit_part += (alpha + static_cast<double>(n) * n) * std::abs(vn);
        }
        const double tail_part = total - explicit_part;
        complement_sq += 2.0 * explicit_part * tail_part + tail_part * tail_part;
        if (std::sqrt(complement_sq) > 1e-8 && section <= 0) {
            throw DivergentTailError("kprime_op_norm: complement bound above 1e-8");
        }
    }
    upper += std::sqrt(complement_sq);
    return {lower, upper, false};
}

double weighted_l1_sum(double a, const Potential& v)
{
    return v.weighted_site_sum(stability_alpha(a));
}

bool hardy_pointwise_condition(double a, const Potential& v, double q, double c)
{
    if (!(a >= 0.0 && a < 1.0)) {
        throw ParamError("hardy_pointwise_condition: need a in [0,1)");
    }
    const HardyWeight w = HardyWeight::robin(q, a); // validates q
    if (v.has_tail() && v.tail()->coeff > 0.0) {
        throw DivergentTailError("hardy_pointwise_condition: finite support required");
    }
    for (const auto& [n, vn] : v.entries()) {
        if (std::abs(vn) > c * w.value(n)) {
            return false;
        }
    }
    return true;
}

const char* to_string(StabilityLevel level)
{
    switch (level) {
    case StabilityLevel::PurelyContinuous: return "PurelyContinuous";
    case StabilityLevel::NoDiscreteSpectrum: return "NoDiscreteSpectrum";
    case StabilityLevel::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

std::string StabilityVerdict::to_json() const
{
    nlohmann::ordered_json j;
    j["level"] = to_string(level);
    j["evidence"] = nlohmann::ordered_json::array();
    for (const Evidence& e : evidence) {
        j["evidence"].push_back({{"condition", e.condition},
                                 {"value", e.value},
                                 {"threshold", e.threshold}});
    }
    return j.dump(2);
}

StabilityVerdict stability_verdict(double a, const Potential& v,
                                   std::optional<std::pair<double, double>> hardy_qc)
{
    StabilityVerdict verdict;
    double best_upper = std::numeric_limits<double>::infinity();

    try {
        const double weighted = weighted_l1_sum(a, v);
        verdict.evidence.push_back({"weighted_l1", weighted, 1.0});
        best_upper = std::min(best_upper, weighted);
    } catch (const DivergentTailError&) {
        verdict.evidence.push_back({"weighted_l1", std::numeric_limits<double>::infinity(), 1.0});
    }

    try {
        const double hs = std::sqrt(kprime_hs_norm_sq(a, v));
        verdict.evidence.push_back({"hilbert_schmidt", hs, 1.0});
        best_upper = std::min(best_upper, hs);
    } catch (const DivergentTailError&) {
        verdict.evidence.push_back({"hilbert_schmidt", std::numeric_limits<double>::infinity(), 1.0});
    }

    const OpNormEstimate op = kprime_op_norm(a, v);
    verdict.evidence.push_back({"kprime_norm_lower", op.lower, 1.0});
    verdict.evidence.push_back({"kprime_norm_upper", op.upper, 1.0});
    best_upper = std::min(best_upper, op.upper);

    if (hardy_qc) {
        // The smallest admissible c over the support.
        const HardyWeight w = HardyWeight::robin(hardy_qc->first, std::abs(a));
        double c_min = 0.0;
        for (const auto& [n, vn] : v.entries()) {
            const double wn = w.value(n);
            c_min = wn > 0.0 ? std::max(c_min, std::abs(vn) / wn)
                             : std::numeric_limits<double>::infinity();
        }
        verdict.evidence.push_back({"hardy_pointwise", c_min, 1.0});
        best_upper = std::min(best_upper, c_min);
    }

    if (best_upper < 1.0) {
        verdict.level = StabilityLevel::PurelyContinuous;
    } else if (best_upper <= 1.0) {
        verdict.level = StabilityLevel::NoDiscreteSpectrum;
    } else {
        verdict.level = StabilityLevel::Inconclusive;
    }
    return verdict;
}

} // namespace robin
