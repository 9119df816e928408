#include "robin/potential.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace robin {

namespace {

// sum_{n >= m} n^(-p) bounded by the first term plus the integral tail.
double zeta_tail_bound(int m, double p)
{
    if (p <= 1.0) {
        throw DivergentTailError("potential tail: decay exponent <= 1 does not sum");
    }
    const double x = static_cast<double>(m);
    return std::pow(x, -p) + std::pow(x, 1.0 - p) / (p - 1.0);
}

} // namespace

Potential Potential::single_site(int site, Complex omega)
{
    Potential v;
    v.set(site, omega);
    return v;
}

void Potential::set(int site, Complex value)
{
    if (site < 1) {
        throw DomainError("Potential: sites are 1-based");
    }
    require_finite(value, "Potential entry");
    if (value == Complex(0.0, 0.0)) {
        entries_.erase(site);
    } else {
        entries_[site] = value;
    }
}

Complex Potential::value(int site) const
{
    auto it = entries_.find(site);
    return it == entries_.end() ? Complex(0.0, 0.0) : it->second;
}

int Potential::support_max() const
{
    return entries_.empty() ? 0 : entries_.rbegin()->first;
}

void Potential::declare_tail(PowerDecayTail tail)
{
    if (tail.coeff < 0.0 || tail.start < 1) {
        throw ParamError("Potential::declare_tail: invalid bound");
    }
    tail_ = tail;
}

double Potential::l1_norm() const
{
    double sum = 0.0;
    for (const auto& [n, v] : entries_) {
        (void)n;
        sum += std::abs(v);
    }
    if (tail_ && tail_->coeff > 0.0) {
        sum += tail_->coeff * zeta_tail_bound(std::max(tail_->start, support_max() + 1), tail_->exponent);
    }
    return sum;
}

double Potential::weighted_site_sum(double alpha) const
{
    double sum = 0.0;
    for (const auto& [n, v] : entries_) {
        const double nd = static_cast<double>(n);
        sum += (alpha + nd * nd) * std::abs(v);
    }
    if (tail_ && tail_->coeff > 0.0) {
        const int m = std::max(tail_->start, support_max() + 1);
        if (tail_->exponent <= 3.0) {
            throw DivergentTailError("weighted_site_sum: need decay exponent > 3");
        }
        sum += tail_->coeff * (alpha * zeta_tail_bound(m, tail_->exponent)
                               + zeta_tail_bound(m, tail_->exponent - 2.0));
    }
    return sum;
}

Potential Potential::scaled(double s) const
{
    Potential out;
    for (const auto& [n, v] : entries_) {
        out.set(n, s * v);
    }
    if (tail_) {
        PowerDecayTail t = *tail_;
        t.coeff *= std::abs(s);
        out.declare_tail(t);
    }
    return out;
}

Potential Potential::from_json(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("potential JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array()) {
        throw ConfigError("potential JSON: expected {\"entries\": [...]}");
    }
    Potential v;
    for (const auto& item : j["entries"]) {
        if (!item.is_object() || !item.contains("n") || !item.contains("re")) {
            throw ConfigError("potential JSON: entry needs integer n and float re");
        }
        if (!item["n"].is_number_integer()) {
            throw ConfigError("potential JSON: n must be an integer");
        }
        const int n = item["n"].get<int>();
        if (n < 1) {
            throw ConfigError("potential JSON: n must be >= 1");
        }
        if (v.entries_.count(n) != 0) {
            throw ConfigError("potential JSON: duplicate site n=" + std::to_string(n));
        }
        const double re = item["re"].get<double>();
        const double im = item.contains("im") ? item["im"].get<double>() : 0.0;
        v.entries_[n] = Complex(re, im); // keep explicit zeros distinct from duplicates
        require_finite(v.entries_[n], "potential JSON entry");
    }
    return v;
}

std::string Potential::to_json() const
{
    nlohmann::ordered_json j;
    j["entries"] = nlohmann::ordered_json::array();
    for (const auto& [n, v] : entries_) {
        j["entries"].push_back({{"n", n}, {"re", v.real()}, {"im", v.imag()}});
    }
    return j.dump();
}

} // namespace robin
