#pragma once

#include <map>
#include <optional>
#include <string>

#include "robin/lattice.hpp"

namespace robin {

/// Declared bound |v_n| <= coeff * n^(-exponent) for all n >= start, used to
/// certify tail sums of potentials that extend beyond the stored entries.
struct PowerDecayTail {
    double coeff = 0.0;
    double exponent = 0.0;
    int start = 1;
};

/// Complex diagonal perturbation v over sites 1,2,3,...  Entries are stored
/// sparsely; an optional decay bound tags potentials with infinite support.
class Potential {
public:
    Potential() = default;

    /// v = omega * P_site (single-site perturbation).
    static Potential single_site(int site, Complex omega);

    /// Parses {"entries":[{"n":<int>=1>,"re":<float>,"im":<float>}]}.
    /// Duplicate site indices are rejected (ConfigError).
    static Potential from_json(const std::string& text);

    std::string to_json() const;

    void set(int site, Complex value);
    Complex value(int site) const;

    const std::map<int, Complex>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    /// Largest site with an explicit entry (0 when empty).
    int support_max() const;

    bool has_tail() const { return tail_.has_value(); }
    const std::optional<PowerDecayTail>& tail() const { return tail_; }
    void declare_tail(PowerDecayTail tail);

    /// l1 norm of the explicit entries plus a certified tail bound when a
    /// decay class is declared (requires exponent > 1, else DivergentTailError).
    double l1_norm() const;

    /// sum_n (alpha + n^2) |v_n|, tail certified via the decay bound
    /// (requires exponent > 3).
    double weighted_site_sum(double alpha) const;

    /// Multiplies every entry (and the tail coefficient) by s.
    Potential scaled(double s) const;

private:
    std::map<int, Complex> entries_;
    std::optional<PowerDecayTail> tail_;
};

} // namespace robin
