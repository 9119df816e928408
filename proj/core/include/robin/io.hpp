#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "robin/enclosure.hpp"
#include "robin/lattice.hpp"

namespace robin {

/// printf %.*g formatting; the stable number format of all text outputs.
std::string fmt_g(double value, int precision = 12);

/// "re", "imi" or "re+imi" (e.g. "2", "1.5i", "0+1.618i", "1-0.5i").
std::string fmt_complex(Complex z, int precision = 12);

/// Parses the complex syntax above, locale independent.  Throws ConfigError.
Complex parse_complex(const std::string& text);

/// One polyline per blank-line-separated block, lines "re,im".  Annotated
/// point features (thresholds, pole) go first as "# name,re,im" comments.
void write_curve_csv(std::ostream& out, const EnclosureCurve& curve);

/// Band [-2,2] as a black segment, one <g class="q-curves" data-q="..."> of
/// blue paths per curve (gradient darkens with Q), the pole as a red dot.
void write_curves_svg(std::ostream& out, const std::vector<EnclosureCurve>& curves);

} // namespace robin
