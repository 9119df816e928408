#include "robin/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace robin {

std::string fmt_g(double value, int precision)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
    return buf;
}

std::string fmt_complex(Complex z, int precision)
{
    if (z.imag() == 0.0) {
        return fmt_g(z.real(), precision);
    }
    if (z.real() == 0.0) {
        return fmt_g(z.imag(), precision) + "i";
    }
    std::string out = fmt_g(z.real(), precision);
    if (z.imag() >= 0.0) {
        out += "+";
    }
    out += fmt_g(z.imag(), precision) + "i";
    return out;
}

namespace {

// Parses a double at pos, advancing it.  std::from_chars is locale free.
bool parse_double_at(const std::string& s, std::size_t& pos, double& out)
{
    const char* begin = s.data() + pos;
    const char* end = s.data() + s.size();
    if (begin < end && (*begin == '+' || *begin == '-')) {
        // from_chars rejects a leading '+'; handle signs by hand.
        const bool negative = (*begin == '-');
        ++begin;
        double mag = 0.0;
        auto [ptr, ec] = std::from_chars(begin, end, mag);
        if (ec != std::errc()) {
            return false;
        }
        out = negative ? -mag : mag;
        pos = static_cast<std::size_t>(ptr - s.data());
        return true;
    }
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc()) {
        return false;
    }
    pos = static_cast<std::size_t>(ptr - s.data());
    return true;
}

} // namespace

Complex parse_complex(const std::string& raw)
{
    std::string s;
    for (char c : raw) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s.push_back(c);
        }
    }
    if (s.empty()) {
        throw ConfigError("parse_complex: empty value");
    }
    std::size_t pos = 0;
    double first = 0.0;
    bool have_first_number = parse_double_at(s, pos, first);
    if (!have_first_number) {
        // allow bare "i", "+i", "-i"
        first = 1.0;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            if (s[pos] == '-') {
                first = -1.0;
            }
            ++pos;
        }
        if (pos < s.size() && (s[pos] == 'i' || s[pos] == 'I') && pos + 1 == s.size()) {
            return Complex(0.0, first);
        }
        throw ConfigError("parse_complex: cannot parse '" + raw + "'");
    }
    if (pos == s.size()) {
        return Complex(first, 0.0);
    }
    if (s[pos] == 'i' || s[pos] == 'I') {
        if (pos + 1 != s.size()) {
            throw ConfigError("parse_complex: trailing characters in '" + raw + "'");
        }
        return Complex(0.0, first);
    }
    // re [+-] im i
    if (s[pos] != '+' && s[pos] != '-') {
        throw ConfigError("parse_complex: expected '+' or '-' in '" + raw + "'");
    }
    double second = 0.0;
    if (!parse_double_at(s, pos, second)) {
        // "1+i" / "1-i"
        second = (s[pos] == '-') ? -1.0 : 1.0;
        ++pos;
    }
    if (pos + 1 != s.size() || (s[pos] != 'i' && s[pos] != 'I')) {
        throw ConfigError("parse_complex: expected trailing 'i' in '" + raw + "'");
    }
    return Complex(first, second);
}

void write_curve_csv(std::ostream& out, const EnclosureCurve& curve)
{
    for (const Complex& t : curve.thresholds) {
        out << "# threshold," << fmt_g(t.real()) << "," << fmt_g(t.imag()) << "\n";
    }
    if (curve.pole) {
        out << "# pole," << fmt_g(curve.pole->real()) << "," << fmt_g(curve.pole->imag()) << "\n";
    }
    bool first = true;
    for (const auto& line : curve.polylines) {
        if (!first) {
            out << "\n";
        }
        first = false;
        for (const Complex& z : line) {
            out << fmt_g(z.real()) << "," << fmt_g(z.imag()) << "\n";
        }
    }
}

namespace {

struct Box {
    double xmin = -2.5, xmax = 2.5, ymin = -1.0, ymax = 1.0;

    void include(Complex z)
    {
        xmin = std::min(xmin, z.real());
        xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, z.imag());
        ymax = std::max(ymax, z.imag());
    }
};

std::string shade_of(std::size_t index, std::size_t count)
{
    // light to dark blue
    const double t = count > 1 ? static_cast<double>(index) / static_cast<double>(count - 1) : 1.0;
    const int r = static_cast<int>(std::lround(158.0 + t * (16.0 - 158.0)));
    const int g = static_cast<int>(std::lround(200.0 + t * (56.0 - 200.0)));
    const int b = static_cast<int>(std::lround(240.0 + t * (160.0 - 240.0)));
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

std::string px(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

} // namespace

void write_curves_svg(std::ostream& out, const std::vector<EnclosureCurve>& curves)
{
    const int width = 840;
    const int height = 640;
    Box box;
    for (const auto& curve : curves) {
        for (const auto& line : curve.polylines) {
            for (const Complex& z : line) {
                box.include(z);
            }
        }
        if (curve.pole) {
            box.include(*curve.pole);
        }
    }
    const double pad = 0.3;
    box.xmin -= pad;
    box.xmax += pad;
    box.ymin -= pad;
    box.ymax += pad;
    const double scale = std::min(width / (box.xmax - box.xmin), height / (box.ymax - box.ymin));
    const double x0 = 0.5 * (width - scale * (box.xmax - box.xmin));
    const double y0 = 0.5 * (height - scale * (box.ymax - box.ymin));
    auto map_x = [&](double x) { return x0 + scale * (x - box.xmin); };
    auto map_y = [&](double y) { return y0 + scale * (box.ymax - y); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    if (!curves.empty()) {
        out << "  <desc>spectral enclosure boundary; a=" << fmt_complex(curves.front().a) << "</desc>\n";
    }
    out << "  <rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    out << "  <line class=\"band\" x1=\"" << px(map_x(-2.0)) << "\" y1=\"" << px(map_y(0.0))
        << "\" x2=\"" << px(map_x(2.0)) << "\" y2=\"" << px(map_y(0.0))
        << "\" stroke=\"black\" stroke-width=\"3\"/>\n";
    for (double t : {-2.0, 2.0}) {
        out << "  <circle class=\"threshold\" cx=\"" << px(map_x(t)) << "\" cy=\"" << px(map_y(0.0))
            << "\" r=\"3\" fill=\"black\"/>\n";
    }
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& curve = curves[c];
        out << "  <g class=\"q-curves\" data-q=\"" << fmt_g(curve.q_budget)
            << "\" fill=\"none\" stroke=\"" << shade_of(c, curves.size())
            << "\" stroke-width=\"1.6\">\n";
        for (const auto& line : curve.polylines) {
            if (line.size() < 2) {
                continue;
            }
            out << "    <path d=\"";
            for (std::size_t i = 0; i < line.size(); ++i) {
                out << (i == 0 ? "M" : " L") << px(map_x(line[i].real())) << " "
                    << px(map_y(line[i].imag()));
            }
            out << "\"/>\n";
        }
        out << "  </g>\n";
    }
    if (!curves.empty() && curves.front().pole) {
        const Complex pole = *curves.front().pole;
        out << "  <circle class=\"pole\" cx=\"" << px(map_x(pole.real())) << "\" cy=\""
            << px(map_y(pole.imag())) << "\" r=\"4\" fill=\"red\"/>\n";
    }
    out << "</svg>\n";
}

} // namespace robin
