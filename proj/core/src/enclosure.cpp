#include "robin/enclosure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <thread>

namespace robin {

namespace {

constexpr double kThresholdTol = 1e-12;
constexpr double kPi = 3.14159265358979323846;

bool near_threshold(Complex z)
{
    return std::abs(z - 2.0) <= kThresholdTol || std::abs(z + 2.0) <= kThresholdTol;
}

} // namespace

double enclosure_indicator(Complex z, const RobinCoupling& a, double q_budget)
{
    if (!(q_budget > 0.0)) {
        throw ParamError("enclosure_indicator: need Q > 0");
    }
    require_finite(z, "enclosure_indicator");
    if (near_threshold(z)) {
        return 0.0;
    }
    const SpectralPoint p = SpectralPoint::from_z(z);
    const double g = green_sup_factor(p, a);
    if (std::isinf(g)) {
        return -std::numeric_limits<double>::infinity();
    }
    return std::sqrt(std::abs(z * z - 4.0)) - g * q_budget;
}

bool simple_enclosure_member(Complex z, const RobinCoupling& a, double q_budget)
{
    if (!(q_budget > 0.0)) {
        throw ParamError("simple_enclosure_member: need Q > 0");
    }
    require_finite(z, "simple_enclosure_member");
    if (near_threshold(z)) {
        return true;
    }
    if (z.imag() == 0.0 && std::abs(z.real()) < 2.0) {
        return false; // the open band carries no eigenvalues
    }
    const Complex k = SpectralPoint::from_z(z).k;
    const Complex av = a.value();
    const double lhs = std::abs(1.0 / k - k) * std::abs(1.0 - av * k);
    const double rhs = (std::abs(1.0 - av * k) + std::abs(k - av)) * q_budget;
    return lhs <= rhs;
}

namespace {

// Indicator over the grid: the pole node is clamped to a large negative
// value so interpolated crossings stay finite.
double indicator_clamped(Complex k, const RobinCoupling& a, double q_budget)
{
    const SpectralPoint p{k + 1.0 / k, k};
    double g = green_sup_factor(p, a);
    if (std::isinf(g)) {
        g = 1e18;
    }
    const Complex z = p.z;
    return std::sqrt(std::abs(z * z - 4.0)) - g * q_budget;
}

int resolve_threads(int requested)
{
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("ROBIN_SPECTRA_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) {
            return std::min(parsed, 64);
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 16u));
}

// Edge identifiers of the polar grid: radial edges go from (i,j) to (i+1,j),
// angular edges from (i,j) to (i,j+1 mod M).
struct EdgeKey {
    int i;
    int j;
    int radial;

    bool operator<(const EdgeKey& o) const
    {
        if (i != o.i) return i < o.i;
        if (j != o.j) return j < o.j;
        return radial < o.radial;
    }
};

struct Vertex {
    double rho;
    double theta;
};

} // namespace

EnclosureCurve trace_boundary(const RobinCoupling& a, double q_budget, int grid_n,
                              double delta, int threads)
{
    if (grid_n < 64) {
        throw ParamError("trace_boundary: need grid_n >= 64");
    }
    if (!(q_budget > 0.0)) {
        throw ParamError("trace_boundary: need Q > 0");
    }
    if (!(delta > 0.0 && delta < 0.4)) {
        throw ParamError("trace_boundary: delta out of range");
    }

    const int rows = grid_n;          // radial samples
    const int cols = grid_n;          // angular samples, wrapping
    const double rho_min = delta;
    const double rho_max = 1.0 - delta;
    const double drho = (rho_max - rho_min) / (rows - 1);
    const double dtheta = 2.0 * kPi / cols;

    auto rho_at = [&](double i) { return rho_min + i * drho; };
    auto theta_at = [&](double j) { return -kPi + (j + 0.5) * dtheta; };
    auto k_at = [&](double rho, double theta) { return Complex(rho * std::cos(theta), rho * std::sin(theta)); };

    std::vector<double> field(static_cast<std::size_t>(rows) * cols);
    {
        const int nthreads = resolve_threads(threads);
        auto fill_rows = [&](int begin, int end) {
            for (int i = begin; i < end; ++i) {
                for (int j = 0; j < cols; ++j) {
                    field[static_cast<std::size_t>(i) * cols + j] =
                        indicator_clamped(k_at(rho_at(i), theta_at(j)), a, q_budget);
                }
            }
        };
        if (nthreads <= 1) {
            fill_rows(0, rows);
        } else {
            std::vector<std::thread> pool;
            const int chunk = (rows + nthreads - 1) / nthreads;
            for (int t = 0; t < nthreads; ++t) {
                const int begin = t * chunk;
                const int end = std::min(rows, begin + chunk);
                if (begin < end) {
                    pool.emplace_back(fill_rows, begin, end);
                }
            }
            for (std::thread& th : pool) {
                th.join();
            }
        }
    }

    auto value = [&](int i, int j) { return field[static_cast<std::size_t>(i) * cols + (j % cols)]; };
    auto inside = [&](double f) { return f < 0.0; };

    bool any_inside = false;
    bool any_outside = false;
    for (double f : field) {
        (inside(f) ? any_inside : any_outside) = true;
    }
    if (!any_inside || !any_outside) {
        throw EmptyCurveError("trace_boundary: indicator has constant sign on the grid");
    }

    std::map<EdgeKey, int> vertex_on_edge;
    std::vector<Vertex> vertices;
    std::vector<std::array<int, 2>> segments;

    auto crossing = [&](EdgeKey key) -> int {
        auto it = vertex_on_edge.find(key);
        if (it != vertex_on_edge.end()) {
            return it->second;
        }
        const double f0 = value(key.i, key.j);
        const double f1 = key.radial ? value(key.i + 1, key.j) : value(key.i, key.j + 1);
        const double t = f0 / (f0 - f1);
        Vertex v{};
        if (key.radial) {
            v.rho = rho_at(key.i + t);
            v.theta = theta_at(key.j % cols);
        } else {
            v.rho = rho_at(key.i);
            v.theta = theta_at(key.j) + t * dtheta;
        }
        const int index = static_cast<int>(vertices.size());
        vertices.push_back(v);
        vertex_on_edge.emplace(key, index);
        return index;
    };

    // Cell corners: A=(i,j) B=(i,j+1) C=(i+1,j+1) D=(i+1,j); edges AB (angular
    // at row i), BC (radial at column j+1), DC (angular at row i+1), AD
    // (radial at column j).
    for (int i = 0; i + 1 < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            const bool sa = inside(value(i, j));
            const bool sb = inside(value(i, j + 1));
            const bool sc = inside(value(i + 1, j + 1));
            const bool sd = inside(value(i + 1, j));
            const int config = (sa ? 1 : 0) | (sb ? 2 : 0) | (sc ? 4 : 0) | (sd ? 8 : 0);
            if (config == 0 || config == 15) {
                continue;
            }
            const EdgeKey ab{i, j, 0};
            const EdgeKey bc{i, (j + 1) % cols, 1};
            const EdgeKey dc{i + 1, j, 0};
            const EdgeKey ad{i, j, 1};
            auto emit = [&](EdgeKey e1, EdgeKey e2) {
                segments.push_back({crossing(e1), crossing(e2)});
            };
            switch (config) {
            case 1: case 14: emit(ab, ad); break;
            case 2: case 13: emit(ab, bc); break;
            case 4: case 11: emit(bc, dc); break;
            case 8: case 7:  emit(ad, dc); break;
            case 3: case 12: emit(ad, bc); break;
            case 6: case 9:  emit(ab, dc); break;
            case 5: case 10: {
                // Saddle: split by the indicator sign at the cell center.
                const Complex kc = k_at(rho_at(i + 0.5), theta_at(j) + 0.5 * dtheta);
                const bool center = inside(indicator_clamped(kc, a, q_budget));
                const bool joins_a = (config == 5) == center;
                if (joins_a) {
                    emit(ab, bc);
                    emit(ad, dc);
                } else {
                    emit(ab, ad);
                    emit(bc, dc);
                }
                break;
            }
            default: break;
            }
        }
    }

    // Chain segments into polylines: open chains first (seeded at degree-1
    // vertices in index order), then closed loops.
    std::vector<std::vector<int>> adjacency(vertices.size());
    for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
        adjacency[static_cast<std::size_t>(segments[static_cast<std::size_t>(s)][0])].push_back(s);
        adjacency[static_cast<std::size_t>(segments[static_cast<std::size_t>(s)][1])].push_back(s);
    }
    std::vector<bool> used(segments.size(), false);
    auto walk = [&](int start_vertex, int start_segment) {
        std::vector<int> chain{start_vertex};
        int vertex = start_vertex;
        int seg = start_segment;
        while (true) {
            used[static_cast<std::size_t>(seg)] = true;
            const auto& s = segments[static_cast<std::size_t>(seg)];
            vertex = (s[0] == vertex) ? s[1] : s[0];
            chain.push_back(vertex);
            int next = -1;
            for (int cand : adjacency[static_cast<std::size_t>(vertex)]) {
                if (!used[static_cast<std::size_t>(cand)]) {
                    next = cand;
                    break;
                }
            }
            if (next < 0) {
                break;
            }
            seg = next;
        }
        return chain;
    };

    std::vector<std::vector<int>> chains;
    for (int v = 0; v < static_cast<int>(vertices.size()); ++v) {
        if (adjacency[static_cast<std::size_t>(v)].size() == 1) {
            const int seg = adjacency[static_cast<std::size_t>(v)][0];
            if (!used[static_cast<std::size_t>(seg)]) {
                chains.push_back(walk(v, seg));
            }
        }
    }
    for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
        if (!used[static_cast<std::size_t>(s)]) {
            chains.push_back(walk(segments[static_cast<std::size_t>(s)][0], s));
        }
    }

    EnclosureCurve curve;
    curve.a = a.value();
    curve.q_budget = q_budget;
    curve.thresholds = {Complex(-2.0, 0.0), Complex(2.0, 0.0)};
    if (a.is_super_unit()) {
        curve.pole = a.eigenvalue();
    }
    curve.grid = GridSpec{grid_n, delta, resolve_threads(threads)};
    for (const auto& chain : chains) {
        std::vector<Complex> line;
        line.reserve(chain.size());
        for (int v : chain) {
            const Vertex& vert = vertices[static_cast<std::size_t>(v)];
            const Complex k = k_at(vert.rho, vert.theta);
            line.push_back(k + 1.0 / k);
        }
        curve.polylines.push_back(std::move(line));
    }
    return curve;
}

std::optional<SpectralPoint> find_boundary_point(const RobinCoupling& a, double q_budget,
                                                 double theta, double delta, int scan_points)
{
    if (scan_points < 2) {
        throw ParamError("find_boundary_point: need at least two scan points");
    }
    auto f = [&](double rho) {
        return indicator_clamped(Complex(rho * std::cos(theta), rho * std::sin(theta)), a, q_budget);
    };
    const double lo = delta;
    const double hi = 1.0 - delta;
    double prev_rho = lo;
    double prev_f = f(lo);
    double left = 0.0, right = 0.0;
    bool found = false;
    for (int i = 1; i < scan_points; ++i) {
        const double rho = lo + (hi - lo) * static_cast<double>(i) / (scan_points - 1);
        const double fi = f(rho);
        if ((prev_f < 0.0) != (fi < 0.0)) {
            left = prev_rho;
            right = rho;
            found = true;
            break;
        }
        prev_rho = rho;
        prev_f = fi;
    }
    if (!found) {
        return std::nullopt;
    }
    double fl = f(left);
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (left + right);
        const double fm = f(mid);
        if ((fl < 0.0) == (fm < 0.0)) {
            left = mid;
            fl = fm;
        } else {
            right = mid;
        }
    }
    const double rho = 0.5 * (left + right);
    return SpectralPoint::from_k(Complex(rho * std::cos(theta), rho * std::sin(theta)));
}

OptimalityWitness construct_optimality_witness(const RobinCoupling& a, double q_budget, Complex z)
{
    if (!(q_budget > 0.0)) {
        throw ParamError("construct_optimality_witness: need Q > 0");
    }
    require_finite(z, "construct_optimality_witness");
    if (z.imag() == 0.0) {
        throw RealTargetError("construct_optimality_witness: optimality is not asserted for real z");
    }
    const SpectralPoint p = SpectralPoint::from_z(z);
    const SupFactorResult sup = green_sup_factor_detailed(p, a);
    const double edge = std::sqrt(std::abs(z * z - 4.0));
    if (std::isinf(sup.value) || std::abs(edge - sup.value * q_budget) > 1e-8 * std::max(1.0, edge)) {
        throw NotOnBoundaryError("construct_optimality_witness: point is off the boundary curve");
    }
    if (sup.attained_site <= 0) {
        throw NotOnBoundaryError("construct_optimality_witness: kernel sup not attained at a site");
    }
    const int site = static_cast<int>(sup.attained_site);
    const GreenKernelEvaluator evaluator(a);
    const Complex g_diag = evaluator.entry(p, site, site);
    const Complex omega = std::polar(q_budget, kPi - std::arg(g_diag));
    return OptimalityWitness{site, omega, z};
}

} // namespace robin
