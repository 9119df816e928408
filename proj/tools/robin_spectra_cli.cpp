// robin-spectra: command-line front end for spectral enclosures, Hardy
// inequalities, and stability verdicts of half-line Robin operators.
//
// Exit codes: 0 ok, 2 configuration error, 3 numerical failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <robin/enclosure.hpp>
#include <robin/green.hpp>
#include <robin/hardy.hpp>
#include <robin/io.hpp>
#include <robin/spectra.hpp>
#include <robin/stability.hpp>

namespace fs = std::filesystem;
using robin::Complex;
using json = nlohmann::ordered_json;

namespace {

int env_threads()
{
    if (const char* env = std::getenv("ROBIN_SPECTRA_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) {
            return parsed;
        }
    }
    return 0; // auto
}

robin::Potential load_potential(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw robin::ConfigError("cannot open potential file: " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return robin::Potential::from_json(buf.str());
}

void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw robin::ConfigError("cannot write " + out_path);
    }
    out << text << "\n";
}

std::string q_token(double q)
{
    return robin::fmt_g(q, 6);
}

void write_enclosure_files(const robin::RobinCoupling& a, const std::vector<double>& qs,
                           int grid, double delta, int threads, const fs::path& dir,
                           const std::string& stem, bool combined_svg)
{
    std::vector<robin::EnclosureCurve> curves;
    for (double q : qs) {
        curves.push_back(robin::trace_boundary(a, q, grid, delta, threads));
    }
    fs::create_directories(dir);
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const std::string base = stem + "_Q" + q_token(qs[i]);
        std::ofstream csv(dir / (base + ".csv"), std::ios::binary);
        robin::write_curve_csv(csv, curves[i]);
        if (!combined_svg) {
            std::ofstream svg(dir / (base + ".svg"), std::ios::binary);
            robin::write_curves_svg(svg, {curves[i]});
        }
    }
    if (combined_svg) {
        std::ofstream svg(dir / (stem + ".svg"), std::ios::binary);
        robin::write_curves_svg(svg, curves);
    }
}

struct FigureSpec {
    int index;
    const char* stem;
    Complex a;
};

std::vector<FigureSpec> figure_specs()
{
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    return {
        {1, "figure1_dirichlet", Complex(0.0, 0.0)},
        {2, "figure2_neumann", Complex(1.0, 0.0)},
        {3, "figure3_a_half", Complex(0.5, 0.0)},
        {4, "figure4_a_two", Complex(2.0, 0.0)},
        {5, "figure5_a_golden", Complex(0.0, phi)},
    };
}

int run(int argc, char** argv)
{
    CLI::App app{"spectral enclosures, Hardy weights, and stability verdicts "
                 "for half-line Robin operators"};
    app.require_subcommand(1);

    // ---- enclosure ----
    auto* enc = app.add_subcommand("enclosure", "trace enclosure boundary curves");
    std::string enc_a{"0"};
    std::vector<double> enc_q{1.0};
    int enc_grid = 800;
    double enc_delta = 1e-3;
    int enc_threads = env_threads();
    std::string enc_dir{"."};
    enc->add_option("--a", enc_a, "coupling, complex as re[+im i]");
    enc->add_option("--q", enc_q, "potential budgets ||v||_1")->delimiter(',');
    enc->add_option("--grid", enc_grid, "polar grid resolution")->check(CLI::Range(64, 4096));
    enc->add_option("--delta", enc_delta, "annulus margin");
    enc->add_option("--threads", enc_threads, "grid worker threads (0 = auto)");
    enc->add_option("--out-dir", enc_dir, "output directory");

    // ---- figures ----
    auto* fig = app.add_subcommand("figures", "regenerate the five reference figures");
    bool fig_all = false;
    int fig_only = 0;
    int fig_grid = 800;
    int fig_threads = env_threads();
    std::string fig_dir{"."};
    fig->add_flag("--all", fig_all, "emit all five figures");
    fig->add_option("--only", fig_only, "emit one figure (1..5)")->check(CLI::Range(1, 5));
    fig->add_option("--grid", fig_grid, "polar grid resolution")->check(CLI::Range(64, 4096));
    fig->add_option("--threads", fig_threads, "grid worker threads (0 = auto)");
    fig->add_option("--out-dir", fig_dir, "output directory");

    // ---- green ----
    auto* grn = app.add_subcommand("green", "resolvent kernel entries and sup factors");
    std::string grn_a{"0"}, grn_z{"2.5"}, grn_out;
    int grn_m = 0, grn_n = 0, grn_max = 6;
    grn->add_option("--a", grn_a, "coupling");
    grn->add_option("--z", grn_z, "spectral point");
    grn->add_option("--m", grn_m, "row site (with --n: single entry)");
    grn->add_option("--n", grn_n, "column site");
    grn->add_option("--max-site", grn_max, "table size when no --m/--n")->check(CLI::Range(1, 64));
    grn->add_option("--out", grn_out, "output file (default stdout)");

    // ---- hardy ----
    auto* hardy = app.add_subcommand("hardy", "discrete Hardy inequalities");
    hardy->require_subcommand(1);

    auto* hw = hardy->add_subcommand("weights", "weight table as CSV");
    std::string hw_kind{"power"}, hw_out;
    double hw_q = 0.5, hw_a = 0.0;
    long long hw_nmax = 100;
    hw->add_option("--kind", hw_kind, "classical | power | robin")
        ->check(CLI::IsMember({"classical", "power", "robin"}));
    hw->add_option("--q", hw_q, "power parameter");
    hw->add_option("--a", hw_a, "coupling (robin kind)");
    hw->add_option("--n-max", hw_nmax, "table length")->check(CLI::PositiveNumber);
    hw->add_option("--out", hw_out, "output file");

    auto* hc = hardy->add_subcommand("certify", "optimality certificate decay");
    std::vector<long long> hc_n{100, 1000};
    double hc_q = 0.5;
    std::string hc_out;
    hc->add_option("--q", hc_q, "power parameter");
    hc->add_option("--n", hc_n, "cutoff scales N")->delimiter(',');
    hc->add_option("--out", hc_out, "output file");

    auto* hi = hardy->add_subcommand("identity", "remainder identity residuals on random data");
    double hi_q = 0.5;
    int hi_samples = 100, hi_support = 50;
    unsigned hi_seed = 1;
    std::string hi_out;
    hi->add_option("--q", hi_q, "generator power");
    hi->add_option("--samples", hi_samples, "number of random sequences")->check(CLI::PositiveNumber);
    hi->add_option("--support", hi_support, "max support length")->check(CLI::PositiveNumber);
    hi->add_option("--seed", hi_seed, "RNG seed");
    hi->add_option("--out", hi_out, "output file");

    auto* hn = hardy->add_subcommand("critical-neumann", "ramp energy against 1/N");
    std::vector<long long> hn_n{1, 10, 1000};
    std::string hn_out;
    hn->add_option("--n", hn_n, "ramp scales N")->delimiter(',');
    hn->add_option("--out", hn_out, "output file");

    // ---- stability ----
    auto* stab = app.add_subcommand("stability", "spectral stability verdict");
    std::string stab_a{"0"}, stab_pot, stab_out;
    double stab_hq = 0.0, stab_hc = 0.0;
    bool stab_hardy = false;
    stab->add_option("--a", stab_a, "real coupling in (-1,1)");
    stab->add_option("--potential", stab_pot, "potential JSON file")->required();
    auto* hq_opt = stab->add_option("--hardy-q", stab_hq, "add the pointwise Hardy condition");
    stab->add_option("--hardy-c", stab_hc, "prescribed c for the Hardy condition");
    stab->add_option("--out", stab_out, "output file");
    hq_opt->each([&](const std::string&) { stab_hardy = true; });

    // ---- eigen ----
    auto* eig = app.add_subcommand("eigen", "truncated spectra");
    std::string eig_a{"0"}, eig_pot, eig_out;
    int eig_n = 400;
    double eig_margin = 0.05;
    bool eig_critical = false;
    eig->add_option("--a", eig_a, "coupling");
    eig->add_option("--potential", eig_pot, "potential JSON file");
    eig->add_option("--n", eig_n, "truncation size")->check(CLI::Range(2, 4000));
    eig->add_option("--margin", eig_margin, "band margin for the outside count");
    eig->add_flag("--critical-hardy", eig_critical,
                  "spectrum of the critical operator (free minus optimal weight)");
    eig->add_option("--out", eig_out, "output file");

    // ---- witness ----
    auto* wit = app.add_subcommand("witness", "optimality witness for a boundary point");
    std::string wit_a{"0"}, wit_z, wit_out;
    double wit_q = 1.0;
    int wit_verify = 600;
    bool wit_scan = false;
    int wit_sites = 40;
    wit->add_option("--a", wit_a, "coupling");
    wit->add_option("--Q,--q-budget", wit_q, "l1 budget Q");
    wit->add_option("--z", wit_z, "non-real boundary point");
    wit->add_option("--verify-n", wit_verify, "truncation size for verification")->check(CLI::Range(2, 4000));
    wit->add_flag("--scan-real", wit_scan,
                  "scan real boundary points for eigenvalue near-misses (reports only)");
    wit->add_option("--sites", wit_sites, "site range for --scan-real")->check(CLI::Range(1, 4096));
    wit->add_option("--out", wit_out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    if (enc->parsed()) {
        const robin::RobinCoupling a(robin::parse_complex(enc_a));
        write_enclosure_files(a, enc_q, enc_grid, enc_delta, enc_threads, enc_dir,
                              "enclosure_a" + robin::fmt_complex(a.value(), 6), false);
        return 0;
    }

    if (fig->parsed()) {
        if (!fig_all && fig_only == 0) {
            throw robin::ConfigError("figures: pass --all or --only <1..5>");
        }
        for (const FigureSpec& spec : figure_specs()) {
            if (!fig_all && spec.index != fig_only) {
                continue;
            }
            write_enclosure_files(robin::RobinCoupling(spec.a), {0.5, 1.0, 2.0}, fig_grid,
                                  1e-3, fig_threads, fig_dir, spec.stem, true);
        }
        return 0;
    }

    if (grn->parsed()) {
        const robin::RobinCoupling a(robin::parse_complex(grn_a));
        const Complex z = robin::parse_complex(grn_z);
        const robin::SpectralPoint p = robin::SpectralPoint::from_z(z);
        const robin::GreenKernelEvaluator evaluator(a);
        json j;
        j["a"] = robin::fmt_complex(a.value());
        j["z"] = {{"re", z.real()}, {"im", z.imag()}};
        j["k"] = {{"re", p.k.real()}, {"im", p.k.imag()}};
        j["sign"] = evaluator.sign();
        j["g"] = robin::green_sup_factor(p, a);
        j["gamma"] = robin::resolvent_sup(p, a);
        j["entries"] = json::array();
        if (grn_m > 0 && grn_n > 0) {
            const Complex g = evaluator.entry(p, grn_m, grn_n);
            j["entries"].push_back({{"m", grn_m}, {"n", grn_n}, {"re", g.real()}, {"im", g.imag()}});
        } else {
            for (int m = 1; m <= grn_max; ++m) {
                for (int n = 1; n <= grn_max; ++n) {
                    const Complex g = evaluator.entry(p, m, n);
                    j["entries"].push_back({{"m", m}, {"n", n}, {"re", g.real()}, {"im", g.imag()}});
                }
            }
        }
        emit(j.dump(2), grn_out);
        return 0;
    }

    if (hw->parsed()) {
        robin::HardyWeight weight = hw_kind == "classical" ? robin::HardyWeight::classical()
                                  : hw_kind == "power"     ? robin::HardyWeight::power(hw_q)
                                                           : robin::HardyWeight::robin(hw_q, hw_a);
        std::string text = "n,w\n";
        for (long long n = 1; n <= hw_nmax; ++n) {
            text += std::to_string(n) + "," + robin::fmt_g(weight.value(n)) + "\n";
        }
        text.pop_back();
        emit(text, hw_out);
        return 0;
    }

    if (hc->parsed()) {
        json arr = json::array();
        for (long long n : hc_n) {
            const robin::CertificateReport rep = robin::certify_optimality(hc_q, n);
            arr.push_back({{"N", rep.n}, {"S", rep.s}, {"bound", rep.bound}});
        }
        emit(arr.dump(2), hc_out);
        return 0;
    }

    if (hi->parsed()) {
        const robin::GeneratorSequence gen = robin::GeneratorSequence::power(hi_q);
        std::mt19937_64 rng(hi_seed);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        std::uniform_int_distribution<int> len(1, hi_support);
        double worst = 0.0;
        for (int s = 0; s < hi_samples; ++s) {
            robin::ComplexSeq u(static_cast<std::size_t>(len(rng)));
            for (Complex& x : u) {
                x = Complex(unif(rng), unif(rng));
            }
            worst = std::max(worst, robin::identity_residual(u, gen));
        }
        json j;
        j["q"] = hi_q;
        j["samples"] = hi_samples;
        j["max_residual"] = worst;
        emit(j.dump(2), hi_out);
        return 0;
    }

    if (hn->parsed()) {
        json arr = json::array();
        for (long long n : hn_n) {
            const auto [energy, inverse] = robin::neumann_criticality_demo(n);
            arr.push_back({{"N", n}, {"form", energy}, {"expected", inverse}});
        }
        emit(arr.dump(2), hn_out);
        return 0;
    }

    if (stab->parsed()) {
        const Complex a = robin::parse_complex(stab_a);
        if (a.imag() != 0.0) {
            throw robin::ConfigError("stability: coupling must be real in (-1,1)");
        }
        const robin::Potential v = load_potential(stab_pot);
        std::optional<std::pair<double, double>> hardy_qc;
        if (stab_hardy) {
            hardy_qc = std::make_pair(stab_hq, stab_hc > 0.0 ? stab_hc : 1.0);
        }
        emit(robin::stability_verdict(a.real(), v, hardy_qc).to_json(), stab_out);
        return 0;
    }

    if (eig->parsed()) {
        robin::EigenReport rep;
        json j;
        if (eig_critical) {
            rep = robin::critical_operator_spectrum(eig_n);
            j = json::parse(rep.to_json());
        } else {
            const robin::RobinCoupling a(robin::parse_complex(eig_a));
            robin::Potential v;
            if (!eig_pot.empty()) {
                v = load_potential(eig_pot);
            }
            const robin::TridiagonalMatrix m = robin::build_truncation(a, v, eig_n);
            rep = robin::eigenvalues_dense(m);
            j = json::parse(rep.to_json());
            j["outside_band"] = robin::count_outside_band(m, eig_margin);
            j["band_margin"] = eig_margin;
        }
        emit(j.dump(2), eig_out);
        return 0;
    }

    if (wit->parsed()) {
        const robin::RobinCoupling a(robin::parse_complex(wit_a));
        if (wit_scan) {
            // Open-question experiment: how close do rank-one spectra come to
            // the real boundary points outside the band?  Reported, not asserted.
            json arr = json::array();
            const robin::GreenKernelEvaluator evaluator(a);
            for (double theta : {0.0, 3.14159265358979323846}) {
                const auto bp = robin::find_boundary_point(a, wit_q, theta);
                if (!bp) {
                    continue;
                }
                double best = std::numeric_limits<double>::infinity();
                int best_site = 0;
                for (int n = 1; n <= wit_sites; ++n) {
                    const Complex g = evaluator.entry(*bp, n, n);
                    // |omega| = Q with the phase aligned: residual of the
                    // characteristic equation 1 + omega G = 0.
                    const double res = std::abs(1.0 - wit_q * std::abs(g));
                    if (res < best) {
                        best = res;
                        best_site = n;
                    }
                }
                arr.push_back({{"z", {{"re", bp->z.real()}, {"im", bp->z.imag()}}},
                               {"best_site", best_site},
                               {"char_eq_residual", best}});
            }
            json j;
            j["note"] = "eigenvalue near-miss scan at real boundary points; no assertion";
            j["points"] = arr;
            emit(j.dump(2), wit_out);
            return 0;
        }
        if (wit_z.empty()) {
            throw robin::ConfigError("witness: pass --z or --scan-real");
        }
        const Complex z = robin::parse_complex(wit_z);
        const robin::OptimalityWitness witness = robin::construct_optimality_witness(a, wit_q, z);
        const std::vector<Complex> exact =
            robin::rank_one_eigenvalues_exact(a, witness.omega, witness.site);
        double exact_dist = std::numeric_limits<double>::infinity();
        for (const Complex& root : exact) {
            exact_dist = std::min(exact_dist, std::abs(root - z));
        }
        robin::Potential v = robin::Potential::single_site(witness.site, witness.omega);
        const robin::TridiagonalMatrix m = robin::build_truncation(a, v, wit_verify);
        const Complex refined = robin::nearest_truncation_eigenvalue(m, z);
        json j;
        j["a"] = robin::fmt_complex(a.value());
        j["Q"] = wit_q;
        j["z"] = {{"re", z.real()}, {"im", z.imag()}};
        j["site"] = witness.site;
        j["omega"] = {{"re", witness.omega.real()}, {"im", witness.omega.imag()}};
        j["exact_roundtrip_distance"] = exact_dist;
        j["truncation"] = {{"N", wit_verify},
                           {"eigenvalue", {{"re", refined.real()}, {"im", refined.imag()}}},
                           {"distance", std::abs(refined - z)}};
        emit(j.dump(2), wit_out);
        return 0;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const robin::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const robin::ParamError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const robin::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 3;
    }
}
