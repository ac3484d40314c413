// longwalk: command-line front end for the transfer protocols and sweeps.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "io.hpp"
#include "longwalk/blocks.hpp"
#include "longwalk/chain.hpp"
#include "longwalk/error.hpp"
#include "longwalk/ring.hpp"
#include "longwalk/scaling.hpp"
#include "longwalk/transfer.hpp"
#include "longwalk/uniform.hpp"

using namespace longwalk;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitNumerical = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string out = ".";
    std::string stem;
    bool reproducible = false;
};

io::Manifest make_manifest(const Globals& g, const std::string& command, const std::string& default_stem) {
    return io::Manifest(command, g.out, g.stem.empty() ? default_stem : g.stem, g.reproducible);
}

std::vector<double> geomspace(double lo, double hi, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i)
        v.push_back(n == 1 ? lo : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1)));
    return v;
}

std::vector<long> powers_of_two(int lo, int hi) {
    std::vector<long> v;
    for (int p = lo; p <= hi; ++p) v.push_back(1L << p);
    return v;
}

json conditions_json(const BoundConditions& c) {
    return {{"gap_E_lm2_ge_4_Omega_l", c.gap}, {"weak_sum_lt_3_4", c.weak}, {"both", c.both()}};
}

json local_json(const ScalingSeries& s) {
    json arr = json::array();
    for (const auto& e : s.local) arr.push_back({{"L_mid", e.midpoint}, {"exponent", e.slope}});
    return arr;
}

json report_json(const SaturationReport& r) {
    return {{"d", r.dimension},
            {"alpha", r.alpha},
            {"protocol", r.protocol},
            {"regime", regime_name(r.optimal.regime)},
            {"optimal_exponent", r.optimal.logarithmic ? json("log") : json(r.optimal.exponent)},
            {"bound_exponent", r.optimal.bound_exponent},
            {"measure", r.measure},
            {"measured", r.measured},
            {"expected", r.expected},
            {"tolerance", r.tolerance},
            {"pass", r.pass},
            {"verdict", r.verdict}};
}

// ---------------------------------------------------------------------------
// chain-spectrum

struct ChainSpectrumArgs {
    int d = 1;
    double alpha = 0.0;
    int l = 0;
};

int cmd_chain_spectrum(const Globals& g, const ChainSpectrumArgs& a) {
    const auto chain = build_effective_chain(a.d, a.alpha, a.l);
    const auto spec = chain_spectrum(chain);
    const auto q = q_factor(spec);

    auto m = make_manifest(g, "chain-spectrum", "chain_spectrum");
    m.parameters() = {{"d", a.d}, {"alpha", a.alpha}, {"l", a.l}};
    std::vector<std::vector<double>> rows;
    for (int k = 0; k < spec.modes(); ++k)
        rows.push_back({static_cast<double>(k), spec.energies[k], spec.endpoint(k), static_cast<double>(spec.parity(k))});
    io::write_csv(m, ".csv", {"k", "E_k", "t_k_0", "parity"}, rows);
    json report = {{"d", a.d},           {"alpha", a.alpha},          {"l", a.l},
                   {"a", chain.base},    {"L", chain.distance()},     {"Q", q.q},
                   {"t_l_0", q.zero_mode_endpoint}, {"E_l_minus_1", q.min_gap},
                   {"zero_tolerance", spec.zero_tolerance}};
    io::write_json(m, ".json", report);
    m.write();
    std::cout << report.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// transfer

struct TransferArgs {
    std::string protocol;
    int d = 1;
    double alpha = 0.0;
    std::optional<int> l;
    std::optional<long> side;
    std::optional<double> epsilon;
    std::optional<double> g;
};

int cmd_transfer(const Globals& gl, const TransferArgs& a) {
    json report;
    auto m = make_manifest(gl, "transfer", "transfer_" + a.protocol);
    m.parameters() = {{"protocol", a.protocol}, {"d", a.d}, {"alpha", a.alpha}};
    if (a.l) m.parameters()["l"] = *a.l;
    if (a.side) m.parameters()["L"] = *a.side;
    if (a.epsilon) m.parameters()["epsilon"] = *a.epsilon;
    if (a.g) m.parameters()["g"] = *a.g;

    if (a.protocol == "chain") {
        if (!a.l) throw UsageError("--protocol chain needs --l");
        if (a.epsilon.has_value() == a.g.has_value()) throw UsageError("--protocol chain needs exactly one of --epsilon, --g");
        if (a.alpha < a.d / 2.0) throw UsageError("alpha < d/2 belongs to --protocol uniform");
        const auto chain = build_effective_chain(a.d, a.alpha, *a.l);
        const auto spec = chain_spectrum(chain);
        const double g = a.g ? *a.g : choose_g(spec, *a.epsilon);
        const auto model = attach_endpoints(spec, chain.bonds, g);
        const auto out = exact_transfer(model);
        report = {{"protocol", "chain"},
                  {"L", chain.distance()},
                  {"T", out.time},
                  {"g", out.g},
                  {"Omega_l", model.rabi[spec.zero_index()]},
                  {"fidelity_exact", out.fidelity_exact},
                  {"infidelity_exact", out.infidelity_exact},
                  {"infidelity_perturbative", out.infidelity_perturbative},
                  {"infidelity_bound", *out.infidelity_bound},
                  {"bound_conditions", conditions_json(*out.conditions)}};
        if (a.epsilon) report["epsilon_target"] = *a.epsilon;
    } else if (a.protocol == "uniform") {
        if (!a.side) throw UsageError("--protocol uniform needs --L");
        if (a.alpha >= a.d / 2.0) throw UsageError("alpha >= d/2 belongs to --protocol chain");
        const auto p = build_uniform_protocol(a.d, a.alpha, *a.side);
        const double f = simulate_uniform(p);
        report = {{"protocol", "uniform"}, {"L", p.side}, {"N", p.sites}, {"T", p.time}, {"w", p.hop},
                  {"W_eff", p.coupling}, {"fidelity_exact", f}, {"infidelity_exact", 1.0 - f}};
    } else if (a.protocol == "ring") {
        if (!a.side) throw UsageError("--protocol ring needs --L");
        if (a.epsilon.has_value() == a.g.has_value()) throw UsageError("--protocol ring needs exactly one of --epsilon, --g");
        const auto model = ring_spectrum(a.d, *a.side, a.alpha);
        const auto summary = ring_spectral_summary(model);
        const double g = a.g ? *a.g : ring_choose_g(model, *a.epsilon);
        const auto out = ring_exact_transfer(a.d, *a.side, a.alpha, g);
        report = {{"protocol", "ring"},
                  {"L", *a.side},
                  {"N", model.sites},
                  {"T", out.time},
                  {"g", out.g},
                  {"mu", out.mu},
                  {"fidelity_exact", out.fidelity_exact},
                  {"infidelity_exact", out.infidelity_exact},
                  {"infidelity_perturbative", out.infidelity_perturbative},
                  {"delta0", summary.delta0},
                  {"W", summary.bandwidth},
                  {"q2", summary.q2}};
        if (a.epsilon) report["epsilon_target"] = *a.epsilon;
    } else {
        throw UsageError("unknown protocol " + a.protocol);
    }
    io::write_json(m, ".json", report);
    m.write();
    std::cout << report.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
    std::string experiment;
    int d = 1;
    std::optional<double> alpha_minus_d;
    std::vector<double> alphas;
    std::optional<int> l;
    std::optional<int> l_min, l_max;
    std::optional<long> side;
    int points = 40;
    int window = 5;
    double epsilon = 0.01;
    std::optional<int> log2_min, log2_max;
};

int sweep_fig2a(const Globals& gl, const SweepArgs& a) {
    const double alpha = a.d + a.alpha_minus_d.value_or(-0.2);
    const int l = a.l.value_or(24);
    const auto chain = build_effective_chain(a.d, alpha, l);
    const auto spec = chain_spectrum(chain);
    double w = 0.0;
    for (int k = 0; k < spec.modes(); ++k)
        if (k != spec.zero_index()) w += std::pow(spec.endpoint(k) / spec.energies[k], 2);
    const double g_hi = std::sqrt(0.1 / (4.0 * w));

    auto m = make_manifest(gl, "sweep", "fig2a");
    m.parameters() = {{"experiment", "fig2a"}, {"d", a.d}, {"alpha", alpha}, {"l", l}, {"points", a.points},
                      {"g_min", 1e-3}, {"g_max", g_hi}};
    m.note("g grid ends where the perturbative envelope 2 sum Omega_k^2/E_k^2 reaches 0.1");
    std::vector<std::vector<double>> rows;
    io::PlotSeries exact{"exact evolution", {}, {}, true}, pert{"perturbative", {}, {}, false};
    double worst = 0.0;
    int outliers = 0;
    for (double g : geomspace(1e-3, g_hi, a.points)) {
        const auto model = attach_endpoints(spec, chain.bonds, g);
        const auto out = exact_transfer(model);
        const double s = model.weak_coupling_sum();
        rows.push_back({g, out.infidelity_exact, out.infidelity_perturbative, 2.0 * s, 3.0 * s,
                        out.conditions->both() ? 1.0 : 0.0});
        exact.x.push_back(g), exact.y.push_back(out.infidelity_exact);
        pert.x.push_back(g), pert.y.push_back(out.infidelity_perturbative);
        if (out.infidelity_exact <= 0.1) {
            const double rel = std::abs(out.infidelity_exact - out.infidelity_perturbative) / out.infidelity_exact;
            worst = std::max(worst, rel);
            outliers += rel > 0.2;
        }
    }
    io::write_csv(m, ".csv", {"g", "eps_exact", "eps_perturbative", "envelope_2S", "bound_3S", "bound_conditions"}, rows);
    io::write_svg(m, ".svg", {"infidelity vs coupling", "g", "infidelity", true, true, {exact, pert}});
    json report = {{"experiment", "fig2a"},
                   {"max_relative_deviation", worst},
                   {"points_above_20_percent", outliers},
                   {"points", a.points}};
    io::write_json(m, ".report.json", report);
    m.write();
    std::cout << report.dump(2) << "\n";
    return 0;
}

int sweep_fig2bcd(const Globals& gl, const SweepArgs& a) {
    const double excess = a.alpha_minus_d.value_or(0.2);
    const double alpha = a.d + excess;
    const int admissible = max_admissible_depth(a.d, alpha);
    const int l_min = a.l_min.value_or(excess == 0.0 ? 8 : 4);
    const int l_max = a.l_max.value_or(std::min(excess < 0 ? 40 : 60, admissible));
    const auto s = q_scaling_sweep(a.d, alpha, l_min, l_max);

    auto m = make_manifest(gl, "sweep", "fig2bcd");
    m.parameters() = {{"experiment", "fig2bcd"}, {"d", a.d}, {"alpha", alpha}, {"l_min", l_min}, {"l_max", l_max}};
    for (const auto& w : s.warnings) m.note(w);
    std::vector<std::vector<double>> rows;
    io::PlotSeries q{"Q", {}, {}, true};
    for (const auto& p : s.points) {
        rows.push_back({std::round(std::log2((p.size + 2.0) / 3.0)), p.size, p.value});
        q.x.push_back(p.size), q.y.push_back(p.value);
    }
    io::write_csv(m, ".csv", {"l", "L", "Q"}, rows);
    io::write_svg(m, ".svg", {"Q vs distance", "L", "Q", true, s.axis == AxisMode::LogLog, {q}});
    const auto r = saturation_report(a.d, alpha, "chain", s);
    json report = report_json(r);
    report["experiment"] = "fig2bcd";
    report["axis"] = axis_name(s.axis);
    report["fit"] = {{"slope", s.fit.slope}, {"intercept", s.fit.intercept}, {"r_squared", s.fit.r_squared}};
    report["note"] = "Q is judged against the optimal transfer-time table since T is proportional to Q at fixed epsilon";
    io::write_json(m, ".report.json", report);
    m.write();
    std::cout << report.dump(2) << "\n";
    return 0;
}

int sweep_figS2a(const Globals& gl, const SweepArgs& a) {
    const long side = a.side.value_or(100);
    const double alpha = a.alphas.empty() ? 1.0 : a.alphas.front();
    const auto model = ring_spectrum(a.d, side, alpha);
    const double q2 = ring_spectral_summary(model).q2;
    const double g_hi = std::sqrt(0.1 * static_cast<double>(model.sites) / (4.0 * q2));

    auto m = make_manifest(gl, "sweep", "figS2a");
    m.parameters() = {{"experiment", "figS2a"}, {"d", a.d}, {"alpha", alpha}, {"L", side}, {"points", a.points},
                      {"g_min", 1e-3}, {"g_max", g_hi}};
    std::vector<std::vector<double>> rows;
    io::PlotSeries exact{"exact evolution", {}, {}, true}, pert{"perturbative", {}, {}, false};
    double worst = 0.0;
    for (double g : geomspace(1e-3, g_hi, a.points)) {
        const auto out = ring_exact_transfer(a.d, side, alpha, g);
        rows.push_back({g, out.infidelity_exact, out.infidelity_perturbative, out.mu});
        exact.x.push_back(g), exact.y.push_back(out.infidelity_exact);
        pert.x.push_back(g), pert.y.push_back(out.infidelity_perturbative);
        if (out.infidelity_exact <= 0.1)
            worst = std::max(worst, std::abs(out.infidelity_exact - out.infidelity_perturbative) / out.infidelity_exact);
    }
    io::write_csv(m, ".csv", {"g", "eps_exact", "eps_perturbative", "mu"}, rows);
    io::write_svg(m, ".svg", {"ring infidelity vs coupling", "g", "infidelity", true, true, {exact, pert}});
    json report = {{"experiment", "figS2a"}, {"max_relative_deviation", worst}, {"pass_20_percent", worst <= 0.2}};
    io::write_json(m, ".report.json", report);
    m.write();
    std::cout << report.dump(2) << "\n";
    return 0;
}

int sweep_q2_exponents(const Globals& gl, const SweepArgs& a, const std::string& name, int d,
                       const std::vector<long>& sides, std::vector<double> alphas) {
    auto m = make_manifest(gl, "sweep", name);
    m.parameters() = {{"experiment", name}, {"d", d}, {"alphas", alphas}, {"L", sides}, {"window", a.window}};
    m.note("local exponents are fitted over windows of consecutive grid sizes, not fixed-length L intervals");
    std::vector<std::vector<double>> rows, local_rows;
    io::PlotSpec plot{"local q2 exponents vs 1/L", "1/L", "local exponent", false, false, {}};
    json results = json::array();
    for (double alpha : alphas) {
        auto s = local_exponents(ring_sweep(d, alpha, sides, RingObservable::Q2), a.window);
        s.extrapolated = extrapolate_exponent(s);
        const double want = 2.0 * ring_time_exponent(d, alpha);
        for (const auto& p : s.points) rows.push_back({alpha, p.size, p.value});
        io::PlotSeries ps{"alpha = " + io::number(alpha).substr(0, 4), {}, {}, true};
        for (const auto& e : s.local) {
            local_rows.push_back({alpha, e.midpoint, e.slope});
            ps.x.push_back(1.0 / e.midpoint), ps.y.push_back(e.slope);
        }
        plot.series.push_back(ps);
        results.push_back({{"alpha", alpha},
                           {"extrapolated_exponent", *s.extrapolated},
                           {"expected", want},
                           {"tolerance", tolerance::kRingExtrapolation},
                           {"pass", std::abs(*s.extrapolated - want) <= tolerance::kRingExtrapolation},
                           {"local_exponents", local_json(s)}});
    }
    io::write_csv(m, ".csv", {"alpha", "L", "q2"}, rows);
    io::write_csv(m, ".local.csv", {"alpha", "L_mid", "local_exponent"}, local_rows);
    io::write_svg(m, ".svg", plot);
    json report = {{"experiment", name}, {"d", d}, {"results", results}};
    io::write_json(m, ".report.json", report);
    m.write();
    std::cout << report.dump(2) << "\n";
    return 0;
}

int sweep_figS3(const Globals& gl, const SweepArgs& a) {
    const std::vector<double> alphas = a.alphas.empty() ? std::vector<double>{0.5, 1.0, 1.5} : a.alphas;
    const auto sides = powers_of_two(a.log2_min.value_or(8), a.log2_max.value_or(14));
    auto m = make_manifest(gl, "sweep", "figS3");
    m.parameters() = {{"experiment", "figS3"}, {"d", 1}, {"alphas", alphas}, {"L", sides}};
    std::vector<std::vector<double>> rows;
    io::PlotSpec plot{"ring gap and bandwidth", "L", "value", true, true, {}};
    json results = json::array();
    for (double alpha : alphas) {
        const auto d0 = ring_sweep(1, alpha, sides, RingObservable::Delta0);
        auto w = ring_sweep(1, alpha, sides, RingObservable::Bandwidth);
        for (std::size_t i = 0; i < sides.size(); ++i) rows.push_back({alpha, d0.points[i].size, d0.points[i].value, w.points[i].value});
        io::PlotSeries pd{"delta0, alpha = " + io::number(alpha).substr(0, 4), d0.sizes(), d0.values(), true};
        io::PlotSeries pw{"W, alpha = " + io::number(alpha).substr(0, 4), w.sizes(), w.values(), false};
        plot.series.push_back(pd);
        plot.series.push_back(pw);
        json r = {{"alpha", alpha},
                  {"delta0_slope", d0.fit.slope},
                  {"delta0_expected", 1.0 - alpha},
                  {"delta0_pass", std::abs(d0.fit.slope - (1.0 - alpha)) <= tolerance::kSpectralSlope}};
        if (alpha == 1.0) {
            w.axis = AxisMode::SemilogX;
            const auto f = fit_series(w);
            r["W_vs_logL_r_squared"] = f.r_squared;
            r["W_pass"] = f.r_squared >= 0.99;
        } else {
            const double want = std::max(1.0 - alpha, 0.0);
            r["W_slope"] = w.fit.slope;
            r["W_expected"] = want;
            r["W_pass"] = std::abs(w.fit.slope - want) <= tolerance::kSpectralSlope;
        }
        results.push_back(r);
    }
    io::write_csv(m, ".csv", {"alpha", "L", "delta0", "W"}, rows);
    io::write_svg(m, ".svg", plot);
    json report = {{"experiment", "figS3"}, {"results", results}};
    io::write_json(m, ".report.json", report);
    m.write();
    std::cout << report.dump(2) << "\n";
    return 0;
}

int cmd_sweep(const Globals& gl, const SweepArgs& a) {
    if (a.points < 2) throw UsageError("--points must be >= 2");
    if (a.experiment == "fig2a") return sweep_fig2a(gl, a);
    if (a.experiment == "fig2bcd") return sweep_fig2bcd(gl, a);
    if (a.experiment == "figS2a") return sweep_figS2a(gl, a);
    if (a.experiment == "figS2b") {
        const std::vector<double> alphas =
            a.alphas.empty() ? std::vector<double>{0.5, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.2} : a.alphas;
        return sweep_q2_exponents(gl, a, "figS2b", 1, powers_of_two(a.log2_min.value_or(8), a.log2_max.value_or(17)),
                                  alphas);
    }
    if (a.experiment == "figS2c") {
        const std::vector<double> alphas = a.alphas.empty() ? std::vector<double>{0.6, 1.0, 1.5} : a.alphas;
        const std::vector<long> sides = {32, 38, 46, 54, 64, 76, 90, 108, 128, 152, 182, 216, 256};
        return sweep_q2_exponents(gl, a, "figS2c", 2, sides, alphas);
    }
    if (a.experiment == "figS3") return sweep_figS3(gl, a);
    throw UsageError("unknown experiment " + a.experiment + " (fig2a, fig2bcd, figS2a, figS2b, figS2c, figS3)");
}

// ---------------------------------------------------------------------------
// lattice

struct LatticeArgs {
    int d = 1;
    double alpha = 0.0;
    int l = 2;
    long max_bonds = 200000;
};

int cmd_lattice(const Globals& gl, const LatticeArgs& a) {
    const auto lat = build_block_lattice(a.d, a.alpha, a.l);
    const long bonds = bond_count(lat);
    if (bonds > a.max_bonds)
        throw UsageError("lattice has " + std::to_string(bonds) + " bonds, above --max-bonds " + std::to_string(a.max_bonds));
    const auto red = reduce_to_chain(lat);

    auto m = make_manifest(gl, "lattice", "lattice");
    m.parameters() = {{"d", a.d}, {"alpha", a.alpha}, {"l", a.l}};
    json sites = json::array();
    for (long i = 0; i < lat.site_count(); ++i) {
        const auto& c = lat.coordinates[static_cast<std::size_t>(i)];
        json coords = a.d == 1 ? json::array({c[0]}) : json::array({c[0], c[1]});
        sites.push_back({{"index", i}, {"block", lat.block_of[static_cast<std::size_t>(i)]}, {"coords", coords}});
    }
    json bond_list = json::array();
    for (int j = 0; j + 1 < lat.blocks(); ++j) {
        const double s = lat.block_coupling(j);
        for (long i = lat.offsets[static_cast<std::size_t>(j)]; i < lat.offsets[static_cast<std::size_t>(j + 1)]; ++i)
            for (long k = lat.offsets[static_cast<std::size_t>(j + 1)]; k < lat.offsets[static_cast<std::size_t>(j + 2)]; ++k)
                bond_list.push_back({{"i", i}, {"j", k}, {"strength", s}});
    }
    json doc = {{"d", a.d},
                {"alpha", a.alpha},
                {"l", a.l},
                {"L", lat.distance()},
                {"sides", lat.sides},
                {"normalization", red.normalization},
                {"effective_bonds", red.chain.bonds},
                {"sites", sites},
                {"bonds", bond_list}};
    io::write_json(m, ".json", doc);
    m.write();
    std::cout << "wrote " << m.path_for(".json").string() << ": " << lat.site_count() << " sites, " << bonds
              << " bonds\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"longwalk: long-range single-particle state transfer"};
    app.require_subcommand(1);
    Globals gl;
    app.add_option("--out", gl.out, "output directory")->capture_default_str();
    app.add_option("--stem", gl.stem, "output file stem (default: per command)");
    app.add_flag("--reproducible", gl.reproducible, "pin the manifest timestamp so outputs are byte-identical");

    ChainSpectrumArgs cs;
    auto* c1 = app.add_subcommand("chain-spectrum",
                                  "effective chain spectrum; CSV columns k,E_k,t_k_0,parity; JSON Q, t_l_0, E_l_minus_1");
    c1->add_option("--d", cs.d, "dimension (1-3)")->required();
    c1->add_option("--alpha", cs.alpha, "power-law exponent")->required();
    c1->add_option("--l", cs.l, "recursion depth (even)")->required();

    TransferArgs tr;
    auto* c2 = app.add_subcommand("transfer", "run one protocol; JSON with T, g, exact/perturbative/bound infidelities");
    c2->add_option("--protocol", tr.protocol, "chain | uniform | ring")->required()->check(
        CLI::IsMember({"chain", "uniform", "ring"}));
    c2->add_option("--d", tr.d, "dimension")->capture_default_str();
    c2->add_option("--alpha", tr.alpha, "power-law exponent")->required();
    c2->add_option("--l", tr.l, "recursion depth (chain)");
    c2->add_option("--L", tr.side, "side length (uniform, ring)");
    c2->add_option("--epsilon", tr.epsilon, "target infidelity (chain, ring)");
    c2->add_option("--g", tr.g, "endpoint coupling (chain, ring)");

    SweepArgs sw;
    auto* c3 = app.add_subcommand(
        "sweep",
        "named experiments: fig2a (CSV g,eps_exact,eps_perturbative,envelope_2S,bound_3S,bound_conditions), "
        "fig2bcd (l,L,Q), figS2a (g,eps_exact,eps_perturbative,mu), figS2b/figS2c (alpha,L,q2 and "
        "alpha,L_mid,local_exponent), figS3 (alpha,L,delta0,W)");
    c3->add_option("--experiment", sw.experiment, "fig2a | fig2bcd | figS2a | figS2b | figS2c | figS3")->required();
    c3->add_option("--d", sw.d, "dimension")->capture_default_str();
    c3->add_option("--alpha-minus-d", sw.alpha_minus_d, "alpha - d for the chain experiments");
    c3->add_option("--alpha", sw.alphas, "alpha value(s) for the ring experiments");
    c3->add_option("--l", sw.l, "recursion depth (fig2a)");
    c3->add_option("--l-min", sw.l_min, "smallest l (fig2bcd)");
    c3->add_option("--l-max", sw.l_max, "largest l (fig2bcd)");
    c3->add_option("--L", sw.side, "ring side length (figS2a)");
    c3->add_option("--points", sw.points, "g grid points")->capture_default_str();
    c3->add_option("--window", sw.window, "local exponent window")->capture_default_str();
    c3->add_option("--log2-min", sw.log2_min, "smallest log2 L (figS2b, figS3)");
    c3->add_option("--log2-max", sw.log2_max, "largest log2 L (figS2b, figS3)");

    LatticeArgs la;
    auto* c4 = app.add_subcommand("lattice", "export the explicit block lattice as JSON (d, alpha, l, sites[], bonds[])");
    c4->add_option("--d", la.d, "dimension (1 or 2)")->required();
    c4->add_option("--alpha", la.alpha, "power-law exponent")->required();
    c4->add_option("--l", la.l, "recursion depth (even)")->required();
    c4->add_option("--max-bonds", la.max_bonds, "refuse to export more bonds than this")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (c1->parsed()) return cmd_chain_spectrum(gl, cs);
        if (c2->parsed()) return cmd_transfer(gl, tr);
        if (c3->parsed()) return cmd_sweep(gl, sw);
        if (c4->parsed()) return cmd_lattice(gl, la);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::InvalidArgument: return kExitUsage;
            case ErrorKind::Domain:
            case ErrorKind::PrecisionGuard: return kExitDomain;
            case ErrorKind::Numerical: return kExitNumerical;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
