#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spdc/hom.hpp"
#include "spdc/schmidt.hpp"

namespace {

using namespace spdc;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitComputeFailure = 1;
constexpr int kExitUsage = 2;

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

struct GlobalOptions {
    std::string registry_path;
    std::string outdir = ".";
    int grid_n = 512;
    bool json_output = false;
    bool no_pm_phase = false;
};

Registry load(const GlobalOptions& g) {
    std::string path = g.registry_path;
    if (path.empty()) {
        if (const char* env = std::getenv("SPDC_REGISTRY")) path = env;
    }
#ifdef SPDC_DEFAULT_REGISTRY
    if (path.empty()) path = SPDC_DEFAULT_REGISTRY;
#else
    if (path.empty()) path = "data/crystals.json";
#endif
    return load_registry(path);
}

// True when lambda sits at an asymmetric group-velocity-matched point whose
// matched photon lies on the idler axis; the convention then swaps roles so that
// the broadband (pump-matched) photon is the signal.
bool auto_swap_roles(const CrystalRecord& rec, double lambda_nm) {
    try {
        for (const auto& sol :
             solve_gvm_asymmetric(rec, {}, GvmCondition::PumpMatchesIdler))
            if (std::abs(sol.lambda_nm - lambda_nm) < 10.0) return true;
    } catch (const std::exception&) {
    }
    return false;
}

void write_jsi_csv(const std::string& path, const JointAmplitude& jsa) {
    std::ofstream out(path);
    const int n = jsa.grid.n;
    out << "# joint spectral intensity |f|^2, rows = signal index, cols = idler index\n";
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const cplx v = jsa.at(i, j);
            out << (j ? "," : "")
                << fmt("%.9e", v.real() * v.real() + v.imag() * v.imag());
        }
        out << "\n";
    }
}

void write_jsa_meta(const std::string& path, const CrystalRecord& rec,
                    const JsaConfig& cfg, const JointAmplitude& jsa, double period_um,
                    double p) {
    std::ofstream out(path);
    const auto& g = jsa.grid;
    out << "# grid axes in nm; uniform in angular frequency\n";
    out << "crystal," << rec.name << "\n";
    out << "lambda_nm," << fmt("%.4f", cfg.lambda_nm) << "\n";
    out << "length_mm," << fmt("%.4f", cfg.length_mm) << "\n";
    out << "pump_fwhm_nm," << fmt("%.4f", cfg.pump_fwhm_nm) << "\n";
    out << "period_um," << fmt("%.4f", period_um) << "\n";
    out << "grid_n," << g.n << "\n";
    out << "signal_lo_nm," << fmt("%.6f", g.signal_lambda_um(g.n - 1) * 1e3) << "\n";
    out << "signal_hi_nm," << fmt("%.6f", g.signal_lambda_um(0) * 1e3) << "\n";
    out << "idler_lo_nm," << fmt("%.6f", g.idler_lambda_um(g.n - 1) * 1e3) << "\n";
    out << "idler_hi_nm," << fmt("%.6f", g.idler_lambda_um(0) * 1e3) << "\n";
    out << "purity," << fmt("%.6f", p) << "\n";
}

void write_heatmap_pgm(const std::string& path, const JointAmplitude& jsa) {
    const int n = jsa.grid.n;
    std::ofstream out(path, std::ios::binary);
    out << "P5\n" << n << " " << n << "\n255\n";
    double peak = 0.0;
    for (const auto& v : jsa.values)
        peak = std::max(peak, v.real() * v.real() + v.imag() * v.imag());
    std::vector<unsigned char> row(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const cplx v = jsa.at(i, j);
            const double q = (v.real() * v.real() + v.imag() * v.imag()) / peak;
            row[j] = static_cast<unsigned char>(std::lround(255.0 * q));
        }
        out.write(reinterpret_cast<const char*>(row.data()), n);
    }
}

void write_hom_csv(const std::string& path, const HomTrace& t, double width_s) {
    std::ofstream out(path);
    out << "# visibility," << fmt("%.6f", t.visibility) << "\n";
    out << "# width_ps," << fmt("%.6f", width_s * 1e12) << "\n";
    out << "# baseline," << fmt("%.6f", t.baseline) << "\n";
    out << "tau_ps,coincidence_probability\n";
    for (std::size_t k = 0; k < t.tau_s.size(); ++k)
        out << fmt("%.6f", t.tau_s[k] * 1e12) << "," << fmt("%.9f", t.p[k]) << "\n";
}

int cmd_crystals(const GlobalOptions& g) {
    const Registry reg = load(g);
    const auto rows = list_crystals(reg);
    if (g.json_output) {
        json j = json::array();
        for (const auto& r : rows)
            j.push_back({{"name", r.name},
                         {"composition", r.composition},
                         {"d_eff_pm_per_V", r.d_eff_pm_per_V},
                         {"validity_um", {r.validity_lo_um, r.validity_hi_um}}});
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("%-8s %-11s %-12s %s\n", "name", "composition", "d_eff(pm/V)",
                    "validity(um)");
        for (const auto& r : rows)
            std::printf("%-8s %-11s %-12.1f %.2f-%.2f\n", r.name.c_str(),
                        r.composition.c_str(), r.d_eff_pm_per_V, r.validity_lo_um,
                        r.validity_hi_um);
    }
    return kExitOk;
}

int cmd_gvm(const GlobalOptions& g, const std::string& crystal,
            const std::string& condition) {
    const Registry reg = load(g);
    const CrystalRecord& rec = reg.get(crystal);
    json out = json::array();
    if (condition == "symmetric") {
        const GvmSolution sol = solve_gvm_symmetric(rec, {});
        const PolingResult pol = poling_period_degenerate(rec, {}, sol.lambda_nm);
        out.push_back({{"condition", gvm_condition_name(sol.condition)},
                       {"lambda_nm", sol.lambda_nm},
                       {"period_um", pol.period_um},
                       {"residual_s_per_m", sol.residual_s_per_m}});
    } else if (condition == "asymmetric") {
        for (const GvmCondition branch :
             {GvmCondition::PumpMatchesIdler, GvmCondition::PumpMatchesSignal}) {
            for (const GvmSolution& sol : solve_gvm_asymmetric(rec, {}, branch)) {
                const PolingResult pol = poling_period_degenerate(rec, {}, sol.lambda_nm);
                out.push_back({{"condition", gvm_condition_name(sol.condition)},
                               {"lambda_nm", sol.lambda_nm},
                               {"period_um", pol.period_um},
                               {"residual_s_per_m", sol.residual_s_per_m}});
            }
        }
    } else {
        std::cerr << "unknown condition '" << condition
                  << "' (expected symmetric or asymmetric)\n";
        return kExitUsage;
    }
    if (g.json_output) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::printf("%-22s %-12s %s\n", "condition", "lambda(nm)", "period(um)");
        for (const auto& row : out)
            std::printf("%-22s %-12.2f %.4f\n",
                        row["condition"].get<std::string>().c_str(),
                        row["lambda_nm"].get<double>(), row["period_um"].get<double>());
    }
    return kExitOk;
}

int cmd_jsa(const GlobalOptions& g, const std::string& crystal, double lambda_nm,
            double length_mm, double pump_bw, bool optimize_bw, int swap_mode,
            bool heatmap) {
    const Registry reg = load(g);
    const CrystalRecord& rec = reg.get(crystal);
    JsaConfig cfg;
    cfg.lambda_nm = lambda_nm;
    cfg.length_mm = length_mm;
    cfg.grid_n = g.grid_n;
    cfg.include_pm_phase = !g.no_pm_phase;
    cfg.swap_roles = swap_mode == 1 || (swap_mode == 2 && auto_swap_roles(rec, lambda_nm));
    double p;
    if (optimize_bw) {
        const BandwidthOptimum opt = optimize_pump_bandwidth(rec, cfg);
        cfg.pump_fwhm_nm = opt.pump_fwhm_nm;
        p = opt.purity;
    } else {
        cfg.pump_fwhm_nm = pump_bw;
        p = 0.0;
    }
    const JointAmplitude jsa = build_degenerate_jsa(rec, cfg);
    if (!optimize_bw) p = purity(jsa);
    const double period = poling_period_degenerate(rec, {}, lambda_nm).period_um;
    std::ostringstream base;
    base << g.outdir << "/jsa_" << rec.name << "_" << fmt("%.1f", lambda_nm) << "nm";
    write_jsi_csv(base.str() + ".csv", jsa);
    write_jsa_meta(base.str() + ".meta.csv", rec, cfg, jsa, period, p);
    if (heatmap) write_heatmap_pgm(base.str() + ".pgm", jsa);
    if (g.json_output) {
        json j = {{"crystal", rec.name},
                  {"lambda_nm", lambda_nm},
                  {"pump_fwhm_nm", cfg.pump_fwhm_nm},
                  {"period_um", period},
                  {"purity", p},
                  {"schmidt_number", 1.0 / p}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("crystal=%s lambda=%.2f nm pump_fwhm=%.4f nm period=%.4f um "
                    "purity=%.4f K=%.4f\n",
                    rec.name.c_str(), lambda_nm, cfg.pump_fwhm_nm, period, p, 1.0 / p);
    }
    return kExitOk;
}

int cmd_scan(const GlobalOptions& g, const std::string& crystal, double from, double to,
             double step, double length_mm, double pump_bw, bool optimize) {
    if (from > to || step <= 0.0) {
        std::cerr << "invalid scan range\n";
        return kExitUsage;
    }
    const Registry reg = load(g);
    const CrystalRecord& rec = reg.get(crystal);
    const auto rows =
        purity_scan(rec, from, to, step, length_mm,
                    optimize ? PumpPolicy::Optimized : PumpPolicy::FixedBandwidth,
                    pump_bw, g.grid_n);
    std::cout << "lambda_nm,period_um,pump_fwhm_nm,purity\n";
    for (const auto& r : rows) {
        if (r.ok)
            std::cout << fmt("%.2f", r.lambda_nm) << "," << fmt("%.4f", r.period_um)
                      << "," << fmt("%.4f", r.pump_fwhm_nm) << ","
                      << fmt("%.6f", r.purity) << "\n";
        else
            std::cout << fmt("%.2f", r.lambda_nm) << ",error: " << r.error << "\n";
    }
    return kExitOk;
}

int cmd_hom(const GlobalOptions& g, const std::string& crystal, double lambda_nm,
            double length_mm, double pump_bw, const std::string& herald,
            bool signal_idler, int swap_mode) {
    const Registry reg = load(g);
    const CrystalRecord& rec = reg.get(crystal);
    JsaConfig cfg;
    cfg.lambda_nm = lambda_nm;
    cfg.length_mm = length_mm;
    cfg.pump_fwhm_nm = pump_bw;
    cfg.grid_n = g.grid_n;
    cfg.include_pm_phase = !g.no_pm_phase;
    cfg.swap_roles = swap_mode == 1 || (swap_mode == 2 && auto_swap_roles(rec, lambda_nm));
    cfg.square_grid = signal_idler;  // both photons must share one frequency axis
    const JointAmplitude jsa = build_degenerate_jsa(rec, cfg);
    HomTrace trace;
    std::string tag;
    if (signal_idler) {
        trace = hom_signal_idler_auto(jsa);
        tag = "signal_idler";
    } else {
        const Photon h = herald == "signal" ? Photon::Signal : Photon::Idler;
        trace = hom_heralded_auto(jsa, jsa, h);
        tag = "herald_" + herald;
    }
    double width = 0.0;
    bool width_ok = true;
    try {
        width = dip_width(trace);
    } catch (const ComputeError&) {
        width_ok = false;
    }
    std::ostringstream path;
    path << g.outdir << "/hom_" << rec.name << "_" << fmt("%.1f", lambda_nm) << "nm_"
         << tag << ".csv";
    write_hom_csv(path.str(), trace, width);
    std::printf("crystal=%s lambda=%.2f nm trace=%s visibility=%.4f width_ps=%s "
                "baseline=%.3f\n",
                rec.name.c_str(), lambda_nm, tag.c_str(), trace.visibility,
                width_ok ? fmt("%.4f", width * 1e12).c_str() : "undefined",
                trace.baseline);
    return kExitOk;
}

struct Check {
    std::string label;
    bool pass;
    std::string detail;
};

int report(const std::vector<Check>& checks) {
    bool all = true;
    for (const auto& c : checks) {
        std::printf("%-40s %s  %s\n", c.label.c_str(), c.pass ? "PASS" : "FAIL",
                    c.detail.c_str());
        all = all && c.pass;
    }
    std::printf("overall: %s\n", all ? "PASS" : "FAIL");
    return all ? kExitOk : kExitComputeFailure;
}

int reproduce_table1(const GlobalOptions& g) {
    const Registry reg = load(g);
    struct Row {
        const char* name;
        double lambda_ref, period_ref;
    };
    const Row rows[] = {{"PPKTP", 1584.0, 46.1},
                        {"PPRTP", 1643.2, 56.6},
                        {"PPKTA", 1634.7, 57.3},
                        {"PPRTA", 1784.5, 71.1},
                        {"PPCTA", 1864.6, 381.9}};
    std::vector<Check> checks;
    std::ofstream csv(g.outdir + "/table1.csv");
    csv << "crystal,lambda_nm,lambda_ref_nm,delta_nm,period_um,period_ref_um,"
           "delta_pct,d_eff_pm_per_V\n";
    for (const Row& row : rows) {
        const CrystalRecord& rec = reg.get(row.name);
        const GvmSolution sol = solve_gvm_symmetric(rec, {});
        const PolingResult pol = poling_period_degenerate(rec, {}, sol.lambda_nm);
        const double dl = sol.lambda_nm - row.lambda_ref;
        const double dp = 100.0 * (pol.period_um - row.period_ref) / row.period_ref;
        csv << rec.name << "," << fmt("%.4f", sol.lambda_nm) << ","
            << fmt("%.1f", row.lambda_ref) << "," << fmt("%.4f", dl) << ","
            << fmt("%.4f", pol.period_um) << "," << fmt("%.1f", row.period_ref) << ","
            << fmt("%.4f", dp) << "," << fmt("%.1f", rec.d_eff_pm_per_V) << "\n";
        checks.push_back({std::string(row.name) + " gvm wavelength",
                          std::abs(dl) <= 2.0, fmt("%.2f", sol.lambda_nm) + " nm"});
        checks.push_back({std::string(row.name) + " poling period", std::abs(dp) <= 2.0,
                          fmt("%.3f", pol.period_um) + " um"});
    }
    return report(checks);
}

int reproduce_fig1(const GlobalOptions& g) {
    const Registry reg = load(g);
    struct Row {
        const char* name;
        double bw;
    };
    const Row rows[] = {{"PPRTP", 0.42}, {"PPKTA", 0.42}, {"PPRTA", 0.50}, {"PPCTA", 0.77}};
    std::vector<Check> checks;
    for (const Row& row : rows) {
        const CrystalRecord& rec = reg.get(row.name);
        const GvmSolution sol = solve_gvm_symmetric(rec, {});
        JsaConfig cfg;
        cfg.lambda_nm = sol.lambda_nm;
        cfg.pump_fwhm_nm = row.bw;
        cfg.grid_n = g.grid_n;
        const JointAmplitude jsa = build_degenerate_jsa(rec, cfg);
        const double p = purity(jsa);
        std::ostringstream base;
        base << g.outdir << "/fig1_" << rec.name;
        write_jsi_csv(base.str() + ".csv", jsa);
        write_jsa_meta(base.str() + ".meta.csv", rec, cfg, jsa,
                       poling_period_degenerate(rec, {}, sol.lambda_nm).period_um, p);
        checks.push_back({std::string(row.name) + " purity", std::abs(p - 0.82) <= 0.01,
                          fmt("%.4f", p)});
    }
    return report(checks);
}

int reproduce_fig2(const GlobalOptions& g) {
    const Registry reg = load(g);
    const CrystalRecord& rec = reg.get("PPRTP");
    const auto rows = purity_scan(rec, 1400.0, 1700.0, 100.0, 30.0,
                                  PumpPolicy::FixedBandwidth, 0.42, g.grid_n);
    std::ofstream csv(g.outdir + "/fig2_PPRTP.csv");
    csv << "lambda_nm,period_um,pump_fwhm_nm,purity\n";
    std::vector<Check> checks;
    for (const auto& r : rows) {
        csv << fmt("%.2f", r.lambda_nm) << "," << fmt("%.4f", r.period_um) << ","
            << fmt("%.4f", r.pump_fwhm_nm) << "," << fmt("%.6f", r.purity) << "\n";
        checks.push_back({"PPRTP " + fmt("%.0f", r.lambda_nm) + " nm purity",
                          r.ok && r.purity >= 0.80, fmt("%.4f", r.purity)});
    }
    return report(checks);
}

int reproduce_fig3(const GlobalOptions& g) {
    const Registry reg = load(g);
    const CrystalRecord& rec = reg.get("PPCTA");
    JsaConfig cfg;
    cfg.lambda_nm = 1506.0;
    cfg.pump_fwhm_nm = 5.0;
    cfg.grid_n = g.grid_n;
    cfg.swap_roles = true;  // broadband pump-matched photon as the signal
    const JointAmplitude jsa = build_degenerate_jsa(rec, cfg);
    const double p = purity(jsa);
    const double period = poling_period_degenerate(rec, {}, 1506.0).period_um;
    write_jsi_csv(g.outdir + "/fig3_PPCTA.csv", jsa);
    write_jsa_meta(g.outdir + "/fig3_PPCTA.meta.csv", rec, cfg, jsa, period, p);

    std::vector<Check> checks;
    checks.push_back({"PPCTA 1506 nm period", std::abs(period - 1032.7) / 1032.7 <= 0.02,
                      fmt("%.2f", period) + " um"});
    checks.push_back({"PPCTA 1506 nm purity", std::abs(p - 0.97) <= 0.01, fmt("%.4f", p)});
    checks.push_back({"PPCTA 1506 nm schmidt number", 1.0 / p <= 1.04, fmt("%.4f", 1.0 / p)});

    const HomTrace ts = hom_heralded_auto(jsa, jsa, Photon::Idler);
    const double ws = dip_width(ts);
    write_hom_csv(g.outdir + "/fig3_hom_signals.csv", ts, ws);
    checks.push_back({"heralded signals visibility", std::abs(ts.visibility - 0.97) <= 0.01,
                      fmt("%.4f", ts.visibility)});
    checks.push_back({"heralded signals width",
                      std::abs(ws * 1e12 - 0.24) / 0.24 <= 0.15,
                      fmt("%.4f", ws * 1e12) + " ps"});

    const HomTrace ti = hom_heralded_auto(jsa, jsa, Photon::Signal);
    const double wi = dip_width(ti);
    write_hom_csv(g.outdir + "/fig3_hom_idlers.csv", ti, wi);
    checks.push_back({"heralded idlers visibility", std::abs(ti.visibility - 0.97) <= 0.01,
                      fmt("%.4f", ti.visibility)});
    checks.push_back({"heralded idlers width", std::abs(wi * 1e12 - 3.5) / 3.5 <= 0.15,
                      fmt("%.4f", wi * 1e12) + " ps"});

    JsaConfig sq_cfg = cfg;
    sq_cfg.square_grid = true;  // signal-idler interference shares one axis
    const JointAmplitude sq = build_degenerate_jsa(rec, sq_cfg);
    const HomTrace tsi = hom_signal_idler_auto(sq);
    write_hom_csv(g.outdir + "/fig3_hom_signal_idler.csv", tsi, 0.0);
    checks.push_back({"signal-idler visibility",
                      tsi.visibility < 0.5 * ts.visibility, fmt("%.4f", tsi.visibility)});
    return report(checks);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Type-II SPDC toolkit: dispersion, group-velocity matching, "
                 "joint spectra, Schmidt purity, and Hong-Ou-Mandel simulation for "
                 "periodically poled KTP-family crystals"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand name
    GlobalOptions g;
    std::string format = "csv";
    app.add_option("--registry", g.registry_path, "registry file (or $SPDC_REGISTRY)");
    app.add_option("--outdir", g.outdir, "output directory for artifact files");
    app.add_option("-N,--grid-n", g.grid_n, "frequency grid points per axis")
        ->check(CLI::Range(16, 4096));
    app.add_option("--format", format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--no-pm-phase", g.no_pm_phase, "drop the phase-matching phase factor");

    auto* c_crystals = app.add_subcommand("crystals", "list the crystal registry");

    auto* c_gvm = app.add_subcommand("gvm", "solve group-velocity-matching conditions");
    std::string crystal, condition = "symmetric";
    c_gvm->add_option("--crystal", crystal, "crystal name")->required();
    c_gvm->add_option("--condition", condition, "symmetric or asymmetric");

    auto* c_jsa = app.add_subcommand("jsa", "compute a joint spectral amplitude");
    double lambda_nm = 0.0, length_mm = 30.0, pump_bw = 0.0;
    bool optimize_bw = false, heatmap = false;
    std::string swap = "auto";
    c_jsa->add_option("--crystal", crystal, "crystal name")->required();
    c_jsa->add_option("--lambda", lambda_nm, "degenerate wavelength, nm")->required();
    c_jsa->add_option("--length", length_mm, "crystal length, mm");
    c_jsa->add_option("--pump-bw", pump_bw, "pump bandwidth (intensity FWHM), nm");
    c_jsa->add_flag("--optimize-bw", optimize_bw, "optimize the pump bandwidth");
    c_jsa->add_option("--swap-roles", swap, "signal/idler role swap: auto, on, off")
        ->check(CLI::IsMember({"auto", "on", "off"}));
    c_jsa->add_flag("--heatmap", heatmap, "also write a PGM heatmap of the intensity");

    auto* c_scan = app.add_subcommand("scan", "purity scan over wavelength");
    double from = 0.0, to = 0.0, step = 50.0;
    bool scan_optimize = false;
    c_scan->add_option("--crystal", crystal, "crystal name")->required();
    c_scan->add_option("--from", from, "start wavelength, nm")->required();
    c_scan->add_option("--to", to, "end wavelength, nm")->required();
    c_scan->add_option("--step", step, "step, nm");
    c_scan->add_option("--length", length_mm, "crystal length, mm");
    c_scan->add_option("--pump-bw", pump_bw, "fixed pump bandwidth, nm");
    c_scan->add_flag("--optimize", scan_optimize, "optimize the bandwidth per point");

    auto* c_hom = app.add_subcommand("hom", "simulate Hong-Ou-Mandel interference");
    std::string herald = "idler";
    bool signal_idler = false;
    c_hom->add_option("--crystal", crystal, "crystal name")->required();
    c_hom->add_option("--lambda", lambda_nm, "degenerate wavelength, nm")->required();
    c_hom->add_option("--length", length_mm, "crystal length, mm");
    c_hom->add_option("--pump-bw", pump_bw, "pump bandwidth, nm")->required();
    c_hom->add_option("--herald", herald, "heralding photon: idler or signal")
        ->check(CLI::IsMember({"idler", "signal"}));
    c_hom->add_flag("--signal-idler", signal_idler,
                    "interfere signal against idler from one source");
    c_hom->add_option("--swap-roles", swap, "signal/idler role swap: auto, on, off")
        ->check(CLI::IsMember({"auto", "on", "off"}));

    auto* c_rep = app.add_subcommand("reproduce", "run a canned reproduction");
    std::string figure;
    c_rep->add_option("figure", figure, "table1, fig1, fig2 or fig3")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }
    g.json_output = format == "json";
    const int swap_mode = swap == "on" ? 1 : (swap == "auto" ? 2 : 0);

    try {
        if (c_crystals->parsed()) return cmd_crystals(g);
        if (c_gvm->parsed()) return cmd_gvm(g, crystal, condition);
        if (c_jsa->parsed()) {
            if (!optimize_bw && pump_bw <= 0.0) {
                std::cerr << "either --pump-bw or --optimize-bw is required\n";
                return kExitUsage;
            }
            return cmd_jsa(g, crystal, lambda_nm, length_mm, pump_bw, optimize_bw,
                           swap_mode, heatmap);
        }
        if (c_scan->parsed()) {
            if (!scan_optimize && pump_bw <= 0.0) {
                std::cerr << "either --pump-bw or --optimize is required\n";
                return kExitUsage;
            }
            return cmd_scan(g, crystal, from, to, step, length_mm, pump_bw, scan_optimize);
        }
        if (c_hom->parsed())
            return cmd_hom(g, crystal, lambda_nm, length_mm, pump_bw, herald,
                           signal_idler, swap_mode);
        if (c_rep->parsed()) {
            if (figure == "table1") return reproduce_table1(g);
            if (figure == "fig1") return reproduce_fig1(g);
            if (figure == "fig2") return reproduce_fig2(g);
            if (figure == "fig3") return reproduce_fig3(g);
            std::cerr << "unknown figure '" << figure << "'\n";
            return kExitUsage;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const RangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ComputeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputeFailure;
    }
    return kExitUsage;
}
