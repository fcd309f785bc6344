#include "cherry/run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "cherry/cells.hpp"
#include "cherry/conjugacy.hpp"
#include "cherry/diagram.hpp"
#include "cherry/flow/chart.hpp"
#include "cherry/flow/surgery.hpp"
#include "cherry/io/exports.hpp"
#include "cherry/io/json_writer.hpp"
#include "cherry/survivor.hpp"

namespace cherry {

namespace {

FlatCircleMap map_from_config(const Config& cfg, const std::string& prefix) {
    return make_beta_model(cfg.get_double(prefix + ".a", 0.15), cfg.get_double(prefix + ".b", 0.85),
                           cfg.get_double(prefix + ".c", 0.5),
                           cfg.get_double(prefix + ".lambda_b", 0.5),
                           cfg.get_double(prefix + ".lambda_a", 0.5));
}

MapFamily family_from_config(const Config& cfg, const std::string& prefix = "map") {
    std::string action = cfg.get_string(prefix + ".action", "boyd");
    if (action != "boyd")
        throw ConfigInvalid("unknown map action '" + action + "' (supported: boyd)");
    return MapFamily::boyd(map_from_config(cfg, prefix), cfg.get_double("theta_min", 0.0),
                           cfg.get_double("theta_max", 1.0));
}

Interval theta_range_from(const Config& cfg) {
    return {cfg.get_double("theta_min", 0.0), cfg.get_double("theta_max", 1.0)};
}

FlowFamily flow_from_config(const Config& cfg) {
    StripFamilyParams p;
    p.omega = cfg.get_double("flow.omega", p.omega);
    p.strip_lo = cfg.get_double("flow.strip_lo", p.strip_lo);
    p.strip_hi = cfg.get_double("flow.strip_hi", p.strip_hi);
    p.sigma_x = cfg.get_double("flow.sigma_x", p.sigma_x);
    p.sigma_hat_x = cfg.get_double("flow.sigma_hat_x", p.sigma_hat_x);
    p.y0 = cfg.get_double("flow.y0", p.y0);
    p.mu = cfg.get_double("flow.mu", p.mu);
    p.nu = cfg.get_double("flow.nu", p.nu);
    p.kappa2 = cfg.get_double("flow.kappa2", p.kappa2);
    p.theta_lo = cfg.get_double("theta_min", p.theta_lo);
    p.theta_hi = cfg.get_double("theta_max", p.theta_hi);
    p.nu_theta_slope = cfg.get_double("flow.nu_theta_slope", 0.0);
    p.integ.abs_tol = cfg.get_double("flow.abs_tol", p.integ.abs_tol);
    p.integ.rel_tol = cfg.get_double("flow.rel_tol", p.integ.rel_tol);
    p.event_tol = cfg.get_double("flow.event_tol", p.event_tol);
    FlowFamily raw = make_strip_family(p);
    if (!cfg.get_bool("flow.fence", true)) return raw;
    SurgeryOptions sopt;
    sopt.n_samples = (int)cfg.get_long("flow.fence_samples", 700);
    SeparatrixMarks marks = separatrix_marks(raw, 0.0);
    return fence_surgery(raw, SurgeryTarget::bridge_map(std_bridge_target(marks)), sopt).family;
}

std::string join(const std::string& dir, const std::string& file) {
    return (std::filesystem::path(dir) / file).string();
}

BifDiagram scan_from_config(const MapFamily& fam, const RunConfig& rc) {
    ScanOptions opt;
    opt.jobs = rc.jobs;
    return scan_diagram(fam, theta_range_from(rc.cfg), (int)rc.cfg.get_long("Q", 16), opt);
}

void cmd_scan(const RunConfig& rc) {
    MapFamily fam = family_from_config(rc.cfg);
    BifDiagram d = scan_from_config(fam, rc);
    auto samples = staircase(fam, d.theta_range, (int)rc.cfg.get_long("staircase_points", 257));
    write_file(join(rc.out_dir, "diagram.json"), diagram_json(d));
    write_file(join(rc.out_dir, "staircase.csv"), staircase_csv(samples));
    write_file(join(rc.out_dir, "diagram.svg"), diagram_svg(d, samples));
    std::printf("scan: %zu plateaus, %zu loops, residual measure %.6g\n", d.plateaus.size(),
                d.loops.size(), d.residual.measure());
}

void cmd_loops(const RunConfig& rc) {
    MapFamily fam = family_from_config(rc.cfg);
    BifDiagram d = scan_from_config(fam, rc);
    std::string csv = "theta\n";
    char buf[64];
    for (double t : d.loops) {
        std::snprintf(buf, sizeof buf, "%.17g\n", t);
        csv += buf;
    }
    write_file(join(rc.out_dir, "loops.csv"), csv);
    std::printf("loops: %zu loop parameters\n", d.loops.size());
}

void cmd_cells(const RunConfig& rc) {
    MapFamily fam = family_from_config(rc.cfg);
    BifDiagram d = scan_from_config(fam, rc);
    std::vector<CherryCell> cells;
    int label = 0;
    for (auto [d0, beta] : rc.cfg.get_cells("cells")) cells.push_back({d0, beta, label++});
    BifDiagram aug = augment_diagram(std::move(d), fam, cells);
    auto sig = germ_signature(aug);
    write_file(join(rc.out_dir, "diagram.json"), diagram_json(aug));
    JsonWriter w;
    w.begin_object();
    w.kv("cells", (long long)cells.size());
    w.key("germ_signature");
    if (sig)
        w.value((long long)*sig);
    else
        w.value("inconsistent");
    w.kv("connections", (long long)aug.connections.size());
    w.end_object();
    write_file(join(rc.out_dir, "germ.json"), w.str());
    if (sig)
        std::printf("cells: germ signature n=%d with %zu connection points\n", *sig,
                    aug.connections.size());
    else
        std::printf("cells: inconsistent germ signature\n");
}

void cmd_dim(const RunConfig& rc) {
    MapFamily fam = family_from_config(rc.cfg);
    BifDiagram d = scan_from_config(fam, rc);
    std::vector<double> ladder = default_residual_ladder(d, (int)rc.cfg.get_long("ladder_n", 12));
    d.boxcounts = box_count_table(d.residual, ladder);
    DimensionFit fit = box_dimension_estimate(d, ladder);
    JsonWriter w;
    w.begin_object();
    w.kv("Q", (long long)d.max_den);
    w.kv("slope", fit.slope);
    w.kv("stderr", fit.stderr_slope);
    w.kv("conf95", fit.conf95);
    w.kv("r2", fit.r2);
    w.key("boxcounts").begin_array();
    for (const auto& e : d.boxcounts) {
        w.begin_object();
        w.kv("eps", e.eps);
        w.kv("N", e.n);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    write_file(join(rc.out_dir, "dim.json"), w.str());
    std::printf("dim: slope %.4f +- %.4f over %d scales\n", fit.slope, fit.conf95, fit.points);
}

void cmd_survivor(const RunConfig& rc) {
    FlatCircleMap base = map_from_config(rc.cfg, "map");
    double theta = rc.cfg.get_double("theta", 0.0);
    MapFamily fam = MapFamily::boyd(base, -1.0, 2.0);
    FlatCircleMap m = fam.at(theta);
    int depth = (int)rc.cfg.get_long("depth", 10);
    IntervalCover cover = survivor_cover(m, depth);

    // Dynamic membership audit, seeded.
    std::mt19937_64 rng(rc.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int in_ok = 0, n_in = 0;
    for (int i = 0; i < 1000 && !cover.intervals.empty(); ++i) {
        const auto& iv = cover.intervals[rng() % cover.intervals.size()];
        double y = iv.lo + unif(rng) * iv.length();
        bool stays = true;
        double z = y;
        for (int k = 0; k < depth; ++k) {
            double u = z - std::floor(z - m.flat_a());
            if (u > m.flat_a() + 1e-12 && u < m.flat_b() - 1e-12) stays = false;
            z = m.eval_lift(z);
        }
        in_ok += stays ? 1 : 0;
        ++n_in;
    }
    auto rot = rotation_number(m);
    std::vector<double> ladder;
    std::vector<BoxCountEntry> counts;
    if (cover.resolution() > 0.0 && cover.measure() > cover.resolution()) {
        ladder = geometric_ladder(cover.measure(), cover.resolution(), 8);
        counts = box_count_table(cover, ladder);
    }
    write_file(join(rc.out_dir, "survivor.json"), cover_json(cover, counts));
    write_file(join(rc.out_dir, "survivor.svg"), cover_svg(cover));
    std::printf("survivor: depth %d, %zu intervals, measure %.6g, rational=%s, audit %d/%d\n",
                depth, cover.intervals.size(), cover.measure(),
                rot.is_rational() ? "yes" : "no", in_ok, n_in);
}

void cmd_flow_check(const RunConfig& rc) {
    FlowFamily flow = flow_from_config(rc.cfg);
    double theta0 = rc.cfg.get_double("theta", 0.0);
    ClassNReport rep = class_N_report(flow, theta0);

    JsonWriter w;
    w.begin_object();
    w.kv("family", flow.name());
    w.key("class_N").begin_object();
    w.kv("equilibria", rep.cond_equilibria);
    w.kv("transversal", rep.cond_transversal);
    w.kv("crossings", rep.cond_crossings);
    w.kv("expansive", rep.cond_expansive);
    w.kv("gamma_hat", rep.gamma_hat);
    w.kv("saddle_trace", rep.saddle_trace);
    w.kv("a", rep.a);
    w.kv("b", rep.b);
    w.kv("c", rep.c);
    w.end_object();

    int n_samples = (int)rc.cfg.get_long("flow.rho_samples", 5);
    int n_returns = (int)rc.cfg.get_long("flow.rho_returns", 400);
    w.key("rho_samples").begin_array();
    double max_mismatch = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        double theta = flow.theta_range().lo +
                       (flow.theta_range().hi - flow.theta_range().lo) * (i + 0.5) / n_samples;
        SectionMapSample s = empirical_poincare(flow, theta, 48);
        double rho_map = rotation_number(*s.fitted).midpoint();
        double rho_flow = flow_rotation_number(flow, theta, n_returns,
                                               s.marks.b + 0.5 * (s.marks.a + 1 - s.marks.b));
        max_mismatch = std::max(max_mismatch, std::fabs(rho_map - rho_flow));
        w.begin_object();
        w.kv("theta", theta);
        w.kv("rho_map", rho_map);
        w.kv("rho_flow", rho_flow);
        w.end_object();
    }
    w.end_array();
    w.kv("max_rho_mismatch", max_mismatch);
    w.end_object();
    write_file(join(rc.out_dir, "flow_check.json"), w.str());
    std::printf("flow-check: class_N %s, gamma_hat %.4f, max |rho_flow - rho_map| = %.3g\n",
                rep.all() ? "pass" : "FAIL", rep.gamma_hat, max_mismatch);
    if (!rep.all()) throw ClassNViolated(rep.detail.empty() ? "see flow_check.json" : rep.detail);
}

void cmd_conjugacy(const RunConfig& rc) {
    MapFamily fam_a = family_from_config(rc.cfg, "map");
    MapFamily fam_b = family_from_config(rc.cfg, "map2");
    int q = (int)rc.cfg.get_long("Q", 16);
    ScanOptions opt;
    opt.jobs = rc.jobs;
    BifDiagram da = scan_diagram(fam_a, theta_range_from(rc.cfg), q, opt);
    BifDiagram db = scan_diagram(fam_b, theta_range_from(rc.cfg), q, opt);
    ParameterConjugacy s = build_parameter_conjugacy(fam_a, da, fam_b, db);
    ConjugacyReport rep = audit_conjugacy(s, (int)rc.cfg.get_long("probes", 101));
    JsonWriter w;
    w.begin_object();
    w.kv("family_a", fam_a.fingerprint());
    w.kv("family_b", fam_b.fingerprint());
    w.kv("max_mismatch", rep.max_mismatch);
    w.kv("max_width", rep.max_width);
    w.key("probes").begin_array();
    for (const auto& p : rep.probes) {
        w.begin_object();
        w.kv("theta", p.theta);
        w.kv("s", p.s_theta);
        w.kv("rho_a", p.rho_a);
        w.kv("rho_b", p.rho_b);
        w.kv("mismatch", p.mismatch);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    write_file(join(rc.out_dir, "conjugacy.json"), w.str());
    std::printf("conjugacy: max mismatch %.3g with max enclosure width %.3g over %zu probes\n",
                rep.max_mismatch, rep.max_width, rep.probes.size());
}

}  // namespace

void run(const RunConfig& rc) {
    std::filesystem::create_directories(rc.out_dir);
    if (rc.command == "scan")
        cmd_scan(rc);
    else if (rc.command == "loops")
        cmd_loops(rc);
    else if (rc.command == "cells")
        cmd_cells(rc);
    else if (rc.command == "dim")
        cmd_dim(rc);
    else if (rc.command == "survivor")
        cmd_survivor(rc);
    else if (rc.command == "flow-check")
        cmd_flow_check(rc);
    else if (rc.command == "conjugacy")
        cmd_conjugacy(rc);
    else
        throw ConfigInvalid("unknown command '" + rc.command + "'");
}

}  // namespace cherry
