#include "flowlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"

#include "flowlab/circle_lab.hpp"
#include "flowlab/io.hpp"
#include "flowlab/synth.hpp"

namespace flowlab::cli {

namespace {

using io::json;

struct UsageError : Error {
    using Error::Error;
};

json header(const char* command, json parameters) {
    return {{"tool", "flowlab"}, {"version", tool_version}, {"command", command}, {"parameters", std::move(parameters)}};
}

json stats_json(const FieldStats& s) { return {{"max_abs", s.max_abs}, {"mean_abs", s.mean_abs}, {"count", s.count}}; }

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot write '" + path + "'");
    f << text;
    if (!f) throw FormatError("write to '" + path + "' failed");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void error_json(std::ostream& err, int code, const char* kind, const std::string& message) {
    err << json{{"error", {{"exit_code", code}, {"kind", kind}, {"message", message}}}}.dump() << "\n";
}

json summary_json(const std::array<std::size_t, 5>& counts) {
    json s = json::object();
    for (int k = 0; k < 5; ++k) s[to_string(static_cast<Regularity>(k))] = counts[static_cast<std::size_t>(k)];
    return s;
}

json profile_json(const RadialProfile& p) {
    return {{"r", p.r}, {"mean", p.mean}, {"min", p.min}, {"max", p.max}};
}

struct AnalyzeArgs {
    std::string field;
    std::string loops;
    std::string out = "-";
    double eps_rho = -1.0;
    RegularityConfig cfg;
    bool strict = false;
};

int analyze(const AnalyzeArgs& a, std::ostream& out) {
    a.cfg.validate();
    const std::string field_text = io::read_text(a.field);
    const auto psi = io::complex_field_from_json(io::parse_json(field_text, a.field));
    std::vector<Loop> loops;
    std::string loops_text;
    if (!a.loops.empty()) {
        loops_text = io::read_text(a.loops);
        loops = io::loops_from_json(io::parse_json(loops_text, a.loops));
    }

    auto flow = a.eps_rho >= 0.0 ? polar_decompose(psi, a.eps_rho) : polar_decompose(psi);
    flow = kinematic_fields(std::move(flow));

    json warnings = json::array();
    auto nodes = detect_nodes(psi);
    json node_list = json::array();
    for (auto& n : nodes) {
        n = classify_regularity(flow.rho, n, a.cfg);
        if (n.regularity == Regularity::Indeterminate) {
            std::ostringstream msg;
            msg << "node at (" << n.position.x << ", " << n.position.y << ") is Indeterminate: " << n.diagnostic;
            warnings.push_back(msg.str());
        }
        node_list.push_back(io::to_json(n));
    }

    json loop_list = json::array();
    long global = 0;
    bool loop_failure = false;
    for (std::size_t k = 0; k < loops.size(); ++k) {
        json entry{{"index", k}, {"loop", io::to_json(loops[k])}};
        try {
            entry["turns"] = loop_turns(psi, loops[k]);
            const int w = loop_winding(psi, loops[k]);
            entry["winding"] = w;
            global += w;
        } catch (const Error& e) {
            loop_failure = true;
            entry["winding"] = nullptr;
            entry["error"] = e.what();
            warnings.push_back("loop " + std::to_string(k) + ": " + e.what());
        }
        try {
            entry["circulation"] = circulation(*flow.v, loops[k]);
        } catch (const Error& e) {
            entry["circulation"] = nullptr;
            warnings.push_back("loop " + std::to_string(k) + " circulation: " + e.what());
        }
        loop_list.push_back(std::move(entry));
    }

    const auto balance = balance_residual(flow);

    json params{{"field", a.field},
                {"loops", a.loops},
                {"eps_rho", a.eps_rho >= 0.0 ? json(a.eps_rho) : json("default")},
                {"delta", a.cfg.delta},
                {"fit_rmin", a.cfg.fit_rmin},
                {"fit_rmax", a.cfg.fit_rmax},
                {"min_samples", a.cfg.min_samples},
                {"nbins", a.cfg.nbins},
                {"max_fit_residual", a.cfg.max_fit_residual},
                {"strict", a.strict}};
    json report = header("analyze", std::move(params));
    report["input_digest"] = {{"field", io::fnv1a64_hex(field_text)},
                              {"loops", a.loops.empty() ? json(nullptr) : json(io::fnv1a64_hex(loops_text))}};
    report["grid"] = io::to_json(psi.grid());
    report["eps_rho"] = flow.eps_rho;
    report["nodes"] = std::move(node_list);
    report["regularity_summary"] = summary_json(regularity_summary(nodes));
    report["total_node_winding"] = total_winding(nodes);
    report["loops"] = std::move(loop_list);
    report["global_loop_winding"] = loops.empty() ? json(nullptr) : json(global);
    report["balance"] = stats_json(balance.stats);
    report["warnings"] = std::move(warnings);
    write_output(a.out, dump(report), out);

    if (a.strict && loop_failure) throw WindingError("loop accumulation failed (--strict)", 0.0);
    return Ok;
}

struct AlphaScanArgs {
    std::vector<double> alphas{0.5, 0.75, 1.0, 1.5, 2.0};
    int n = 257;
    double half_extent = 1.0;
    double rmin = 0.2;
    double rmax = 1.0;
    RegularityConfig cfg;
    std::string out = "-";
};

int alpha_scan(const AlphaScanArgs& a, std::ostream& out) {
    a.cfg.validate();
    const auto grid = Grid2D::centered(a.n, a.half_extent);
    const Annulus ann{{0.0, 0.0}, a.rmin, a.rmax};
    json rows = json::array();
    std::vector<NodeReport> nodes;
    json warnings = json::array();
    for (double alpha : a.alphas) {
        const auto row = alpha_scan_entry(alpha, grid, a.cfg, ann);
        json r{{"alpha", alpha},
               {"circulation", row.circulation},
               {"circulation_radius", row.circulation_radius},
               {"balance", stats_json(row.balance)}};
        if (row.has_node) {
            r["node"] = io::to_json(row.node);
            r["regularity"] = to_string(row.node.regularity);
            r["alpha_fit"] = row.node.alpha_fit;
            nodes.push_back(row.node);
            if (row.node.regularity == Regularity::Indeterminate) {
                std::ostringstream msg;
                msg << "alpha " << alpha << ": Indeterminate (" << row.node.diagnostic << ")";
                warnings.push_back(msg.str());
            }
        } else {
            r["node"] = nullptr;
            r["regularity"] = nullptr;
        }
        rows.push_back(std::move(r));
    }
    json params{{"alphas", a.alphas}, {"n", a.n},          {"half_extent", a.half_extent},
                {"rmin", a.rmin},     {"rmax", a.rmax},    {"delta", a.cfg.delta},
                {"fit_rmin", a.cfg.fit_rmin}, {"fit_rmax", a.cfg.fit_rmax}};
    json report = header("alpha-scan", std::move(params));
    report["grid"] = io::to_json(grid);
    report["rows"] = std::move(rows);
    report["regularity_summary"] = summary_json(regularity_summary(nodes));
    report["warnings"] = std::move(warnings);
    write_output(a.out, dump(report), out);
    return Ok;
}

struct RegularizeArgs {
    std::string model;
    double h = 0.005;
    double half_extent = 2.05;
    std::vector<double> radii{0.5, 1.0, 2.0};
    double rmin = 0.1;
    double rmax = 2.0;
    int nbins = 40;
    std::string out = "-";
    std::string profile_csv;
};

int regularize(const RegularizeArgs& a, std::ostream& out) {
    const std::string model_text = io::read_text(a.model);
    const auto model = io::model_from_json(io::parse_json(model_text, a.model));
    if (!(model.r0 > 0.0)) throw FormatError("regularize needs r0 > 0");
    const auto grid = Grid2D::centered_spacing(a.h, a.half_extent);
    for (double R : a.radii)
        if (!(R > 0.0) || !grid.strictly_contains({R, 0.0})) throw UsageError("circulation radius outside the grid");

    const auto rf = regularize_flow(model, grid);
    const auto omega = curl2d(rf.v_tilde);
    const auto bundle = regularized_fields(model, grid);

    double max_rel = 0.0;
    std::size_t count = 0;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const double r = std::hypot(grid.x(i), grid.y(j));
            if (r < a.rmin || r > a.rmax || !omega.valid(i, j)) continue;
            const double ref = rf.omega_analytic(i, j);
            if (ref == 0.0) continue;
            max_rel = std::max(max_rel, std::abs(omega(i, j) - ref) / std::abs(ref));
            ++count;
        }
    }

    json circ = json::array();
    for (double R : a.radii) {
        const double c = circulation(rf.v_tilde, Loop::circle({0.0, 0.0}, R, 512));
        const double exact = model.alpha * R * R / (model.r0 * model.r0 + R * R);
        circ.push_back({{"R", R},
                        {"circulation", c},
                        {"closed_form", exact},
                        {"relative_error", exact != 0.0 ? std::abs(c - exact) / std::abs(exact) : std::abs(c)},
                        {"integer", std::abs(c - std::round(c)) < 0.05}});
    }

    json warnings = json::array();
    json core = nullptr;
    try {
        core = penalty_balance_at_core(model, model.rho0);
    } catch (const Error& e) {
        warnings.push_back(std::string("penalty balance at core: ") + e.what());
    }

    std::vector<double> speed(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) speed[k] = std::hypot(rf.v_tilde.vx()[k], rf.v_tilde.vy()[k]);
    const ScalarField2D speed_field(grid, std::move(speed));
    const Point2 origin{0.0, 0.0};

    json params{{"model", a.model}, {"spacing", a.h},       {"half_extent", a.half_extent}, {"radii", a.radii},
                {"rmin", a.rmin},   {"rmax", a.rmax}, {"nbins", a.nbins},             {"profile_csv", a.profile_csv}};
    json report = header("regularize", std::move(params));
    report["input_digest"] = {{"model", io::fnv1a64_hex(model_text)}};
    report["model"] = io::to_json(model);
    report["grid"] = io::to_json(grid);
    report["curl_comparison"] = {{"rmin", a.rmin}, {"rmax", a.rmax}, {"max_relative_error", max_rel}, {"count", count}};
    report["circulation"] = std::move(circ);
    report["penalty_balance_at_core"] = core;
    report["profiles"] = {{"rho_tilde", profile_json(radial_profile(bundle.rho, origin, a.nbins))},
                          {"speed", profile_json(radial_profile(speed_field, origin, a.nbins))},
                          {"omega", profile_json(radial_profile(omega, origin, a.nbins))},
                          {"omega_closed_form", profile_json(radial_profile(rf.omega_analytic, origin, a.nbins))}};
    report["warnings"] = std::move(warnings);
    write_output(a.out, dump(report), out);
    if (!a.profile_csv.empty()) write_output(a.profile_csv, emit_radial_profile(omega, origin, a.nbins), out);
    return Ok;
}

struct SmolinArgs {
    std::vector<double> alphas;
    std::vector<double> times;
    int N = 512;
    int nphi = 4096;
    int flow_nphi = 256;
    std::string out = "-";
};

int smolin(const SmolinArgs& a, std::ostream& out) {
    json reports = json::array();
    for (double alpha : a.alphas) {
        const auto state = fourier_project(alpha, a.N, a.nphi);
        const auto drift = density_drift(state, a.times);
        const auto check = flow_stationary_check(alpha, a.flow_nphi);
        json r = io::to_json(drift);
        r["alpha"] = alpha;
        r["retained_mass"] = state.retained_mass();
        r["tail_mass"] = state.tail_mass();
        r["flow_check"] = {{"continuity", check.continuity}, {"bohm", check.bohm}};
        reports.push_back(std::move(r));
    }
    json params{{"alpha", a.alphas}, {"times", a.times}, {"N", a.N}, {"nphi", a.nphi}, {"flow_nphi", a.flow_nphi}};
    json report = header("smolin", std::move(params));
    report["reports"] = std::move(reports);
    write_output(a.out, dump(report), out);
    return Ok;
}

struct SynthArgs {
    std::string spec;
    std::string out = "-";
};

int synth(const SynthArgs& a, std::ostream& out, std::ostream& err) {
    const auto spec = io::synth_spec_from_json(io::parse_json(io::read_text(a.spec), a.spec));
    const auto res = generate(spec);
    write_output(a.out, io::to_json(res.field).dump() + "\n", out);
    if (!res.warnings.empty()) err << json{{"warnings", res.warnings}}.dump() << "\n";
    return Ok;
}

void add_regularity_options(CLI::App* app, RegularityConfig& cfg) {
    app->add_option("--delta", cfg.delta, "half-width of the accepted band around alpha = 1")->capture_default_str();
    app->add_option("--fit-rmin", cfg.fit_rmin, "inner fit radius in grid spacings")->capture_default_str();
    app->add_option("--fit-rmax", cfg.fit_rmax, "outer fit radius in grid spacings")->capture_default_str();
}

}  // namespace

RadialProfile radial_profile(const ScalarField2D& field, Point2 center, int nbins) {
    const auto& g = field.grid();
    if (nbins < 1) throw DomainError("nbins must be positive");
    if (!g.strictly_contains(center)) throw DomainError("profile centre must be interior to the grid");
    const double rmax = std::min({center.x - g.x0, g.x_max() - center.x, center.y - g.y0, g.y_max() - center.y});
    const auto nb = static_cast<std::size_t>(nbins);
    std::vector<double> sum(nb, 0.0), lo(nb, std::numeric_limits<double>::infinity()),
        hi(nb, -std::numeric_limits<double>::infinity());
    std::vector<std::size_t> cnt(nb, 0);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (!field.valid(i, j)) continue;
            const double r = std::hypot(g.x(i) - center.x, g.y(j) - center.y);
            if (r > rmax) continue;
            const auto b = std::min(nb - 1, static_cast<std::size_t>(r / rmax * static_cast<double>(nb)));
            const double v = field(i, j);
            sum[b] += v;
            lo[b] = std::min(lo[b], v);
            hi[b] = std::max(hi[b], v);
            ++cnt[b];
        }
    }
    RadialProfile p;
    const double w = rmax / static_cast<double>(nb);
    for (std::size_t b = 0; b < nb; ++b) {
        if (!cnt[b]) continue;
        p.r.push_back((static_cast<double>(b) + 0.5) * w);
        p.mean.push_back(sum[b] / static_cast<double>(cnt[b]));
        p.min.push_back(lo[b]);
        p.max.push_back(hi[b]);
        p.count.push_back(cnt[b]);
    }
    return p;
}

std::string emit_radial_profile(const ScalarField2D& field, Point2 center, int nbins) {
    const auto p = radial_profile(field, center, nbins);
    std::ostringstream csv;
    csv.precision(17);
    csv << "r,mean,min,max\n";
    for (std::size_t k = 0; k < p.r.size(); ++k)
        csv << p.r[k] << ',' << p.mean[k] << ',' << p.min[k] << ',' << p.max[k] << '\n';
    return csv.str();
}

AlphaScanRow alpha_scan_entry(double alpha, const Grid2D& grid, const RegularityConfig& cfg, const Annulus& annulus) {
    AlphaModel model;
    model.alpha = alpha;
    const auto flow = alpha_fields(model, grid);

    AlphaScanRow row;
    row.alpha = alpha;
    row.circulation_radius = 0.5 * std::min({grid.x_max() - annulus.center.x, annulus.center.x - grid.x0,
                                             grid.y_max() - annulus.center.y, annulus.center.y - grid.y0});
    row.circulation = circulation(*flow.v, Loop::circle(annulus.center, row.circulation_radius, 512));
    row.balance = balance_residual(flow, std::nullopt, annulus).stats;
    if (alpha == 0.0) return row;

    row.has_node = true;
    NodeReport node;
    const auto c = locate(grid, {0.0, 0.0});
    node.cell = {c.i, c.j};
    node.position = {0.0, 0.0};
    node.position_refined = true;
    const long m = std::lround(alpha);
    node.winding = static_cast<int>(m != 0 ? m : (alpha > 0.0 ? 1 : -1));
    row.node = classify_regularity(flow.rho, node, cfg);
    return row;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"flowlab: flow-variable analysis of 2D wave fields"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);

    AnalyzeArgs an;
    auto* c_an = app.add_subcommand("analyze", "nodes, windings, regularity and balance of a complex field file");
    c_an->add_option("--field", an.field, "complex field JSON, - for stdin")->required();
    c_an->add_option("--loops", an.loops, "loop JSON (object or array)");
    c_an->add_option("--out", an.out, "report path, - for stdout")->capture_default_str();
    c_an->add_option("--eps-rho", an.eps_rho, "density floor (default 1e-12 max rho)");
    add_regularity_options(c_an, an.cfg);
    c_an->add_flag("--strict", an.strict, "exit 3 when a loop accumulation fails");

    AlphaScanArgs as;
    auto* c_as = app.add_subcommand("alpha-scan", "regularity table and balance statistics of the alpha family");
    c_as->add_option("--alphas", as.alphas, "comma separated alpha values")->delimiter(',')->capture_default_str();
    c_as->add_option("--n", as.n, "grid points per axis")->capture_default_str();
    c_as->add_option("--half-extent", as.half_extent, "grid covers [-L, L]^2")->capture_default_str();
    c_as->add_option("--rmin", as.rmin, "balance annulus inner radius")->capture_default_str();
    c_as->add_option("--rmax", as.rmax, "balance annulus outer radius")->capture_default_str();
    add_regularity_options(c_as, as.cfg);
    c_as->add_option("--out", as.out, "report path, - for stdout")->capture_default_str();

    RegularizeArgs rg;
    auto* c_rg = app.add_subcommand("regularize", "regularized core: curl, circulation, profiles, core balance");
    c_rg->add_option("--model", rg.model, "model JSON {alpha, r0, rho0, lambda}")->required();
    c_rg->add_option("--spacing", rg.h, "grid spacing")->capture_default_str();
    c_rg->add_option("--half-extent", rg.half_extent, "grid covers at least [-L, L]^2")->capture_default_str();
    c_rg->add_option("--radii", rg.radii, "circulation radii")->delimiter(',')->capture_default_str();
    c_rg->add_option("--rmin", rg.rmin, "curl comparison inner radius")->capture_default_str();
    c_rg->add_option("--rmax", rg.rmax, "curl comparison outer radius")->capture_default_str();
    c_rg->add_option("--nbins", rg.nbins, "radial profile bins")->capture_default_str();
    c_rg->add_option("--out", rg.out, "report path, - for stdout")->capture_default_str();
    c_rg->add_option("--profile-csv", rg.profile_csv, "write the curl radial profile as CSV");

    SmolinArgs sm;
    auto* c_sm = app.add_subcommand("smolin", "density drift of e^{i alpha phi} on the circle");
    c_sm->add_option("--alpha", sm.alphas, "comma separated alpha values")->delimiter(',')->required();
    c_sm->add_option("--times", sm.times, "comma separated times, must include 0")->delimiter(',')->required();
    c_sm->add_option("--N", sm.N, "mode cutoff")->capture_default_str();
    c_sm->add_option("--nphi", sm.nphi, "evaluation points")->capture_default_str();
    c_sm->add_option("--flow-nphi", sm.flow_nphi, "points of the stationary flow check")->capture_default_str();
    c_sm->add_option("--out", sm.out, "report path, - for stdout")->capture_default_str();

    SynthArgs sy;
    auto* c_sy = app.add_subcommand("synth", "synthesize a complex field file from a spec");
    c_sy->add_option("--spec", sy.spec, "SynthSpec JSON, - for stdin")->required();
    c_sy->add_option("--out", sy.out, "field path, - for stdout")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        error_json(err, Usage, "usage", e.what());
        return Usage;
    }

    try {
        if (*c_an) return analyze(an, out);
        if (*c_as) return alpha_scan(as, out);
        if (*c_rg) return regularize(rg, out);
        if (*c_sm) return smolin(sm, out);
        if (*c_sy) return synth(sy, out, err);
    } catch (const FormatError& e) {
        error_json(err, InputFormat, "input_format", e.what());
        return InputFormat;
    } catch (const UsageError& e) {
        error_json(err, Usage, "usage", e.what());
        return Usage;
    } catch (const DomainError& e) {
        error_json(err, Usage, "usage", e.what());
        return Usage;
    } catch (const DimensionError& e) {
        error_json(err, Usage, "usage", e.what());
        return Usage;
    } catch (const Error& e) {
        error_json(err, Numerical, "numerical", e.what());
        return Numerical;
    }
    error_json(err, Usage, "usage", "no subcommand");
    return Usage;
}

}  // namespace flowlab::cli
