// levyhk: characteristic objects, density inversion, sampling and
// verification experiments for Levy models with unimodal jump profiles.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "levyhk/csv.hpp"
#include "levyhk/harness.hpp"
#include "levyhk/model_json.hpp"

namespace {

using namespace levyhk;
namespace fs = std::filesystem;

struct GridSpec {
    double lo = 0.0, hi = 0.0;
    int n = 0;
};

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    const auto p1 = s.find(':');
    const auto p2 = s.find(':', p1 == std::string::npos ? p1 : p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos)
        throw CLI::ValidationError("--grid", "expected lo:hi:n, got " + s);
    try {
        g.lo = std::stod(s.substr(0, p1));
        g.hi = std::stod(s.substr(p1 + 1, p2 - p1 - 1));
        g.n = std::stoi(s.substr(p2 + 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--grid", "expected lo:hi:n, got " + s);
    }
    if (g.n < 1 || !(g.hi >= g.lo))
        throw CLI::ValidationError("--grid", "need lo <= hi and n >= 1");
    return g;
}

std::vector<double> grid_points(const GridSpec& g) {
    std::vector<double> x;
    for (int i = 0; i < g.n; ++i)
        x.push_back(g.n == 1 ? g.lo : g.lo + (g.hi - g.lo) * i / (g.n - 1));
    return x;
}

CenteringMode parse_center_mode(const std::string& s) {
    if (s == "h-inverse") return CenteringMode::HInverse;
    if (s == "plain-drift") return CenteringMode::PlainDrift;
    if (s == "drift-plus-small-jumps") return CenteringMode::DriftPlusSmallJumps;
    throw CLI::ValidationError("--center-mode", "unknown mode " + s);
}

LevyModel resolve_model(const std::string& spec) {
    for (const auto& n : builtin_model_names())
        if (spec == n) return builtin_model(n);
    if (spec == "truncated1d" || spec == "gauss-trunc1d") return builtin_model(spec);
    return load_model(spec);
}

std::vector<std::string> config_lines(const LevyModel& m, const std::string& extra) {
    return {"levyhk output", "model: " + model_to_json(m).dump(), extra};
}

int threads_from_env(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("LEVYHK_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

nlohmann::json condition_report_json(const ConditionReport& r) {
    return {{"condition_id", r.condition_id},
            {"verdict", verdict_name(r.verdict)},
            {"witness_constant", r.witness_constant},
            {"witness_threshold", r.witness_threshold},
            {"worst_point", r.worst_point},
            {"grid_spec", r.grid_spec},
            {"note", r.note}};
}

nlohmann::json comparability_report_json(const ComparabilityReport& r) {
    return {{"model_id", r.model_id},
            {"bound_id", r.bound_id},
            {"center_mode", centering_name(r.center_mode)},
            {"ratio_min", r.ratio_min},
            {"ratio_max", r.ratio_max},
            {"argmin", {{"t", r.argmin.t}, {"x", r.argmin.x}}},
            {"argmax", {{"t", r.argmax.t}, {"x", r.argmax.x}}},
            {"points", r.points},
            {"holds", r.holds},
            {"mc_pass", r.mc_pass},
            {"mc_points", r.mc_points},
            {"mc_worst_sigma", r.mc_worst_sigma},
            {"note", r.note}};
}

void write_ratios_csv(const ComparabilityReport& r, const LevyModel& m,
                      const std::string& path) {
    std::vector<std::string> cols = {"t"};
    for (int j = 0; j < m.dim; ++j) cols.push_back("x" + std::to_string(j + 1));
    cols.push_back("ratio");
    CsvWriter csv(path, config_lines(m, "bound: " + r.bound_id), cols);
    for (std::size_t i = 0; i < r.grid_points.size(); ++i) {
        std::vector<double> row = {r.grid_points[i].t};
        for (double v : r.grid_points[i].x) row.push_back(v);
        row.push_back(r.ratios[i]);
        csv.row(row);
    }
}

int run(int argc, char** argv) {
    CLI::App app{"heat-kernel estimates toolkit for Levy models"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "cap worker threads (default: LEVYHK_THREADS or 1)");

    std::string model_spec, out_path, grid_spec, center_mode = "h-inverse";
    double t = 1.0, r = 1.0;

    auto* c_char = app.add_subcommand("characteristics", "evaluate h, K, psi_star");
    c_char->add_option("--model", model_spec, "model JSON file or builtin name")->required();
    c_char->add_option("--r", r, "radius to evaluate at")->check(CLI::PositiveNumber);
    std::string table_spec;
    c_char->add_option("--table", table_spec, "emit a CSV table over radii lo:hi:n");
    c_char->add_option("--out", out_path, "output CSV path (with --table)");

    std::string condition = "A1";
    auto* c_check = app.add_subcommand("check", "check a scaling/equivalence condition");
    c_check->add_option("--model", model_spec, "model JSON file or builtin name")->required();
    c_check->add_option("--condition", condition,
                        "one of A1-A4, B1-B4, C2, C4, C5, D2, D4, prof-i/ii/iii")
        ->required();
    double r_lo = 1e-4, r_hi = 1e4;
    c_check->add_option("--r-lo", r_lo, "window lower radius")->check(CLI::PositiveNumber);
    c_check->add_option("--r-hi", r_hi, "window upper radius")->check(CLI::PositiveNumber);
    c_check->add_option("--out", out_path, "directory for report.json");

    auto* c_bound = app.add_subcommand("bound", "tabulate rho_t and phi_t");
    c_bound->add_option("--model", model_spec)->required();
    c_bound->add_option("--t", t, "time")->check(CLI::PositiveNumber);
    c_bound->add_option("--grid", grid_spec, "radial grid lo:hi:n")->required();
    c_bound->add_option("--out", out_path, "output CSV path");

    std::string beta_spec;
    auto* c_dens = app.add_subcommand("density", "transition density by Fourier inversion");
    c_dens->add_option("--model", model_spec)->required();
    c_dens->add_option("--t", t, "time")->check(CLI::PositiveNumber);
    c_dens->add_option("--grid", grid_spec, "x grid lo:hi:n (first coordinate)")->required();
    c_dens->add_option("--beta", beta_spec, "derivative multi-index, comma-separated");
    c_dens->add_option("--center-mode", center_mode,
                       "h-inverse | plain-drift | drift-plus-small-jumps | none");
    c_dens->add_option("--out", out_path, "output CSV path");

    long n_samples = 100000;
    double eps = 0.1;
    std::uint64_t seed = 1;
    int bins = 200;
    auto* c_samp = app.add_subcommand("sample", "Monte Carlo increments and histogram");
    c_samp->add_option("--model", model_spec)->required();
    c_samp->add_option("--t", t, "time")->check(CLI::PositiveNumber);
    c_samp->add_option("--n", n_samples, "number of samples")->check(CLI::PositiveNumber);
    c_samp->add_option("--eps", eps, "small-jump cutoff")->check(CLI::PositiveNumber);
    c_samp->add_option("--seed", seed, "RNG seed");
    c_samp->add_option("--bins", bins, "histogram bins")->check(CLI::PositiveNumber);
    c_samp->add_option("--grid", grid_spec, "histogram range lo:hi:n (n ignored)");
    c_samp->add_option("--out", out_path, "output CSV path");

    std::string experiment;
    auto* c_ver = app.add_subcommand("verify", "run a verification experiment");
    c_ver->add_option("--experiment", experiment,
                      "example1 | example2 | chain | lemmas | two-sided")
        ->required();
    c_ver->add_option("--model", model_spec, "model (chain/lemmas/two-sided)");
    c_ver->add_option("--out", out_path, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    (void)threads_from_env(threads);  // evaluation is single-threaded; the flag caps, never raises

    if (c_char->parsed()) {
        const LevyModel m = resolve_model(model_spec);
        Characteristics ch(m);
        std::cout << "h=" << format_number(ch.h(r)) << " K=" << format_number(ch.K(r))
                  << " psi_star=" << format_number(ch.psi_star(r)) << "\n";
        if (!table_spec.empty()) {
            const GridSpec g = parse_grid(table_spec);
            const std::string path = out_path.empty() ? "characteristics.csv" : out_path;
            CsvWriter csv(path, config_lines(m, "table: " + table_spec),
                          {"r", "h", "K", "psi_star"});
            for (double rr : grid_points(g))
                csv.row({rr, ch.h(rr), ch.K(rr), ch.psi_star(rr)});
            std::cout << "wrote " << path << "\n";
        }
        return 0;
    }

    if (c_check->parsed()) {
        const LevyModel m = resolve_model(model_spec);
        Characteristics ch(m);
        ConditionParams params;
        params.r_lo = r_lo;
        params.r_hi = r_hi;
        const ConditionReport rep = check_condition(ch, condition, params);
        std::string json_path = "report.json";
        if (!out_path.empty()) {
            fs::create_directories(out_path);
            json_path = (fs::path(out_path) / "report.json").string();
        }
        std::ofstream(json_path) << condition_report_json(rep).dump(2) << "\n";
        std::cout << condition << " " << verdict_name(rep.verdict) << " witness "
                  << format_number(rep.witness_constant) << " (" << json_path << ")\n";
        return rep.verdict == Verdict::Fails ? 1 : 0;
    }

    if (c_bound->parsed()) {
        const LevyModel m = resolve_model(model_spec);
        Characteristics ch(m);
        BoundFunctionContext ctx(ch, t, CenteringMode::HInverse,
                                 estimate_scaling(ch, ScalingRegime::LowerAtZero,
                                                  1e-4, 1e2));
        const GridSpec g = parse_grid(grid_spec);
        const std::string path = out_path.empty() ? "bound.csv" : out_path;
        std::vector<std::string> cols;
        for (int j = 0; j < m.dim; ++j) cols.push_back("x" + std::to_string(j + 1));
        cols.push_back("rho");
        cols.push_back("phi");
        CsvWriter csv(path, config_lines(m, "t: " + format_number(t)), cols);
        for (double x : grid_points(g)) {
            std::vector<double> row(m.dim, 0.0);
            row[0] = x;
            row.push_back(ctx.eval_rho(std::abs(x)));
            row.push_back(ctx.eval_phi(std::abs(x)));
            csv.row(row);
        }
        std::cout << "wrote " << path << "\n";
        return 0;
    }

    if (c_dens->parsed()) {
        const LevyModel m = resolve_model(model_spec);
        Characteristics ch(m);
        DensityEngine eng(ch, t);
        Vector center(m.dim, 0.0);
        if (center_mode != "none") {
            BoundFunctionContext ctx(ch, t, parse_center_mode(center_mode));
            center = ctx.drift_center();
        }
        std::vector<int> beta;
        if (!beta_spec.empty()) {
            std::stringstream ss(beta_spec);
            for (std::string tok; std::getline(ss, tok, ',');)
                beta.push_back(std::stoi(tok));
            if (static_cast<int>(beta.size()) != m.dim)
                throw InvalidParameter("--beta needs one entry per dimension");
        }
        const GridSpec g = parse_grid(grid_spec);
        const std::string path = out_path.empty() ? "density.csv" : out_path;
        std::vector<std::string> cols = {"x", "p"};
        if (!beta.empty()) cols.push_back("dp");
        CsvWriter csv(path,
                      config_lines(m, "t: " + format_number(t) +
                                          ", center-mode: " + center_mode),
                      cols);
        for (double x : grid_points(g)) {
            Vector y(m.dim, 0.0);
            y[0] = x + center[0];
            for (int j = 1; j < m.dim; ++j) y[j] = center[j];
            std::vector<double> row = {x, eng.at(y)};
            if (!beta.empty()) row.push_back(eng.derivative_at(y, beta));
            csv.row(row);
        }
        std::cout << "wrote " << path << "\n";
        return 0;
    }

    if (c_samp->parsed()) {
        const LevyModel m = resolve_model(model_spec);
        SamplerSettings st;
        st.jump_cutoff = eps;
        st.n_samples = n_samples;
        st.seed = seed;
        st.histogram_bins = bins;
        const auto samples = sample_increments(m, t, st);
        double lo = -10.0, hi = 10.0;
        if (!grid_spec.empty()) {
            const GridSpec g = parse_grid(grid_spec);
            lo = g.lo;
            hi = g.hi;
        }
        const auto hist = empirical_density(samples, uniform_edges(lo, hi, bins));
        const std::string path = out_path.empty() ? "sample.csv" : out_path;
        CsvWriter csv(path,
                      config_lines(m, "t: " + format_number(t) + ", n: " +
                                          std::to_string(n_samples) + ", eps: " +
                                          format_number(eps) + ", seed: " +
                                          std::to_string(seed)),
                      {"bin_center", "mass", "stderr"});
        for (int i = 0; i < bins; ++i)
            csv.row({0.5 * (hist.bin_edges[i] + hist.bin_edges[i + 1]),
                     hist.bin_mass[i], hist.standard_error[i]});
        std::cout << "wrote " << path << "\n";
        return 0;
    }

    // verify
    fs::path out_dir = out_path.empty() ? fs::path(".") : fs::path(out_path);
    fs::create_directories(out_dir);
    nlohmann::json report;
    bool ok = true;
    if (experiment == "example1" || experiment == "example2") {
        const ComparabilityReport rep = verify_example(experiment);
        report = comparability_report_json(rep);
        const LevyModel m =
            experiment == "example1"
                ? LevyModel::isotropic(UnimodalProfile::stable_mixture(1.5, 0.5, 1),
                                       {}, {}, "example1")
                : LevyModel::isotropic(UnimodalProfile::log_heavy(1.0, 1), {}, {},
                                       "example2");
        write_ratios_csv(rep, m, (out_dir / "ratios.csv").string());
        ok = rep.holds && rep.mc_pass;
    } else if (experiment == "chain") {
        const LevyModel m = resolve_model(model_spec.empty() ? "cauchy1d" : model_spec);
        const ChainReport rep = verify_equivalence_chain(m);
        nlohmann::json links = nlohmann::json::array();
        for (const auto& l : rep.links)
            links.push_back({{"id", l.id},
                             {"verdict", verdict_name(l.verdict)},
                             {"witness", l.witness},
                             {"note", l.note}});
        report = {{"model_id", m.name},
                  {"links", links},
                  {"all_hold", rep.all_hold},
                  {"consistent_failure", rep.consistent_failure},
                  {"window", rep.window}};
        ok = rep.all_hold;
    } else if (experiment == "lemmas") {
        const LevyModel m = resolve_model(model_spec.empty() ? "cauchy1d" : model_spec);
        const LemmaSuiteReport rep = verify_lemma_suite(m);
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : rep.checks)
            checks.push_back({{"id", c.id},
                              {"pass", c.pass},
                              {"measured", c.measured},
                              {"note", c.note}});
        report = {{"model_id", m.name}, {"checks", checks}, {"all_pass", rep.all_pass}};
        ok = rep.all_pass;
    } else if (experiment == "two-sided") {
        const LevyModel m = resolve_model(model_spec.empty() ? "cauchy1d" : model_spec);
        const ComparabilityReport rep = comparability_report(
            m, {}, {}, BoundId::Rho, CenteringMode::HInverse);
        report = comparability_report_json(rep);
        write_ratios_csv(rep, m, (out_dir / "ratios.csv").string());
        ok = rep.holds && rep.mc_pass;
    } else {
        throw CLI::ValidationError("--experiment", "unknown experiment " + experiment);
    }
    const std::string json_path = (out_dir / "report.json").string();
    std::ofstream(json_path) << report.dump(2) << "\n";
    std::cout << "verify " << experiment << (ok ? " passed" : " failed") << " ("
              << json_path << ")\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const levyhk::InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const levyhk::Error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
