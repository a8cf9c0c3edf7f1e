// Command-line front end: solve, levelset-dump, bench, grad-check, oracle.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "seqgd/bench.hpp"

namespace {

using namespace seqgd;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitExpectation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Vec parse_vec(const std::string& csv) {
    Vec out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        out.push_back(std::stod(item, &pos));
    }
    if (out.empty()) throw UsageError("expected comma-separated numbers, got '" + csv + "'");
    return out;
}

BoxDomain parse_box(const std::string& csv) {
    Vec flat = parse_vec(csv);
    if (flat.size() % 2 != 0) throw UsageError("--box expects lo1,hi1,lo2,hi2,...");
    Vec lo, hi;
    for (std::size_t i = 0; i < flat.size(); i += 2) {
        lo.push_back(flat[i]);
        hi.push_back(flat[i + 1]);
    }
    return BoxDomain(std::move(lo), std::move(hi));
}

fs::path default_out_dir() {
    if (const char* env = std::getenv("SEQGD_OUT_DIR")) return env;
    return ".";
}

// Shared run options, filled from a config file first and flags second
// (flags win).
struct RunConfig {
    std::string objective;
    std::string start;
    std::string box;
    std::uint64_t seed = 0;
    int grid_resolution = 200;
    std::string filter_mode = "descent";
    int max_outer = 50;
    std::string out_dir = default_out_dir().string();
    std::string format = "csv";
};

void apply_config_file(RunConfig& rc, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.contains("objective")) rc.objective = j["objective"].get<std::string>();
    if (j.contains("start")) rc.start = j["start"].get<std::string>();
    if (j.contains("box")) rc.box = j["box"].get<std::string>();
    if (j.contains("seed")) rc.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("grid_resolution")) rc.grid_resolution = j["grid_resolution"].get<int>();
    if (j.contains("filter_mode")) rc.filter_mode = j["filter_mode"].get<std::string>();
    if (j.contains("max_outer")) rc.max_outer = j["max_outer"].get<int>();
    if (j.contains("out_dir")) rc.out_dir = j["out_dir"].get<std::string>();
    if (j.contains("format")) rc.format = j["format"].get<std::string>();
}

ObjectiveSpec resolve_objective(const RunConfig& rc) {
    if (rc.objective.empty()) throw UsageError("an --objective name is required");
    ObjectiveSpec obj = find_objective(rc.objective);
    if (!rc.box.empty()) obj = with_box(std::move(obj), parse_box(rc.box));
    return obj;
}

SgdConfig resolve_sgd(const RunConfig& rc) {
    SgdConfig cfg;
    cfg.seed = rc.seed;
    cfg.max_outer = rc.max_outer;
    cfg.levelset.grid_resolution = rc.grid_resolution;
    if (rc.filter_mode == "descent")
        cfg.levelset.filter_mode = FilterMode::descent;
    else if (rc.filter_mode == "literal-negative")
        cfg.levelset.filter_mode = FilterMode::literal_negative;
    else
        throw UsageError("--filter-mode must be 'descent' or 'literal-negative'");
    return cfg;
}

void write_trace(const SolveReport& rep, std::ostream& out, const std::string& format) {
    const std::size_t p = rep.minima.front().x.size();
    if (format == "jsonl") {
        for (std::size_t k = 0; k < rep.minima.size(); ++k) {
            for (const auto& s : rep.minima[k].trace.iterates) {
                nlohmann::json j{{"outer_k", k}, {"x", s.x},          {"f", s.f},
                                 {"grad_norm", s.grad_norm},          {"lambda", s.lambda}};
                out << j.dump() << "\n";
            }
        }
        return;
    }
    out << "outer_k,iter";
    for (std::size_t a = 1; a <= p; ++a) out << ",x" << a;
    out << ",f,grad_norm,lambda\n";
    for (std::size_t k = 0; k < rep.minima.size(); ++k) {
        const auto& steps = rep.minima[k].trace.iterates;
        for (std::size_t i = 0; i < steps.size(); ++i) {
            out << k << ',' << i;
            for (double v : steps[i].x) out << ',' << fmt(v);
            out << ',' << fmt(steps[i].f) << ',' << fmt(steps[i].grad_norm) << ','
                << fmt(steps[i].lambda) << "\n";
        }
    }
}

int cmd_solve(const RunConfig& rc) {
    ObjectiveSpec obj = resolve_objective(rc);
    SgdConfig cfg = resolve_sgd(rc);
    std::optional<Vec> x0;
    if (!rc.start.empty()) x0 = parse_vec(rc.start);

    SolveReport rep = solve(obj, cfg, x0);

    fs::create_directories(rc.out_dir);
    const fs::path report_path = fs::path(rc.out_dir) / (obj.name + "_report.json");
    const fs::path trace_path =
        fs::path(rc.out_dir) / (obj.name + (rc.format == "jsonl" ? "_trace.jsonl" : "_trace.csv"));
    std::ofstream report_file(report_path);
    report_file << to_json(rep).dump(2) << "\n";
    std::ofstream trace_file(trace_path);
    write_trace(rep, trace_file, rc.format);

    std::cout << "objective: " << obj.name << "\n";
    for (std::size_t k = 0; k < rep.minima.size(); ++k) {
        std::cout << "  minimum " << k << ": f = " << fmt(rep.minima[k].f) << " at "
                  << format_point(rep.minima[k].x) << "\n";
    }
    std::cout << "termination: " << to_string(rep.termination)
              << ", local searches: " << rep.local_search_count
              << ", f calls: " << rep.eval_counts.f_calls
              << ", grad calls: " << rep.eval_counts.grad_calls << "\n";
    std::cout << "wrote " << report_path.string() << " and " << trace_path.string() << "\n";
    return kExitOk;
}

int cmd_levelset_dump(const RunConfig& rc, double level, const std::string& at_minimum_of,
                      const std::string& out_file) {
    ObjectiveSpec obj = resolve_objective(rc);
    SgdConfig cfg = resolve_sgd(rc);
    EvalCounter counter;

    if (!at_minimum_of.empty()) {
        LocalMinimum m = descend(obj, parse_vec(at_minimum_of), cfg.descent, counter);
        level = m.f;
        std::cerr << "level from local minimum: " << fmt(level) << "\n";
    }

    auto cands = level_candidates(obj, level, obj.domain, cfg.levelset, counter);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_file.empty()) {
        file.open(out_file);
        out = &file;
    }
    const std::size_t p = obj.dimension;
    for (std::size_t a = 1; a <= p; ++a) *out << (a > 1 ? "," : "") << "x" << a;
    *out << ",f";
    for (std::size_t a = 1; a <= p; ++a) *out << ",g" << a;
    *out << ",grad_norm\n";
    for (const auto& c : cands) {
        for (std::size_t a = 0; a < p; ++a) *out << (a ? "," : "") << fmt(c.x[a]);
        *out << ',' << fmt(c.f);
        for (double g : c.grad) *out << ',' << fmt(g);
        *out << ',' << fmt(c.grad_norm) << "\n";
    }
    std::cerr << cands.size() << " candidates at level " << fmt(level) << "\n";
    return kExitOk;
}

int cmd_bench(const std::string& case_filter, const std::string& out_dir) {
    auto cases = builtin_cases();
    if (!case_filter.empty()) {
        auto keep = [&](const BenchmarkCase& c) { return c.name != case_filter; };
        cases.erase(std::remove_if(cases.begin(), cases.end(), keep), cases.end());
        if (cases.empty()) throw UsageError("unknown benchmark case '" + case_filter + "'");
    }

    fs::create_directories(out_dir);
    std::vector<BenchReport> reports;
    bool all_ok = true;
    for (const auto& bc : cases) {
        BenchReport rep = run_benchmark(bc, bc.config);
        std::ofstream case_file(fs::path(out_dir) / (bc.name + "_iterations.csv"));
        write_case_csv(rep, case_file);

        std::cout << "case " << rep.case_name << ": best f = " << fmt(rep.solve_report.best().f)
                  << ", oracle f = " << fmt(rep.oracle.f) << ", gap = " << fmt(rep.gap)
                  << ", searches = " << rep.local_search_count
                  << " (baseline " << rep.baseline_local_search_count
                  << (rep.baseline_reached_target ? "" : ", target not reached") << ")\n";
        for (const auto& e : rep.expectations) {
            std::cout << "  [" << (e.ok ? "ok" : "MISMATCH") << "] expected "
                      << (e.expected.position < 0 ? std::string("final")
                                                  : "minimum " + std::to_string(e.expected.position))
                      << " = " << fmt(e.expected.f) << " +/- " << fmt(e.expected.tolerance)
                      << " [" << e.expected.provenance << "], measured " << fmt(e.measured_f)
                      << "\n";
        }
        if (bc.max_local_searches)
            std::cout << "  [" << (rep.count_ok ? "ok" : "MISMATCH") << "] local searches "
                      << rep.local_search_count << " <= " << *bc.max_local_searches << "\n";
        for (const auto& note : rep.notes) std::cout << "  note: " << note << "\n";
        all_ok = all_ok && rep.all_expectations_met;
        reports.push_back(std::move(rep));
    }

    std::ofstream summary(fs::path(out_dir) / "summary.csv");
    write_summary_csv(reports, summary);
    std::cout << (all_ok ? "all expectations met" : "expectation mismatches present") << "\n";
    return all_ok ? kExitOk : kExitExpectation;
}

int cmd_grad_check(const RunConfig& rc, int samples, double rel_tol, const std::string& points) {
    ObjectiveSpec obj = resolve_objective(rc);
    std::vector<Vec> pts;
    if (!points.empty()) {
        std::stringstream ss(points);
        std::string item;
        while (std::getline(ss, item, ';')) pts.push_back(parse_vec(item));
    } else {
        for (int s = 0; s < samples; ++s)
            pts.push_back(random_init(obj.domain, rc.seed + static_cast<std::uint64_t>(s)));
    }
    auto rep = gradient_check(obj, pts, rel_tol);
    std::cout << "objective " << obj.name << ": " << pts.size()
              << " points, max rel error = " << fmt(rep.max_rel_error) << ", tol = "
              << fmt(rel_tol) << " -> " << (rep.pass ? "pass" : "FAIL") << "\n";
    return rep.pass ? kExitOk : kExitExpectation;
}

int cmd_oracle(const RunConfig& rc, int resolution) {
    ObjectiveSpec obj = resolve_objective(rc);
    EvalCounter counter;
    OracleResult r = grid_oracle(obj, obj.domain, resolution, counter);
    std::cout << "objective " << obj.name << ": minimum f = " << fmt(r.f) << " at "
              << format_point(r.x) << " (resolution " << resolution << ", " << counter.f_calls
              << " evaluations)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sequential descent global optimizer and benchmark harness"};
    app.require_subcommand(1);

    RunConfig rc;
    std::string config_file;

    auto add_common = [&](CLI::App* sub, bool with_solver_flags) {
        sub->add_option("--config", config_file, "JSON config file; flags override its keys");
        sub->add_option("--objective", rc.objective, "built-in objective name");
        sub->add_option("--box", rc.box, "domain override lo1,hi1,lo2,hi2,...");
        sub->add_option("--seed", rc.seed, "random seed");
        if (with_solver_flags) {
            sub->add_option("--start", rc.start, "start point x1,x2,...");
            sub->add_option("--grid-resolution", rc.grid_resolution,
                            "level-set grid points per axis");
            sub->add_option("--filter-mode", rc.filter_mode, "descent|literal-negative");
            sub->add_option("--max-outer", rc.max_outer, "outer iteration cap");
            sub->add_option("--out-dir", rc.out_dir,
                            "output directory (default $SEQGD_OUT_DIR or .)");
            sub->add_option("--format", rc.format, "trace format: csv|jsonl");
        }
    };

    auto* solve_cmd = app.add_subcommand("solve", "run the sequential descent loop");
    add_common(solve_cmd, true);

    auto* dump_cmd = app.add_subcommand("levelset-dump", "dump refined level-set candidates");
    double level = 0.0;
    std::string at_minimum_of, dump_out;
    add_common(dump_cmd, true);
    auto* level_opt = dump_cmd->add_option("--level", level, "level value");
    auto* atmin_opt = dump_cmd->add_option("--at-minimum-of", at_minimum_of,
                                           "descend from this point and use the minimum's level");
    dump_cmd->add_option("--out", dump_out, "output CSV file (default stdout)");

    auto* bench_cmd = app.add_subcommand("bench", "run the benchmark suite");
    std::string case_filter;
    std::string bench_out = default_out_dir().string();
    bench_cmd->add_option("--case", case_filter, "run a single case by name");
    bench_cmd->add_option("--out-dir", bench_out, "output directory");

    auto* grad_cmd = app.add_subcommand("grad-check", "analytic vs finite-difference gradients");
    int samples = 1000;
    double rel_tol = 1e-5;
    std::string points;
    add_common(grad_cmd, false);
    grad_cmd->add_option("--samples", samples, "number of random interior points");
    grad_cmd->add_option("--rel-tol", rel_tol, "pass threshold");
    grad_cmd->add_option("--points", points, "explicit points 'x1,x2;x1,x2;...'");

    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive grid minimum, polished");
    int resolution = 400;
    add_common(oracle_cmd, false);
    oracle_cmd->add_option("--resolution", resolution, "grid points per axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (!config_file.empty()) {
            RunConfig from_file;
            apply_config_file(from_file, config_file);
            // Flags already parsed into rc win over file values.
            RunConfig merged = from_file;
            if (!rc.objective.empty()) merged.objective = rc.objective;
            if (!rc.start.empty()) merged.start = rc.start;
            if (!rc.box.empty()) merged.box = rc.box;
            if (solve_cmd->count("--seed") || grad_cmd->count("--seed") ||
                dump_cmd->count("--seed") || oracle_cmd->count("--seed"))
                merged.seed = rc.seed;
            if (dump_cmd->count("--grid-resolution") || solve_cmd->count("--grid-resolution"))
                merged.grid_resolution = rc.grid_resolution;
            if (dump_cmd->count("--filter-mode") || solve_cmd->count("--filter-mode"))
                merged.filter_mode = rc.filter_mode;
            if (dump_cmd->count("--max-outer") || solve_cmd->count("--max-outer"))
                merged.max_outer = rc.max_outer;
            if (dump_cmd->count("--out-dir") || solve_cmd->count("--out-dir"))
                merged.out_dir = rc.out_dir;
            if (dump_cmd->count("--format") || solve_cmd->count("--format"))
                merged.format = rc.format;
            rc = merged;
        }

        if (solve_cmd->parsed()) return cmd_solve(rc);
        if (dump_cmd->parsed()) {
            if (!*level_opt && !*atmin_opt)
                throw UsageError("levelset-dump needs --level or --at-minimum-of");
            return cmd_levelset_dump(rc, level, at_minimum_of, dump_out);
        }
        if (bench_cmd->parsed()) return cmd_bench(case_filter, bench_out);
        if (grad_cmd->parsed()) return cmd_grad_check(rc, samples, rel_tol, points);
        if (oracle_cmd->parsed()) return cmd_oracle(rc, resolution);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
