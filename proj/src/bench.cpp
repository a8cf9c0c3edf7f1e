#include "seqgd/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace seqgd {

OracleResult grid_oracle(const ObjectiveSpec& obj, const BoxDomain& box, int resolution,
                         EvalCounter& counter) {
    if (resolution < 2) throw UsageError("grid_oracle: resolution must be >= 2");
    const std::size_t p = box.dim();
    std::vector<double> step(p);
    for (std::size_t a = 0; a < p; ++a) step[a] = (box.upper[a] - box.lower[a]) / (resolution - 1);

    std::size_t total = 1;
    for (std::size_t a = 0; a < p; ++a) total *= static_cast<std::size_t>(resolution);

    Vec x(p);
    Vec best_x;
    double best_f = std::numeric_limits<double>::infinity();
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        for (std::size_t a = p; a-- > 0;) {
            const int idx = static_cast<int>(rest % resolution);
            rest /= resolution;
            x[a] = idx == resolution - 1 ? box.upper[a] : box.lower[a] + step[a] * idx;
        }
        const double f = evaluate(obj, x, counter);
        if (f < best_f) {
            best_f = f;
            best_x = x;
        }
    }
    // Polish the grid winner with one local search.
    LocalMinimum polished = descend(obj, best_x, DescentParams{}, counter);
    if (polished.f < best_f) return {polished.x, polished.f};
    return {best_x, best_f};
}

MultistartResult multistart_baseline(const ObjectiveSpec& obj, const DescentParams& params,
                                     int n_starts, std::uint64_t seed, double target_f,
                                     double tol) {
    if (n_starts < 1) throw UsageError("multistart_baseline: n_starts must be >= 1");
    EvalCounter counter;
    MultistartResult result;
    for (int i = 0; i < n_starts; ++i) {
        // Derived per-start seeds keep every start independent of n_starts.
        const Vec x0 = random_init(obj.domain, seed + static_cast<std::uint64_t>(i) * 0x9e3779b9ull);
        LocalMinimum m = descend(obj, x0, params, counter);
        ++result.count;
        if (i == 0 || m.f < result.best.f) result.best = std::move(m);
        if (result.best.f <= target_f + tol) break;
    }
    return result;
}

BenchReport run_benchmark(const BenchmarkCase& bench_case, const SgdConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    BenchReport report;
    report.case_name = bench_case.name;
    report.notes = bench_case.notes;

    report.solve_report = solve(bench_case.objective, cfg, bench_case.start);
    report.local_search_count = report.solve_report.local_search_count;

    EvalCounter oracle_counter;
    const BoxDomain& oracle_box =
        bench_case.oracle_box ? *bench_case.oracle_box : bench_case.objective.domain;
    report.oracle = grid_oracle(bench_case.objective, oracle_box, bench_case.oracle_resolution,
                                oracle_counter);
    if (bench_case.oracle_screen) {
        const OracleResult screen =
            grid_oracle(bench_case.objective, bench_case.oracle_screen->first,
                        bench_case.oracle_screen->second, oracle_counter);
        if (screen.f < report.oracle.f) report.oracle = screen;
    }
    report.gap = report.solve_report.best().f - report.oracle.f;

    const MultistartResult baseline =
        multistart_baseline(bench_case.objective, cfg.descent, bench_case.baseline_starts,
                            cfg.seed, report.oracle.f, 1e-2);
    report.baseline_local_search_count = baseline.count;
    report.baseline_reached_target = baseline.best.f <= report.oracle.f + 1e-2;

    report.all_expectations_met = true;
    for (const ExpectedMinimum& expected : bench_case.expected_minima) {
        ExpectationOutcome outcome;
        outcome.expected = expected;
        const auto& minima = report.solve_report.minima;
        const LocalMinimum* measured = nullptr;
        if (expected.position < 0) {
            measured = &report.solve_report.best();
        } else if (static_cast<std::size_t>(expected.position) < minima.size()) {
            measured = &minima[expected.position];
        }
        if (measured == nullptr) {
            outcome.ok = false;
            outcome.measured_f = std::numeric_limits<double>::quiet_NaN();
        } else {
            outcome.measured_f = measured->f;
            outcome.measured_x = measured->x;
            outcome.ok = std::abs(measured->f - expected.f) <= expected.tolerance;
            if (outcome.ok && expected.x) {
                Vec diff(expected.x->size());
                for (std::size_t a = 0; a < diff.size(); ++a)
                    diff[a] = (*expected.x)[a] - measured->x[a];
                outcome.ok = norm(diff) <= std::max(expected.tolerance * 10.0, 5e-3);
            }
        }
        report.all_expectations_met = report.all_expectations_met && outcome.ok;
        report.expectations.push_back(std::move(outcome));
    }
    if (bench_case.max_local_searches) {
        report.count_ok = report.local_search_count <= *bench_case.max_local_searches;
        report.all_expectations_met = report.all_expectations_met && report.count_ok;
    }

    report.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return report;
}

namespace {

SgdConfig case_config(int resolution, std::uint64_t seed = 0) {
    SgdConfig cfg;
    cfg.levelset.grid_resolution = resolution;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

std::vector<BenchmarkCase> builtin_cases() {
    std::vector<BenchmarkCase> cases;

    {
        BenchmarkCase c{"example1", find_objective("example1"), Vec{-1.0, 3.0}, {}, 400,
                        std::nullopt, std::nullopt, std::nullopt, case_config(200), 100, {}};
        c.expected_minima.push_back({0, Vec{-1.7992, 3.7137}, -5.1300, 1e-3, "paper"});
        // In-box floor from the 400^2 grid oracle + polish.
        c.expected_minima.push_back({-1, std::nullopt, -8.104788041743838, 1e-3, "derived-oracle"});
        c.max_local_searches = 6;
        c.notes.push_back("box [-5,5]^2 as reported; the reference second minimum lies outside it");
        cases.push_back(std::move(c));
    }
    {
        BenchmarkCase c{"example1-wide", find_objective("example1-wide"), Vec{-1.0, 3.0}, {}, 400,
                        std::nullopt, std::nullopt, std::nullopt, case_config(200), 100, {}};
        c.expected_minima.push_back({0, Vec{-1.7992, 3.7137}, -5.1300, 1e-3, "paper"});
        c.expected_minima.push_back({-1, std::nullopt, -26.77831110996109, 1e-3, "derived-oracle"});
        c.max_local_searches = 6;
        c.notes.push_back("box [-15,15]^2: claimed global -17.4022 after 2 searches belongs to a "
                          "narrower search region; this box bottoms out at -26.7783 "
                          "(a local minimum with value -17.402247 does exist at "
                          "(11.152541, 6.371864))");
        cases.push_back(std::move(c));
    }
    {
        BenchmarkCase c{"shubert-plain", find_objective("shubert-plain"), Vec{7.0, 7.0}, {}, 1200,
                        std::nullopt, std::nullopt, std::nullopt, case_config(200), 100, {}};
        c.expected_minima.push_back({-1, std::nullopt, -186.73090665088228, 1e-2, "paper"});
        c.max_local_searches = 5;
        c.notes.push_back("double-sum product without the quadratic term; the reference step "
                          "values -10.9786 at (7.603,7.105) and -186.7309 at a point equal to "
                          "(-1.42513,-0.80032) mod 2*pi evaluate correctly on this variant");
        cases.push_back(std::move(c));
    }
    {
        const ObjectiveSpec obj = find_objective("shubert-penalized");
        BenchmarkCase c{"shubert-penalized", obj, Vec{7.0, 7.0}, {}, 1200,
                        BoxDomain({-10.0, -10.0}, {10.0, 10.0}),
                        std::make_pair(BoxDomain({-100.0, -100.0}, {100.0, 100.0}), 800),
                        std::nullopt, case_config(2000), 50, {}};
        c.expected_minima.push_back(
            {-1, Vec{-1.42513, -0.80032}, -186.73090665088228, 1e-2, "paper"});
        c.max_local_searches = 5;
        c.notes.push_back("grid 2000/axis: the pocket below level -166.996 around the global "
                          "minimum has radius ~0.09 and is invisible to coarser cuts");
        cases.push_back(std::move(c));
    }
    {
        BenchmarkCase c{"quadratic", find_objective("sphere"), std::nullopt, {}, 101,
                        std::nullopt, std::nullopt, std::nullopt, case_config(200, 7), 10, {}};
        c.expected_minima.push_back({-1, Vec{0.0, 0.0}, 0.0, 1e-8, "derived-oracle"});
        c.max_local_searches = 2;
        cases.push_back(std::move(c));
    }
    std::sort(cases.begin(), cases.end(),
              [](const BenchmarkCase& a, const BenchmarkCase& b) { return a.name < b.name; });
    return cases;
}

namespace {

void csv_double(std::string& row, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    if (!row.empty() && row.back() != ',') row += ',';
    row += buf;
}

}  // namespace

void write_case_csv(const BenchReport& report, std::ostream& out) {
    const std::size_t p = report.solve_report.minima.front().x.size();
    out << "k,f_min";
    for (std::size_t a = 0; a < p; ++a) out << ",restart_x" << a + 1;
    out << ",candidate_count\n";
    const auto& minima = report.solve_report.minima;
    const auto& outer = report.solve_report.outer;
    for (std::size_t k = 0; k < minima.size(); ++k) {
        std::string row = std::to_string(k) + ",";
        csv_double(row, minima[k].f);
        const OuterRecord* rec = k < outer.size() ? &outer[k] : nullptr;
        for (std::size_t a = 0; a < p; ++a) {
            row += ',';
            if (rec && rec->restart) csv_double(row, (*rec->restart)[a]);
        }
        row += ',';
        row += rec ? std::to_string(rec->candidate_count) : std::string{};
        out << row << "\n";
    }
}

void write_summary_csv(const std::vector<BenchReport>& reports, std::ostream& out) {
    out << "case,best_f,oracle_f,gap,sgd_searches,baseline_searches,baseline_reached,"
           "expectations_met,wall_ms\n";
    for (const auto& r : reports) {
        std::string row = r.case_name + ",";
        csv_double(row, r.solve_report.best().f);
        csv_double(row, r.oracle.f);
        csv_double(row, r.gap);
        row += ',' + std::to_string(r.local_search_count);
        row += ',' + std::to_string(r.baseline_local_search_count);
        row += ',' + std::string(r.baseline_reached_target ? "yes" : "no");
        row += ',' + std::string(r.all_expectations_met ? "yes" : "no");
        csv_double(row, r.wall_ms);
        out << row << "\n";
    }
}

}  // namespace seqgd
