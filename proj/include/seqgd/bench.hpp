#ifndef SEQGD_BENCH_HPP
#define SEQGD_BENCH_HPP

#include <iosfwd>

#include "seqgd/solver.hpp"

namespace seqgd {

// Expected value for one entry of the minima sequence. position indexes
// report.minima; -1 means the final best. Provenance is "paper" or
// "derived-oracle" and is printed with every comparison.
struct ExpectedMinimum {
    int position = -1;
    std::optional<Vec> x;
    double f = 0.0;
    double tolerance = 0.0;
    std::string provenance;
};

struct BenchmarkCase {
    std::string name;
    ObjectiveSpec objective;
    std::optional<Vec> start;  // reference start point when one is reported
    std::vector<ExpectedMinimum> expected_minima;
    int oracle_resolution = 400;
    std::optional<BoxDomain> oracle_box;  // oracle sub-box; objective box otherwise
    // Secondary coarse oracle pass (box, resolution), e.g. a wide screen.
    std::optional<std::pair<BoxDomain, int>> oracle_screen;
    std::optional<int> max_local_searches;
    SgdConfig config;
    int baseline_starts = 100;
    std::vector<std::string> notes;  // printed verbatim in the report
};

struct OracleResult {
    Vec x;
    double f = 0.0;
};

/// Exhaustive uniform-grid minimum over `box`, polished by one descend call.
OracleResult grid_oracle(const ObjectiveSpec& obj, const BoxDomain& box, int resolution,
                         EvalCounter& counter);

struct MultistartResult {
    int count = 0;  // local searches consumed
    LocalMinimum best;
};

/// Seeded random restarts of plain descent until best f <= target_f + tol
/// or n_starts is exhausted.
MultistartResult multistart_baseline(const ObjectiveSpec& obj, const DescentParams& params,
                                     int n_starts, std::uint64_t seed, double target_f,
                                     double tol);

struct ExpectationOutcome {
    ExpectedMinimum expected;
    double measured_f = 0.0;
    std::optional<Vec> measured_x;
    bool ok = false;
};

struct BenchReport {
    std::string case_name;
    SolveReport solve_report;
    OracleResult oracle;
    double gap = 0.0;  // best f - oracle f, sign preserved
    int local_search_count = 0;
    int baseline_local_search_count = 0;
    bool baseline_reached_target = false;
    double wall_ms = 0.0;
    std::vector<ExpectationOutcome> expectations;
    bool count_ok = true;  // against max_local_searches when present
    bool all_expectations_met = false;
    std::vector<std::string> notes;
};

/// Executes solve, oracle, baseline and every expectation check for one case.
/// Expectation mismatches mark the report, they do not throw.
BenchReport run_benchmark(const BenchmarkCase& bench_case, const SgdConfig& cfg);

/// The registered benchmark cases, sorted by name.
std::vector<BenchmarkCase> builtin_cases();

/// One row per outer iteration: k, f(min_k), restart coordinates, candidate count.
void write_case_csv(const BenchReport& report, std::ostream& out);

/// Summary table; the wall-time column is last and is the only
/// run-to-run-varying field.
void write_summary_csv(const std::vector<BenchReport>& reports, std::ostream& out);

}  // namespace seqgd

#endif
