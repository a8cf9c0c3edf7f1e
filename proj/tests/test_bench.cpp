#include <doctest.h>

#include <cmath>
#include <sstream>

#include "seqgd/bench.hpp"
#include "test_util.hpp"

using namespace seqgd;

TEST_CASE("grid_oracle: constant field and centered paraboloid") {
    EvalCounter c;
    ObjectiveSpec constant{"constant", 2, BoxDomain({-1.0, -1.0}, {1.0, 1.0}),
                           [](const Vec&) { return 2.5; },
                           [](const Vec&) { return Vec{0.0, 0.0}; }};
    auto r = grid_oracle(constant, constant.domain, 11, c);
    CHECK(r.f == 2.5);

    auto sphere = find_objective("sphere");
    r = grid_oracle(sphere, sphere.domain, 101, c);
    CHECK(r.x == Vec{0.0, 0.0});
    CHECK(r.f == 0.0);
}

TEST_CASE("grid_oracle: polish improves on the raw grid point") {
    EvalCounter c;
    auto obj = find_objective("example1");
    auto r = grid_oracle(obj, obj.domain, 50, c);
    // Even at a coarse resolution the polished value reaches the box floor.
    CHECK(near(r.f, -8.104788041743838, 1e-6));
}

TEST_CASE("multistart_baseline: quadratic succeeds immediately, unreachable target caps") {
    auto sphere = find_objective("sphere");
    DescentParams params;
    auto r = multistart_baseline(sphere, params, 10, 0, 0.0, 1e-6);
    CHECK(r.count == 1);
    CHECK(r.best.f <= 1e-6);

    auto capped = multistart_baseline(sphere, params, 7, 0, -1.0, 1e-6);
    CHECK(capped.count == 7);
    CHECK(capped.best.f > -1.0);
}

TEST_CASE("run_benchmark: quadratic smoke case has zero gap") {
    BenchmarkCase smoke{"smoke", find_objective("sphere"), std::nullopt, {}, 101,
                        std::nullopt, std::nullopt, std::nullopt, SgdConfig{}, 5, {}};
    smoke.expected_minima.push_back({-1, std::nullopt, 0.0, 1e-8, "derived-oracle"});
    BenchReport rep = run_benchmark(smoke, smoke.config);
    CHECK(std::abs(rep.gap) <= 1e-8);
    CHECK(rep.all_expectations_met);
    CHECK(rep.local_search_count == 1);
}

TEST_CASE("run_benchmark: expectation mismatch marks failure without throwing") {
    BenchmarkCase wrong{"wrong", find_objective("sphere"), std::nullopt, {}, 101,
                        std::nullopt, std::nullopt, std::nullopt, SgdConfig{}, 5, {}};
    wrong.expected_minima.push_back({-1, std::nullopt, -123.0, 1e-6, "paper"});
    BenchReport rep = run_benchmark(wrong, wrong.config);
    CHECK(!rep.all_expectations_met);
    REQUIRE(rep.expectations.size() == 1);
    CHECK(!rep.expectations[0].ok);
    CHECK(near(rep.expectations[0].measured_f, 0.0, 1e-8));
}

TEST_CASE("builtin_cases: sorted, labeled, oracle dominance holds on the fast ones") {
    auto cases = builtin_cases();
    REQUIRE(cases.size() >= 4);
    for (std::size_t i = 0; i + 1 < cases.size(); ++i) CHECK(cases[i].name < cases[i + 1].name);
    for (const auto& bc : cases) {
        for (const auto& e : bc.expected_minima) {
            const bool labeled = e.provenance == "paper" || e.provenance == "derived-oracle";
            CHECK(labeled);
        }
    }

    for (const auto& bc : cases) {
        if (bc.name != "example1" && bc.name != "quadratic") continue;
        BenchReport rep = run_benchmark(bc, bc.config);
        CHECK(rep.gap >= -1e-6 * (1.0 + std::abs(rep.oracle.f)));
        CHECK(rep.all_expectations_met);
    }
}

TEST_CASE("case CSV: one row per outer iteration, stable schema") {
    BenchmarkCase smoke{"smoke", find_objective("sphere"), std::nullopt, {}, 51,
                        std::nullopt, std::nullopt, std::nullopt, SgdConfig{}, 3, {}};
    BenchReport rep = run_benchmark(smoke, smoke.config);
    std::ostringstream out;
    write_case_csv(rep, out);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "k,f_min,restart_x1,restart_x2,candidate_count");
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == rep.solve_report.minima.size());
}

TEST_CASE("summary CSV: wall time is the last column") {
    BenchmarkCase smoke{"smoke", find_objective("sphere"), std::nullopt, {}, 51,
                        std::nullopt, std::nullopt, std::nullopt, SgdConfig{}, 3, {}};
    BenchReport rep = run_benchmark(smoke, smoke.config);
    std::ostringstream out;
    write_summary_csv({rep}, out);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind(",wall_ms") == header.size() - 8);
    std::string row;
    REQUIRE(std::getline(in, row));
    CHECK(row.rfind("smoke,", 0) == 0);
}

TEST_CASE("bench reports are deterministic apart from wall time") {
    BenchmarkCase smoke{"smoke", find_objective("sphere"), std::nullopt, {}, 51,
                        std::nullopt, std::nullopt, std::nullopt, SgdConfig{}, 3, {}};
    BenchReport a = run_benchmark(smoke, smoke.config);
    BenchReport b = run_benchmark(smoke, smoke.config);
    std::ostringstream ca, cb;
    write_case_csv(a, ca);
    write_case_csv(b, cb);
    CHECK(ca.str() == cb.str());
    CHECK(a.solve_report.best().f == b.solve_report.best().f);
    CHECK(a.oracle.f == b.oracle.f);
    CHECK(a.baseline_local_search_count == b.baseline_local_search_count);
}
