#include <doctest.h>

#include <cmath>

#include "seqgd/solver.hpp"
#include "test_util.hpp"

using namespace seqgd;

TEST_CASE("random_init: deterministic, in-box, centered") {
    BoxDomain box({-5.0, -5.0}, {5.0, 5.0});
    CHECK(random_init(box, 42) == random_init(box, 42));
    CHECK(random_init(box, 42) != random_init(box, 43));

    double sum0 = 0.0, sum1 = 0.0;
    const int n = 10000;
    for (int s = 0; s < n; ++s) {
        Vec x = random_init(box, static_cast<std::uint64_t>(s));
        CHECK(box.contains(x));
        sum0 += x[0];
        sum1 += x[1];
    }
    CHECK(std::abs(sum0 / n) < 0.2);
    CHECK(std::abs(sum1 / n) < 0.2);
}

TEST_CASE("solve: strictly convex quadratic needs a single local search") {
    auto obj = find_objective("sphere");
    for (std::uint64_t seed : {0ull, 1ull, 9ull, 123ull}) {
        SgdConfig cfg;
        cfg.seed = seed;
        SolveReport rep = solve(obj, cfg);
        CHECK(rep.local_search_count == 1);
        CHECK(near(rep.best().f, 0.0, 1e-8));
        const bool stopped_clean = rep.termination == SolveStop::all_stationary ||
                                   rep.termination == SolveStop::empty_candidate_set;
        CHECK(stopped_clean);
        CHECK(rep.seed_used == seed);
    }
}

TEST_CASE("solve: minima strictly decreasing, restarts on the level plane") {
    for (const char* name : {"example1", "example1-wide", "shubert-plain"}) {
        auto obj = find_objective(name);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            SgdConfig cfg;
            cfg.seed = seed;
            SolveReport rep = solve(obj, cfg);
            REQUIRE(rep.local_search_count >= 1);
            CHECK(rep.local_search_count == static_cast<int>(rep.minima.size()));
            for (std::size_t k = 0; k + 1 < rep.minima.size(); ++k)
                CHECK(rep.minima[k + 1].f < rep.minima[k].f);
            CHECK(rep.best().f == rep.minima.back().f);
            // Each restart lies on the level plane of the minimum before it.
            REQUIRE(rep.restarts.size() + 1 == rep.minima.size());
            EvalCounter c;
            for (std::size_t k = 0; k < rep.restarts.size(); ++k) {
                const double level = rep.minima[k].f;
                const double f_restart = evaluate(obj, rep.restarts[k], c);
                CHECK(f_restart <=
                      level + cfg.levelset.refine_tol * (1.0 + std::abs(level)) + 1e-12);
            }
        }
    }
}

TEST_CASE("solve: deterministic for fixed seed and start") {
    auto obj = find_objective("example1");
    SgdConfig cfg;
    cfg.seed = 3;
    SolveReport a = solve(obj, cfg);
    SolveReport b = solve(obj, cfg);
    REQUIRE(a.minima.size() == b.minima.size());
    for (std::size_t k = 0; k < a.minima.size(); ++k) {
        CHECK(a.minima[k].f == b.minima[k].f);
        CHECK(a.minima[k].x == b.minima[k].x);
    }
    CHECK(a.eval_counts.f_calls == b.eval_counts.f_calls);
    CHECK(a.eval_counts.grad_calls == b.eval_counts.grad_calls);
    CHECK(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("solve: explicit start overrides the seed") {
    auto obj = find_objective("example1");
    SgdConfig cfg;
    cfg.seed = 77;  // ignored when x0 is given
    SolveReport rep = solve(obj, cfg, Vec{-1.0, 3.0});
    CHECK(near(rep.minima.front().f, -5.1300, 1e-3));
}

TEST_CASE("solve: max_outer caps the loop") {
    auto obj = find_objective("shubert-plain");
    SgdConfig cfg;
    cfg.max_outer = 1;
    cfg.levelset.grid_resolution = 100;
    SolveReport rep = solve(obj, cfg, Vec{7.0, 7.0});
    if (rep.termination == SolveStop::max_outer) CHECK(rep.local_search_count == 2);
    CHECK(rep.local_search_count <= 2);
}

TEST_CASE("solve: never returns a best worse than its first minimum") {
    for (const auto& obj : builtin_objectives()) {
        SgdConfig cfg;
        cfg.seed = 5;
        if (obj.name == "shubert-penalized") cfg.levelset.grid_resolution = 100;
        SolveReport rep = solve(obj, cfg);
        CHECK(rep.best().f <= rep.minima.front().f);
    }
}

TEST_CASE("solve report JSON carries full-precision floats") {
    auto obj = find_objective("example1");
    SgdConfig cfg;
    SolveReport rep = solve(obj, cfg, Vec{-1.0, 3.0});
    nlohmann::json j = to_json(rep);
    CHECK(j["local_search_count"].get<int>() == rep.local_search_count);
    CHECK(j["best"]["f"].get<double>() == rep.best().f);
    CHECK(j["minima"].size() == rep.minima.size());
    // Round-trip through text preserves every bit.
    nlohmann::json parsed = nlohmann::json::parse(j.dump());
    CHECK(parsed["best"]["f"].get<double>() == rep.best().f);
    for (std::size_t a = 0; a < rep.best().x.size(); ++a)
        CHECK(parsed["best"]["x"][a].get<double>() == rep.best().x[a]);
}
