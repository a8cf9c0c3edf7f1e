#include "seqgd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace seqgd {

const char* to_string(SolveStop stop) {
    switch (stop) {
        case SolveStop::all_stationary: return "all-stationary";
        case SolveStop::empty_candidate_set: return "empty-candidate-set";
        case SolveStop::max_outer: return "max-outer";
    }
    return "unknown";
}

Vec random_init(const BoxDomain& box, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Vec x(box.dim());
    for (std::size_t i = 0; i < x.size(); ++i) {
        // Top 53 bits -> [0,1); avoids distribution differences across
        // standard libraries.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        x[i] = box.lower[i] + u * (box.upper[i] - box.lower[i]);
    }
    return x;
}

SolveReport solve(const ObjectiveSpec& obj, const SgdConfig& cfg, const std::optional<Vec>& x0) {
    if (cfg.max_outer < 1) throw UsageError("solve: max_outer must be >= 1");

    SolveReport report;
    report.seed_used = cfg.seed;

    const Vec start = x0 ? *x0 : random_init(obj.domain, cfg.seed);

    auto run_descent = [&](const Vec& from, int outer_k) {
        try {
            return descend(obj, from, cfg.descent, report.eval_counts);
        } catch (const NumericError& err) {
            throw NumericError("outer iteration " + std::to_string(outer_k) + ": " + err.what());
        }
    };

    report.minima.push_back(run_descent(start, 0));

    for (int k = 0; k < cfg.max_outer; ++k) {
        const double level = report.minima.back().f;
        OuterRecord record;
        record.k = k;
        record.level = level;

        std::vector<LevelCandidate> cands;
        try {
            const auto brackets =
                bracket_level_crossings(obj, level, obj.domain, cfg.levelset, report.eval_counts);
            record.bracket_count = brackets.size();
            cands = refine_and_dedup(obj, level, brackets, obj.domain, cfg.levelset,
                                     report.eval_counts);
        } catch (const NumericError& err) {
            throw NumericError("outer iteration " + std::to_string(k) + ": " + err.what());
        }
        record.candidate_count = cands.size();

        if (cands.empty()) {
            report.termination = SolveStop::empty_candidate_set;
            report.outer.push_back(std::move(record));
            break;
        }
        if (all_stationary(cands, cfg.levelset)) {
            report.termination = SolveStop::all_stationary;
            report.outer.push_back(std::move(record));
            break;
        }

        std::vector<LevelCandidate> live = filter_candidates(std::move(cands), cfg.levelset);
        record.filtered_count = live.size();
        if (live.empty()) {
            report.termination = SolveStop::empty_candidate_set;
            report.outer.push_back(std::move(record));
            break;
        }

        // Greatest descent slope first; lexicographic tie-break keeps the
        // order independent of candidate discovery order.
        std::sort(live.begin(), live.end(), [](const LevelCandidate& a, const LevelCandidate& b) {
            if (a.grad_norm != b.grad_norm) return a.grad_norm > b.grad_norm;
            return a.x < b.x;
        });

        // A restart that stalls at the current level consumes its candidate;
        // try the next-best until one makes progress.
        bool advanced = false;
        for (const LevelCandidate& candidate : live) {
            LocalMinimum next = run_descent(candidate.x, k + 1);
            if (level - next.f > cfg.descent.f_tol) {
                report.restarts.push_back(candidate.x);
                record.restart = candidate.x;
                report.minima.push_back(std::move(next));
                advanced = true;
                break;
            }
            ++record.stalled_restarts;
        }
        report.outer.push_back(std::move(record));
        if (!advanced) {
            report.termination = SolveStop::empty_candidate_set;
            break;
        }
        report.termination = SolveStop::max_outer;  // overwritten unless the loop caps out
    }

    report.local_search_count = static_cast<int>(report.minima.size());
    return report;
}

namespace {

nlohmann::json vec_json(const Vec& v) { return nlohmann::json(v); }

nlohmann::json minimum_json(const LocalMinimum& m) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : m.trace.iterates) {
        steps.push_back({{"x", vec_json(s.x)},
                         {"f", s.f},
                         {"grad_norm", s.grad_norm},
                         {"lambda", s.lambda}});
    }
    return {{"x", vec_json(m.x)},
            {"f", m.f},
            {"grad_norm", m.grad_norm},
            {"termination", to_string(m.trace.termination)},
            {"iterations", m.trace.iterates.size()},
            {"f_calls", m.evals.f_calls},
            {"grad_calls", m.evals.grad_calls},
            {"trace", std::move(steps)}};
}

}  // namespace

nlohmann::json to_json(const SolveReport& report) {
    nlohmann::json minima = nlohmann::json::array();
    for (const auto& m : report.minima) minima.push_back(minimum_json(m));
    nlohmann::json restarts = nlohmann::json::array();
    for (const auto& r : report.restarts) restarts.push_back(vec_json(r));
    nlohmann::json outer = nlohmann::json::array();
    for (const auto& rec : report.outer) {
        nlohmann::json j = {{"k", rec.k},
                            {"level", rec.level},
                            {"bracket_count", rec.bracket_count},
                            {"candidate_count", rec.candidate_count},
                            {"filtered_count", rec.filtered_count},
                            {"stalled_restarts", rec.stalled_restarts}};
        if (rec.restart) j["restart"] = vec_json(*rec.restart);
        outer.push_back(std::move(j));
    }
    return {{"minima", std::move(minima)},
            {"restarts", std::move(restarts)},
            {"best", minimum_json(report.best())},
            {"termination", to_string(report.termination)},
            {"local_search_count", report.local_search_count},
            {"eval_counts",
             {{"f_calls", report.eval_counts.f_calls},
              {"grad_calls", report.eval_counts.grad_calls}}},
            {"seed_used", report.seed_used},
            {"outer_iterations", std::move(outer)}};
}

}  // namespace seqgd
