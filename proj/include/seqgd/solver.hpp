#ifndef SEQGD_SOLVER_HPP
#define SEQGD_SOLVER_HPP

#include <optional>

#include "seqgd/descent.hpp"
#include "seqgd/levelset.hpp"

#include <json.hpp>

namespace seqgd {

struct SgdConfig {
    DescentParams descent;
    LevelSetConfig levelset;
    int max_outer = 50;
    std::uint64_t seed = 0;
};

enum class SolveStop { all_stationary, empty_candidate_set, max_outer };

const char* to_string(SolveStop stop);

// One outer iteration: the level cut at the k-th local minimum and the
// restart chosen from it (absent when the run terminated there).
struct OuterRecord {
    int k = 0;
    double level = 0.0;
    std::size_t bracket_count = 0;
    std::size_t candidate_count = 0;   // after refine + dedup
    std::size_t filtered_count = 0;    // after filter_candidates
    std::size_t stalled_restarts = 0;  // candidates consumed without progress
    std::optional<Vec> restart;
};

struct SolveReport {
    std::vector<LocalMinimum> minima;  // strictly decreasing f
    std::vector<Vec> restarts;         // restart points actually descended from
    SolveStop termination = SolveStop::max_outer;
    int local_search_count = 0;        // == minima.size()
    EvalCounter eval_counts;
    std::uint64_t seed_used = 0;
    std::vector<OuterRecord> outer;

    const LocalMinimum& best() const { return minima.back(); }
};

/// Uniform sample inside the box from a seeded deterministic generator.
Vec random_init(const BoxDomain& box, std::uint64_t seed);

/**
 * The sequential descent loop: local search, level cut at the new minimum,
 * restart from the steepest surviving candidate, repeat. Terminates when the
 * candidate set is empty or entirely stationary, or at max_outer. A restart
 * whose descent fails to improve by f_tol is discarded and the next-best
 * candidate is tried. x0, when given, replaces the random initial point.
 */
SolveReport solve(const ObjectiveSpec& obj, const SgdConfig& cfg,
                  const std::optional<Vec>& x0 = std::nullopt);

nlohmann::json to_json(const SolveReport& report);

}  // namespace seqgd

#endif
