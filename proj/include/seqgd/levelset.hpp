#ifndef SEQGD_LEVELSET_HPP
#define SEQGD_LEVELSET_HPP

#include "seqgd/objective.hpp"

namespace seqgd {

enum class FilterMode { descent, literal_negative };

struct LevelSetConfig {
    int grid_resolution = 200;   // grid points per axis, >= 2
    double refine_tol = 1e-10;   // level residual, relative to 1+|level|
    int max_bisections = 200;
    double level_offset = 0.0;   // delta: cut at level - delta
    FilterMode filter_mode = FilterMode::descent;
    double stationary_tol = 1e-4;  // gradient-norm threshold
};

// Refined point on the surface f(x) = level - delta, with cached gradient.
struct LevelCandidate {
    Vec x;
    double f = 0.0;
    Vec grad;
    double grad_norm = 0.0;
};

// Axis-aligned grid edge whose endpoints straddle the level.
struct EdgeBracket {
    Vec a;
    Vec b;
};

/**
 * Evaluates h(x) = f(x) - (level - delta) on a uniform grid of
 * cfg.grid_resolution points per axis over `box` and returns every
 * axis-aligned edge with h(a)*h(b) < 0, in lexicographic grid order.
 * An empty list is a valid result.
 */
std::vector<EdgeBracket> bracket_level_crossings(const ObjectiveSpec& obj, double level,
                                                 const BoxDomain& box, const LevelSetConfig& cfg,
                                                 EvalCounter& counter);

/**
 * Bisection along [a,b] until |h| <= refine_tol*(1+|level|) or
 * max_bisections; gradient is evaluated at the refined point.
 * UsageError if the endpoints do not straddle the level.
 */
LevelCandidate refine_crossing(const ObjectiveSpec& obj, double level, const Vec& a, const Vec& b,
                               const LevelSetConfig& cfg, EvalCounter& counter);

/**
 * Refine every bracket and merge near-duplicates: candidates closer than one
 * grid-cell diagonal x 1e-3 are merged keeping the larger gradient norm.
 * Deterministic order (first appearance in bracket order).
 */
std::vector<LevelCandidate> refine_and_dedup(const ObjectiveSpec& obj, double level,
                                             const std::vector<EdgeBracket>& brackets,
                                             const BoxDomain& box, const LevelSetConfig& cfg,
                                             EvalCounter& counter);

/// bracket_level_crossings + refine_and_dedup in one call.
std::vector<LevelCandidate> level_candidates(const ObjectiveSpec& obj, double level,
                                             const BoxDomain& box, const LevelSetConfig& cfg,
                                             EvalCounter& counter);

/**
 * descent mode: keep candidates with grad_norm > stationary_tol.
 * literal-negative mode: keep candidates whose gradient is strictly
 * negative in every component. Input order preserved.
 */
std::vector<LevelCandidate> filter_candidates(std::vector<LevelCandidate> cands,
                                              const LevelSetConfig& cfg);

/**
 * Candidate of greatest gradient norm; ties broken by lexicographically
 * smallest coordinates. UsageError on empty input.
 */
const LevelCandidate& select_next_start(const std::vector<LevelCandidate>& cands);

/// True iff every candidate has grad_norm <= stationary_tol (true on empty).
bool all_stationary(const std::vector<LevelCandidate>& cands, const LevelSetConfig& cfg);

}  // namespace seqgd

#endif
