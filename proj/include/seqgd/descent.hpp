#ifndef SEQGD_DESCENT_HPP
#define SEQGD_DESCENT_HPP

#include "seqgd/objective.hpp"

namespace seqgd {

enum class LineSearchMode { armijo, exact_sectioned };

struct LineSearchParams {
    double c1 = 1e-4;       // sufficient-decrease constant, in (0,1)
    double shrink = 0.5;    // backtracking factor, in (0,1)
    double lambda0 = 1.0;   // first trial step
    int max_backtracks = 60;
    LineSearchMode mode = LineSearchMode::armijo;
};

struct DescentParams {
    double grad_tol = 1e-6;   // gradient-norm stopping threshold
    double f_tol = 1e-10;     // per-iteration objective-change threshold
    int max_iters = 10000;
    LineSearchParams line_search;
};

enum class DescentStop { gradient_small, f_change_small, max_iters, backtrack_exhausted };

const char* to_string(DescentStop stop);

/**
 * Full iterate history of one local search. `lambda` on record i is the
 * accepted step leaving iterate i (0 on the final record). f is strictly
 * decreasing along the records.
 */
struct DescentTrace {
    struct Step {
        Vec x;
        double f;
        double grad_norm;
        double lambda;
    };
    std::vector<Step> iterates;
    DescentStop termination = DescentStop::max_iters;
};

struct LocalMinimum {
    Vec x;
    double f = 0.0;
    double grad_norm = 0.0;
    DescentTrace trace;
    EvalCounter evals;  // cost of this search alone
};

/// -g
Vec steepest_direction(const Vec& g);

struct ArmijoResult {
    double lambda = 0.0;
    Vec x_new;
    double f_new = 0.0;
    bool exhausted = false;  // no step within max_backtracks satisfied the rule
};

/**
 * Backtracking line search: smallest n >= 0 with
 *   f(clamp(x + lambda0*shrink^n * d)) <= fx + c1*lambda*g'd.
 * Trial points are clamped to the objective box before evaluation.
 * UsageError unless d is a descent direction (g'd < 0).
 */
ArmijoResult armijo_backtrack(const ObjectiveSpec& obj, const Vec& x, const Vec& d, double fx,
                              const Vec& gx, const LineSearchParams& params, EvalCounter& counter);

/// Largest t >= 0 with x + s*d inside the box for all s in [0, t].
double max_step_in_box(const Vec& x, const Vec& d, const BoxDomain& box);

/**
 * Golden-section minimization of phi(s) = f(x + s*d) on [0, lambda_max],
 * to interval width tol. Returns 0 if no probed step improves on phi(0).
 */
double exact_sectioned_search(const ObjectiveSpec& obj, const Vec& x, const Vec& d,
                              double lambda_max, double tol, EvalCounter& counter);

/**
 * Steepest-descent local search from x0 (clamped into the domain first).
 * Stops on small gradient, small objective change, the iteration cap, or
 * line-search failure, whichever fires first.
 */
LocalMinimum descend(const ObjectiveSpec& obj, const Vec& x0, const DescentParams& params,
                     EvalCounter& counter);

}  // namespace seqgd

#endif
