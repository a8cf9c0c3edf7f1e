#ifndef SEQGD_OBJECTIVE_HPP
#define SEQGD_OBJECTIVE_HPP

#include <functional>
#include <optional>

#include "seqgd/types.hpp"

namespace seqgd {

/**
 * Evaluable scalar field over a box domain, with optional analytic gradient.
 *
 * `evaluate` and `gradient` must be pure: no shared state, safe to call
 * concurrently. All evaluation counting happens in caller-supplied
 * EvalCounter objects via the free functions below.
 */
struct ObjectiveSpec {
    std::string name;
    std::size_t dimension;
    BoxDomain domain;
    std::function<double(const Vec&)> evaluate;
    std::function<Vec(const Vec&)> gradient;  // may be empty

    bool has_gradient() const { return static_cast<bool>(gradient); }
};

enum class GradientMode { analytic, central_difference };

struct GradientMethod {
    GradientMode mode = GradientMode::analytic;
    // Per-axis step h_i = fd_step_scale * (1 + |x_i|).
    double fd_step_scale = 1.4901161193847656e-08;  // sqrt(machine epsilon)
};

/// f(x); throws NumericError naming the point if the result is not finite.
double evaluate(const ObjectiveSpec& obj, const Vec& x, EvalCounter& counter);

/// ∇f(x), analytic or central-difference per `method`.
Vec gradient(const ObjectiveSpec& obj, const Vec& x, const GradientMethod& method,
             EvalCounter& counter);

struct GradientCheckReport {
    struct Entry {
        Vec x;
        double rel_error;  // |g_analytic - g_fd| / (1 + |g_analytic|)
    };
    std::vector<Entry> entries;
    double max_rel_error = 0.0;
    double rel_tol = 0.0;
    bool pass = false;
};

/// Analytic-vs-central-difference agreement at the given interior points.
GradientCheckReport gradient_check(const ObjectiveSpec& obj, const std::vector<Vec>& points,
                                   double rel_tol);

/// The built-in benchmark objectives, each with analytic gradient.
std::vector<ObjectiveSpec> builtin_objectives();

/// Lookup by name; UsageError when unknown.
ObjectiveSpec find_objective(const std::string& name);

/// Same objective with a replacement domain (CLI --box override).
ObjectiveSpec with_box(ObjectiveSpec obj, BoxDomain box);

}  // namespace seqgd

#endif
