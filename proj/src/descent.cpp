#include "seqgd/descent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace seqgd {

const char* to_string(DescentStop stop) {
    switch (stop) {
        case DescentStop::gradient_small: return "gradient-small";
        case DescentStop::f_change_small: return "f-change-small";
        case DescentStop::max_iters: return "max-iters";
        case DescentStop::backtrack_exhausted: return "backtrack-exhausted";
    }
    return "unknown";
}

Vec steepest_direction(const Vec& g) {
    Vec d(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) d[i] = -g[i];
    return d;
}

ArmijoResult armijo_backtrack(const ObjectiveSpec& obj, const Vec& x, const Vec& d, double fx,
                              const Vec& gx, const LineSearchParams& params,
                              EvalCounter& counter) {
    const double gtd = dot(gx, d);
    if (!(gtd < 0.0))
        throw UsageError("armijo_backtrack: d is not a descent direction (g'd = " +
                         std::to_string(gtd) + ")");
    double lambda = params.lambda0;
    for (int n = 0; n <= params.max_backtracks; ++n) {
        Vec trial = clamp_to_box(axpy(lambda, d, x), obj.domain);
        const double f_trial = evaluate(obj, trial, counter);
        if (f_trial <= fx + params.c1 * lambda * gtd)
            return {lambda, std::move(trial), f_trial, false};
        lambda *= params.shrink;
    }
    return {0.0, x, fx, true};
}

double max_step_in_box(const Vec& x, const Vec& d, const BoxDomain& box) {
    double t = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (d[i] > 0.0)
            t = std::min(t, (box.upper[i] - x[i]) / d[i]);
        else if (d[i] < 0.0)
            t = std::min(t, (box.lower[i] - x[i]) / d[i]);
    }
    if (!std::isfinite(t)) return 0.0;  // d == 0
    return std::max(t, 0.0);
}

double exact_sectioned_search(const ObjectiveSpec& obj, const Vec& x, const Vec& d,
                              double lambda_max, double tol, EvalCounter& counter) {
    if (lambda_max <= 0.0) return 0.0;
    auto phi = [&](double s) { return evaluate(obj, axpy(s, d, x), counter); };
    const double phi0 = phi(0.0);

    constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5)-1)/2
    double a = 0.0, b = lambda_max;
    double c = b - kInvPhi * (b - a);
    double e = a + kInvPhi * (b - a);
    double fc = phi(c), fe = phi(e);
    while (b - a > tol) {
        if (fc < fe) {
            b = e;
            e = c;
            fe = fc;
            c = b - kInvPhi * (b - a);
            fc = phi(c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + kInvPhi * (b - a);
            fe = phi(e);
        }
    }
    const double s = 0.5 * (a + b);
    if (phi(s) >= phi0) return 0.0;  // never move uphill of the start
    return s;
}

LocalMinimum descend(const ObjectiveSpec& obj, const Vec& x0, const DescentParams& params,
                     EvalCounter& counter) {
    EvalCounter local;
    Vec x = clamp_to_box(x0, obj.domain);
    double fx = evaluate(obj, x, local);
    GradientMethod gm;
    if (!obj.has_gradient()) gm.mode = GradientMode::central_difference;

    DescentTrace trace;
    trace.termination = DescentStop::max_iters;

    for (int iter = 0; iter < params.max_iters; ++iter) {
        const Vec gx = gradient(obj, x, gm, local);
        const double gn = norm(gx);
        if (gn <= params.grad_tol) {
            trace.iterates.push_back({x, fx, gn, 0.0});
            trace.termination = DescentStop::gradient_small;
            break;
        }
        const Vec d = steepest_direction(gx);

        double lambda = 0.0;
        Vec x_next;
        double f_next = fx;
        if (params.line_search.mode == LineSearchMode::armijo) {
            ArmijoResult ls = armijo_backtrack(obj, x, d, fx, gx, params.line_search, local);
            if (ls.exhausted) {
                trace.iterates.push_back({x, fx, gn, 0.0});
                trace.termination = DescentStop::backtrack_exhausted;
                break;
            }
            lambda = ls.lambda;
            x_next = std::move(ls.x_new);
            f_next = ls.f_new;
        } else {
            const double lambda_max = max_step_in_box(x, d, obj.domain);
            const double tol = 1e-9 * std::max(1.0, lambda_max);
            lambda = exact_sectioned_search(obj, x, d, lambda_max, tol, local);
            if (lambda <= 0.0) {
                trace.iterates.push_back({x, fx, gn, 0.0});
                trace.termination = DescentStop::backtrack_exhausted;
                break;
            }
            x_next = clamp_to_box(axpy(lambda, d, x), obj.domain);
            f_next = evaluate(obj, x_next, local);
            if (f_next >= fx) {
                trace.iterates.push_back({x, fx, gn, 0.0});
                trace.termination = DescentStop::backtrack_exhausted;
                break;
            }
        }

        if (!(f_next < fx)) {
            // Accepted in floating point but no strict progress; stop here so
            // the trace stays strictly decreasing.
            trace.iterates.push_back({x, fx, gn, 0.0});
            trace.termination = DescentStop::f_change_small;
            break;
        }

        trace.iterates.push_back({x, fx, gn, lambda});
        const double decrease = fx - f_next;
        x = std::move(x_next);
        fx = f_next;
        if (decrease <= params.f_tol) {
            const Vec g_final = gradient(obj, x, gm, local);
            trace.iterates.push_back({x, fx, norm(g_final), 0.0});
            trace.termination = DescentStop::f_change_small;
            break;
        }
    }

    if (trace.termination == DescentStop::max_iters) {
        const Vec g_final = gradient(obj, x, gm, local);
        trace.iterates.push_back({x, fx, norm(g_final), 0.0});
    }

    LocalMinimum result;
    result.x = trace.iterates.back().x;
    result.f = trace.iterates.back().f;
    result.grad_norm = trace.iterates.back().grad_norm;
    result.trace = std::move(trace);
    result.evals = local;
    counter.f_calls += local.f_calls;
    counter.grad_calls += local.grad_calls;
    return result;
}

}  // namespace seqgd
