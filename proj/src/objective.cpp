#include "seqgd/objective.hpp"

#include <algorithm>
#include <cmath>

namespace seqgd {

double evaluate(const ObjectiveSpec& obj, const Vec& x, EvalCounter& counter) {
    if (x.size() != obj.dimension)
        throw UsageError("evaluate: point dimension " + std::to_string(x.size()) +
                         " does not match objective '" + obj.name + "' dimension " +
                         std::to_string(obj.dimension));
    ++counter.f_calls;
    const double f = obj.evaluate(x);
    if (!std::isfinite(f))
        throw NumericError("evaluate: objective '" + obj.name + "' returned non-finite value at " +
                           format_point(x));
    return f;
}

Vec gradient(const ObjectiveSpec& obj, const Vec& x, const GradientMethod& method,
             EvalCounter& counter) {
    if (x.size() != obj.dimension)
        throw UsageError("gradient: dimension mismatch for objective '" + obj.name + "'");
    if (method.mode == GradientMode::analytic) {
        if (!obj.has_gradient())
            throw UsageError("gradient: objective '" + obj.name +
                             "' has no stored gradient; use central-difference mode");
        ++counter.grad_calls;
        Vec g = obj.gradient(x);
        if (!all_finite(g))
            throw NumericError("gradient: non-finite gradient of '" + obj.name + "' at " +
                               format_point(x));
        return g;
    }
    // Central differences, per-axis step scaled by the coordinate magnitude.
    ++counter.grad_calls;
    Vec g(x.size());
    Vec probe = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double h = method.fd_step_scale * (1.0 + std::abs(x[i]));
        probe[i] = x[i] + h;
        const double fp = evaluate(obj, probe, counter);
        probe[i] = x[i] - h;
        const double fm = evaluate(obj, probe, counter);
        probe[i] = x[i];
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

GradientCheckReport gradient_check(const ObjectiveSpec& obj, const std::vector<Vec>& points,
                                   double rel_tol) {
    if (!obj.has_gradient())
        throw UsageError("gradient_check: objective '" + obj.name + "' has no analytic gradient");
    GradientCheckReport report;
    report.rel_tol = rel_tol;
    EvalCounter scratch;
    GradientMethod analytic;
    GradientMethod fd;
    fd.mode = GradientMode::central_difference;
    for (const Vec& x : points) {
        const Vec ga = gradient(obj, x, analytic, scratch);
        const Vec gf = gradient(obj, x, fd, scratch);
        Vec diff(ga.size());
        for (std::size_t i = 0; i < ga.size(); ++i) diff[i] = ga[i] - gf[i];
        // Guarded relative error; a bare ratio is meaningless near stationary
        // points where FD roundoff dominates a vanishing gradient norm.
        const double rel = norm(diff) / (1.0 + norm(ga));
        report.entries.push_back({x, rel});
        report.max_rel_error = std::max(report.max_rel_error, rel);
    }
    report.pass = report.max_rel_error <= rel_tol;
    return report;
}

namespace {

// f(x) = x2*sin(x1) - x1*cos(x2)
double example1_f(const Vec& x) { return x[1] * std::sin(x[0]) - x[0] * std::cos(x[1]); }

Vec example1_g(const Vec& x) {
    return {x[1] * std::cos(x[0]) - std::cos(x[1]), std::sin(x[0]) + x[0] * std::sin(x[1])};
}

// sum_{i=1..5} i*cos((i+1)t + i) and its derivative
double shubert_sum(double t) {
    double s = 0.0;
    for (int i = 1; i <= 5; ++i) s += i * std::cos((i + 1) * t + i);
    return s;
}

double shubert_dsum(double t) {
    double s = 0.0;
    for (int i = 1; i <= 5; ++i) s -= static_cast<double>(i) * (i + 1) * std::sin((i + 1) * t + i);
    return s;
}

double shubert_plain_f(const Vec& x) { return shubert_sum(x[0]) * shubert_sum(x[1]); }

Vec shubert_plain_g(const Vec& x) {
    return {shubert_dsum(x[0]) * shubert_sum(x[1]), shubert_sum(x[0]) * shubert_dsum(x[1])};
}

constexpr double kPenaltyX = 1.42513;
constexpr double kPenaltyY = 0.80032;

double shubert_penalized_f(const Vec& x) {
    const double dx = x[0] + kPenaltyX;
    const double dy = x[1] + kPenaltyY;
    return shubert_plain_f(x) + 0.5 * (dx * dx + dy * dy);
}

Vec shubert_penalized_g(const Vec& x) {
    Vec g = shubert_plain_g(x);
    g[0] += x[0] + kPenaltyX;
    g[1] += x[1] + kPenaltyY;
    return g;
}

double sphere_f(const Vec& x) { return dot(x, x); }

Vec sphere_g(const Vec& x) {
    Vec g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = 2.0 * x[i];
    return g;
}

ObjectiveSpec make(std::string name, double lo, double hi, std::function<double(const Vec&)> f,
                   std::function<Vec(const Vec&)> g) {
    return ObjectiveSpec{std::move(name), 2, BoxDomain({lo, lo}, {hi, hi}), std::move(f),
                         std::move(g)};
}

}  // namespace

std::vector<ObjectiveSpec> builtin_objectives() {
    std::vector<ObjectiveSpec> objs;
    objs.push_back(make("example1", -5.0, 5.0, example1_f, example1_g));
    objs.push_back(make("example1-wide", -15.0, 15.0, example1_f, example1_g));
    objs.push_back(make("shubert-penalized", -100.0, 100.0, shubert_penalized_f,
                        shubert_penalized_g));
    objs.push_back(make("shubert-plain", -10.0, 10.0, shubert_plain_f, shubert_plain_g));
    objs.push_back(make("sphere", -1.0, 1.0, sphere_f, sphere_g));
    return objs;
}

ObjectiveSpec find_objective(const std::string& name) {
    for (auto& obj : builtin_objectives())
        if (obj.name == name) return obj;
    std::string known;
    for (const auto& obj : builtin_objectives()) {
        if (!known.empty()) known += ", ";
        known += obj.name;
    }
    throw UsageError("unknown objective '" + name + "' (known: " + known + ")");
}

ObjectiveSpec with_box(ObjectiveSpec obj, BoxDomain box) {
    if (box.dim() != obj.dimension)
        throw UsageError("with_box: box dimension does not match objective '" + obj.name + "'");
    obj.domain = std::move(box);
    return obj;
}

}  // namespace seqgd
