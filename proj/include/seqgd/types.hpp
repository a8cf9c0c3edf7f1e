#ifndef SEQGD_TYPES_HPP
#define SEQGD_TYPES_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqgd {

// Point in p-dimensional real space, problem units.
using Vec = std::vector<double>;

// Caller misuse: wrong dimensions, empty candidate lists, unknown names.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Non-finite objective values and similar numeric breakdowns.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluation accounting is always caller-supplied, never global.
struct EvalCounter {
    std::uint64_t f_calls = 0;
    std::uint64_t grad_calls = 0;
};

inline bool all_finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

inline double dot(const Vec& a, const Vec& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

// y + s*x
inline Vec axpy(double s, const Vec& x, const Vec& y) {
    Vec out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + s * x[i];
    return out;
}

inline std::string format_point(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

// Axis-aligned search box. lower[i] < upper[i] on every axis.
struct BoxDomain {
    Vec lower;
    Vec upper;

    BoxDomain(Vec lo, Vec hi) : lower(std::move(lo)), upper(std::move(hi)) {
        if (lower.size() != upper.size() || lower.empty())
            throw UsageError("BoxDomain: bounds must be non-empty and of equal length");
        for (std::size_t i = 0; i < lower.size(); ++i) {
            if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || !(lower[i] < upper[i]))
                throw UsageError("BoxDomain: require finite lower[i] < upper[i]");
        }
    }

    std::size_t dim() const { return lower.size(); }

    bool contains(const Vec& x) const {
        if (x.size() != dim()) return false;
        for (std::size_t i = 0; i < dim(); ++i)
            if (x[i] < lower[i] || x[i] > upper[i]) return false;
        return true;
    }
};

inline Vec clamp_to_box(const Vec& x, const BoxDomain& box) {
    if (x.size() != box.dim())
        throw UsageError("clamp_to_box: dimension mismatch");
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = std::min(std::max(x[i], box.lower[i]), box.upper[i]);
    return out;
}

}  // namespace seqgd

#endif
