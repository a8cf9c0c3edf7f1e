#include "seqgd/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace seqgd {

namespace {

void check_cfg(const LevelSetConfig& cfg) {
    if (cfg.grid_resolution < 2) throw UsageError("LevelSetConfig: grid_resolution must be >= 2");
    if (!(cfg.refine_tol > 0.0)) throw UsageError("LevelSetConfig: refine_tol must be positive");
    if (cfg.max_bisections < 1) throw UsageError("LevelSetConfig: max_bisections must be >= 1");
    if (cfg.level_offset < 0.0) throw UsageError("LevelSetConfig: level_offset must be >= 0");
}

// Row-major walk over the full grid, last axis fastest: lexicographic order
// of the index tuple.
struct GridWalk {
    const BoxDomain& box;
    int n;
    std::vector<double> step;

    GridWalk(const BoxDomain& b, int resolution) : box(b), n(resolution), step(b.dim()) {
        for (std::size_t a = 0; a < b.dim(); ++a)
            step[a] = (b.upper[a] - b.lower[a]) / (n - 1);
    }

    double coord(std::size_t axis, int idx) const {
        return idx == n - 1 ? box.upper[axis] : box.lower[axis] + step[axis] * idx;
    }

    Vec point(const std::vector<int>& idx) const {
        Vec x(idx.size());
        for (std::size_t a = 0; a < idx.size(); ++a) x[a] = coord(a, idx[a]);
        return x;
    }

    bool advance(std::vector<int>& idx) const {
        for (std::size_t a = idx.size(); a-- > 0;) {
            if (++idx[a] < n) return true;
            idx[a] = 0;
        }
        return false;
    }
};

}  // namespace

std::vector<EdgeBracket> bracket_level_crossings(const ObjectiveSpec& obj, double level,
                                                 const BoxDomain& box, const LevelSetConfig& cfg,
                                                 EvalCounter& counter) {
    check_cfg(cfg);
    if (!std::isfinite(level)) throw UsageError("bracket_level_crossings: level must be finite");
    const double target = level - cfg.level_offset;
    const GridWalk grid(box, cfg.grid_resolution);
    const std::size_t p = box.dim();

    std::size_t total = 1;
    for (std::size_t a = 0; a < p; ++a) {
        total *= static_cast<std::size_t>(cfg.grid_resolution);
        if (total > (std::size_t{1} << 26))
            throw UsageError("bracket_level_crossings: grid too large to cache");
    }

    std::vector<double> h(total);
    std::vector<int> idx(p, 0);
    std::size_t flat = 0;
    do {
        h[flat++] = evaluate(obj, grid.point(idx), counter) - target;
    } while (grid.advance(idx));

    // Strides for stepping one grid index along each axis.
    std::vector<std::size_t> stride(p, 1);
    for (std::size_t a = p - 1; a-- > 0;) stride[a] = stride[a + 1] * cfg.grid_resolution;

    std::vector<EdgeBracket> brackets;
    std::fill(idx.begin(), idx.end(), 0);
    flat = 0;
    do {
        for (std::size_t a = 0; a < p; ++a) {
            if (idx[a] + 1 >= cfg.grid_resolution) continue;
            const double ha = h[flat];
            const double hb = h[flat + stride[a]];
            if (ha * hb < 0.0) {
                Vec pa = grid.point(idx);
                Vec pb = pa;
                pb[a] = grid.coord(a, idx[a] + 1);
                brackets.push_back({std::move(pa), std::move(pb)});
            }
        }
        ++flat;
    } while (grid.advance(idx));
    return brackets;
}

LevelCandidate refine_crossing(const ObjectiveSpec& obj, double level, const Vec& a, const Vec& b,
                               const LevelSetConfig& cfg, EvalCounter& counter) {
    check_cfg(cfg);
    const double target = level - cfg.level_offset;
    double ha = evaluate(obj, a, counter) - target;
    double hb = evaluate(obj, b, counter) - target;
    if (!(ha * hb < 0.0))
        throw UsageError("refine_crossing: endpoints do not straddle the level");

    const double tol = cfg.refine_tol * (1.0 + std::abs(level));
    Vec lo = a, hi = b;
    Vec mid(a.size());
    double hm = ha;
    for (int i = 0; i < cfg.max_bisections; ++i) {
        for (std::size_t k = 0; k < mid.size(); ++k) mid[k] = 0.5 * (lo[k] + hi[k]);
        hm = evaluate(obj, mid, counter) - target;
        if (std::abs(hm) <= tol) break;
        if ((hm < 0.0) == (ha < 0.0)) {
            lo = mid;
            ha = hm;
        } else {
            hi = mid;
        }
    }

    LevelCandidate cand;
    cand.x = mid;
    cand.f = hm + target;
    GradientMethod gm;
    if (!obj.has_gradient()) gm.mode = GradientMode::central_difference;
    cand.grad = gradient(obj, mid, gm, counter);
    cand.grad_norm = norm(cand.grad);
    return cand;
}

std::vector<LevelCandidate> refine_and_dedup(const ObjectiveSpec& obj, double level,
                                             const std::vector<EdgeBracket>& brackets,
                                             const BoxDomain& box, const LevelSetConfig& cfg,
                                             EvalCounter& counter) {
    double cell2 = 0.0;
    for (std::size_t a = 0; a < box.dim(); ++a) {
        const double s = (box.upper[a] - box.lower[a]) / (cfg.grid_resolution - 1);
        cell2 += s * s;
    }
    const double merge_radius = std::sqrt(cell2) * 1e-3;

    // Spatial hash so dedup stays linear-ish in the candidate count.
    std::vector<LevelCandidate> kept;
    std::unordered_map<std::size_t, std::vector<std::size_t>> buckets;
    auto key_of = [&](const Vec& x, const std::vector<long long>& shift) {
        std::size_t k = 1469598103934665603ull;
        for (std::size_t a = 0; a < x.size(); ++a) {
            const long long cell =
                static_cast<long long>(std::floor(x[a] / merge_radius)) + shift[a];
            k = (k ^ (static_cast<std::size_t>(cell) * 2654435761ull)) * 1099511628211ull;
        }
        return k;
    };

    std::vector<long long> zero(box.dim(), 0), shift(box.dim());
    for (const auto& bracket : brackets) {
        LevelCandidate cand = refine_crossing(obj, level, bracket.a, bracket.b, cfg, counter);
        bool merged = false;
        // Check the candidate's bucket and all adjacent ones.
        std::vector<long long> offset(box.dim(), -1);
        while (true) {
            for (std::size_t a = 0; a < box.dim(); ++a) shift[a] = offset[a];
            auto it = buckets.find(key_of(cand.x, shift));
            if (it != buckets.end()) {
                for (std::size_t j : it->second) {
                    Vec diff(cand.x.size());
                    for (std::size_t a = 0; a < diff.size(); ++a)
                        diff[a] = cand.x[a] - kept[j].x[a];
                    if (norm(diff) < merge_radius) {
                        if (cand.grad_norm > kept[j].grad_norm) kept[j] = cand;
                        merged = true;
                        break;
                    }
                }
            }
            if (merged) break;
            std::size_t a = 0;
            for (; a < box.dim(); ++a) {
                if (++offset[a] <= 1) break;
                offset[a] = -1;
            }
            if (a == box.dim()) break;
        }
        if (!merged) {
            kept.push_back(std::move(cand));
            buckets[key_of(kept.back().x, zero)].push_back(kept.size() - 1);
        }
    }
    return kept;
}

std::vector<LevelCandidate> level_candidates(const ObjectiveSpec& obj, double level,
                                             const BoxDomain& box, const LevelSetConfig& cfg,
                                             EvalCounter& counter) {
    const auto brackets = bracket_level_crossings(obj, level, box, cfg, counter);
    return refine_and_dedup(obj, level, brackets, box, cfg, counter);
}

std::vector<LevelCandidate> filter_candidates(std::vector<LevelCandidate> cands,
                                              const LevelSetConfig& cfg) {
    auto rejected = [&](const LevelCandidate& c) {
        if (cfg.filter_mode == FilterMode::descent) return !(c.grad_norm > cfg.stationary_tol);
        for (double g : c.grad)
            if (!(g < 0.0)) return true;
        return false;
    };
    cands.erase(std::remove_if(cands.begin(), cands.end(), rejected), cands.end());
    return cands;
}

const LevelCandidate& select_next_start(const std::vector<LevelCandidate>& cands) {
    if (cands.empty()) throw UsageError("select_next_start: empty candidate list");
    const LevelCandidate* best = &cands.front();
    for (const auto& c : cands) {
        if (c.grad_norm > best->grad_norm ||
            (c.grad_norm == best->grad_norm && c.x < best->x)) {
            best = &c;
        }
    }
    return *best;
}

bool all_stationary(const std::vector<LevelCandidate>& cands, const LevelSetConfig& cfg) {
    return std::all_of(cands.begin(), cands.end(),
                       [&](const LevelCandidate& c) { return c.grad_norm <= cfg.stationary_tol; });
}

}  // namespace seqgd
