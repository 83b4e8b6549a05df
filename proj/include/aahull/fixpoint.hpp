#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "aahull/decimal_hull.hpp"
#include "aahull/digit_maps.hpp"
#include "aahull/graph.hpp"
#include "aahull/polyhedron.hpp"

namespace aahull {

/// One closed convex set per state of a graph.
using Valuation = std::vector<VPolyhedron>;

inline Valuation empty_valuation(std::size_t num_states, std::size_t dim) {
    return Valuation(num_states, VPolyhedron::empty(dim));
}

/// Pointwise inclusion.
inline bool leq(const Valuation& a, const Valuation& b) {
    if (a.size() != b.size()) throw DimensionError("valuations over different state sets");
    for (std::size_t q = 0; q < a.size(); ++q) {
        if (!contains(b[q], a[q])) return false;
    }
    return true;
}

/// C with C(dst) replaced by the integer-reading image of C(src).
inline Valuation gamma_transfer(const DigitContext& ctx, const Transition& t, const Valuation& c) {
    Valuation out = c;
    out[t.dst] = affine_image(c[t.src], gamma_digit(ctx, t.label));
    return out;
}

/// C with C(src) replaced by the decimal-reading image of C(dst).
inline Valuation lambda_transfer(const DigitContext& ctx, const Transition& t, const Valuation& c) {
    Valuation out = c;
    out[t.src] = affine_image(c[t.dst], lambda_digit(ctx, t.label));
    return out;
}

/// Decimal hull of each state inside its own strongly connected component;
/// empty for states on no cycle. Depends only on the graph.
class SccDecimalHulls {
public:
    SccDecimalHulls(const DigitContext& ctx, const LabeledGraph& g) : hulls_(g.num_states, VPolyhedron::empty(ctx.m())) {
        const auto scc = scc_decomposition(g);
        for (std::size_t c = 0; c < scc.components.size(); ++c) {
            if (!scc.has_cycle[c]) continue;
            const LabeledGraph sub = induced_subgraph(g, scc.components[c]);
            const CycleResult res = cycle_algorithm(ctx, sub);
            for (StateId local = 0; local < sub.num_states; ++local) {
                hulls_[sub.origin[local]] = res.hull(ctx.m(), local);
            }
        }
    }
    const VPolyhedron& operator[](StateId q) const { return hulls_[q]; }

private:
    std::vector<VPolyhedron> hulls_;
};

/// Exact effect of iterating every cycle through each state:
/// C(q) + R_+(C(q) - decimal hull of q in its component).
inline Valuation widen(const SccDecimalHulls& hulls, const Valuation& c) {
    Valuation out(c.size());
    for (StateId q = 0; q < c.size(); ++q) out[q] = ray_extend(c[q], hulls[q]);
    return out;
}

inline Valuation widen(const DigitContext& ctx, const LabeledGraph& g, const Valuation& c) {
    return widen(SccDecimalHulls(ctx, g), c);
}

/// One plain Kleene step: C joined with every transfer image.
inline Valuation kleene_step(const DigitContext& ctx, const LabeledGraph& g, const Valuation& c) {
    Valuation out = c;
    for (const auto& t : g.transitions) out[t.dst] = join(out[t.dst], affine_image_raw(c[t.src], gamma_digit(ctx, t.label)));
    return out;
}

struct FixpointStep {
    std::size_t iteration;  // 1-based
    const Valuation& widened;
    const Valuation& joined;
};

struct FixpointOptions {
    unsigned threads = 1;
    std::function<void(const FixpointStep&)> trace;
    /// Outer iterations allowed before the run is declared broken.
    /// Zero means the number of states.
    std::size_t max_iterations = 0;
};

struct FixpointResult {
    Valuation value;
    std::size_t iterations = 0;
};

namespace detail {

inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace detail

/// Least valuation above C0 closed under every integer-reading transfer.
///
/// Each round widens C, then joins in the transfer images. Only transitions
/// leaving a state whose value moved since its images were last accounted
/// for are re-evaluated; the others are already below C.
inline FixpointResult fixpoint(const DigitContext& ctx, const LabeledGraph& g, const Valuation& c0,
                               const FixpointOptions& options = {}) {
    if (c0.size() != g.num_states) throw DimensionError("fixpoint: valuation size differs from the state count");
    const SccDecimalHulls hulls(ctx, g);
    const std::size_t limit = options.max_iterations ? options.max_iterations : g.num_states;
    const auto out_edges = g.outgoing();
    std::vector<AffineMap> steps;
    steps.reserve(g.transitions.size());
    for (const auto& t : g.transitions) steps.push_back(gamma_digit(ctx, t.label));

    FixpointResult result;
    Valuation c(c0.size());
    for (StateId q = 0; q < c0.size(); ++q) c[q] = canonicalize(c0[q]);
    std::vector<bool> dirty(g.num_states, true);

    auto images_of = [&](const Valuation& v, const std::vector<bool>& sources) {
        std::vector<std::size_t> picked;
        for (std::size_t ti = 0; ti < g.transitions.size(); ++ti) {
            if (sources[g.transitions[ti].src] && !v[g.transitions[ti].src].is_empty()) picked.push_back(ti);
        }
        std::vector<std::pair<std::size_t, VPolyhedron>> images(picked.size());
        detail::parallel_for(picked.size(), options.threads, [&](std::size_t i) {
            const std::size_t ti = picked[i];
            images[i] = {ti, affine_image_raw(v[g.transitions[ti].src], steps[ti])};
        });
        return images;
    };
    auto stable = [&] {
        const auto images = images_of(c, dirty);
        std::vector<char> ok(images.size(), 1);
        detail::parallel_for(images.size(), options.threads, [&](std::size_t i) {
            ok[i] = contains(c[g.transitions[images[i].first].dst], images[i].second);
        });
        return std::all_of(ok.begin(), ok.end(), [](char b) { return b != 0; });
    };

    while (!stable()) {
        if (++result.iterations > limit) {
            throw std::logic_error("fixpoint: outer loop exceeded " + std::to_string(limit) + " iterations");
        }
        Valuation widened = widen(hulls, c);
        std::vector<bool> sources = dirty;
        for (StateId q = 0; q < g.num_states; ++q) {
            if (!(widened[q] == c[q])) sources[q] = true;
        }
        const auto images = images_of(widened, sources);

        std::vector<std::vector<QVector>> points(g.num_states), rays(g.num_states);
        std::vector<bool> touched(g.num_states, false);
        for (const auto& [ti, img] : images) {
            const StateId d = g.transitions[ti].dst;
            touched[d] = true;
            points[d].insert(points[d].end(), img.points().begin(), img.points().end());
            rays[d].insert(rays[d].end(), img.rays().begin(), img.rays().end());
        }
        Valuation joined = widened;
        detail::parallel_for(g.num_states, options.threads, [&](std::size_t q) {
            if (!touched[q]) return;
            auto pts = widened[q].points();
            auto rs = widened[q].rays();
            pts.insert(pts.end(), points[q].begin(), points[q].end());
            rs.insert(rs.end(), rays[q].begin(), rays[q].end());
            joined[q] = VPolyhedron::from_generators(ctx.m(), std::move(pts), std::move(rs));
        });
        if (options.trace) options.trace({result.iterations, widened, joined});
        for (StateId q = 0; q < g.num_states; ++q) dirty[q] = !(joined[q] == widened[q]);
        c = std::move(joined);
    }
    result.value = std::move(c);
    return result;
}

}  // namespace aahull
