#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "aahull/digit_maps.hpp"
#include "aahull/graph.hpp"
#include "aahull/polyhedron.hpp"

namespace aahull {

/// Ultimately periodic path t1..ti (t(i+1)..tk)^omega, stored as the k
/// transitions and the index i where the loop starts.
struct FryPan {
    std::vector<Transition> path;
    std::size_t loop_start = 0;

    StateId start() const { return path.front().src; }
    std::size_t size() const { return path.size(); }

    DigitWord prefix_label() const {
        DigitWord w;
        for (std::size_t j = 0; j < loop_start; ++j) w.push_back(path[j].label);
        return w;
    }
    DigitWord cycle_label() const {
        DigitWord w;
        for (std::size_t j = loop_start; j < path.size(); ++j) w.push_back(path[j].label);
        return w;
    }

    /// Well formed: consecutive transitions chain and the last one returns to the loop start.
    bool well_formed() const {
        if (path.empty() || loop_start >= path.size()) return false;
        for (std::size_t j = 1; j < path.size(); ++j) {
            if (path[j - 1].dst != path[j].src) return false;
        }
        return path.back().dst == path[loop_start].src;
    }

    /// The k listed source states are pairwise distinct.
    bool is_simple() const {
        std::vector<StateId> states;
        for (const auto& t : path) states.push_back(t.src);
        std::sort(states.begin(), states.end());
        return std::adjacent_find(states.begin(), states.end()) == states.end();
    }

    friend bool operator==(const FryPan&, const FryPan&) = default;
};

/// Decimal vector read along the fry-pan. Only the cycle length must be a multiple of m.
inline QVector lambda_of_frypan(const DigitContext& ctx, const FryPan& f) {
    if (!f.well_formed()) throw std::invalid_argument("lambda_of_frypan: malformed fry-pan");
    const DigitWord cycle = f.cycle_label();
    if (cycle.size() % ctx.m() != 0) {
        throw std::invalid_argument("lambda_of_frypan: cycle length " + std::to_string(cycle.size()) +
                                    " is not a multiple of the dimension");
    }
    return lambda_word(ctx, f.prefix_label()).apply(lambda_omega(ctx, cycle));
}

/// States from which some infinite path starts.
inline std::vector<bool> has_infinite_path(const LabeledGraph& g) {
    const auto scc = scc_decomposition(g);
    std::vector<bool> ok(g.num_states, false);
    std::vector<StateId> stack;
    for (StateId q = 0; q < g.num_states; ++q) {
        if (scc.has_cycle[scc.component_of[q]]) {
            ok[q] = true;
            stack.push_back(q);
        }
    }
    const auto in = g.incoming();
    while (!stack.empty()) {
        StateId q = stack.back();
        stack.pop_back();
        for (std::size_t ti : in[q]) {
            StateId p = g.transitions[ti].src;
            if (!ok[p]) {
                ok[p] = true;
                stack.push_back(p);
            }
        }
    }
    return ok;
}

/// Some simple fry-pan from q, or nothing when every path from q is finite.
inline std::optional<FryPan> find_simple_frypan(const LabeledGraph& g, StateId q) {
    const auto alive = has_infinite_path(g);
    if (!alive[q]) return std::nullopt;
    const auto out = g.outgoing();
    std::vector<std::size_t> position(g.num_states, static_cast<std::size_t>(-1));
    FryPan f;
    StateId v = q;
    while (position[v] == static_cast<std::size_t>(-1)) {
        position[v] = f.path.size();
        const Transition* next = nullptr;
        for (std::size_t ti : out[v]) {
            if (alive[g.transitions[ti].dst]) {
                next = &g.transitions[ti];
                break;
            }
        }
        f.path.push_back(*next);
        v = next->dst;
    }
    f.loop_start = position[v];
    return f;
}

/// For a transition t into the start of a simple fry-pan rest such that
/// t.rest is not simple: the shortest cycle pi on src(t) that t.rest begins
/// with, and the simple fry-pan tail with t.rest = pi.tail.
inline std::pair<FryPan, FryPan> split_nonsimple(const Transition& t, const FryPan& rest) {
    if (!rest.well_formed() || t.dst != rest.start()) throw std::invalid_argument("split_nonsimple: t does not lead into the fry-pan");
    const StateId q = t.src;
    std::size_t hit = rest.size();
    for (std::size_t j = 0; j < rest.size(); ++j) {
        if (rest.path[j].src == q) {
            hit = j;
            break;
        }
    }
    if (hit == rest.size()) throw std::invalid_argument("split_nonsimple: the extended fry-pan is simple");

    FryPan cycle;
    cycle.path.push_back(t);
    cycle.path.insert(cycle.path.end(), rest.path.begin(), rest.path.begin() + static_cast<std::ptrdiff_t>(hit));
    cycle.loop_start = 0;

    FryPan tail;
    if (hit <= rest.loop_start) {
        tail.path.assign(rest.path.begin() + static_cast<std::ptrdiff_t>(hit), rest.path.end());
        tail.loop_start = rest.loop_start - hit;
    } else {
        // q sits on the loop: the tail is that loop, rotated to start at q.
        tail.path.assign(rest.path.begin() + static_cast<std::ptrdiff_t>(hit), rest.path.end());
        tail.path.insert(tail.path.end(), rest.path.begin() + static_cast<std::ptrdiff_t>(rest.loop_start),
                         rest.path.begin() + static_cast<std::ptrdiff_t>(hit));
        tail.loop_start = 0;
    }
    return {std::move(cycle), std::move(tail)};
}

/// Every simple fry-pan starting from q (exhaustive; exponential in general).
inline std::vector<FryPan> simple_frypans(const LabeledGraph& g, StateId q) {
    const auto out = g.outgoing();
    std::vector<FryPan> result;
    std::vector<Transition> path;
    std::vector<std::size_t> position(g.num_states, static_cast<std::size_t>(-1));
    std::function<void(StateId)> walk = [&](StateId v) {
        position[v] = path.size();
        for (std::size_t ti : out[v]) {
            const Transition& t = g.transitions[ti];
            path.push_back(t);
            if (position[t.dst] != static_cast<std::size_t>(-1)) {
                result.push_back({path, position[t.dst]});
            } else {
                walk(t.dst);
            }
            path.pop_back();
        }
        position[v] = static_cast<std::size_t>(-1);
    };
    walk(q);
    return result;
}

struct CycleEvent {
    enum class Kind { Seed, Add, Prune };
    Kind kind;
    StateId state;
    std::optional<Transition> transition;
    QVector vector;
};

struct CycleOptions {
    std::function<void(const CycleEvent&)> trace;
};

struct CycleResult {
    /// Minimal generators per state, sorted; empty for states without infinite paths.
    std::vector<std::vector<QVector>> generators;
    std::vector<std::vector<FryPan>> frypans;  // witness fry-pan per generator
    std::size_t iterations = 0;                // executions of the main loop body

    VPolyhedron hull(std::size_t dim, StateId q) const {
        return VPolyhedron::raw(dim, generators[q]);
    }
};

/// |T|^|Q|, saturated at the largest size_t.
inline std::size_t cycle_iteration_bound(const LabeledGraph& g) {
    Integer bound;
    mpz_ui_pow_ui(bound.get_mpz_t(), g.transitions.size(), g.num_states);
    if (!bound.fits_ulong_p()) return static_cast<std::size_t>(-1);
    return static_cast<std::size_t>(bound.get_ui());
}

/// Minimal finite sets whose convex hulls are the decimal values readable from each state.
inline CycleResult cycle_algorithm(const DigitContext& ctx, const LabeledGraph& g, const CycleOptions& options = {}) {
    if (auto check = check_m_graph(g, ctx.m()); !check.ok) {
        throw std::invalid_argument("cycle_algorithm: graph has a cycle of length " +
                                    std::to_string(check.witness.size()) + ", not a multiple of " +
                                    std::to_string(ctx.m()));
    }
    struct Entry {
        FryPan frypan;
        QVector value;
    };
    std::vector<std::vector<Entry>> theta(g.num_states);
    auto emit = [&](CycleEvent::Kind kind, StateId q, std::optional<Transition> t, const QVector& v) {
        if (options.trace) options.trace({kind, q, t, v});
    };

    for (StateId q = 0; q < g.num_states; ++q) {
        if (auto f = find_simple_frypan(g, q)) {
            QVector v = lambda_of_frypan(ctx, *f);
            emit(CycleEvent::Kind::Seed, q, std::nullopt, v);
            theta[q].push_back({std::move(*f), std::move(v)});
        }
    }

    auto values = [&](StateId q, std::optional<std::size_t> skip = std::nullopt) {
        std::vector<QVector> vs;
        for (std::size_t i = 0; i < theta[q].size(); ++i) {
            if (i != skip) vs.push_back(theta[q][i].value);
        }
        return vs;
    };
    auto prune = [&](StateId q, const Transition& t) {
        for (std::size_t i = 0; i < theta[q].size() && theta[q].size() > 1;) {
            if (detail::in_hull(values(q, i), {}, theta[q][i].value)) {
                emit(CycleEvent::Kind::Prune, q, t, theta[q][i].value);
                theta[q].erase(theta[q].begin() + static_cast<std::ptrdiff_t>(i));
            } else {
                ++i;
            }
        }
    };

    const auto in = g.incoming();
    const std::size_t bound = cycle_iteration_bound(g);
    CycleResult result;
    std::deque<std::size_t> work;
    std::vector<bool> queued(g.transitions.size(), true);
    for (std::size_t i = 0; i < g.transitions.size(); ++i) work.push_back(i);

    while (!work.empty()) {
        const std::size_t ti = work.front();
        work.pop_front();
        queued[ti] = false;
        const Transition t = g.transitions[ti];
        const AffineMap step = lambda_digit(ctx, t.label);
        bool changed = false;
        const std::vector<Entry> snapshot = theta[t.dst];
        for (const auto& next : snapshot) {
            const QVector image = step.apply(next.value);
            if (detail::in_hull(values(t.src), {}, image)) continue;
            if (++result.iterations > bound) {
                throw std::logic_error("cycle_algorithm: main loop exceeded |T|^|Q| iterations");
            }
            FryPan extended;
            extended.path.push_back(t);
            extended.path.insert(extended.path.end(), next.frypan.path.begin(), next.frypan.path.end());
            extended.loop_start = next.frypan.loop_start + 1;
            if (extended.is_simple()) {
                emit(CycleEvent::Kind::Add, t.src, t, image);
                theta[t.src].push_back({std::move(extended), image});
            } else {
                auto [loop, tail] = split_nonsimple(t, next.frypan);
                for (FryPan* f : {&tail, &loop}) {
                    QVector v = lambda_of_frypan(ctx, *f);
                    emit(CycleEvent::Kind::Add, t.src, t, v);
                    theta[t.src].push_back({std::move(*f), std::move(v)});
                }
            }
            prune(t.src, t);
            changed = true;
        }
        if (changed) {
            for (std::size_t pi : in[t.src]) {
                if (!queued[pi]) {
                    queued[pi] = true;
                    work.push_back(pi);
                }
            }
        }
    }

    result.generators.resize(g.num_states);
    result.frypans.resize(g.num_states);
    for (StateId q = 0; q < g.num_states; ++q) {
        std::sort(theta[q].begin(), theta[q].end(), [](const Entry& a, const Entry& b) { return a.value < b.value; });
        for (auto& e : theta[q]) {
            result.generators[q].push_back(e.value);
            result.frypans[q].push_back(std::move(e.frypan));
        }
    }
    return result;
}

}  // namespace aahull
