#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <queue>
#include <string>
#include <vector>

namespace aahull {

using StateId = std::size_t;

/// Label of the separator between sign, integer and decimal parts.
inline constexpr int kStar = -1;

struct Transition {
    StateId src = 0;
    int label = 0;  // a digit, or kStar
    StateId dst = 0;

    bool is_star() const { return label == kStar; }
    friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Digit-labelled graph (no separators). `origin` maps local state ids back
/// to the states of the structure the graph was cut from.
struct LabeledGraph {
    std::size_t num_states = 0;
    std::vector<Transition> transitions;
    std::vector<StateId> origin;

    std::vector<std::vector<std::size_t>> outgoing() const {
        std::vector<std::vector<std::size_t>> out(num_states);
        for (std::size_t i = 0; i < transitions.size(); ++i) out[transitions[i].src].push_back(i);
        return out;
    }
    std::vector<std::vector<std::size_t>> incoming() const {
        std::vector<std::vector<std::size_t>> in(num_states);
        for (std::size_t i = 0; i < transitions.size(); ++i) in[transitions[i].dst].push_back(i);
        return in;
    }
};

struct SccDecomposition {
    std::vector<std::size_t> component_of;
    std::vector<std::vector<StateId>> components;  // sorted members, reverse topological order
    std::vector<bool> has_cycle;                   // contains at least one transition
};

/// Tarjan's algorithm, iterative. Works for any edge list over num_states.
inline SccDecomposition scc_decomposition(std::size_t num_states, const std::vector<Transition>& edges) {
    std::vector<std::vector<StateId>> succ(num_states);
    for (const auto& t : edges) succ[t.src].push_back(t.dst);

    constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(num_states, kUnvisited), low(num_states, 0);
    std::vector<bool> on_stack(num_states, false);
    std::vector<StateId> stack;
    SccDecomposition out;
    out.component_of.assign(num_states, 0);
    std::size_t counter = 0;

    struct Frame {
        StateId v;
        std::size_t next;
    };
    for (StateId root = 0; root < num_states; ++root) {
        if (index[root] != kUnvisited) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.next < succ[f.v].size()) {
                StateId w = succ[f.v][f.next++];
                if (index[w] == kUnvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            StateId v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                std::vector<StateId> comp;
                StateId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    out.component_of[w] = out.components.size();
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                out.components.push_back(std::move(comp));
            }
        }
    }
    out.has_cycle.assign(out.components.size(), false);
    for (const auto& t : edges) {
        if (out.component_of[t.src] == out.component_of[t.dst]) out.has_cycle[out.component_of[t.src]] = true;
    }
    return out;
}

inline SccDecomposition scc_decomposition(const LabeledGraph& g) { return scc_decomposition(g.num_states, g.transitions); }

/// Induced subgraph on the states of `members` (sorted), with local ids.
inline LabeledGraph induced_subgraph(const LabeledGraph& g, const std::vector<StateId>& members) {
    LabeledGraph sub;
    sub.num_states = members.size();
    sub.origin = members;
    std::vector<std::size_t> local(g.num_states, static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = i;
    for (const auto& t : g.transitions) {
        if (local[t.src] != static_cast<std::size_t>(-1) && local[t.dst] != static_cast<std::size_t>(-1)) {
            sub.transitions.push_back({local[t.src], t.label, local[t.dst]});
        }
    }
    return sub;
}

/// G_q: the graph restricted to the strongly connected component of q.
/// `origin` of the result indexes into g's states.
inline LabeledGraph subgraph_of_scc(const LabeledGraph& g, StateId q) {
    const auto scc = scc_decomposition(g);
    return induced_subgraph(g, scc.components[scc.component_of[q]]);
}

struct MGraphCheck {
    bool ok = true;
    std::vector<Transition> witness;  // closed walk whose length m does not divide
};

/// Every cycle length divisible by m iff each SCC admits a level map into Z_m
/// increasing by one along every internal transition.
inline MGraphCheck check_m_graph(const LabeledGraph& g, std::size_t m) {
    MGraphCheck result;
    if (m <= 1) return result;
    const auto scc = scc_decomposition(g);
    const auto out = g.outgoing();
    const auto in = g.incoming();
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    for (std::size_t c = 0; c < scc.components.size(); ++c) {
        if (!scc.has_cycle[c]) continue;
        const StateId root = scc.components[c].front();
        // Forward BFS tree inside the component.
        std::vector<std::size_t> depth(g.num_states, kNone), via(g.num_states, kNone);
        std::queue<StateId> queue;
        depth[root] = 0;
        queue.push(root);
        while (!queue.empty()) {
            StateId v = queue.front();
            queue.pop();
            for (std::size_t ti : out[v]) {
                const auto& t = g.transitions[ti];
                if (scc.component_of[t.dst] != c || depth[t.dst] != kNone) continue;
                depth[t.dst] = depth[v] + 1;
                via[t.dst] = ti;
                queue.push(t.dst);
            }
        }
        for (std::size_t ti = 0; ti < g.transitions.size(); ++ti) {
            const auto& t = g.transitions[ti];
            if (scc.component_of[t.src] != c || scc.component_of[t.dst] != c) continue;
            if ((depth[t.src] + 1) % m == depth[t.dst] % m) continue;

            auto tree_path = [&](StateId v) {
                std::vector<Transition> path;
                while (v != root) {
                    path.push_back(g.transitions[via[v]]);
                    v = g.transitions[via[v]].src;
                }
                std::reverse(path.begin(), path.end());
                return path;
            };
            // Shortest path back to the root (backward BFS).
            std::vector<std::size_t> back(g.num_states, kNone);
            std::vector<bool> seen(g.num_states, false);
            std::queue<StateId> bq;
            seen[root] = true;
            bq.push(root);
            while (!bq.empty()) {
                StateId v = bq.front();
                bq.pop();
                for (std::size_t pi : in[v]) {
                    StateId u = g.transitions[pi].src;
                    if (scc.component_of[u] != c || seen[u]) continue;
                    seen[u] = true;
                    back[u] = pi;
                    bq.push(u);
                }
            }
            std::vector<Transition> home;
            for (StateId v = t.dst; v != root; v = g.transitions[back[v]].dst) home.push_back(g.transitions[back[v]]);

            // Of the two closed walks root->src->dst->root and root->dst->root,
            // their lengths differ by a non-multiple of m, so one qualifies.
            std::vector<Transition> walk = tree_path(t.src);
            walk.push_back(t);
            walk.insert(walk.end(), home.begin(), home.end());
            if (walk.size() % m == 0) {
                walk = tree_path(t.dst);
                walk.insert(walk.end(), home.begin(), home.end());
            }
            result.ok = false;
            result.witness = std::move(walk);
            return result;
        }
    }
    return result;
}

}  // namespace aahull
