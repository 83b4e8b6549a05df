#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aahull/automaton.hpp"
#include "aahull/graph.hpp"

namespace aahull {

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a construction would exceed the configured state budget.
class StateLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Budget for product constructions: AAHULL_MAX_STATES, default one million.
inline std::size_t max_product_states() {
    if (const char* env = std::getenv("AAHULL_MAX_STATES")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 1000000;
}

namespace detail {

inline bool is_strongly_connected_with_edge(const ArithmeticAutomaton& a, const std::vector<StateId>& set) {
    if (set.empty()) return false;
    std::vector<bool> in(a.num_states(), false);
    for (StateId q : set) in[q] = true;
    std::vector<Transition> edges;
    for (const auto& t : a.transitions()) {
        if (in[t.src] && in[t.dst]) edges.push_back(t);
    }
    if (edges.empty()) return false;
    const auto scc = scc_decomposition(a.num_states(), edges);
    const std::size_t c = scc.component_of[set.front()];
    for (StateId q : set) {
        if (scc.component_of[q] != c) return false;
    }
    return true;
}

inline std::vector<bool> mask_of(std::size_t n, const std::vector<StateId>& ids) {
    std::vector<bool> m(n, false);
    for (StateId q : ids) m[q] = true;
    return m;
}

inline std::vector<StateId> ids_of(const std::vector<bool>& mask) {
    std::vector<StateId> out;
    for (StateId q = 0; q < mask.size(); ++q) {
        if (mask[q]) out.push_back(q);
    }
    return out;
}

}  // namespace detail

/// Muller sets that some run can actually visit infinitely often (ignoring reachability).
inline std::vector<std::vector<StateId>> live_muller_sets(const ArithmeticAutomaton& a) {
    std::vector<std::vector<StateId>> out;
    if (const auto* w = std::get_if<WeakAcceptance>(&a.acceptance())) {
        const auto accepting = detail::mask_of(a.num_states(), w->accepting);
        std::vector<Transition> edges;
        for (const auto& t : a.transitions()) {
            if (accepting[t.src] && accepting[t.dst]) edges.push_back(t);
        }
        const auto scc = scc_decomposition(a.num_states(), edges);
        for (std::size_t c = 0; c < scc.components.size(); ++c) {
            if (scc.has_cycle[c]) out.push_back(scc.components[c]);
        }
    } else {
        for (const auto& set : std::get<MullerAcceptance>(a.acceptance()).sets) {
            if (detail::is_strongly_connected_with_edge(a, set)) out.push_back(set);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<bool> reachable_mask(const ArithmeticAutomaton& a) {
    std::vector<bool> seen(a.num_states(), false);
    std::vector<std::vector<StateId>> succ(a.num_states());
    for (const auto& t : a.transitions()) succ[t.src].push_back(t.dst);
    std::vector<StateId> stack(a.initial().begin(), a.initial().end());
    for (StateId q : stack) seen[q] = true;
    while (!stack.empty()) {
        StateId q = stack.back();
        stack.pop_back();
        for (StateId p : succ[q]) {
            if (!seen[p]) {
                seen[p] = true;
                stack.push_back(p);
            }
        }
    }
    return seen;
}

inline std::vector<bool> coreachable_mask(const ArithmeticAutomaton& a) {
    std::vector<bool> seen(a.num_states(), false);
    std::vector<std::vector<StateId>> pred(a.num_states());
    for (const auto& t : a.transitions()) pred[t.dst].push_back(t.src);
    std::vector<StateId> stack;
    for (const auto& set : live_muller_sets(a)) {
        for (StateId q : set) {
            if (!seen[q]) {
                seen[q] = true;
                stack.push_back(q);
            }
        }
    }
    while (!stack.empty()) {
        StateId q = stack.back();
        stack.pop_back();
        for (StateId p : pred[q]) {
            if (!seen[p]) {
                seen[p] = true;
                stack.push_back(p);
            }
        }
    }
    return seen;
}

/// States from which a live Muller set is reachable.
inline std::vector<StateId> acceptance_coreachable(const ArithmeticAutomaton& a) {
    return detail::ids_of(coreachable_mask(a));
}

/// Sub-automaton on the given states (kept in their original order).
inline ArithmeticAutomaton restrict_states(const ArithmeticAutomaton& a, const std::vector<bool>& keep) {
    ArithmeticAutomaton out(a.ctx());
    std::vector<std::optional<StateId>> local(a.num_states());
    for (StateId q = 0; q < a.num_states(); ++q) {
        if (keep[q]) local[q] = out.add_state(a.name(q));
    }
    for (StateId q : a.initial()) {
        if (local[q]) out.add_initial(*local[q]);
    }
    for (const auto& t : a.transitions()) {
        if (local[t.src] && local[t.dst]) out.add_transition(*local[t.src], t.label, *local[t.dst]);
    }
    if (const auto* w = std::get_if<WeakAcceptance>(&a.acceptance())) {
        WeakAcceptance nw;
        for (StateId q : w->accepting) {
            if (local[q]) nw.accepting.push_back(*local[q]);
        }
        out.set_acceptance(std::move(nw));
    } else {
        MullerAcceptance nm;
        for (const auto& set : std::get<MullerAcceptance>(a.acceptance()).sets) {
            std::vector<StateId> mapped;
            bool whole = true;
            for (StateId q : set) {
                if (!local[q]) {
                    whole = false;
                    break;
                }
                mapped.push_back(*local[q]);
            }
            if (whole) nm.sets.push_back(std::move(mapped));
        }
        out.set_acceptance(std::move(nm));
    }
    return out;
}

/// Keeps the states that are reachable and acceptance-coreachable.
inline ArithmeticAutomaton trim(const ArithmeticAutomaton& a) {
    auto keep = reachable_mask(a);
    const auto co = coreachable_mask(a);
    for (StateId q = 0; q < keep.size(); ++q) keep[q] = keep[q] && co[q];
    return restrict_states(a, keep);
}

enum class StateClass { Sign = 0, Integer = 1, Decimal = 2 };

struct StatePartition {
    std::vector<int> level;  // star count per state, -1 when unassigned
    std::vector<StateId> sign_states;
    std::vector<StateId> integer_states;
    std::vector<StateId> decimal_states;
    std::vector<Transition> sign_to_integer;
    std::vector<Transition> integer_to_decimal;

    const std::vector<StateId>& states(StateClass c) const {
        switch (c) {
            case StateClass::Sign: return sign_states;
            case StateClass::Integer: return integer_states;
            default: return decimal_states;
        }
    }
};

/// Star level of every reachable, acceptance-coreachable state, checked for uniqueness.
inline StatePartition partition_states(const ArithmeticAutomaton& a) {
    const auto reach = reachable_mask(a);
    const auto co = coreachable_mask(a);
    auto alive = [&](StateId q) { return reach[q] && co[q]; };

    StatePartition p;
    p.level.assign(a.num_states(), -1);
    std::vector<std::vector<Transition>> out(a.num_states());
    for (const auto& t : a.transitions()) {
        if (alive(t.src) && alive(t.dst)) out[t.src].push_back(t);
    }
    std::deque<StateId> queue;
    for (StateId q : a.initial()) {
        if (!alive(q)) continue;
        p.level[q] = 0;
        queue.push_back(q);
    }
    while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        for (const auto& t : out[q]) {
            const int next = p.level[q] + (t.is_star() ? 1 : 0);
            if (next > 2) {
                throw ValidationError("state '" + a.name(t.dst) + "' is reached after more than two separators");
            }
            if (p.level[t.dst] == -1) {
                p.level[t.dst] = next;
                queue.push_back(t.dst);
            } else if (p.level[t.dst] != next) {
                throw ValidationError("state '" + a.name(t.dst) + "' is reached with separator counts " +
                                      std::to_string(p.level[t.dst]) + " and " + std::to_string(next));
            }
        }
    }
    for (StateId q = 0; q < a.num_states(); ++q) {
        if (p.level[q] == 0) p.sign_states.push_back(q);
        if (p.level[q] == 1) p.integer_states.push_back(q);
        if (p.level[q] == 2) p.decimal_states.push_back(q);
    }
    for (const auto& t : a.transitions()) {
        if (!t.is_star() || p.level[t.src] < 0 || p.level[t.dst] < 0) continue;
        if (p.level[t.src] == 0) p.sign_to_integer.push_back(t);
        if (p.level[t.src] == 1) p.integer_to_decimal.push_back(t);
    }
    return p;
}

/// Digit transitions inside one state class. `origin` holds automaton state ids.
inline LabeledGraph restrict(const ArithmeticAutomaton& a, const StatePartition& p, StateClass which) {
    LabeledGraph full;
    full.num_states = a.num_states();
    for (const auto& t : a.transitions()) {
        if (!t.is_star()) full.transitions.push_back(t);
    }
    return induced_subgraph(full, p.states(which));
}

/// Checks that the accepted language has the shape sign * integer * decimals.
/// Only reachable, acceptance-coreachable states are inspected.
inline StatePartition validate(const ArithmeticAutomaton& a) {
    StatePartition p = partition_states(a);
    const int r = a.ctx().basis();
    const std::size_t m = a.ctx().m();
    const auto reach = reachable_mask(a);

    for (const auto& set : live_muller_sets(a)) {
        if (!reach[set.front()]) continue;
        for (StateId q : set) {
            if (p.level[q] != 2) {
                throw ValidationError("accepting cycle through '" + a.name(q) + "' lies before the decimal part");
            }
        }
    }

    // Sign part: labels 0 or r-1, every path from an initial state exactly m long.
    std::vector<long> depth(a.num_states(), -1);
    std::deque<StateId> queue;
    for (StateId q : p.sign_states) {
        if (std::binary_search(a.initial().begin(), a.initial().end(), q)) {
            depth[q] = 0;
            queue.push_back(q);
        }
    }
    std::vector<std::vector<Transition>> out(a.num_states());
    for (const auto& t : a.transitions()) {
        if (p.level[t.src] >= 0 && p.level[t.dst] >= 0) out[t.src].push_back(t);
    }
    while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        for (const auto& t : out[q]) {
            if (t.is_star()) {
                if (depth[q] != static_cast<long>(m)) {
                    throw ValidationError("sign word of length " + std::to_string(depth[q]) + " ends at '" + a.name(q) +
                                          "', expected " + std::to_string(m));
                }
                continue;
            }
            if (t.label != 0 && t.label != r - 1) {
                throw ValidationError("sign transition from '" + a.name(q) + "' carries digit " +
                                      std::to_string(t.label) + ", expected 0 or " + std::to_string(r - 1));
            }
            const long next = depth[q] + 1;
            if (next > static_cast<long>(m)) {
                throw ValidationError("sign word longer than " + std::to_string(m) + " at '" + a.name(t.dst) + "'");
            }
            if (depth[t.dst] == -1) {
                depth[t.dst] = next;
                queue.push_back(t.dst);
            } else if (depth[t.dst] != next) {
                throw ValidationError("sign state '" + a.name(t.dst) + "' is reached at two different positions");
            }
        }
    }

    // Integer part: the second separator only after a whole number of digit blocks.
    if (m > 1) {
        std::vector<std::vector<bool>> seen(a.num_states(), std::vector<bool>(m, false));
        std::deque<std::pair<StateId, std::size_t>> work;
        for (const auto& t : p.sign_to_integer) {
            if (!seen[t.dst][0]) {
                seen[t.dst][0] = true;
                work.emplace_back(t.dst, 0);
            }
        }
        while (!work.empty()) {
            auto [q, i] = work.front();
            work.pop_front();
            for (const auto& t : out[q]) {
                if (t.is_star()) {
                    if (i != 0) {
                        throw ValidationError("integer part leaving '" + a.name(q) +
                                              "' is not a whole number of digit blocks");
                    }
                    continue;
                }
                const std::size_t j = (i + 1) % m;
                if (!seen[t.dst][j]) {
                    seen[t.dst][j] = true;
                    work.emplace_back(t.dst, j);
                }
            }
        }
    }
    return p;
}

/// The integer and fractional digit subgraphs both have every cycle length divisible by m.
inline bool is_m_graph_automaton(const ArithmeticAutomaton& a, const StatePartition& p) {
    return check_m_graph(restrict(a, p, StateClass::Integer), a.ctx().m()).ok &&
           check_m_graph(restrict(a, p, StateClass::Decimal), a.ctx().m()).ok;
}

/// Product with a digit counter modulo m that resets on the separator.
/// States are named `<q>__<i>`; only product states reachable from the
/// initial states are built. m = 1 returns the input unchanged.
inline ArithmeticAutomaton normalize_m_graph(const ArithmeticAutomaton& a,
                                             std::size_t max_states = max_product_states()) {
    const std::size_t m = a.ctx().m();
    if (m == 1) return a;

    std::map<std::pair<StateId, std::size_t>, StateId> id;
    std::vector<std::pair<StateId, std::size_t>> pairs;
    ArithmeticAutomaton out(a.ctx());
    auto intern = [&](StateId q, std::size_t i) {
        auto key = std::make_pair(q, i);
        if (auto it = id.find(key); it != id.end()) return std::make_pair(it->second, false);
        if (pairs.size() >= max_states) {
            throw StateLimitError("counter product exceeds " + std::to_string(max_states) +
                                  " states (raise AAHULL_MAX_STATES)");
        }
        StateId s = out.add_state(a.name(q) + "__" + std::to_string(i));
        id.emplace(key, s);
        pairs.push_back(key);
        return std::make_pair(s, true);
    };

    std::vector<std::vector<Transition>> succ(a.num_states());
    for (const auto& t : a.transitions()) succ[t.src].push_back(t);
    std::deque<StateId> work;
    for (StateId q : a.initial()) {
        auto [s, fresh] = intern(q, 0);
        out.add_initial(s);
        if (fresh) work.push_back(s);
    }
    while (!work.empty()) {
        StateId s = work.front();
        work.pop_front();
        auto [q, i] = pairs[s];
        for (const auto& t : succ[q]) {
            const std::size_t j = t.is_star() ? 0 : (i + 1) % m;
            auto [d, fresh] = intern(t.dst, j);
            out.add_transition(s, t.label, d);
            if (fresh) work.push_back(d);
        }
    }

    if (const auto* w = std::get_if<WeakAcceptance>(&a.acceptance())) {
        const auto acc = detail::mask_of(a.num_states(), w->accepting);
        WeakAcceptance nw;
        for (StateId s = 0; s < pairs.size(); ++s) {
            if (acc[pairs[s].first]) nw.accepting.push_back(s);
        }
        out.set_acceptance(std::move(nw));
        return out;
    }

    // Each live set F becomes the components of the product restricted to
    // F x Z_m. Repeating a closed walk through all of F m times returns to
    // the same counter, so every such component projects onto the whole of F.
    MullerAcceptance nm;
    for (const auto& set : live_muller_sets(a)) {
        const auto in = detail::mask_of(a.num_states(), set);
        std::vector<Transition> edges;
        for (const auto& t : out.transitions()) {
            if (in[pairs[t.src].first] && in[pairs[t.dst].first]) edges.push_back(t);
        }
        const auto scc = scc_decomposition(out.num_states(), edges);
        for (std::size_t c = 0; c < scc.components.size(); ++c) {
            if (scc.has_cycle[c]) nm.sets.push_back(scc.components[c]);
        }
    }
    out.set_acceptance(std::move(nm));
    return out;
}

}  // namespace aahull
