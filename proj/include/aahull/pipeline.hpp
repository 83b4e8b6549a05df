#pragma once

#include <cstddef>
#include <functional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "aahull/analysis.hpp"
#include "aahull/automaton.hpp"
#include "aahull/decimal_hull.hpp"
#include "aahull/fixpoint.hpp"
#include "aahull/polyhedron.hpp"

namespace aahull {

struct HullOptions {
    bool normalize = true;  // apply the counter product when a digit subgraph has a cycle length not divisible by m
    std::size_t max_states = max_product_states();
    unsigned threads = 1;
    std::ostream* trace = nullptr;
};

/// Validated, trimmed automaton whose digit subgraphs are m-graphs.
struct PreparedAutomaton {
    ArithmeticAutomaton automaton;
    StatePartition partition;
    bool normalized = false;

    const DigitContext& ctx() const { return automaton.ctx(); }
    LabeledGraph graph(StateClass c) const { return restrict(automaton, partition, c); }
};

inline PreparedAutomaton prepare(const ArithmeticAutomaton& a, const HullOptions& options = {}) {
    validate(a);
    ArithmeticAutomaton trimmed = trim(a);
    StatePartition p = validate(trimmed);
    if (is_m_graph_automaton(trimmed, p)) return {std::move(trimmed), std::move(p), false};

    if (!options.normalize) {
        for (StateClass c : {StateClass::Integer, StateClass::Decimal}) {
            auto check = check_m_graph(restrict(trimmed, p, c), a.ctx().m());
            if (check.ok) continue;
            const auto g = restrict(trimmed, p, c);
            std::string walk;
            for (const auto& t : check.witness) {
                walk += trimmed.name(g.origin[t.src]) + " -" + label_to_string(t.label) + "-> ";
            }
            walk += trimmed.name(g.origin[check.witness.back().dst]);
            throw ValidationError("digit graph is not an m-graph: cycle " + walk + " has length " +
                                  std::to_string(check.witness.size()));
        }
    }
    ArithmeticAutomaton product = trim(normalize_m_graph(trimmed, options.max_states));
    StatePartition pp = validate(product);
    return {std::move(product), std::move(pp), true};
}

namespace detail {

/// Valuation over a class graph, copied back onto automaton state ids.
inline Valuation lift(const PreparedAutomaton& prep, const LabeledGraph& g, const Valuation& local) {
    Valuation out = empty_valuation(prep.automaton.num_states(), prep.ctx().m());
    for (StateId i = 0; i < g.num_states; ++i) out[g.origin[i]] = local[i];
    return out;
}

inline Valuation localize(const LabeledGraph& g, const Valuation& global) {
    Valuation out;
    out.reserve(g.num_states);
    for (StateId i = 0; i < g.num_states; ++i) out.push_back(global[g.origin[i]]);
    return out;
}

inline void trace_valuation(std::ostream* os, const char* title, const PreparedAutomaton& prep,
                            const std::vector<StateId>& states, const Valuation& v) {
    if (!os) return;
    *os << "# " << title << "\n";
    for (StateId q : states) *os << "#   " << prep.automaton.name(q) << ": " << v[q] << "\n";
}

inline FixpointOptions fixpoint_options(const HullOptions& options, const char* stage) {
    FixpointOptions fo;
    fo.threads = options.threads;
    if (options.trace) {
        std::ostream* os = options.trace;
        fo.trace = [os, stage](const FixpointStep& s) {
            *os << "# " << stage << " iteration " << s.iteration << ": generators";
            for (const auto& p : s.joined) *os << ' ' << p.points().size() << '+' << p.rays().size();
            *os << "\n";
        };
    }
    return fo;
}

}  // namespace detail

/// Integer values of the sign words, {0} at the initial states.
inline Valuation sign_valuation(const PreparedAutomaton& prep, const HullOptions& options = {}) {
    const auto g = prep.graph(StateClass::Sign);
    Valuation seed = empty_valuation(g.num_states, prep.ctx().m());
    for (StateId i = 0; i < g.num_states; ++i) {
        const auto& init = prep.automaton.initial();
        if (std::binary_search(init.begin(), init.end(), g.origin[i])) seed[i] = VPolyhedron::point(QVector(prep.ctx().m()));
    }
    auto res = fixpoint(prep.ctx(), g, seed, detail::fixpoint_options(options, "sign"));
    return detail::lift(prep, g, res.value);
}

/// Integer-part seed: signs crossing the first separator, scaled by 1/(1-r).
inline Valuation integer_seed(const PreparedAutomaton& prep, const Valuation& sign) {
    const std::size_t m = prep.ctx().m();
    Valuation out = empty_valuation(prep.automaton.num_states(), m);
    for (const auto& t : prep.partition.sign_to_integer) out[t.dst] = join(out[t.dst], sign[t.src]);
    const Rational factor = frac(1, 1 - prep.ctx().basis());
    for (StateId q : prep.partition.integer_states) out[q] = scale(out[q], factor);
    return out;
}

struct IntegerValuation {
    Valuation value;
    std::size_t iterations = 0;
};

/// Least post-fixpoint of the integer-part transfers above the seed.
inline IntegerValuation integer_valuation(const PreparedAutomaton& prep, const Valuation& seed,
                                          const HullOptions& options = {}) {
    const auto g = prep.graph(StateClass::Integer);
    auto res = fixpoint(prep.ctx(), g, detail::localize(g, seed), detail::fixpoint_options(options, "integer"));
    return {detail::lift(prep, g, res.value), res.iterations};
}

/// Fractional values readable from each decimal state, polytopes in [-1,0]^m.
inline Valuation decimal_valuation(const PreparedAutomaton& prep) {
    const auto g = prep.graph(StateClass::Decimal);
    const auto res = cycle_algorithm(prep.ctx(), g);
    Valuation local(g.num_states);
    for (StateId i = 0; i < g.num_states; ++i) {
        local[i] = VPolyhedron::from_generators(prep.ctx().m(), res.generators[i]);
        if (local[i].is_empty()) {
            throw std::logic_error("decimal state '" + prep.automaton.name(g.origin[i]) + "' has no infinite path");
        }
    }
    return detail::lift(prep, g, local);
}

/// Integer hull minus fractional hull, joined over the separators between the two parts.
inline VPolyhedron combine(const PreparedAutomaton& prep, const Valuation& integer, const Valuation& decimal) {
    VPolyhedron out = VPolyhedron::empty(prep.ctx().m());
    for (const auto& t : prep.partition.integer_to_decimal) {
        out = join(out, minkowski_diff_of_hulls(integer[t.src], decimal[t.dst]));
    }
    return out;
}

struct HullReport {
    PreparedAutomaton prepared;
    Valuation sign, integer_seed, integer, decimal;
    std::size_t integer_iterations = 0;
    VPolyhedron hull;
};

inline HullReport hull_report(const ArithmeticAutomaton& a, const HullOptions& options = {}) {
    HullReport r{prepare(a, options), {}, {}, {}, {}, 0, VPolyhedron::empty(a.ctx().m())};
    const auto& prep = r.prepared;
    const auto& part = prep.partition;
    if (options.trace) {
        *options.trace << "# states: sign " << part.sign_states.size() << ", integer " << part.integer_states.size()
                       << ", decimal " << part.decimal_states.size() << (prep.normalized ? " (normalized)" : "") << "\n";
    }
    r.sign = sign_valuation(prep, options);
    detail::trace_valuation(options.trace, "sign valuation", prep, part.sign_states, r.sign);
    r.integer_seed = integer_seed(prep, r.sign);
    detail::trace_valuation(options.trace, "integer seed", prep, part.integer_states, r.integer_seed);
    auto iv = integer_valuation(prep, r.integer_seed, options);
    r.integer = std::move(iv.value);
    r.integer_iterations = iv.iterations;
    detail::trace_valuation(options.trace, "integer valuation", prep, part.integer_states, r.integer);
    r.decimal = decimal_valuation(prep);
    detail::trace_valuation(options.trace, "decimal valuation", prep, part.decimal_states, r.decimal);
    r.hull = combine(prep, r.integer, r.decimal);
    return r;
}

/// Closed convex hull of the set represented by the automaton.
inline VPolyhedron hull(const ArithmeticAutomaton& a, const HullOptions& options = {}) {
    return hull_report(a, options).hull;
}

/// Finite sample of the represented set: every sign, every integer word of
/// at most `depth` blocks, every decimal prefix of at most `depth` blocks,
/// closed off by every simple fry-pan of the decimal graph.
inline std::vector<QVector> enumerate_oracle(const ArithmeticAutomaton& a, std::size_t depth,
                                             const HullOptions& options = {}) {
    if (depth < 1) throw std::invalid_argument("enumerate_oracle: depth must be at least 1");
    const PreparedAutomaton prep = prepare(a, options);
    const auto& aut = prep.automaton;
    const auto& ctx = prep.ctx();
    const std::size_t m = ctx.m();
    const std::size_t max_len = depth * m;
    std::vector<std::vector<Transition>> out(aut.num_states());
    for (const auto& t : aut.transitions()) {
        if (prep.partition.level[t.src] >= 0 && prep.partition.level[t.dst] >= 0) out[t.src].push_back(t);
    }

    const auto gd = prep.graph(StateClass::Decimal);
    std::vector<StateId> local(aut.num_states(), static_cast<StateId>(-1));
    for (StateId i = 0; i < gd.num_states; ++i) local[gd.origin[i]] = i;
    std::vector<std::vector<QVector>> tails(gd.num_states);
    for (StateId i = 0; i < gd.num_states; ++i) {
        for (const auto& f : simple_frypans(gd, i)) tails[i].push_back(lambda_of_frypan(ctx, f));
    }

    std::set<QVector> found;
    DigitWord sign, integer, decimal;
    std::function<void(StateId, QVector)> decimals = [&](StateId q, QVector base) {
        const AffineMap read = lambda_word(ctx, decimal);
        for (const auto& v : tails[local[q]]) found.insert(base - read.apply(v));
        if (decimal.size() == max_len) return;
        for (const auto& t : out[q]) {
            if (t.is_star()) continue;
            decimal.push_back(t.label);
            decimals(t.dst, base);
            decimal.pop_back();
        }
    };
    std::function<void(StateId)> integers = [&](StateId q) {
        for (const auto& t : out[q]) {
            if (t.is_star()) {
                if (integer.size() % m == 0) decimals(t.dst, gamma_of_decomposition(ctx, sign, integer));
            } else if (integer.size() < max_len) {
                integer.push_back(t.label);
                integers(t.dst);
                integer.pop_back();
            }
        }
    };
    std::function<void(StateId)> signs = [&](StateId q) {
        for (const auto& t : out[q]) {
            if (t.is_star()) {
                if (sign.size() == m) integers(t.dst);
            } else if (sign.size() < m) {
                sign.push_back(t.label);
                signs(t.dst);
                sign.pop_back();
            }
        }
    };
    for (StateId q : aut.initial()) {
        if (prep.partition.level[q] == 0) signs(q);
    }
    return {found.begin(), found.end()};
}

}  // namespace aahull
