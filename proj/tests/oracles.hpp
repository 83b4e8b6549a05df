#pragma once

// Reference computations that avoid the library's affine maps and
// algorithms. They are slow and only meant for small inputs.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "aahull/aahull.hpp"

namespace oracle {

using aahull::DigitWord;
using aahull::Integer;
using aahull::QVector;
using aahull::Rational;

inline Rational power(long base, long exponent) {
    Rational out = 1;
    for (long i = 0; i < exponent; ++i) out *= base;
    return out;
}

/// Decimal vector of prefix.cycle^omega straight from the digit series:
/// digit p goes to component p mod m with weight -r^-(p/m + 1).
inline QVector series_lambda(int r, std::size_t m, const DigitWord& prefix, const DigitWord& cycle) {
    QVector head(m), tail(m);
    for (std::size_t p = 0; p < prefix.size(); ++p) {
        head[p % m] -= prefix[p] / power(r, static_cast<long>(p / m + 1));
    }
    for (std::size_t t = 0; t < cycle.size(); ++t) {
        const std::size_t p = prefix.size() + t;
        tail[p % m] -= cycle[t] / power(r, static_cast<long>(p / m + 1));
    }
    const Rational periodic = 1 / (1 - 1 / power(r, static_cast<long>(cycle.size() / m)));
    for (std::size_t i = 0; i < m; ++i) head[i] += tail[i] * periodic;
    return head;
}

/// Integer vector of sign s and integer digits sigma: two's-complement style
/// sum over the digit positions.
inline QVector series_gamma(int r, std::size_t m, const DigitWord& sign, const DigitWord& sigma) {
    QVector x(m);
    const std::size_t blocks = sigma.size() / m;
    for (std::size_t i = 0; i < m; ++i) {
        // Sign digit r-1 stands for -r^blocks, digit d at block j for d r^(blocks-1-j).
        if (sign[i] == r - 1) x[i] -= power(r, static_cast<long>(blocks));
        for (std::size_t j = 0; j < blocks; ++j) x[i] += sigma[j * m + i] * power(r, static_cast<long>(blocks - 1 - j));
    }
    return x;
}

/// Labels of all simple fry-pans from q: (prefix, cycle) pairs.
inline std::vector<std::pair<DigitWord, DigitWord>> simple_frypan_labels(const aahull::LabeledGraph& g,
                                                                          aahull::StateId q) {
    std::vector<std::pair<DigitWord, DigitWord>> out;
    std::vector<aahull::StateId> states;
    DigitWord labels;
    std::function<void(aahull::StateId)> dfs = [&](aahull::StateId v) {
        states.push_back(v);
        for (const auto& t : g.transitions) {
            if (t.src != v) continue;
            labels.push_back(t.label);
            auto hit = std::find(states.begin(), states.end(), t.dst);
            if (hit != states.end()) {
                const auto cut = static_cast<std::size_t>(hit - states.begin());
                out.emplace_back(DigitWord(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(cut)),
                                 DigitWord(labels.begin() + static_cast<std::ptrdiff_t>(cut), labels.end()));
            } else {
                dfs(t.dst);
            }
            labels.pop_back();
        }
        states.pop_back();
    };
    dfs(q);
    return out;
}

/// Plain Kleene iterates of the one-state loop on digit r-1 from {0}, as intervals.
inline std::vector<std::pair<Rational, Rational>> kleene_loop_intervals(int r, std::size_t steps) {
    std::vector<std::pair<Rational, Rational>> out{{0, 0}};
    for (std::size_t i = 0; i < steps; ++i) {
        auto [lo, hi] = out.back();
        const Rational a = r * lo + (r - 1), b = r * hi + (r - 1);
        out.emplace_back(std::min({lo, a, b}), std::max({hi, a, b}));
    }
    return out;
}

/// Random digit-labelled graph with every cycle length a multiple of m:
/// states get levels mod m and edges only go from level l to level l+1.
inline aahull::LabeledGraph random_m_graph(std::mt19937& rng, std::size_t m, int r, std::size_t max_states,
                                           std::size_t max_transitions) {
    std::uniform_int_distribution<std::size_t> nq(1, max_states);
    aahull::LabeledGraph g;
    g.num_states = nq(rng);
    std::vector<std::size_t> level(g.num_states);
    for (auto& l : level) l = std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
    std::uniform_int_distribution<std::size_t> nt(1, max_transitions);
    const std::size_t want = nt(rng);
    std::set<aahull::Transition> seen;
    for (std::size_t attempt = 0; attempt < 200 && seen.size() < want; ++attempt) {
        aahull::StateId a = std::uniform_int_distribution<std::size_t>(0, g.num_states - 1)(rng);
        aahull::StateId b = std::uniform_int_distribution<std::size_t>(0, g.num_states - 1)(rng);
        if ((level[a] + 1) % m != level[b]) continue;
        int d = std::uniform_int_distribution<int>(0, r - 1)(rng);
        seen.insert({a, d, b});
    }
    g.transitions.assign(seen.begin(), seen.end());
    return g;
}

}  // namespace oracle
