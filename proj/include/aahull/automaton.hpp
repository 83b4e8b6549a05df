#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "aahull/digit_maps.hpp"
#include "aahull/graph.hpp"

namespace aahull {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Explicit Muller table: a run accepts iff its infinitely visited states form one of the sets.
struct MullerAcceptance {
    std::vector<std::vector<StateId>> sets;  // each sorted
    friend bool operator==(const MullerAcceptance&, const MullerAcceptance&) = default;
};

/// Every SCC of the accepting subgraph that contains a transition is a Muller set.
struct WeakAcceptance {
    std::vector<StateId> accepting;  // sorted
    friend bool operator==(const WeakAcceptance&, const WeakAcceptance&) = default;
};

using Acceptance = std::variant<MullerAcceptance, WeakAcceptance>;

/// Muller automaton over digits and the separator, reading sign * integer * decimals.
/// Immutable by convention once built.
class ArithmeticAutomaton {
public:
    explicit ArithmeticAutomaton(DigitContext ctx) : ctx_(ctx) {}

    const DigitContext& ctx() const { return ctx_; }
    std::size_t num_states() const { return names_.size(); }
    const std::vector<std::string>& state_names() const { return names_; }
    const std::string& name(StateId q) const { return names_.at(q); }
    const std::vector<Transition>& transitions() const { return transitions_; }
    const std::vector<StateId>& initial() const { return initial_; }
    const Acceptance& acceptance() const { return acceptance_; }

    std::optional<StateId> find(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    StateId add_state(const std::string& name) {
        if (auto q = find(name)) return *q;
        index_.emplace(name, names_.size());
        names_.push_back(name);
        return names_.size() - 1;
    }

    /// Returns false when the transition already exists.
    bool add_transition(StateId src, int label, StateId dst) {
        if (src >= num_states() || dst >= num_states()) throw std::out_of_range("transition endpoint out of range");
        if (label != kStar) ctx_.require_digit(label);
        Transition t{src, label, dst};
        auto pos = std::lower_bound(transitions_.begin(), transitions_.end(), t);
        if (pos != transitions_.end() && *pos == t) return false;
        transitions_.insert(pos, t);
        return true;
    }

    void add_initial(StateId q) {
        auto pos = std::lower_bound(initial_.begin(), initial_.end(), q);
        if (pos == initial_.end() || *pos != q) initial_.insert(pos, q);
    }

    void set_acceptance(Acceptance acc) {
        std::visit(
            [](auto& a) {
                if constexpr (std::is_same_v<std::decay_t<decltype(a)>, MullerAcceptance>) {
                    for (auto& s : a.sets) {
                        std::sort(s.begin(), s.end());
                        s.erase(std::unique(s.begin(), s.end()), s.end());
                    }
                    std::sort(a.sets.begin(), a.sets.end());
                    a.sets.erase(std::unique(a.sets.begin(), a.sets.end()), a.sets.end());
                } else {
                    std::sort(a.accepting.begin(), a.accepting.end());
                    a.accepting.erase(std::unique(a.accepting.begin(), a.accepting.end()), a.accepting.end());
                }
            },
            acc);
        acceptance_ = std::move(acc);
    }

    bool is_weak() const { return std::holds_alternative<WeakAcceptance>(acceptance_); }

private:
    DigitContext ctx_;
    std::vector<std::string> names_;
    std::map<std::string, StateId> index_;
    std::vector<Transition> transitions_;  // sorted, unique
    std::vector<StateId> initial_;         // sorted, unique
    Acceptance acceptance_ = MullerAcceptance{};
};

namespace detail {

inline std::vector<std::string_view> split_words(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline bool valid_state_name(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    });
}

inline std::optional<long> parse_long(std::string_view s) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace detail

/// Reads the line-oriented .aaut format.
///
///   basis <r>            dim <m>
///   states <q>...        (optional; when present every name must be declared)
///   initial <q>...
///   accepting <q>...     or   muller { <q>... } { <q>... } ...
///   trans <src> <digit|*> <dst>
///
/// `#` starts a comment. Without a `states` line the state set is every name
/// used in `initial` and `trans` lines.
inline ArithmeticAutomaton parse_automaton(std::string_view text) {
    struct PendingTrans {
        std::size_t line;
        std::string src, label, dst;
    };
    std::optional<long> basis, dim;
    std::optional<std::vector<std::string>> declared;
    std::vector<std::pair<std::size_t, std::string>> initial;
    std::optional<std::pair<std::size_t, std::vector<std::string>>> weak;
    std::optional<std::pair<std::size_t, std::vector<std::vector<std::string>>>> muller;
    std::vector<PendingTrans> trans;
    std::size_t states_line = 0;

    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto words = detail::split_words(line);
        if (words.empty()) continue;
        const std::string_view key = words[0];

        auto want_name = [&](std::string_view s) {
            if (!detail::valid_state_name(s)) throw ParseError(lineno, "invalid state name '" + std::string(s) + "'");
            return std::string(s);
        };

        if (key == "basis" || key == "dim") {
            if (words.size() != 2) throw ParseError(lineno, std::string(key) + " takes exactly one integer");
            auto v = detail::parse_long(words[1]);
            if (!v) throw ParseError(lineno, "expected an integer after " + std::string(key));
            auto& slot = key == "basis" ? basis : dim;
            if (slot) throw ParseError(lineno, "duplicate " + std::string(key) + " line");
            if (key == "basis" && *v < 2) throw ParseError(lineno, "basis must be at least 2");
            if (key == "dim" && *v < 1) throw ParseError(lineno, "dim must be at least 1");
            slot = *v;
        } else if (key == "states") {
            if (declared) throw ParseError(lineno, "duplicate states line");
            declared.emplace();
            states_line = lineno;
            for (std::size_t i = 1; i < words.size(); ++i) declared->push_back(want_name(words[i]));
        } else if (key == "initial") {
            for (std::size_t i = 1; i < words.size(); ++i) initial.emplace_back(lineno, want_name(words[i]));
        } else if (key == "accepting") {
            if (weak || muller) throw ParseError(lineno, "acceptance given twice");
            weak.emplace(lineno, std::vector<std::string>{});
            for (std::size_t i = 1; i < words.size(); ++i) weak->second.push_back(want_name(words[i]));
        } else if (key == "muller") {
            if (weak || muller) throw ParseError(lineno, "acceptance given twice");
            muller.emplace(lineno, std::vector<std::vector<std::string>>{});
            // Braces may touch the names: "{a b}" and "{ a b }" are both accepted.
            std::string rest;
            for (std::size_t i = 1; i < words.size(); ++i) rest += std::string(words[i]) + " ";
            std::optional<std::vector<std::string>> current;
            std::string name;
            auto flush = [&] {
                if (name.empty()) return;
                if (!current) throw ParseError(lineno, "state name outside braces in muller line");
                current->push_back(want_name(name));
                name.clear();
            };
            for (char c : rest) {
                if (c == '{') {
                    flush();
                    if (current) throw ParseError(lineno, "nested '{' in muller line");
                    current.emplace();
                } else if (c == '}') {
                    flush();
                    if (!current) throw ParseError(lineno, "unmatched '}' in muller line");
                    muller->second.push_back(std::move(*current));
                    current.reset();
                } else if (c == ' ') {
                    flush();
                } else {
                    name += c;
                }
            }
            flush();
            if (current) throw ParseError(lineno, "unterminated '{' in muller line");
        } else if (key == "trans") {
            if (words.size() != 4) throw ParseError(lineno, "trans needs <src> <label> <dst>");
            trans.push_back({lineno, want_name(words[1]), std::string(words[2]), want_name(words[3])});
        } else {
            throw ParseError(lineno, "unknown directive '" + std::string(key) + "'");
        }
    }

    if (!basis) throw ParseError(lineno, "missing basis line");
    if (!dim) throw ParseError(lineno, "missing dim line");
    ArithmeticAutomaton a(DigitContext(static_cast<int>(*basis), static_cast<int>(*dim)));

    auto resolve = [&](std::size_t line, const std::string& name) -> StateId {
        if (auto q = a.find(name)) return *q;
        if (declared) throw ParseError(line, "unknown state '" + name + "'");
        return a.add_state(name);
    };
    if (declared) {
        for (const auto& n : *declared) {
            if (a.find(n)) throw ParseError(states_line, "state '" + n + "' declared twice");
            a.add_state(n);
        }
    }
    for (const auto& [line, n] : initial) a.add_initial(resolve(line, n));
    for (const auto& t : trans) {
        StateId src = resolve(t.line, t.src);
        StateId dst = resolve(t.line, t.dst);
        int label = kStar;
        if (t.label != "*") {
            auto v = detail::parse_long(t.label);
            if (!v) throw ParseError(t.line, "label must be a digit or '*', got '" + t.label + "'");
            if (*v < 0 || *v >= *basis) {
                throw ParseError(t.line, "digit " + t.label + " outside 0.." + std::to_string(*basis - 1));
            }
            label = static_cast<int>(*v);
        }
        if (!a.add_transition(src, label, dst)) throw ParseError(t.line, "duplicate transition");
    }
    // Acceptance names must already be known states.
    auto known = [&](std::size_t line, const std::string& n) {
        auto q = a.find(n);
        if (!q) throw ParseError(line, "unknown state '" + n + "' in acceptance");
        return *q;
    };
    if (weak) {
        WeakAcceptance w;
        for (const auto& n : weak->second) w.accepting.push_back(known(weak->first, n));
        a.set_acceptance(std::move(w));
    } else if (muller) {
        MullerAcceptance m;
        for (const auto& set : muller->second) {
            std::vector<StateId> ids;
            for (const auto& n : set) ids.push_back(known(muller->first, n));
            m.sets.push_back(std::move(ids));
        }
        a.set_acceptance(std::move(m));
    }
    return a;
}

inline std::string label_to_string(int label) { return label == kStar ? "*" : std::to_string(label); }

/// Canonical .aaut text; parse_automaton(format_automaton(a)) rebuilds a.
inline std::string format_automaton(const ArithmeticAutomaton& a) {
    std::ostringstream out;
    out << "basis " << a.ctx().basis() << "\n";
    out << "dim " << a.ctx().dim() << "\n";
    out << "states";
    for (const auto& n : a.state_names()) out << ' ' << n;
    out << "\ninitial";
    for (StateId q : a.initial()) out << ' ' << a.name(q);
    out << "\n";
    if (const auto* w = std::get_if<WeakAcceptance>(&a.acceptance())) {
        out << "accepting";
        for (StateId q : w->accepting) out << ' ' << a.name(q);
        out << "\n";
    } else {
        const auto& m = std::get<MullerAcceptance>(a.acceptance());
        out << "muller";
        for (const auto& set : m.sets) {
            out << " {";
            for (StateId q : set) out << ' ' << a.name(q);
            out << " }";
        }
        out << "\n";
    }
    for (const auto& t : a.transitions()) {
        out << "trans " << a.name(t.src) << ' ' << label_to_string(t.label) << ' ' << a.name(t.dst) << "\n";
    }
    return out.str();
}

}  // namespace aahull
