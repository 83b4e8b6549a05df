#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aahull/analysis.hpp"
#include "aahull/automaton.hpp"
#include "aahull/digit_maps.hpp"
#include "aahull/rational.hpp"

namespace aahull {

enum class Relation { Le, Lt, Eq, Ge, Gt };
enum class Domain { Natural, Integer };

struct LinearAtom {
    std::vector<Integer> coefficients;
    Relation relation = Relation::Le;
    Integer bound;

    bool holds(const QVector& x) const {
        if (x.size() != coefficients.size()) throw DimensionError("atom evaluated at a point of the wrong dimension");
        Rational v;
        for (std::size_t i = 0; i < x.size(); ++i) v += Rational(coefficients[i]) * x[i];
        const Rational b(bound);
        switch (relation) {
            case Relation::Le: return v <= b;
            case Relation::Lt: return v < b;
            case Relation::Eq: return v == b;
            case Relation::Ge: return v >= b;
            default: return v > b;
        }
    }
};

struct ConstraintSystem {
    std::vector<LinearAtom> atoms;
    Domain domain = Domain::Natural;
    DigitContext ctx;

    bool holds(const QVector& x) const {
        if (domain == Domain::Natural) {
            for (const auto& e : x) {
                if (sgn(e) < 0) return false;
            }
        }
        return std::all_of(atoms.begin(), atoms.end(), [&](const LinearAtom& a) { return a.holds(x); });
    }
};

class ConstraintSyntaxError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

/// Linear expression over x1..xk plus a constant, accumulated while parsing.
struct LinearExpr {
    std::map<std::size_t, Integer> coef;  // 0-based variable index
    Integer constant;
};

class ExprParser {
public:
    explicit ExprParser(std::string_view s) : s_(s) {}

    LinearExpr expression() {
        LinearExpr e;
        skip();
        bool first = true;
        while (true) {
            int sign = 1;
            skip();
            if (peek() == '+' || peek() == '-') {
                sign = get() == '-' ? -1 : 1;
                skip();
                // One unary sign may follow: `x1 + -2*x2`.
                if (peek() == '+' || peek() == '-') {
                    if (get() == '-') sign = -sign;
                    skip();
                }
            } else if (!first) {
                break;
            }
            term(e, sign);
            first = false;
            skip();
            if (peek() != '+' && peek() != '-') break;
        }
        return e;
    }

    Relation relation() {
        skip();
        char c = get();
        if (c == '<') return accept('=') ? Relation::Le : Relation::Lt;
        if (c == '>') return accept('=') ? Relation::Ge : Relation::Gt;
        if (c == '=') {
            accept('=');
            return Relation::Eq;
        }
        throw ConstraintSyntaxError("expected a relation (<=, <, =, >=, >) in '" + std::string(s_) + "'");
    }

    bool at_end() {
        skip();
        return pos_ >= s_.size();
    }

private:
    void term(LinearExpr& e, int sign) {
        Integer factor = sign;
        bool has_number = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            factor *= number();
            has_number = true;
            skip();
            if (accept('*')) {
                skip();
            } else if (peek() != 'x') {
                e.constant += factor;
                return;
            }
        }
        if (peek() != 'x') {
            throw ConstraintSyntaxError(has_number ? "expected a variable after '*'" : "expected a term in '" + std::string(s_) + "'");
        }
        get();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ConstraintSyntaxError("variables are written x1, x2, ...");
        Integer idx = number();
        if (idx < 1 || idx > 64) throw ConstraintSyntaxError("variable index out of range 1..64");
        e.coef[idx.get_ui() - 1] += factor;
    }

    Integer number() {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return Integer(std::string(s_.substr(start, pos_ - start)));
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `3*x1 - x2 > 0; x2 >= 0`. Atoms are separated by `;`, `,`, `&&`
/// or newlines. The dimension is the largest variable index used unless
/// `dim` is given.
inline std::vector<LinearAtom> parse_constraints(std::string_view text, std::size_t dim = 0) {
    std::vector<std::string> pieces;
    std::string cur;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            c = '\n';
        }
        if (c == ';' || c == ',' || c == '\n' || (c == '&' && i + 1 < text.size() && text[i + 1] == '&')) {
            if (c == '&') ++i;
            pieces.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    pieces.push_back(cur);

    std::vector<detail::LinearExpr> lhs_minus_rhs;
    std::vector<Relation> rels;
    std::size_t width = dim;
    for (const auto& piece : pieces) {
        if (std::all_of(piece.begin(), piece.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); })) continue;
        detail::ExprParser p(piece);
        auto lhs = p.expression();
        Relation rel = p.relation();
        auto rhs = p.expression();
        if (!p.at_end()) throw ConstraintSyntaxError("trailing text in '" + piece + "'");
        for (const auto& [i, c] : rhs.coef) lhs.coef[i] -= c;
        lhs.constant -= rhs.constant;
        for (const auto& [i, c] : lhs.coef) {
            if (dim && i >= dim) throw DimensionError("variable x" + std::to_string(i + 1) + " exceeds dimension " + std::to_string(dim));
            width = std::max(width, i + 1);
        }
        lhs_minus_rhs.push_back(std::move(lhs));
        rels.push_back(rel);
    }
    if (lhs_minus_rhs.empty()) throw ConstraintSyntaxError("no constraints given");

    std::vector<LinearAtom> atoms;
    for (std::size_t k = 0; k < lhs_minus_rhs.size(); ++k) {
        LinearAtom a;
        a.coefficients.assign(width, Integer(0));
        for (const auto& [i, c] : lhs_minus_rhs[k].coef) a.coefficients[i] = c;
        a.relation = rels[k];
        a.bound = -lhs_minus_rhs[k].constant;
        if (std::all_of(a.coefficients.begin(), a.coefficients.end(), [](const Integer& c) { return c == 0; })) {
            throw ConstraintSyntaxError("constraint without variables");
        }
        atoms.push_back(std::move(a));
    }
    return atoms;
}

namespace detail {

/// a.x <= b with machine-size coefficients.
struct UpperBound {
    std::vector<long> a;
    long b;
};

inline std::vector<UpperBound> as_upper_bounds(const LinearAtom& atom) {
    auto small = [](const Integer& z) {
        if (!z.fits_slong_p() || abs(z) > 1000000) throw std::invalid_argument("constraint coefficient too large to compile");
        return z.get_si();
    };
    std::vector<long> a, neg;
    for (const auto& c : atom.coefficients) {
        a.push_back(small(c));
        neg.push_back(-small(c));
    }
    const long b = small(atom.bound);
    switch (atom.relation) {
        case Relation::Le: return {{a, b}};
        case Relation::Lt: return {{a, b - 1}};
        case Relation::Ge: return {{neg, -b}};
        case Relation::Gt: return {{neg, -b - 1}};
        default: return {{a, b}, {neg, -b}};
    }
}

}  // namespace detail

/// Most-significant-digit-first automaton of the integer solutions.
///
/// A state records the phase (sign or integer), the digit position inside
/// the current block and, per inequality a.x <= b, the value a.x of the
/// prefix read so far. With S = sum |a_i| and B = 1 + |b| + S, a value at
/// or above B at a block boundary can never come back below b, and a value
/// at or below -B never rises above it; such values saturate. Inside a
/// block the remaining digits move the value by at most (r-1)S, which
/// widens the band accordingly. The decimal part is a ring of m states
/// reading zeros.
inline ArithmeticAutomaton compile(const ConstraintSystem& system, std::size_t max_states = max_product_states()) {
    if (system.atoms.empty()) throw std::invalid_argument("compile: empty constraint system");
    const DigitContext& ctx = system.ctx;
    const std::size_t m = ctx.m();
    const long r = ctx.basis();
    std::vector<detail::UpperBound> ineqs;
    for (const auto& atom : system.atoms) {
        if (atom.coefficients.size() != m) {
            throw DimensionError("compile: atom has " + std::to_string(atom.coefficients.size()) +
                                 " coefficients, dimension is " + std::to_string(m));
        }
        for (auto& u : detail::as_upper_bounds(atom)) ineqs.push_back(std::move(u));
    }
    constexpr long kSat = std::numeric_limits<long>::min();  // satisfied for good
    std::vector<long> edge, band;
    for (const auto& u : ineqs) {
        long s = 0;
        for (long c : u.a) s += std::abs(c);
        edge.push_back(1 + std::abs(u.b) + s);
        band.push_back(1 + std::abs(u.b) + s + (r - 1) * s);
    }

    enum Phase : int { Sign = 0, Int = 1 };
    struct Key {
        int phase;
        std::size_t pos;
        std::vector<long> v;
        auto operator<=>(const Key&) const = default;
    };
    std::map<Key, std::size_t> id;
    std::vector<Key> keys;
    std::vector<std::vector<std::pair<int, std::size_t>>> succ;  // label, target; kStar to the ring
    auto intern = [&](Key k) {
        if (auto it = id.find(k); it != id.end()) return it->second;
        if (keys.size() >= max_states) throw StateLimitError("constraint automaton exceeds " + std::to_string(max_states) + " states");
        id.emplace(k, keys.size());
        keys.push_back(std::move(k));
        succ.emplace_back();
        return keys.size() - 1;
    };

    // Returns false when some inequality is violated for good.
    auto step = [&](const Key& k, int digit, Key& out) {
        out = k;
        const std::size_t i = k.pos;
        const bool block_start = k.phase == Int && i == 0;
        const bool block_end = i + 1 == m;
        for (std::size_t j = 0; j < ineqs.size(); ++j) {
            long& v = out.v[j];
            if (v == kSat) continue;
            if (k.phase == Sign) {
                if (digit == r - 1) v -= ineqs[j].a[i];
            } else {
                if (block_start) v *= r;
                v += ineqs[j].a[i] * digit;
            }
            const long limit = block_end ? edge[j] : band[j];
            if (v >= limit) return false;
            if (v <= -limit) v = kSat;
        }
        out.pos = block_end ? (k.phase == Sign ? m : 0) : i + 1;
        return true;
    };
    auto satisfied = [&](const Key& k) {
        for (std::size_t j = 0; j < ineqs.size(); ++j) {
            if (k.v[j] != kSat && k.v[j] > ineqs[j].b) return false;
        }
        return true;
    };
    constexpr std::size_t kRing = static_cast<std::size_t>(-1);

    std::deque<std::size_t> work{intern({Sign, 0, std::vector<long>(ineqs.size(), 0)})};
    while (!work.empty()) {
        const std::size_t s = work.front();
        work.pop_front();
        const Key k = keys[s];
        std::vector<std::pair<int, std::size_t>> edges;
        auto go = [&](int label, Key next) {
            const std::size_t before = keys.size();
            const std::size_t t = intern(std::move(next));
            if (keys.size() > before) work.push_back(t);
            edges.emplace_back(label, t);
        };
        if (k.phase == Sign && k.pos == m) {
            Key next = k;
            next.phase = Int;
            next.pos = 0;
            go(kStar, std::move(next));
        } else if (k.phase == Sign) {
            for (int d : {0, static_cast<int>(r - 1)}) {
                if (d != 0 && system.domain == Domain::Natural) continue;
                Key next;
                if (step(k, d, next)) go(d, std::move(next));
            }
        } else {
            for (int d = 0; d < r; ++d) {
                Key next;
                if (step(k, d, next)) go(d, std::move(next));
            }
            if (k.pos == 0 && satisfied(k)) edges.emplace_back(kStar, kRing);
        }
        succ[s] = std::move(edges);
    }

    // Drop states that cannot reach the decimal ring, so that refinement
    // compares live behaviour only.
    const std::size_t n = keys.size();
    std::vector<bool> alive(n, false);
    {
        std::vector<std::vector<std::size_t>> pred(n);
        std::vector<std::size_t> stack;
        for (std::size_t s = 0; s < n; ++s) {
            for (const auto& [label, t] : succ[s]) {
                if (t == kRing) {
                    if (!alive[s]) stack.push_back(s);
                    alive[s] = true;
                } else {
                    pred[t].push_back(s);
                }
            }
        }
        while (!stack.empty()) {
            std::size_t s = stack.back();
            stack.pop_back();
            for (std::size_t p : pred[s]) {
                if (!alive[p]) {
                    alive[p] = true;
                    stack.push_back(p);
                }
            }
        }
        for (auto& row : succ) {
            std::erase_if(row, [&](const auto& e) { return e.second != kRing && !alive[e.second]; });
        }
    }

    // Moore refinement over the deterministic transition structure.

    std::vector<std::size_t> block(n);
    {
        std::map<std::pair<int, std::size_t>, std::size_t> initial_blocks;
        for (std::size_t s = 0; s < n; ++s) {
            auto key = std::make_pair(keys[s].phase, keys[s].pos);
            block[s] = initial_blocks.emplace(key, initial_blocks.size()).first->second;
        }
    }
    for (std::size_t count = 0;;) {
        std::map<std::pair<std::size_t, std::vector<std::pair<int, std::size_t>>>, std::size_t> sig;
        std::vector<std::size_t> next(n);
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<std::pair<int, std::size_t>> row;
            for (const auto& [label, t] : succ[s]) row.emplace_back(label, t == kRing ? kRing : block[t]);
            next[s] = sig.emplace(std::make_pair(block[s], std::move(row)), sig.size()).first->second;
        }
        block = std::move(next);
        if (sig.size() == count) break;
        count = sig.size();
    }

    ArithmeticAutomaton out(ctx);
    if (!alive[0]) return out;  // empty solution set
    std::map<std::size_t, StateId> by_block;
    for (std::size_t s = 0; s < n; ++s) {
        if (!alive[s] || by_block.count(block[s])) continue;
        const std::string prefix = keys[s].phase == Sign ? "s" : "i";
        by_block.emplace(block[s], out.add_state(prefix + std::to_string(by_block.size())));
    }
    std::vector<StateId> ring;
    for (std::size_t j = 0; j < m; ++j) ring.push_back(out.add_state("d" + std::to_string(j)));
    for (std::size_t j = 0; j < m; ++j) out.add_transition(ring[j], 0, ring[(j + 1) % m]);
    out.add_initial(by_block.at(block[0]));
    for (std::size_t s = 0; s < n; ++s) {
        if (!alive[s]) continue;
        for (const auto& [label, t] : succ[s]) {
            out.add_transition(by_block.at(block[s]), label, t == kRing ? ring[0] : by_block.at(block[t]));
        }
    }
    out.set_acceptance(WeakAcceptance{ring});
    return trim(out);
}

/// Integer points of [-B, B]^m (or [0, B]^m over the naturals) satisfying the system.
inline std::vector<QVector> solutions_in_box(const ConstraintSystem& system, long bound) {
    if (bound < 0) throw std::invalid_argument("solutions_in_box: negative bound");
    const std::size_t m = system.ctx.m();
    const long lo = system.domain == Domain::Natural ? 0 : -bound;
    std::vector<long> x(m, lo);
    std::vector<QVector> out;
    while (true) {
        QVector p(m);
        for (std::size_t i = 0; i < m; ++i) p[i] = x[i];
        if (system.holds(p)) out.push_back(std::move(p));
        std::size_t i = 0;
        while (i < m && x[i] == bound) x[i++] = lo;
        if (i == m) break;
        ++x[i];
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace aahull
