// Acceptance checks A1-A8. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "aahull/aahull.hpp"
#include "oracles.hpp"

using namespace aahull;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(AAHULL_DATA_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

QVector v(std::initializer_list<long> xs) {
    QVector out(xs.size());
    std::size_t i = 0;
    for (long x : xs) out[i++] = x;
    return out;
}

struct Outcome {
    bool pass;
    std::string detail;
};

Outcome a1() {
    const auto start = Clock::now();
    ConstraintSystem s{parse_constraints("3*x1 - x2 > 0; x2 >= 0"), Domain::Natural, DigitContext(2, 2)};
    const VPolyhedron h = hull(compile(s));
    const auto hr = facets(h);
    const double t = seconds_since(start);

    bool ok = h.points() == std::vector<QVector>{v({1, 0}), v({1, 2})} &&
              h.rays() == std::vector<QVector>{v({1, 0}), v({1, 3})};
    // 3x1 >= x2 + 1, x2 >= 0, x1 >= 1 written as normal.x + bound <= 0.
    std::vector<HConstraint> want{{{-3, 1}, 1}, {{0, -1}, 0}, {{-1, 0}, 1}};
    auto got = hr.inequalities;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    ok = ok && got == want && hr.equalities.empty() && t < 1.0;
    std::ostringstream d;
    d << "hull " << h << ", " << got.size() << " facets, " << t << " s";
    return {ok, d.str()};
}

Outcome a2() {
    bool ok = true;
    std::ostringstream d;
    for (int r : {2, 10}) {
        DigitContext ctx(r, 1);
        LabeledGraph g;
        g.num_states = 1;
        g.transitions = {{0, r - 1, 0}};
        Valuation c{VPolyhedron::point(v({0}))};
        bool stabilized = false;
        for (int i = 1; i <= 10; ++i) {
            Valuation next = kleene_step(ctx, g, c);
            for (auto& p : next) p = canonicalize(p);
            if (i <= 5) {
                const long top = oracle::power(r, i).get_num().get_si() - 1;
                ok = ok && next[0] == VPolyhedron::from_generators(1, {v({0}), v({top})});
            }
            if (next == c) stabilized = true;
            c = std::move(next);
        }
        ok = ok && !stabilized;
        const auto res = fixpoint(ctx, g, {VPolyhedron::point(v({0}))});
        ok = ok && res.value[0] == VPolyhedron::from_generators(1, {v({0})}, {v({1})}) && res.iterations == 1;
        d << "r=" << r << ": " << res.value[0] << " after " << res.iterations << " iteration(s); ";
    }
    return {ok, d.str()};
}

Outcome a3() {
    bool ok = true;
    std::ostringstream d;
    for (const char* f : {"segment_r2.aaut", "segment_r3.aaut", "segment_r10.aaut"}) {
        const auto h = hull(parse_automaton(fixture(f)));
        ok = ok && h == VPolyhedron::from_generators(1, {v({0}), v({1})});
        d << f << " -> " << h << "; ";
    }
    return {ok, d.str()};
}

Outcome a4() {
    std::mt19937 rng(4);
    const int bases[] = {2, 3, 10};
    int failures = 0;
    for (int n = 0; n < 200; ++n) {
        const int r = bases[n % 3];
        const std::size_t m = 1 + static_cast<std::size_t>(n / 3) % 3;
        DigitContext ctx(r, static_cast<int>(m));
        const std::size_t blocks = std::uniform_int_distribution<std::size_t>(1, 12 / m)(rng);
        DigitWord sigma(blocks * m);
        for (auto& a : sigma) a = std::uniform_int_distribution<int>(0, r - 1)(rng);

        const QVector w = lambda_omega(ctx, sigma);
        bool ok = lambda_word(ctx, sigma).apply(w) == w && w == oracle::series_lambda(r, m, {}, sigma);
        for (const auto& e : w) ok = ok && e <= 0 && e >= -1;
        DigitWord repeated;
        for (int k = 1; k <= 4; ++k) {
            repeated.insert(repeated.end(), sigma.begin(), sigma.end());
            const QVector approx = lambda_word(ctx, repeated).apply(QVector(m));
            for (std::size_t i = 0; i < m; ++i) ok = ok && abs(approx[i] - w[i]) <= 1 / oracle::power(r, k);
        }
        if (!ok) ++failures;
    }
    return {failures == 0, "200 words, " + std::to_string(failures) + " failures"};
}

Outcome a5() {
    std::mt19937 rng(5);
    int mismatches = 0, over_bound = 0;
    std::size_t max_iter = 0;
    for (int n = 0; n < 100; ++n) {
        const std::size_t m = 1 + static_cast<std::size_t>(n % 2);
        DigitContext ctx(2, static_cast<int>(m));
        const auto g = oracle::random_m_graph(rng, m, 2, 6, 10);
        const auto res = cycle_algorithm(ctx, g);
        max_iter = std::max(max_iter, res.iterations);
        if (res.iterations > cycle_iteration_bound(g)) ++over_bound;
        for (StateId q = 0; q < g.num_states; ++q) {
            std::vector<QVector> pts;
            for (const auto& [prefix, cycle] : oracle::simple_frypan_labels(g, q)) {
                pts.push_back(oracle::series_lambda(2, m, prefix, cycle));
            }
            if (!equal_sets(res.hull(m, q), VPolyhedron::from_generators(m, pts))) ++mismatches;
        }
    }
    return {mismatches == 0 && over_bound == 0, "100 graphs, " + std::to_string(mismatches) + " state mismatches, " +
                                                    std::to_string(over_bound) + " over |T|^|Q|, max loop count " +
                                                    std::to_string(max_iter)};
}

struct RunStats {
    int runs = 0, over_tight = 0, over_tight_multi = 0, over_states = 0, unsound = 0, not_monotone = 0;
    std::size_t worst_excess = 0;
    std::string example;
};

void check_run(RunStats& st, const std::string& name, const DigitContext& ctx, const LabeledGraph& g, const Valuation& c0) {
    if (g.num_states == 0) return;
    Valuation prev = c0;
    bool monotone = true;
    FixpointOptions opts;
    opts.max_iterations = g.num_states + 1;  // observe, do not abort, a run one past the bound
    opts.trace = [&](const FixpointStep& s) {
        monotone = monotone && leq(prev, s.widened) && leq(s.widened, s.joined);
        prev = s.joined;
    };
    const auto res = fixpoint(ctx, g, c0, opts);
    ++st.runs;
    if (!monotone) ++st.not_monotone;
    for (const auto& t : g.transitions) {
        if (!contains(res.value[t.dst], affine_image(res.value[t.src], gamma_digit(ctx, t.label)))) {
            ++st.unsound;
            break;
        }
    }
    if (res.iterations + 1 > g.num_states) {
        ++st.over_tight;
        if (g.num_states > 1) ++st.over_tight_multi;
        if (st.example.empty()) {
            st.example = name + " (|Q|=" + std::to_string(g.num_states) + ", " + std::to_string(res.iterations) + " iterations)";
        }
        st.worst_excess = std::max(st.worst_excess, res.iterations + 1 - g.num_states);
    }
    if (res.iterations > g.num_states) ++st.over_states;
}

Outcome a6() {
    RunStats st;
    // Fixture pipelines: sign and integer fixpoints.
    std::vector<std::pair<std::string, ArithmeticAutomaton>> autos;
    for (const char* f : {"segment_r2.aaut", "segment_r3.aaut", "segment_r10.aaut", "kleene_loop.aaut", "muller_pair.aaut",
                          "odd_cycle.aaut"}) {
        autos.emplace_back(f, parse_automaton(fixture(f)));
    }
    autos.emplace_back("open cone", compile({parse_constraints("3*x1 - x2 > 0; x2 >= 0"), Domain::Natural, DigitContext(2, 2)}));
    for (const auto& [name, a] : autos) {
        const auto prep = prepare(a);
        const auto gs = prep.graph(StateClass::Sign);
        Valuation s0 = empty_valuation(gs.num_states, prep.ctx().m());
        for (StateId i = 0; i < gs.num_states; ++i) {
            const auto& init = prep.automaton.initial();
            if (std::binary_search(init.begin(), init.end(), gs.origin[i])) s0[i] = VPolyhedron::point(QVector(prep.ctx().m()));
        }
        check_run(st, name + "/sign", prep.ctx(), gs, s0);
        const auto gi = prep.graph(StateClass::Integer);
        const auto seed = integer_seed(prep, sign_valuation(prep));
        Valuation local;
        for (StateId i = 0; i < gi.num_states; ++i) local.push_back(seed[gi.origin[i]]);
        check_run(st, name + "/integer", prep.ctx(), gi, local);
    }
    // One-state loop on the top digit.
    for (int r : {2, 10}) {
        LabeledGraph g;
        g.num_states = 1;
        g.transitions = {{0, r - 1, 0}};
        check_run(st, "one-state loop r=" + std::to_string(r), DigitContext(r, 1), g, {VPolyhedron::point(v({0}))});
    }
    // Random m-graphs with point seeds.
    std::mt19937 rng(6);
    for (int n = 0; n < 100; ++n) {
        const std::size_t m = 1 + static_cast<std::size_t>(n % 2);
        const int r = 2 + n % 3;
        DigitContext ctx(r, static_cast<int>(m));
        const auto g = oracle::random_m_graph(rng, m, r, 5, 8);
        Valuation c0 = empty_valuation(g.num_states, m);
        for (StateId q = 0; q < g.num_states; ++q) {
            if (std::uniform_int_distribution<int>(0, 2)(rng) == 0 && q != 0) continue;
            QVector x(m);
            for (auto& e : x) e = std::uniform_int_distribution<long>(-3, 3)(rng);
            c0[q] = VPolyhedron::point(x);
        }
        check_run(st, "random #" + std::to_string(n), ctx, g, c0);
    }
    std::ostringstream d;
    d << st.runs << " runs; " << st.over_tight << " exceed |Q|-1 (by at most " << st.worst_excess << ", first: "
      << (st.example.empty() ? "none" : st.example) << ", " << st.over_tight_multi << " with |Q| > 1); " << st.over_states << " exceed |Q|; " << st.unsound
      << " unsound; " << st.not_monotone << " non-monotone";
    return {st.over_tight == 0 && st.unsound == 0 && st.not_monotone == 0, d.str()};
}

/// Recession cone of {x >= 0 : atoms} in dimension 2 is {0} iff no direction
/// (t, 1-t), 0 <= t <= 1, satisfies every homogeneous atom.
bool bounded_over_naturals_2d(const ConstraintSystem& s) {
    Rational lo = 0, hi = 1;
    auto restrict_le = [&](const Rational& a0, const Rational& a1) {
        // a0 t + a1 (1 - t) <= 0  <=>  (a0 - a1) t <= -a1
        const Rational k = a0 - a1, c = -a1;
        if (k == 0) {
            if (c < 0) hi = -1;
        } else if (k > 0) {
            hi = std::min(hi, Rational(c / k));
        } else {
            lo = std::max(lo, Rational(c / k));
        }
    };
    for (const auto& atom : s.atoms) {
        const Rational a0(atom.coefficients[0]), a1(atom.coefficients[1]);
        switch (atom.relation) {
            case Relation::Le:
            case Relation::Lt: restrict_le(a0, a1); break;
            case Relation::Ge:
            case Relation::Gt: restrict_le(-a0, -a1); break;
            case Relation::Eq:
                restrict_le(a0, a1);
                restrict_le(-a0, -a1);
                break;
        }
    }
    return lo > hi;
}

Outcome a7() {
    const auto start = Clock::now();
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-3, 3), bound(-4, 4), rel(0, 4), count(1, 3);
    const Relation rels[] = {Relation::Le, Relation::Lt, Relation::Eq, Relation::Ge, Relation::Gt};
    int systems = 0, member_fail = 0, inclusion_fail = 0, bounded = 0, equal_fail = 0;
    while (systems < 50) {
        std::vector<LinearAtom> atoms;
        const int n = count(rng);
        for (int k = 0; k < n; ++k) {
            LinearAtom a;
            a.coefficients = {coef(rng), coef(rng)};
            if (a.coefficients[0] == 0 && a.coefficients[1] == 0) a.coefficients[rng() % 2] = 1;
            a.relation = rels[rel(rng)];
            a.bound = bound(rng);
            atoms.push_back(std::move(a));
        }
        ConstraintSystem s{std::move(atoms), Domain::Natural, DigitContext(2, 2)};
        ++systems;
        const VPolyhedron h = hull(compile(s));
        const auto box8 = solutions_in_box(s, 8);
        for (const auto& x : box8) {
            if (!member(h, x)) {
                ++member_fail;
                break;
            }
        }
        const auto box16 = VPolyhedron::from_generators(2, solutions_in_box(s, 16));
        if (!contains(h, box16)) ++inclusion_fail;
        // With integer data of size at most 3 and right-hand sides of size at
        // most 5, every vertex of a bounded feasible region has coordinates
        // of size at most 30, so the box [0, 32]^2 holds every solution.
        if (bounded_over_naturals_2d(s)) {
            ++bounded;
            if (!equal_sets(h, VPolyhedron::from_generators(2, solutions_in_box(s, 32)))) ++equal_fail;
        }
    }
    const double t = seconds_since(start);
    std::ostringstream d;
    d << systems << " systems (" << bounded << " bounded): " << member_fail << " membership, " << inclusion_fail
      << " inclusion, " << equal_fail << " equality failures; " << t << " s";
    return {member_fail == 0 && inclusion_fail == 0 && equal_fail == 0 && t < 60.0, d.str()};
}

Outcome a8() {
    std::mt19937 rng(8);
    std::uniform_int_distribution<long> coord(-4, 4), den(1, 4);
    int disagreements = 0;
    for (int n = 0; n < 100; ++n) {
        const std::size_t dim = 1 + static_cast<std::size_t>(n % 3);
        const std::size_t gens = 1 + static_cast<std::size_t>(rng() % 5);
        std::vector<QVector> pts, rays;
        for (std::size_t k = 0; k < gens; ++k) {
            QVector x(dim);
            for (auto& e : x) e = coord(rng);
            (k == 0 || rng() % 3 ? pts : rays).push_back(x);
        }
        const auto p = VPolyhedron::from_generators(dim, pts, rays);
        const auto hr = facets(p);
        for (int s = 0; s < 100; ++s) {
            QVector x(dim);
            for (auto& e : x) e = frac(coord(rng) * 2, den(rng));
            if (hr.satisfied_by(x) != member(p, x)) ++disagreements;
        }
    }
    auto cone = facets(VPolyhedron::from_generators(2, {v({1, 0}), v({1, 2})}, {v({1, 0}), v({1, 3})}));
    std::vector<HConstraint> want{{{-3, 1}, 1}, {{0, -1}, 0}, {{-1, 0}, 1}};
    std::sort(want.begin(), want.end());
    auto got = cone.inequalities;
    std::sort(got.begin(), got.end());
    const bool cone_ok = got == want && cone.equalities.empty();
    return {disagreements == 0 && cone_ok, "10000 points, " + std::to_string(disagreements) + " disagreements; cone facets " +
                                              (cone_ok ? "match" : "differ")};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"A1 constraint system end to end", a1}, {"A2 accelerated loop", a2},   {"A3 segment fixtures", a3},
        {"A4 periodic decimal words", a4},       {"A5 cycle algorithm oracle", a5}, {"A6 outer iteration bound", a6},
        {"A7 constraint oracle sweep", a7},      {"A8 facet round trip", a8},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
