#include <gtest/gtest.h>

#include <random>

#include "aahull/fixpoint.hpp"
#include "oracles.hpp"

using namespace aahull;

namespace {

LabeledGraph graph(std::size_t n, std::vector<Transition> ts) {
    LabeledGraph g;
    g.num_states = n;
    g.transitions = std::move(ts);
    return g;
}

QVector q1(Rational x) { return QVector{x}; }

VPolyhedron half_line(Rational from) { return VPolyhedron::from_generators(1, {q1(from)}, {q1(1)}); }

bool is_post_fixpoint(const DigitContext& ctx, const LabeledGraph& g, const Valuation& c) {
    for (const auto& t : g.transitions) {
        if (!contains(c[t.dst], affine_image(c[t.src], gamma_digit(ctx, t.label)))) return false;
    }
    return true;
}

}  // namespace

TEST(Transfers, ReplaceOneEntry) {
    DigitContext ctx(2, 1);
    Valuation c{VPolyhedron::point(q1(1)), VPolyhedron::point(q1(5))};
    auto g = gamma_transfer(ctx, {0, 1, 1}, c);
    EXPECT_EQ(g[1], VPolyhedron::point(q1(3)));
    EXPECT_EQ(g[0], c[0]);
    auto l = lambda_transfer(ctx, {0, 1, 1}, c);
    EXPECT_EQ(l[0], VPolyhedron::point(q1(2)));
    EXPECT_EQ(l[1], c[1]);
}

TEST(Widen, LoopOnOneAddsRay) {
    DigitContext ctx(2, 1);
    auto g = graph(1, {{0, 1, 0}});
    Valuation c{VPolyhedron::point(q1(0))};
    EXPECT_EQ(widen(ctx, g, c)[0], half_line(0));
}

TEST(Widen, IdentityWithoutCycles) {
    DigitContext ctx(2, 1);
    auto g = graph(3, {{0, 1, 1}, {1, 0, 2}});
    Valuation c{VPolyhedron::point(q1(0)), VPolyhedron::point(q1(1)), VPolyhedron::empty(1)};
    EXPECT_EQ(widen(ctx, g, c), c);
}

TEST(Widen, ZeroLoopAddsNothing) {
    DigitContext ctx(3, 1);
    auto g = graph(1, {{0, 0, 0}});
    Valuation c{VPolyhedron::point(q1(0))};
    EXPECT_EQ(widen(ctx, g, c), c);
}

TEST(Fixpoint, OneStateLoop) {
    DigitContext ctx(2, 1);
    auto g = graph(1, {{0, 1, 0}});
    auto res = fixpoint(ctx, g, {VPolyhedron::point(q1(0))});
    EXPECT_EQ(res.value[0], half_line(0));
    EXPECT_EQ(res.iterations, 1u);
    for (const auto& [lo, hi] : oracle::kleene_loop_intervals(2, 10)) {
        EXPECT_TRUE(member(res.value[0], q1(lo)));
        EXPECT_TRUE(member(res.value[0], q1(hi)));
    }
}

TEST(Fixpoint, NegativeSeedLoop) {
    // Seed -1 with loops on 0 and 1: x -> 2x and x -> 2x + 1 go to -infinity.
    DigitContext ctx(2, 1);
    auto g = graph(1, {{0, 0, 0}, {0, 1, 0}});
    auto res = fixpoint(ctx, g, {VPolyhedron::point(q1(-1))});
    EXPECT_EQ(res.value[0], VPolyhedron::from_generators(1, {q1(-1)}, {q1(-1)}));
}

TEST(Fixpoint, AlreadyStable) {
    DigitContext ctx(2, 1);
    auto g = graph(2, {{0, 0, 1}});
    Valuation c{VPolyhedron::point(q1(0)), VPolyhedron::point(q1(0))};
    auto res = fixpoint(ctx, g, c);
    EXPECT_EQ(res.iterations, 0u);
    EXPECT_EQ(res.value, c);
}

TEST(Fixpoint, IterationLimitIsEnforced) {
    DigitContext ctx(2, 1);
    // A chain needs one round per edge.
    auto g = graph(4, {{0, 1, 1}, {1, 1, 2}, {2, 1, 3}});
    Valuation c = empty_valuation(4, 1);
    c[0] = VPolyhedron::point(q1(0));
    auto res = fixpoint(ctx, g, c);
    EXPECT_EQ(res.value[3], VPolyhedron::point(q1(7)));
    ASSERT_GE(res.iterations, 2u);
    FixpointOptions opts;
    opts.max_iterations = res.iterations - 1;
    EXPECT_THROW(fixpoint(ctx, g, c, opts), std::logic_error);
}

TEST(Fixpoint, TraceSeesEveryRound) {
    DigitContext ctx(2, 1);
    auto g = graph(2, {{0, 1, 1}, {1, 0, 0}});
    Valuation c{VPolyhedron::point(q1(0)), VPolyhedron::empty(1)};
    std::size_t rounds = 0;
    FixpointOptions opts;
    opts.trace = [&](const FixpointStep& s) {
        ++rounds;
        EXPECT_EQ(s.iteration, rounds);
        EXPECT_TRUE(leq(s.widened, s.joined));
    };
    auto res = fixpoint(ctx, g, c, opts);
    EXPECT_EQ(rounds, res.iterations);
}

class FixpointRandom : public ::testing::TestWithParam<int> {};

TEST_P(FixpointRandom, LeastPostFixpointAboveSeed) {
    std::mt19937 rng(static_cast<unsigned>(GetParam()));
    const std::size_t m = 1 + static_cast<std::size_t>(GetParam()) % 2;
    const int r = 2 + GetParam() % 2;
    DigitContext ctx(r, static_cast<int>(m));
    std::uniform_int_distribution<long> coord(-2, 2);
    for (int round = 0; round < 12; ++round) {
        auto g = oracle::random_m_graph(rng, m, r, 4, 7);
        Valuation c0 = empty_valuation(g.num_states, m);
        for (StateId q = 0; q < g.num_states; q += 2) {
            QVector x(m);
            for (auto& e : x) e = coord(rng);
            c0[q] = VPolyhedron::point(x);
        }
        auto res = fixpoint(ctx, g, c0);
        EXPECT_LE(res.iterations, g.num_states);
        EXPECT_TRUE(leq(c0, res.value));
        EXPECT_TRUE(is_post_fixpoint(ctx, g, res.value));

        // Every Kleene iterate lies below; every point generator is reached by one.
        Valuation k = c0;
        std::vector<Valuation> iterates{k};
        for (int i = 0; i < 10; ++i) {
            k = kleene_step(ctx, g, k);
            iterates.push_back(k);
            EXPECT_TRUE(leq(k, res.value));
        }
        for (StateId q = 0; q < g.num_states; ++q) {
            for (const auto& x : res.value[q].points()) {
                bool seen = false;
                for (const auto& it : iterates) seen = seen || member(it[q], x);
                EXPECT_TRUE(seen) << "point " << x << " of state " << q;
            }
        }

        FixpointOptions par;
        par.threads = 4;
        EXPECT_EQ(fixpoint(ctx, g, c0, par).value, res.value);
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, FixpointRandom, ::testing::Range(1, 9));
