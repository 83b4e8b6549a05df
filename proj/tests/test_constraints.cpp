#include <gtest/gtest.h>

#include <random>

#include "aahull/aahull.hpp"
#include "oracles.hpp"

using namespace aahull;

namespace {

QVector v(std::initializer_list<long> xs) {
    QVector out(xs.size());
    std::size_t i = 0;
    for (long x : xs) out[i++] = x;
    return out;
}

ConstraintSystem system_of(const std::string& text, Domain d, int r, std::size_t dim = 0) {
    auto atoms = parse_constraints(text, dim);
    const int m = static_cast<int>(atoms.front().coefficients.size());
    return {std::move(atoms), d, DigitContext(r, m)};
}

bool is_integral(const QVector& x) {
    return std::all_of(x.begin(), x.end(), [](const Rational& e) { return e.get_den() == 1; });
}

}  // namespace

TEST(Parse, AtomsAndRelations) {
    auto atoms = parse_constraints("3*x1 - x2 > 0; x2 >= 0");
    ASSERT_EQ(atoms.size(), 2u);
    EXPECT_EQ(atoms[0].coefficients, (std::vector<Integer>{3, -1}));
    EXPECT_EQ(atoms[0].relation, Relation::Gt);
    EXPECT_EQ(atoms[0].bound, 0);
    EXPECT_EQ(atoms[1].coefficients, (std::vector<Integer>{0, 1}));

    auto moved = parse_constraints("x1 + 3 <= 2 x2 - 1 && x3 = 4 # comment\n-x1 < -2", 0);
    ASSERT_EQ(moved.size(), 3u);
    EXPECT_EQ(moved[0].coefficients, (std::vector<Integer>{1, -2, 0}));
    EXPECT_EQ(moved[0].bound, -4);
    EXPECT_EQ(moved[1].relation, Relation::Eq);
    EXPECT_EQ(moved[2].relation, Relation::Lt);

    EXPECT_EQ(parse_constraints("x1 <= 1", 3)[0].coefficients.size(), 3u);
    EXPECT_EQ(parse_constraints("x1 + -2*x2 - -1 <= 0")[0].coefficients, (std::vector<Integer>{1, -2}));
    EXPECT_EQ(parse_constraints("x1 + -2*x2 - -1 <= 0")[0].bound, -1);
}

TEST(Parse, Errors) {
    EXPECT_THROW(parse_constraints("x1 <= "), ConstraintSyntaxError);
    EXPECT_THROW(parse_constraints("x1 ! 2"), ConstraintSyntaxError);
    EXPECT_THROW(parse_constraints("x0 <= 2"), ConstraintSyntaxError);
    EXPECT_THROW(parse_constraints("2 <= 3"), ConstraintSyntaxError);
    EXPECT_THROW(parse_constraints(""), ConstraintSyntaxError);
    EXPECT_THROW(parse_constraints("x3 <= 1", 2), DimensionError);
    EXPECT_THROW(parse_constraints("x1 <= 1 2"), ConstraintSyntaxError);
    EXPECT_THROW(parse_constraints("x1 + - - x2 <= 1"), ConstraintSyntaxError);
}

TEST(Compile, SingletonZero) {
    auto a = compile(system_of("x1 <= 0", Domain::Natural, 2));
    EXPECT_EQ(hull(a), VPolyhedron::point(v({0})));
    EXPECT_NO_THROW(validate(a));
}

TEST(Compile, Interval) {
    for (int r : {2, 3, 10}) {
        auto a = compile(system_of("x1 >= 1; x1 <= 3", Domain::Integer, r));
        EXPECT_EQ(hull(a), VPolyhedron::from_generators(1, {v({1}), v({3})})) << "basis " << r;
    }
}

TEST(Compile, OpenCone) {
    auto a = compile(system_of("3*x1 - x2 > 0; x2 >= 0", Domain::Natural, 2));
    auto h = hull(a);
    EXPECT_EQ(h, VPolyhedron::from_generators(2, {v({1, 0}), v({1, 2})}, {v({1, 0}), v({1, 3})}));
}

TEST(Compile, Unsatisfiable) {
    auto a = compile(system_of("x1 + x2 <= -1", Domain::Natural, 2));
    EXPECT_EQ(a.num_states(), 0u);
    EXPECT_TRUE(hull(a).is_empty());
    EXPECT_TRUE(compile(system_of("2*x1 = 1", Domain::Integer, 3)).num_states() == 0);
}

TEST(Box, Solutions) {
    auto s = system_of("x1 + x2 <= 2", Domain::Natural, 2);
    EXPECT_EQ(solutions_in_box(s, 5), (std::vector<QVector>{v({0, 0}), v({0, 1}), v({0, 2}), v({1, 0}), v({1, 1}), v({2, 0})}));
    auto t = system_of("x1 = -1", Domain::Integer, 2);
    EXPECT_EQ(solutions_in_box(t, 3), (std::vector<QVector>{v({-1})}));
}

class CompileRandom : public ::testing::TestWithParam<int> {};

// Words of k blocks cover exactly [0, r^k) over the naturals and
// [-r^k, r^k) over the integers, so enumeration must equal the box search.
TEST_P(CompileRandom, EnumerationMatchesBruteForce) {
    std::mt19937 rng(static_cast<unsigned>(GetParam()));
    std::uniform_int_distribution<int> coef(-3, 3), rhs(-5, 5), rel(0, 4);
    const char* rels[] = {"<=", "<", "=", ">=", ">"};
    int checked = 0;
    for (int round = 0; round < 10; ++round) {
        const std::size_t m = 1 + static_cast<std::size_t>(round % 2);
        const int r = 2 + round % 2;
        std::string text;
        const int n = 1 + round % 3;
        for (int k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < m; ++i) text += " + " + std::to_string(coef(rng)) + "*x" + std::to_string(i + 1);
            text += std::string(" ") + rels[rel(rng) % 5] + " " + std::to_string(rhs(rng)) + ";";
        }
        std::vector<LinearAtom> atoms;
        try {
            atoms = parse_constraints(text, m);
        } catch (const ConstraintSyntaxError&) {
            continue;  // all coefficients zero
        }
        const Domain d = round % 3 == 0 ? Domain::Natural : Domain::Integer;
        ConstraintSystem s{atoms, d, DigitContext(r, static_cast<int>(m))};
        auto a = compile(s);
        const std::size_t depth = m == 1 ? 4 : 2;
        const long top = static_cast<long>(oracle::power(r, static_cast<long>(depth)).get_num().get_si());
        std::vector<QVector> want;
        for (const auto& x : solutions_in_box(s, top)) {
            if (std::all_of(x.begin(), x.end(), [&](const Rational& e) { return e < top; })) want.push_back(x);
        }
        std::vector<QVector> got;
        if (a.num_states() > 0) got = enumerate_oracle(a, depth);
        EXPECT_EQ(got, want) << text;
        ++checked;
    }
    EXPECT_GE(checked, 5);
}

// Vertices of the integer hull are solutions, and so is every vertex plus
// a multiple of a recession direction.
TEST_P(CompileRandom, HullGeneratorsAreSolutions) {
    std::mt19937 rng(static_cast<unsigned>(GetParam()) + 50);
    std::uniform_int_distribution<int> coef(-3, 3), rhs(-5, 5);
    int checked = 0;
    for (int round = 0; round < 6; ++round) {
        std::string text;
        for (int k = 0; k < 2; ++k) {
            text += std::to_string(coef(rng)) + "*x1 + " + std::to_string(coef(rng)) + "*x2 <= " + std::to_string(rhs(rng)) + ";";
        }
        std::vector<LinearAtom> atoms;
        try {
            atoms = parse_constraints(text, 2);
        } catch (const ConstraintSyntaxError&) {
            continue;
        }
        ConstraintSystem s{atoms, round % 2 ? Domain::Integer : Domain::Natural, DigitContext(2, 2)};
        auto h = hull(compile(s));
        for (const auto& x : solutions_in_box(s, 6)) EXPECT_TRUE(member(h, x)) << text << x;
        for (const auto& x : h.points()) {
            EXPECT_TRUE(is_integral(x)) << text << x;
            EXPECT_TRUE(s.holds(x)) << text << x;
            for (const auto& d : h.rays()) {
                for (int k = 1; k <= 3; ++k) EXPECT_TRUE(s.holds(x + d * Rational(k))) << text << x << d;
            }
        }
        ++checked;
    }
    EXPECT_GE(checked, 3);
}

INSTANTIATE_TEST_SUITE_P(Seeds, CompileRandom, ::testing::Range(1, 6));
