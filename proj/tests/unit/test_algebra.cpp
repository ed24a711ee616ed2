#include <gtest/gtest.h>

#include <random>

#include "../support/random_series.hpp"
#include "kv/algebra/cyclic_series.hpp"
#include "kv/algebra/errors.hpp"
#include "kv/algebra/lie_series.hpp"
#include "kv/algebra/lyndon.hpp"
#include "kv/algebra/scalar_series.hpp"
#include "kv/algebra/theta.hpp"

using namespace kv;

namespace {

LieSeries gen(const Alphabet& a, int cut, Letter l) { return LieSeries::generator(a, cut, l); }

// Tensor logarithm followed by triangular Lyndon elimination; no Dynkin map.
LieSeries brute_log(const TensorSeries& t)
{
    TensorSeries x = t - TensorSeries::one(t.alphabet(), t.cut());
    TensorSeries acc(t.alphabet(), t.cut());
    TensorSeries p = TensorSeries::one(t.alphabet(), t.cut());
    for (int k = 1; k <= t.cut(); ++k) {
        p = p * x;
        acc += p * ratio(k % 2 ? 1 : -1, k);
    }
    return LieSeries::from_tensor(acc);
}

// Naive word-by-word product without truncation shortcuts.
Terms naive_product(const Alphabet& al, const Terms& a, const Terms& b, int cut)
{
    Terms out;
    for (const auto& [u, cu] : a)
        for (const auto& [v, cv] : b)
            if (weight(al, u) + weight(al, v) <= cut) add_term(out, u + v, cu * cv);
    return out;
}

}  // namespace

TEST(Lyndon, CountsMatchWitt)
{
    // Two letters of weight 1: 2, 1, 2, 3, 6, 9 Lyndon words.
    Alphabet a(1, 0);
    std::vector<std::size_t> expected{2, 1, 2, 3, 6, 9};
    for (int w = 1; w <= 6; ++w) EXPECT_EQ(lyndon_words(a, w).size(), expected[w - 1]) << w;
    // One weight-2 letter z and x, y: weight 2 has xy and z.
    Alphabet b(1, 1);
    EXPECT_EQ(lyndon_words(b, 2).size(), 2u);
}

TEST(Lyndon, ExpansionIsTriangular)
{
    Alphabet a(1, 1);
    for (int w = 1; w <= 6; ++w) {
        for (const auto& lw : lyndon_words(a, w)) {
            const Terms& e = lyndon_expansion(lw);
            ASSERT_FALSE(e.empty());
            EXPECT_EQ(e.begin()->first, lw);
            EXPECT_EQ(e.begin()->second, 1);
        }
    }
}

TEST(Tensor, ProductBasics)
{
    Alphabet a(1, 0);
    auto one = TensorSeries::one(a, 4);
    auto x = TensorSeries::generator(a, 4, a.x(0));
    auto y = TensorSeries::generator(a, 4, a.y(0));
    auto p = (one + x) * (one + y);
    EXPECT_EQ(p, one + x + y + x * y);
    EXPECT_EQ(x * one, x);
}

TEST(Tensor, AssociativeAgainstNaive)
{
    std::mt19937 rng(7);
    Alphabet a(1, 1);
    for (int trial = 0; trial < 5; ++trial) {
        auto p = fixtures::random_tensor(rng, a, 6, 3, 8);
        auto q = fixtures::random_tensor(rng, a, 6, 3, 8);
        auto r = fixtures::random_tensor(rng, a, 6, 3, 8);
        EXPECT_EQ((p * q) * r, p * (q * r));
        TensorSeries naive(a, 6, naive_product(a, naive_product(a, p.terms(), q.terms(), 6), r.terms(), 6));
        EXPECT_EQ((p * q) * r, naive);
    }
}

TEST(Tensor, MixedCutsRefused)
{
    Alphabet a(1, 0);
    EXPECT_THROW(TensorSeries::one(a, 3) * TensorSeries::one(a, 4), ContextMismatch);
    EXPECT_THROW(TensorSeries::one(a, 3) + TensorSeries::one(Alphabet(0, 2), 3), ContextMismatch);
}

TEST(Lie, BracketBasics)
{
    Alphabet a(1, 1);
    auto x = gen(a, 8, a.x(0)), y = gen(a, 8, a.y(0)), z = gen(a, 8, a.z(0));
    EXPECT_TRUE(lie_bracket(x, x).is_zero());
    auto xy = lie_bracket(x, y);
    EXPECT_EQ(xy.terms().size(), 1u);
    EXPECT_EQ(xy.coefficient(Word::letter(a.x(0)) + Word::letter(a.y(0))), 1);
    auto jac = lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) + lie_bracket(z, lie_bracket(x, y));
    EXPECT_TRUE(jac.is_zero());
}

TEST(Lie, JacobiOnBasisTriples)
{
    Alphabet a(1, 1);
    const int cut = 6;
    std::vector<LieSeries> basis;
    for (int w = 1; w <= 3; ++w)
        for (const auto& lw : lyndon_words(a, w)) basis.emplace_back(a, cut, Terms{{lw, Rational(1)}});
    for (const auto& p : basis)
        for (const auto& q : basis) {
            EXPECT_EQ(lie_bracket(p, q), -lie_bracket(q, p));
            for (const auto& r : basis) {
                auto j = lie_bracket(p, lie_bracket(q, r)) + lie_bracket(q, lie_bracket(r, p)) +
                         lie_bracket(r, lie_bracket(p, q));
                ASSERT_TRUE(j.is_zero());
            }
        }
}

TEST(Lie, ExpLog)
{
    Alphabet a(1, 0);
    auto x = gen(a, 4, a.x(0)), y = gen(a, 4, a.y(0));
    EXPECT_EQ(log(exp(x)), x);
    EXPECT_EQ(exp(x).coefficient(Word::letter(0) + Word::letter(0)), ratio(1, 2));
    auto c = log(exp(x) * exp(y) * exp(-x) * exp(-y));
    EXPECT_EQ(c.homogeneous(2), lie_bracket(x, y));
    EXPECT_TRUE(c.homogeneous(1).is_zero());
    EXPECT_THROW(log(TensorSeries::one(a, 4) * Rational(2)), PreconditionError);
    auto not_grouplike = TensorSeries::one(a, 4) + x.to_tensor() + TensorSeries(a, 4, Terms{{Word::letter(0) + Word::letter(1), Rational(1)}});
    EXPECT_THROW(log(not_grouplike), NotLieError);
}

TEST(Lie, ExpLogRoundtripRandom)
{
    std::mt19937 rng(11);
    for (Alphabet a : {Alphabet(1, 1), Alphabet(0, 3)}) {
        for (int t = 0; t < 5; ++t) {
            auto u = fixtures::random_lie(rng, a, 6, 1, 6, 6);
            EXPECT_EQ(log(exp(u)), u);
            EXPECT_EQ(brute_log(exp(u)), u);
        }
    }
}

TEST(Lie, BchAgainstBruteForce)
{
    Alphabet a(1, 0);
    auto x = gen(a, 6, a.x(0)), y = gen(a, 6, a.y(0));
    EXPECT_EQ(bch(x, LieSeries(a, 6)), x);
    EXPECT_TRUE(bch(x, -x).is_zero());
    auto xy = lie_bracket(x, y);
    auto expect3 = x + y + xy * ratio(1, 2) + lie_bracket(x, xy) * ratio(1, 12) - lie_bracket(y, xy) * ratio(1, 12);
    EXPECT_EQ(bch(x, y).weight_range(1, 3), expect3);
    EXPECT_EQ(bch(x, y), brute_log(exp(x) * exp(y)));
    std::mt19937 rng(3);
    for (Alphabet al : {Alphabet(1, 1), Alphabet(0, 2)}) {
        for (int t = 0; t < 4; ++t) {
            auto p = fixtures::random_lie(rng, al, 6, 1, 4, 4);
            auto q = fixtures::random_lie(rng, al, 6, 1, 4, 4);
            EXPECT_EQ(bch(p, q), brute_log(exp(p) * exp(q)));
        }
    }
}

TEST(Lie, BchAssociative)
{
    std::mt19937 rng(5);
    Alphabet a(1, 1);
    for (int t = 0; t < 3; ++t) {
        auto p = fixtures::random_lie(rng, a, 5, 1, 3, 3);
        auto q = fixtures::random_lie(rng, a, 5, 1, 3, 3);
        auto r = fixtures::random_lie(rng, a, 5, 1, 3, 3);
        EXPECT_EQ(bch(bch(p, q), r), bch(p, bch(q, r)));
    }
}

TEST(Lie, DynkinProjection)
{
    Alphabet a(1, 1);
    auto x = gen(a, 6, a.x(0)), y = gen(a, 6, a.y(0));
    auto xy = lie_bracket(x, y);
    EXPECT_EQ(dynkin_project(xy.to_tensor()), xy);
    TensorSeries w(a, 6, Terms{{Word::letter(a.x(0)) + Word::letter(a.y(0)), Rational(1)}});
    EXPECT_EQ(dynkin_project(w), xy * ratio(1, 2));
    EXPECT_TRUE(dynkin_project(TensorSeries(a, 6)).is_zero());
    EXPECT_THROW(dynkin_project(TensorSeries::one(a, 6)), PreconditionError);
    // Fixes every basis element, including those with weight-2 letters.
    for (int wt = 1; wt <= 6; ++wt)
        for (const auto& lw : lyndon_words(a, wt)) {
            LieSeries b(a, 6, Terms{{lw, Rational(1)}});
            ASSERT_EQ(dynkin_project(b.to_tensor()), b) << format_word(a, lw);
        }
    std::mt19937 rng(2);
    auto t = fixtures::random_tensor(rng, a, 6, 4, 10);
    t.add(Word{}, -t.constant_term());
    auto once = dynkin_project(t);
    EXPECT_EQ(dynkin_project(once.to_tensor()), once);
}

TEST(Lie, Substitute)
{
    Alphabet a(0, 2), b(1, 0);
    const int cut = 3;
    auto z1 = gen(a, cut, a.z(0)), z2 = gen(a, cut, a.z(1));
    std::vector<LieSeries> ident{z1, z2};
    auto c = lie_bracket(z1, z2);
    EXPECT_EQ(substitute(c, ident), c);
    auto y = gen(b, cut, b.y(0)), x = gen(b, cut, b.x(0));
    EXPECT_TRUE(substitute(c, {y, -y}).is_zero());
    auto psi = adjoint_exp(x, y);
    auto expected = y + lie_bracket(x, y) + lie_bracket(x, lie_bracket(x, y)) * ratio(1, 2);
    EXPECT_EQ(substitute(z1, {psi, -y}), expected);
    EXPECT_THROW(substitute(z1.to_tensor(), {TensorSeries::one(b, cut), y.to_tensor()}), PreconditionError);
}

TEST(Lie, SubstituteComposesAndPreservesProducts)
{
    std::mt19937 rng(9);
    Alphabet a(1, 0);
    const int cut = 6;
    std::vector<LieSeries> s{gen(a, cut, 0) + fixtures::random_lie(rng, a, cut, 2, 3, 2),
                             gen(a, cut, 1) + fixtures::random_lie(rng, a, cut, 2, 3, 2)};
    std::vector<LieSeries> t{gen(a, cut, 1) + fixtures::random_lie(rng, a, cut, 2, 3, 2),
                             gen(a, cut, 0) + fixtures::random_lie(rng, a, cut, 2, 2, 1)};
    auto p = fixtures::random_lie(rng, a, cut, 1, 4, 5);
    auto q = fixtures::random_lie(rng, a, cut, 1, 4, 5);
    std::vector<LieSeries> ts{substitute(s[0], t), substitute(s[1], t)};
    EXPECT_EQ(substitute(substitute(p, s), t), substitute(p, ts));
    EXPECT_EQ(substitute(lie_bracket(p, q), s), lie_bracket(substitute(p, s), substitute(q, s)));
    std::vector<TensorSeries> st{s[0].to_tensor(), s[1].to_tensor()};
    auto P = fixtures::random_tensor(rng, a, cut, 3, 6), Q = fixtures::random_tensor(rng, a, cut, 3, 6);
    EXPECT_EQ(substitute(P * Q, st), substitute(P, st) * substitute(Q, st));
}

TEST(Lie, SolveCommutator)
{
    Alphabet a(1, 1);
    std::mt19937 rng(4);
    for (int t = 0; t < 5; ++t) {
        auto u = fixtures::random_lie(rng, a, 7, 1, 5, 5);
        for (Letter g = 0; g < a.size(); ++g) {
            auto target = lie_bracket(gen(a, 7, g), u);
            auto sol = solve_commutator(g, target);
            EXPECT_EQ(lie_bracket(gen(a, 7, g), sol), target);
            EXPECT_EQ(sol.coefficient(Word::letter(g)), 0);
        }
    }
    EXPECT_THROW(solve_commutator(0, gen(a, 7, 1)), NotLieError);
}

TEST(Cyclic, Trace)
{
    Alphabet a(1, 0);
    Word xy = Word::letter(0) + Word::letter(1), yx = Word::letter(1) + Word::letter(0);
    CyclicSeries c(a, 4);
    c.add(yx, Rational(1));
    EXPECT_EQ(c.coefficient(xy), 1);
    std::mt19937 rng(1);
    for (int t = 0; t < 5; ++t) {
        auto p = fixtures::random_tensor(rng, a, 6, 3, 5), q = fixtures::random_tensor(rng, a, 6, 3, 5);
        EXPECT_TRUE(tr_project(commutator(p, q)).is_zero());
        // Scramble each word by a random rotation.
        auto r = fixtures::random_tensor(rng, a, 6, 6, 12);
        TensorSeries scrambled(a, 6);
        for (const auto& [w, cw] : r.terms()) {
            std::size_t k = w.empty() ? 0 : rng() % w.size();
            scrambled.add(w.substr(k) + w.substr(0, k), cw);
        }
        EXPECT_EQ(tr_project(r), tr_project(scrambled));
    }
}

TEST(Scalar, RSeries)
{
    auto r = r_series(6);
    EXPECT_EQ(r.coefficient(1), ratio(-1, 2));
    EXPECT_EQ(r.coefficient(2), ratio(-1, 24));
    EXPECT_EQ(r.coefficient(3), 0);
    EXPECT_EQ(r.coefficient(4), ratio(1, 2880));
    auto b = bernoulli_numbers(6);
    EXPECT_EQ(b[1], ratio(-1, 2));
    EXPECT_EQ(b[6], ratio(1, 42));
    auto c = z_over_one_minus_exp_neg(3);
    EXPECT_EQ(c[1], ratio(1, 2));
    EXPECT_EQ(c[2], ratio(1, 12));
}

TEST(Theta, Expansion)
{
    Alphabet a(1, 1);
    auto x = gen(a, 6, a.x(0));
    EXPECT_EQ(theta_exp(a, 6, parse_group_word("a1")), exp(x));
    EXPECT_EQ(theta_exp(a, 6, parse_group_word("a1 a1^-1")), TensorSeries::one(a, 6));
    EXPECT_THROW(parse_group_word("q1"), PreconditionError);
    EXPECT_THROW(theta_exp(a, 6, parse_group_word("a2")), PreconditionError);
    auto boundary = theta_exp(a, 6, boundary_word(a));
    EXPECT_NO_THROW(log(boundary));
}
