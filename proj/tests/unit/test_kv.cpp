#include <gtest/gtest.h>

#include <cstdlib>

#include "../support/random_series.hpp"
#include "kv/derivations/named_elements.hpp"
#include "kv/problem/kv_problem.hpp"
#include "kv/problem/parallel.hpp"

using namespace kv;

namespace {

LieSeries gen(const Alphabet& a, int cut, Letter l) { return LieSeries::generator(a, cut, l); }

// log(prod e^{x}e^{y}e^{-x}e^{-y} prod e^{z}) by tensor-algebra arithmetic.
LieSeries brute_xi(const Alphabet& a, int cut)
{
    TensorSeries prod = TensorSeries::one(a, cut);
    for (int i = 0; i < a.g(); ++i) {
        auto x = gen(a, cut, a.x(i)), y = gen(a, cut, a.y(i));
        prod = prod * exp(x) * exp(y) * exp(-x) * exp(-y);
    }
    for (int j = 0; j < a.n(); ++j) prod = prod * exp(gen(a, cut, a.z(j)));
    return log(prod);
}

// F(phi) by substituting the images into phi in the tensor algebra.
TensorSeries brute_image_of_phi(const Automorphism& F, const LieSeries& phi)
{
    std::vector<TensorSeries> images;
    for (const auto& img : F.images()) images.push_back(img.with_cut(phi.cut()).to_tensor());
    return substitute(phi.to_tensor(), images);
}

// Even part of -r(s)/2 = (1/2) log(sinh(s/2) / (s/2)).
ScalarSeries classical_duflo_even(int order)
{
    ScalarSeries r = r_series(order);
    ScalarSeries out(order);
    for (int k = 2; k <= order; k += 2) out.set(k, -r.coefficient(k) / 2);
    return out;
}

void expect_certified(const KVSolution& sol, const KVInstance& inst)
{
    auto report = residual_report(sol, inst);
    EXPECT_TRUE(report.kv1.is_zero());
    EXPECT_TRUE(report.kv2.is_zero());
    if (inst.alphabet.size() == 0) return;
    EXPECT_EQ(LieSeries::from_tensor(brute_image_of_phi(sol.F, inst.phi)), brute_xi(inst.alphabet, inst.cut));
}

}  // namespace

TEST(Instance, XiMatchesBruteForce)
{
    for (auto [g, n] : {std::pair{0, 2}, {0, 3}, {1, 0}, {1, 1}, {2, 0}}) {
        auto inst = make_instance(g, n, 5);
        EXPECT_EQ(inst.xi, brute_xi(inst.alphabet, 5)) << g << "," << n;
        auto diff = inst.xi - inst.phi;
        if (!diff.is_zero()) EXPECT_GE(diff.min_weight(), 3);
    }
    EXPECT_THROW(make_instance(-1, 0, 3), PreconditionError);
}

TEST(Residuals, IdentityExamples)
{
    auto inst = make_instance(0, 2, 6);
    Automorphism id(inst.alphabet, 6);
    auto res = kv1_residual(id, inst);
    auto z1 = gen(inst.alphabet, 6, 0), z2 = gen(inst.alphabet, 6, 1);
    EXPECT_EQ(res.homogeneous(4), lie_bracket(z1, z2) * ratio(-1, 2));
    EXPECT_TRUE(kv2_residual(id, ScalarSeries(3), inst).is_zero());

    auto g1 = make_instance(1, 0, 4);
    EXPECT_EQ(kv2_residual(Automorphism(g1.alphabet, 4), ScalarSeries(2), g1), r_element(g1.alphabet, 4));
    EXPECT_THROW(kv1_residual(id, g1), ContextMismatch);
}

TEST(Solver, TrivialCutTwo)
{
    auto inst = make_instance(0, 2, 2);
    auto sol = solve_kv(inst);
    EXPECT_TRUE(sol.F.is_identity());
    EXPECT_TRUE(sol.h.is_zero());
}

TEST(Solver, DegenerateInstances)
{
    for (auto [g, n] : {std::pair{0, 0}, {0, 1}}) {
        auto inst = make_instance(g, n, 4);
        auto sol = solve_kv(inst);
        expect_certified(sol, inst);
    }
}

TEST(Solver, ClassicalBothStrategiesAndPivots)
{
    auto inst = make_instance(0, 2, 8);
    auto expected = classical_duflo_even(4);
    std::vector<KVSolution> sols;
    for (auto strategy : {Strategy::joint, Strategy::kv1_then_correct}) {
        for (auto pivot : {PivotOrder::first, PivotOrder::last}) {
            auto sol = solve_kv(inst, {strategy, pivot, {}});
            expect_certified(sol, inst);
            EXPECT_EQ(sol.h.even_part(), expected);
            EXPECT_EQ(kv2_solve_h(sol.F, inst).even_part(), expected);
            sols.push_back(sol);
        }
    }
    for (std::size_t i = 1; i < sols.size(); ++i) {
        auto G = aut_compose(aut_inverse(sols[0].F), sols[i].F);
        auto check = stabilizer_check(G, inst);
        EXPECT_TRUE(check.pass()) << check.diagnostic;
        auto moved = torsor_act(sols[0], G, inst);
        EXPECT_EQ(moved.F, sols[i].F);
    }
}

TEST(Solver, GenusOne)
{
    auto inst = make_instance(1, 0, 6);
    for (auto pivot : {PivotOrder::first, PivotOrder::last}) {
        auto sol = solve_kv(inst, {Strategy::joint, pivot, {}});
        expect_certified(sol, inst);
    }
    auto corrected = solve_kv(make_instance(1, 0, 5), {Strategy::kv1_then_correct, PivotOrder::first, {}});
    expect_certified(corrected, make_instance(1, 0, 5));
}

TEST(Solver, FixedDuflo)
{
    auto inst = make_instance(0, 2, 6);
    auto good = solve_kv(inst);
    auto again = solve_kv(inst, {Strategy::joint, PivotOrder::last, good.h});
    expect_certified(again, inst);
    EXPECT_EQ(again.h, good.h);

    ScalarSeries wrong(3);
    wrong.set(2, Rational(1));
    try {
        solve_kv(inst, {Strategy::joint, PivotOrder::first, wrong});
        FAIL() << "expected an inconsistent system";
    } catch (const InconsistentSystem& e) {
        EXPECT_EQ(e.weight(), 4);
    }
}

TEST(Solver, ParallelAssemblyIsDeterministic)
{
    auto inst = make_instance(1, 0, 5);
    ::setenv("KV_THREADS", "1", 1);
    auto a = solve_kv(inst);
    ::setenv("KV_THREADS", "3", 1);
    EXPECT_EQ(worker_count(), 3);
    auto b = solve_kv(inst);
    ::unsetenv("KV_THREADS");
    EXPECT_EQ(a.F, b.F);
    EXPECT_EQ(a.h, b.h);
}

TEST(DufloSolve, ObstructionWeight)
{
    auto inst = make_instance(1, 0, 4);
    try {
        kv2_solve_h(Automorphism(inst.alphabet, 4), inst);
        FAIL() << "identity cannot satisfy KVII in genus one";
    } catch (const InconsistentSystem& e) {
        EXPECT_EQ(e.weight(), 1);
    }
    auto trivial = make_instance(0, 1, 4);
    EXPECT_TRUE(kv2_solve_h(Automorphism(trivial.alphabet, 4), trivial).is_zero());
}

TEST(Krv, CheckExamples)
{
    auto inst = make_instance(1, 0, 8);
    auto zero = krv_check(TangentialDerivation(inst.alphabet, 8), inst);
    EXPECT_TRUE(zero.pass());
    EXPECT_TRUE(zero.h->is_zero());

    for (int n : {1, 2, 3}) {
        auto d = make_delta_2n(inst.alphabet, 8, n);
        auto res = krv_check(d, inst);
        EXPECT_TRUE(res.pass()) << res.diagnostic;
        // Only the coefficient of s^{n+1} can be nonzero: div has weight 2n.
        for (int k = 1; k <= res.h->order(); ++k)
            if (k != n) EXPECT_EQ(res.h->coefficient(k), 0) << n << " " << k;
    }

    const Alphabet& a = inst.alphabet;
    TangentialDerivation bad(a, 8, {lie_bracket(gen(a, 9, 0), gen(a, 9, 1)), LieSeries(a, 9)}, {});
    auto res = krv_check(bad, inst);
    EXPECT_FALSE(res.annihilates_phi);
    EXPECT_FALSE(res.pass());
    EXPECT_FALSE(res.diagnostic.empty());
}

TEST(Krv, BasisContainsDelta)
{
    auto inst = make_instance(1, 0, 6);
    auto basis = krv_basis(inst, 2);
    ASSERT_FALSE(basis.empty());
    for (const auto& b : basis) EXPECT_TRUE(krv_check(b.u, inst).pass());

    // delta_2 in the span: solve for coefficients coordinate by coordinate.
    auto d = make_delta_2n(inst.alphabet, 6, 1);
    AffineSystem sys(static_cast<int>(basis.size()));
    std::map<std::pair<int, Word>, SparseVector> rows;
    std::map<std::pair<int, Word>, Rational> rhs;
    for (int a = 0; a < 2; ++a) {
        for (const auto& [w, c] : d.image(a).terms()) rhs[{a, w}] = c;
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (const auto& [w, c] : basis[i].u.image(a).terms()) rows[{a, w}][static_cast<int>(i)] = c;
    }
    for (const auto& [key, r] : rhs) rows[key];
    for (auto& [key, row] : rows) sys.add_row(row, rhs.count(key) ? rhs[key] : Rational(0));
    EXPECT_TRUE(solve_affine(sys).consistent());
}

TEST(Krv, BasisDeterministicAndDegenerate)
{
    auto inst = make_instance(0, 2, 4);
    auto a = krv_basis(inst, 1);
    auto b = krv_basis(inst, 1);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].u, b[i].u);
    EXPECT_TRUE(krv_basis(make_instance(0, 0, 4), 2).empty());
    EXPECT_THROW(krv_basis(inst, 0), PreconditionError);
}

TEST(Torsor, IdentityAndRejection)
{
    auto inst = make_instance(1, 0, 6);
    auto sol = solve_kv(inst);
    auto same = torsor_act(sol, Automorphism(inst.alphabet, 6), inst);
    EXPECT_EQ(same.F, sol.F);
    EXPECT_EQ(same.h, sol.h);

    auto G = der_exp(make_delta_2n(inst.alphabet, 6, 1) * ratio(1, 3));
    auto moved = torsor_act(sol, G, inst);
    EXPECT_TRUE(residual_report(moved, inst).pass());

    const Alphabet& a = inst.alphabet;
    TangentialDerivation bad(a, 6, {lie_bracket(gen(a, 7, 0), gen(a, 7, 1)), LieSeries(a, 7)}, {});
    EXPECT_FALSE(stabilizer_check(der_exp(bad), inst).pass());
    EXPECT_THROW(torsor_act(sol, der_exp(bad), inst), PreconditionError);
}
