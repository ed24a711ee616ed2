// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
// Context labels use the surface notation (g, n+1); the alphabet (g, n)
// carries n free boundary generators z_1..z_n.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "../support/random_series.hpp"
#include "kv/algebra/theta.hpp"
#include "kv/constructions/elliptic.hpp"
#include "kv/derivations/named_elements.hpp"
#include "kv/divergence/divergence.hpp"
#include "kv/io/cli.hpp"
#include "kv/problem/kv_problem.hpp"

using namespace kv;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

// Truncated log(1 + X) by repeated multiplication in the tensor algebra.
TensorSeries brute_log(const TensorSeries& a)
{
    TensorSeries x = a - TensorSeries::one(a.alphabet(), a.cut());
    TensorSeries out(a.alphabet(), a.cut());
    TensorSeries power = TensorSeries::one(a.alphabet(), a.cut());
    for (int k = 1; k <= a.cut(); ++k) {
        power = power * x;
        out += power * ratio(k % 2 ? 1 : -1, k);
    }
    return out;
}

TensorSeries brute_exp(const TensorSeries& a)
{
    TensorSeries out = TensorSeries::one(a.alphabet(), a.cut());
    TensorSeries power = out;
    for (int k = 1; k <= a.cut(); ++k) {
        power = power * a * ratio(1, k);
        out += power;
    }
    return out;
}

Outcome bch_oracle()
{
    const int N = 6;
    int checked = 0, bad = 0;
    auto test = [&](const LieSeries& a, const LieSeries& b) {
        ++checked;
        TensorSeries lhs = bch(a, b).to_tensor();
        TensorSeries rhs = brute_log(brute_exp(a.to_tensor()) * brute_exp(b.to_tensor()));
        if (!(lhs == rhs)) ++bad;
    };
    for (const Alphabet& al : {Alphabet(1, 1), Alphabet(0, 2)}) {
        for (int p = 0; p < al.size(); ++p)
            for (int q = 0; q < al.size(); ++q)
                if (p != q)
                    test(LieSeries::generator(al, N, static_cast<Letter>(p)),
                         LieSeries::generator(al, N, static_cast<Letter>(q)));
    }
    std::mt19937 rng(2024);
    Alphabet al(1, 1);
    for (int i = 0; i < 10; ++i) test(fixtures::random_lie(rng, al, N, 1, 3, 3), fixtures::random_lie(rng, al, N, 1, 3, 3));
    return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " pairs agree at N=6"};
}

Outcome cocycles()
{
    const int N = 5;
    int bad = 0, total = 0;
    std::mt19937 rng(7);
    for (const Alphabet& al : {Alphabet(0, 2), Alphabet(1, 0), Alphabet(2, 0)}) {
        for (int i = 0; i < 20; ++i) {
            auto u = fixtures::random_derivation(rng, al, N), v = fixtures::random_derivation(rng, al, N);
            ++total;
            bool ok = div(der_bracket(u, v)) == apply(u, div(v)) - apply(v, div(u));
            auto F = der_exp(u), G = der_exp(v);
            ok = ok && j_cocycle(aut_compose(F, G)) == j_cocycle(F) + apply(F, j_cocycle(G));
            if (!ok) ++bad;
        }
    }
    return {bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) +
                          " pairs satisfy both laws in (0,3), (1,1), (2,1) at N=5"};
}

Outcome classical()
{
    const KVInstance inst = make_instance(0, 2, 8);
    SolveOptions first, last;
    last.pivot = PivotOrder::last;
    KVSolution a = solve_kv(inst, first), b = solve_kv(inst, last);
    bool ok = residual_report(a, inst).pass() && residual_report(b, inst).pass();
    const Automorphism G = aut_compose(aut_inverse(a.F), b.F);
    ok = ok && stabilizer_check(G, inst).pass();
    const ScalarSeries ea = a.h.even_part(), eb = b.h.even_part();
    for (int k = 0; k <= 4; ++k) ok = ok && ea.coefficient(k) == eb.coefficient(k);
    std::ostringstream d;
    d << "(0,3) N=8 two pivots certified, difference in KRV, h_2 = " << ea.coefficient(2) << ", h_4 = "
      << ea.coefficient(4) << (a.F == b.F ? " (pivots agree)" : " (pivots differ)");
    return {ok, d.str()};
}

Outcome genus_one()
{
    const KVInstance inst = make_instance(1, 0, 6);
    KVSolution s = solve_kv(inst);
    return {residual_report(s, inst).pass(), "(1,1) N=6 residuals exactly zero"};
}

Outcome delta_krv()
{
    const int N = 8;
    const KVInstance inst = make_instance(1, 0, N);
    const Alphabet& al = inst.alphabet;
    const LieSeries bracket =
        lie_bracket(LieSeries::generator(al, N, 0), LieSeries::generator(al, N, 1));
    bool ok = true;
    std::ostringstream d;
    for (int n : {1, 2}) {
        auto delta = make_delta_2n(al, N, n);
        ok = ok && krv_check(delta, inst).pass();
        // div(delta_{2n}) is a multiple of tr([x, y]^n).
        CyclicSeries dv = div(delta), basis = tr_power(bracket, n);
        std::optional<Rational> c;
        if (basis.is_zero()) {
            if (dv.is_zero()) c = Rational(0);
        } else {
            const auto& [w, b0] = *basis.terms().begin();
            Rational scale = dv.coefficient(w) / b0;
            if (dv == basis * scale) c = scale;
        }
        ok = ok && c.has_value();
        d << "delta_" << 2 * n << ": div = " << (c ? c->get_str() : "?") << " tr([x,y]^" << n << ")  ";
    }
    return {ok, d.str()};
}

Outcome gluing()
{
    const int N = 4;
    auto f03 = solve_kv(make_instance(0, 2, N));
    SolveOptions pinned;
    pinned.fixed_h = f03.h;
    auto s10 = solve_kv(make_instance(1, 0, N), pinned);
    auto plan = make_glue_plan(Alphabet(1, 0), Alphabet(1, 0));
    auto res = combine_solutions(s10, s10, f03, plan);
    bool ok = residual_report(res.solution, make_instance(2, 0, N)).pass();

    std::mt19937 rng(31);
    const int M = 5;
    auto plan5 = make_glue_plan(Alphabet(1, 0), Alphabet(1, 0));
    int hom = 0;
    for (int i = 0; i < 10; ++i) {
        auto u = fixtures::random_derivation(rng, Alphabet(0, 2), M), v = fixtures::random_derivation(rng, Alphabet(0, 2), M);
        if (glue_der(der_bracket(u, v), plan5) == der_bracket(glue_der(u, plan5), glue_der(v, plan5))) ++hom;
    }
    ok = ok && hom == 10;
    return {ok, "(2,1) N=4 certified; glue_der bracket-compatible on " + std::to_string(hom) + "/10 pairs at N=5"};
}

Outcome elliptic()
{
    const int N = 6;
    auto f03 = solve_kv(make_instance(0, 2, 2 * N + 2));
    auto res = elliptic_solve(f03, N);
    bool ok = residual_report(res.solution, make_instance(1, 0, N)).pass();
    ok = ok && res.fit.critical_weight >= 0 && sgn(res.fit.slope) != 0;
    std::ostringstream d;
    d << "(1,1) N=6 certified; residual affine in lambda at weight " << res.fit.critical_weight << " with slope "
      << res.fit.slope << ", root lambda = " << res.fit.lambda;
    return {ok, d.str()};
}

Outcome theta()
{
    const int N = 6;
    bool ok = true;
    for (const Alphabet& al : {Alphabet(1, 0), Alphabet(0, 2)}) {
        TensorSeries t = theta_exp(al, N, boundary_word(al));
        ok = ok && log(t) == xi_element(al, N) && brute_log(t) == xi_element(al, N).to_tensor();
    }
    return {ok, "log theta_exp(boundary) = xi for (1,1) and (0,3) at N=6"};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism()
{
    const fs::path dir = fs::temp_directory_path() / "kv_acceptance";
    fs::create_directories(dir);
    std::ostringstream sink, err;
    bool ok = true;
    int runs = 0;
    const std::vector<std::vector<std::string>> commands{
        {"solve", "--g", "0", "--n", "2", "--deg", "6"},
        {"solve", "--g", "1", "--n", "0", "--deg", "5", "--strategy", "kv1-then-correct"},
        {"solve", "--g", "2", "--n", "0", "--deg", "4"},
    };
    for (std::size_t i = 0; i < commands.size(); ++i) {
        const std::string out = (dir / ("sol" + std::to_string(i) + ".json")).string();
        const std::string man = (dir / ("run" + std::to_string(i) + ".json")).string();
        auto args = commands[i];
        args.insert(args.end(), {"--out", out, "--manifest", man});
        ok = ok && run_cli(args, sink, err) == exit_ok;
        const std::string first = slurp(out);
        ok = ok && run_cli(args, sink, err) == exit_ok && slurp(out) == first;
        ok = ok && run_cli({"replay", "--manifest", man}, sink, err) == exit_ok;
        ok = ok && run_cli({"check", "--in", out}, sink, err) == exit_ok;
        ++runs;
    }
    fs::remove_all(dir);
    return {ok, std::to_string(runs) + " solves byte-identical on rerun and replay, all re-certify"};
}

}  // namespace

int main()
{
    struct Criterion {
        int id;
        double budget_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, 10, bch_oracle}, {2, 60, cocycles}, {3, 120, classical}, {4, 120, genus_one},  {5, 60, delta_krv},
        {6, 120, gluing},    {7, 180, elliptic}, {8, 10, theta},      {9, 120, determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.budget_seconds;
        const bool pass = o.pass && in_time;
        if (!pass) ++failures;
        std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << " [" << std::fixed
                  << std::setprecision(2) << secs << " s / " << std::setprecision(0) << c.budget_seconds << " s] "
                  << o.detail << (in_time ? "" : " (over time budget)") << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
