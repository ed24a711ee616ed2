#include "kv/constructions/gluing.hpp"

#include "kv/derivations/named_elements.hpp"
#include "kv/problem/parallel.hpp"
#include "lambda_fit.hpp"

namespace kv {

namespace detail {

LambdaFit fit_lambda(const std::array<Sample, 3>& s)
{
    auto at = [](const Sample& m, const auto& key) -> Rational {
        auto it = m.find(key);
        return it == m.end() ? Rational(0) : it->second;
    };
    std::map<std::tuple<int, int, Word>, int> all;
    for (int i = 0; i < 2; ++i)
        for (const auto& [key, c] : s[i]) all.emplace(key, 0);
    int critical = -1;
    for (const auto& [key, unused] : all) {
        if (at(s[0], key) != at(s[1], key)) {
            critical = std::get<0>(key);
            break;
        }
    }
    if (critical < 0) {
        if (s[0].empty()) return LambdaFit{Rational(0), -1, Rational(0)};
        const int w = std::get<0>(s[0].begin()->first);
        throw InconsistentSystem(w, "residual is nonzero at weight " + std::to_string(w) +
                                        " and does not depend on lambda");
    }
    if (!s[0].empty() && std::get<0>(s[0].begin()->first) < critical) {
        const int w = std::get<0>(s[0].begin()->first);
        throw InconsistentSystem(w, "residual is nonzero at weight " + std::to_string(w) +
                                        ", below the first lambda-sensitive weight " + std::to_string(critical));
    }

    std::map<std::tuple<int, int, Word>, int> keys;
    for (const auto& sample : s)
        for (const auto& [key, c] : sample)
            if (std::get<0>(key) == critical) keys.emplace(key, 0);
    std::optional<LambdaFit> fit;
    for (const auto& [key, unused] : keys) {
        const Rational r0 = at(s[0], key);
        const Rational slope = at(s[1], key) - r0;
        if (at(s[2], key) != r0 + 2 * slope)
            throw InconsistentSystem(critical, "residual is not affine in lambda at weight " + std::to_string(critical));
        if (!fit && sgn(slope) != 0) fit = LambdaFit{-r0 / slope, critical, slope};
    }
    for (const auto& [key, unused] : keys) {
        const Rational r0 = at(s[0], key);
        const Rational slope = at(s[1], key) - r0;
        if (r0 + fit->lambda * slope != 0)
            throw InconsistentSystem(critical, "no lambda annihilates the residual at weight " + std::to_string(critical));
    }
    return *fit;
}

}  // namespace detail

GluePlan make_glue_plan(const Alphabet& left, const Alphabet& right)
{
    if (!(left.n() == 0 && right.n() == 0) && left.g() != 0 && right.g() != 0)
        throw PreconditionError("glue: requires n1 = n2 = 0, g1 = 0 or g2 = 0");
    GluePlan plan;
    plan.left = left;
    plan.right = right;
    plan.target = Alphabet(left.g() + right.g(), left.n() + right.n());
    plan.swapped = left.g() == 0 && left.n() > 0 && right.g() > 0;
    plan.blocks[plan.left_block()] = left;
    plan.blocks[plan.right_block()] = right;
    plan.origin.resize(plan.target.size());
    int g_offset = 0;
    int n_offset = 0;
    for (int k = 0; k < 2; ++k) {
        const Alphabet& b = plan.blocks[k];
        auto& map = plan.maps[k];
        map.resize(b.size());
        for (int i = 0; i < b.g(); ++i) {
            map[b.x(i)] = plan.target.x(g_offset + i);
            map[b.y(i)] = plan.target.y(g_offset + i);
        }
        for (int j = 0; j < b.n(); ++j) map[b.z(j)] = plan.target.z(n_offset + j);
        for (int a = 0; a < b.size(); ++a) plan.origin[map[a]] = {k, static_cast<Letter>(a)};
        g_offset += b.g();
        n_offset += b.n();
    }
    return plan;
}

LieSeries relabel(const LieSeries& a, const GluePlan& plan, int block, int cut)
{
    if (!(a.alphabet() == plan.blocks[block])) throw ContextMismatch("relabel: series is not on the block alphabet");
    if (a.is_zero()) return LieSeries(plan.target, cut);
    std::vector<LieSeries> images;
    for (Letter l : plan.maps[block]) images.push_back(LieSeries::generator(plan.target, cut, l));
    return substitute(a.with_cut(cut), images);
}

LieSeries block_phi(const GluePlan& plan, int block, int cut)
{
    return relabel(phi_element(plan.blocks[block], cut), plan, block, cut);
}

namespace {

void require_03(const Alphabet& a, const char* op)
{
    if (!(a == Alphabet(0, 2))) throw PreconditionError(std::string(op) + ": source must be the (0, 2) alphabet");
}

// u_k(phi_1, phi_2) for both k.
std::array<LieSeries, 2> substitute_phis(const std::vector<LieSeries>& data, const GluePlan& plan, int cut)
{
    std::vector<LieSeries> phis{block_phi(plan, 0, cut), block_phi(plan, 1, cut)};
    return {substitute(data[0].with_cut(cut), phis), substitute(data[1].with_cut(cut), phis)};
}

}  // namespace

TangentialDerivation glue_der(const TangentialDerivation& u, const GluePlan& plan)
{
    require_03(u.alphabet(), "glue_der");
    const int N = u.cut();
    const Alphabet& t = plan.target;
    auto s = substitute_phis(u.tangential(), plan, N + 1);
    std::vector<LieSeries> xy;
    for (int a = 0; a < 2 * t.g(); ++a)
        xy.push_back(lie_bracket(LieSeries::generator(t, N + 1, static_cast<Letter>(a)), s[plan.origin[a].first]));
    std::vector<LieSeries> tang;
    for (int j = 0; j < t.n(); ++j) tang.push_back(s[plan.origin[t.z(j)].first].with_cut(N));
    return TangentialDerivation(t, N, std::move(xy), std::move(tang));
}

Automorphism glue_aut(const Automorphism& F, const GluePlan& plan)
{
    require_03(F.alphabet(), "glue_aut");
    const int N = F.cut();
    const Alphabet& t = plan.target;
    auto f = substitute_phis(F.tangential(), plan, N + 1);
    std::vector<LieSeries> xy;
    for (int a = 0; a < 2 * t.g(); ++a) {
        xy.push_back(adjoint_exp(f[plan.origin[a].first], LieSeries::generator(t, N + 1, static_cast<Letter>(a)),
                                 Rational(-1)));
    }
    std::vector<LieSeries> tang;
    for (int j = 0; j < t.n(); ++j) tang.push_back(f[plan.origin[t.z(j)].first].with_cut(N));
    return Automorphism(t, N, std::move(xy), std::move(tang));
}

Automorphism product_aut(const Automorphism& left, const Automorphism& right, const GluePlan& plan)
{
    if (!(left.alphabet() == plan.left) || !(right.alphabet() == plan.right))
        throw ContextMismatch("product_aut: factors do not match the plan");
    if (left.cut() != right.cut()) throw ContextMismatch("product_aut: factors have different cuts");
    const int N = left.cut();
    const Alphabet& t = plan.target;
    auto factor = [&](int block) -> const Automorphism& { return block == plan.left_block() ? left : right; };
    std::vector<LieSeries> xy;
    for (int a = 0; a < 2 * t.g(); ++a) {
        auto [block, l] = plan.origin[a];
        xy.push_back(relabel(factor(block).image(l), plan, block, N + 1));
    }
    std::vector<LieSeries> tang;
    for (int j = 0; j < t.n(); ++j) {
        auto [block, l] = plan.origin[t.z(j)];
        tang.push_back(relabel(factor(block).tangential(plan.blocks[block].index(l)), plan, block, N));
    }
    return Automorphism(t, N, std::move(xy), std::move(tang));
}

GlueResult combine_solutions(const KVSolution& left, const KVSolution& right, const KVSolution& f03,
                             const GluePlan& plan)
{
    require_03(f03.F.alphabet(), "combine_solutions");
    const int N = f03.F.cut();
    if (left.F.cut() != N || right.F.cut() != N) throw ContextMismatch("combine_solutions: cuts differ");
    const int K = duflo_order(N);
    const ScalarSeries h = f03.h.truncated(K);
    if (!(left.h.truncated(K) == h) || !(right.h.truncated(K) == h))
        throw PreconditionError("combine_solutions: Duflo functions do not coincide");

    const KVInstance inst = make_instance(plan.target.g(), plan.target.n(), N);
    const Automorphism product = product_aut(left.F, right.F, plan);
    const TangentialDerivation t = make_t(f03.F.alphabet(), N);
    auto candidate = [&](const Rational& lambda) {
        return aut_compose(product, glue_aut(aut_compose(f03.F, der_exp(t * lambda)), plan));
    };

    std::array<detail::Sample, 3> samples;
    parallel_for(3, [&](int i) {
        Automorphism F = candidate(Rational(i));
        detail::add_sample(samples[i], 0, kv1_residual(F, inst));
        detail::add_sample(samples[i], 1, kv2_residual(F, h, inst));
    });
    GlueResult out{KVSolution{candidate(Rational(0)), h}, detail::fit_lambda(samples)};
    out.solution.F = candidate(out.fit.lambda);
    ResidualReport report = residual_report(out.solution, inst);
    if (!report.pass()) {
        int w = N;
        if (!report.kv1_nonzero.empty()) w = std::min(w, report.kv1_nonzero.begin()->first);
        if (!report.kv2_nonzero.empty()) w = std::min(w, report.kv2_nonzero.begin()->first);
        throw InconsistentSystem(w, "glued candidate fails certification at weight " + std::to_string(w));
    }
    return out;
}

}  // namespace kv
