#include "kv/constructions/elliptic.hpp"

#include "kv/derivations/named_elements.hpp"
#include "kv/problem/parallel.hpp"
#include "lambda_fit.hpp"

namespace kv {

EllipticContext make_elliptic_context(int cut)
{
    if (cut < 1) throw PreconditionError("elliptic: cut must be positive");
    EllipticContext ctx{Alphabet(0, 2), Alphabet(1, 0), cut, LieSeries(Alphabet(1, 0), cut),
                        LieSeries(Alphabet(1, 0), cut)};
    const LieSeries x = LieSeries::generator(ctx.target, cut, 0);
    const LieSeries y = LieSeries::generator(ctx.target, cut, 1);
    ctx.psi1 = adjoint_exp(x, y);
    ctx.psi2 = -y;
    return ctx;
}

namespace {

void require_03(const Alphabet& a, const char* op)
{
    if (!(a == Alphabet(0, 2))) throw PreconditionError(std::string(op) + ": source must be the (0, 2) alphabet");
}

void require_lift_cut(int source_cut, int cut, const char* op)
{
    if (source_cut < 2 * cut + 2)
        throw PreconditionError(std::string(op) + ": source cut " + std::to_string(source_cut) +
                                " is below 2*cut+2 = " + std::to_string(2 * cut + 2));
}

// u_1(psi), u_2(psi) at cut + 1.
std::array<LieSeries, 2> at_psi(const std::vector<LieSeries>& data, const EllipticContext& ctx)
{
    std::vector<LieSeries> psi{ctx.psi1, ctx.psi2};
    return {substitute(data[0], psi), substitute(data[1], psi)};
}

}  // namespace

LieSeries elliptic_stab_defect(const Automorphism& F)
{
    require_03(F.alphabet(), "elliptic_stab_check");
    const Alphabet& a = F.alphabet();
    const LieSeries z1 = LieSeries::generator(a, F.cut(), 0), z2 = LieSeries::generator(a, F.cut(), 1);
    const LieSeries d = z1 - z2;
    // Central z_j parts of f_j are invisible on images but enter the lift.
    const Rational central = F.tangential(0).coefficient(Word::letter(0)) + F.tangential(1).coefficient(Word::letter(1));
    return (apply(F, d) - d).homogeneous(4) - lie_bracket(z1, z2) * central;
}

bool elliptic_stab_check(const Automorphism& F) { return elliptic_stab_defect(F).is_zero(); }

Automorphism elliptic_lift(const Automorphism& F, int cut)
{
    require_03(F.alphabet(), "elliptic_lift");
    require_lift_cut(F.cut(), cut, "elliptic_lift");
    if (!elliptic_stab_check(F)) throw PreconditionError("elliptic_lift: F fails the stabilizer check");
    const EllipticContext ctx = make_elliptic_context(cut + 1);
    auto f = at_psi(F.tangential(), ctx);
    const LieSeries x = LieSeries::generator(ctx.target, cut + 1, 0);
    const LieSeries y = LieSeries::generator(ctx.target, cut + 1, 1);
    LieSeries img_x = bch(bch(-f[0], x), f[1]);
    LieSeries img_y = adjoint_exp(f[1], y, Rational(-1));
    if (!(img_x - x).is_zero() && (img_x - x).min_weight() < 2)
        throw PreconditionError("elliptic_lift: image of x is not positive");
    if (!(img_y - y).is_zero() && (img_y - y).min_weight() < 2)
        throw PreconditionError("elliptic_lift: image of y is not positive");
    return Automorphism(ctx.target, cut, {img_x, img_y}, {});
}

TangentialDerivation elliptic_lift_der(const TangentialDerivation& u, int cut)
{
    require_03(u.alphabet(), "elliptic_lift_der");
    require_lift_cut(u.cut(), cut, "elliptic_lift_der");
    const EllipticContext ctx = make_elliptic_context(cut + 1);
    auto s = at_psi(u.tangential(), ctx);
    const LieSeries x = LieSeries::generator(ctx.target, cut + 1, 0);
    const LieSeries y = LieSeries::generator(ctx.target, cut + 1, 1);
    const LieSeries inner = s[1] - adjoint_exp(x, s[0], Rational(-1));
    // ad_x / (1 - e^{-ad_x}) applied to inner.
    const auto b = z_over_one_minus_exp_neg(cut + 1);
    LieSeries img_x(ctx.target, cut + 1);
    LieSeries term = inner;
    for (int k = 0; k <= cut + 1 && !term.is_zero(); ++k) {
        img_x += term * b[k];
        term = lie_bracket(x, term);
    }
    return TangentialDerivation(ctx.target, cut, {img_x, lie_bracket(y, s[1])}, {});
}

EllipticResult elliptic_solve(const KVSolution& f03, int cut)
{
    require_03(f03.F.alphabet(), "elliptic_solve");
    require_lift_cut(f03.F.cut(), cut, "elliptic_solve");
    const int M = f03.F.cut();
    const KVInstance source = make_instance(0, 2, M);
    if (!residual_report(f03, source).pass())
        throw PreconditionError("elliptic_solve: the (0, 2) input is not a certified solution");

    const TangentialDerivation t = make_t(source.alphabet, M);
    auto with_lambda = [&](const Rational& lambda) { return aut_compose(f03.F, der_exp(t * lambda)); };
    std::array<detail::Sample, 3> samples;
    parallel_for(3, [&](int i) { detail::add_sample(samples[i], 0, elliptic_stab_defect(with_lambda(Rational(i)))); });
    LambdaFit fit = detail::fit_lambda(samples);

    const Automorphism lifted = elliptic_lift(with_lambda(fit.lambda), cut);
    const KVInstance inst = make_instance(1, 0, cut);
    KVSolution sol{aut_compose(lifted, make_phi_aut(inst.alphabet, cut)), ScalarSeries(duflo_order(cut))};
    const LieSeries kv1 = kv1_residual(sol.F, inst);
    if (!kv1.is_zero()) {
        throw InconsistentSystem(kv1.min_weight(),
                                 "elliptic candidate fails KVI at weight " + std::to_string(kv1.min_weight()));
    }
    sol.h = kv2_solve_h(sol.F, inst);
    if (!residual_report(sol, inst).pass()) throw InconsistentSystem(cut, "elliptic candidate failed certification");
    return EllipticResult{fit, sol};
}

}  // namespace kv
