#include "kv/derivations/automorphism.hpp"

#include "kv/algebra/errors.hpp"
#include "kv/derivations/action.hpp"

namespace kv {

LieSeries normalize_conjugator(const LieSeries& f, Letter z)
{
    Rational c = f.coefficient(Word::letter(z));
    if (sgn(c) == 0) return f;
    LieSeries shift(f.alphabet(), f.cut());
    shift.add(Word::letter(z), -c);
    return bch(shift, f);
}

Automorphism::Automorphism(Alphabet alphabet, int cut) : alphabet_(alphabet), cut_(cut)
{
    if (cut < 1) throw PreconditionError("automorphism: cut must be positive");
    for (int a = 0; a < alphabet.size(); ++a) {
        auto l = static_cast<Letter>(a);
        images_.push_back(LieSeries::generator(alphabet, alphabet.weight(l) + cut, l));
    }
    for (int j = 0; j < alphabet.n(); ++j) tangential_.emplace_back(alphabet, cut);
}

Automorphism::Automorphism(Alphabet alphabet, int cut, std::vector<LieSeries> xy_images,
                           std::vector<LieSeries> tangential)
    : Automorphism(alphabet, cut)
{
    if (static_cast<int>(xy_images.size()) != 2 * alphabet.g() ||
        static_cast<int>(tangential.size()) != alphabet.n())
        throw PreconditionError("automorphism: wrong number of images");
    for (int a = 0; a < 2 * alphabet.g(); ++a) {
        auto l = static_cast<Letter>(a);
        if (!(xy_images[a].alphabet() == alphabet)) throw ContextMismatch("automorphism: image alphabet differs");
        LieSeries im = xy_images[a].with_cut(1 + cut);
        LieSeries rest = im - LieSeries::generator(alphabet, 1 + cut, l);
        if (rest.min_weight() < 2)
            throw PreconditionError("automorphism: image of " + alphabet.name(l) +
                                    " is not the generator plus higher terms");
        images_[a] = std::move(im);
    }
    for (int j = 0; j < alphabet.n(); ++j) {
        if (!(tangential[j].alphabet() == alphabet)) throw ContextMismatch("automorphism: tangential alphabet differs");
        Letter z = alphabet.z(j);
        tangential_[j] = tangential[j].with_cut(cut);
        images_[z] = adjoint_exp(tangential_[j].with_cut(cut + 2), LieSeries::generator(alphabet, cut + 2, z),
                                 Rational(-1));
    }
}

std::vector<LieSeries> Automorphism::xy_images() const
{
    return {images_.begin(), images_.begin() + 2 * alphabet_.g()};
}

bool Automorphism::is_identity() const { return *this == Automorphism(alphabet_, cut_); }

namespace {

TensorSeries substitute_images(const std::vector<LieSeries>& images, const TensorSeries& a)
{
    if (a.alphabet().size() == 0) return a;
    std::vector<TensorSeries> t;
    t.reserve(images.size());
    for (const auto& im : images) t.push_back(im.with_cut(a.cut()).to_tensor());
    return substitute(a, t);
}

LieSeries substitute_images(const std::vector<LieSeries>& images, const LieSeries& a)
{
    if (a.alphabet().size() == 0) return a;
    std::vector<LieSeries> t;
    t.reserve(images.size());
    for (const auto& im : images) t.push_back(im.with_cut(a.cut()));
    return substitute(a, t);
}

}  // namespace

TensorSeries apply(const Automorphism& F, const TensorSeries& a)
{
    if (!(F.alphabet() == a.alphabet())) throw ContextMismatch("aut_apply: alphabets differ");
    require_exact_action(a.alphabet(), a.terms(), a.cut(), F.cut(), "aut_apply");
    return substitute_images(F.images(), a);
}

LieSeries apply(const Automorphism& F, const LieSeries& a)
{
    if (!(F.alphabet() == a.alphabet())) throw ContextMismatch("aut_apply: alphabets differ");
    require_exact_action(a.alphabet(), a.terms(), a.cut(), F.cut(), "aut_apply");
    return substitute_images(F.images(), a);
}

CyclicSeries apply(const Automorphism& F, const CyclicSeries& a)
{
    return tr_project(apply(F, TensorSeries(a.alphabet(), a.cut(), a.terms())));
}

LieSeries conjugator_of(Letter z, const LieSeries& target, int cut)
{
    const Alphabet& al = target.alphabet();
    const LieSeries zz = LieSeries::generator(al, cut + 2, z);
    const LieSeries t = target.with_cut(cut + 2);
    LieSeries f(al, cut + 2);
    for (int l = 1; l <= cut; ++l) {
        LieSeries diff = (t - adjoint_exp(f, zz, Rational(-1))).homogeneous(l + 2);
        if (!diff.is_zero()) f += solve_commutator(z, diff);
    }
    if (!(adjoint_exp(f, zz, Rational(-1)) == t)) throw NotLieError("conjugator_of: target is not a conjugate");
    return f.with_cut(cut);
}

namespace {

// sum_{k>=1} c_k op^k (w) for op given as a callable on LieSeries.
template <class Op, class Coeff>
LieSeries operator_series(const LieSeries& w, Op op, Coeff coeff)
{
    LieSeries out(w.alphabet(), w.cut());
    LieSeries term = w;
    for (int k = 1;; ++k) {
        term = op(term);
        if (term.is_zero()) break;
        out += term * coeff(k);
    }
    return out;
}

// Tangential data is only fixed by the derivation up to multiples of z_j,
// so the pair (u, u_j) carries one central scalar per j.  Linear terms of
// the time-ordered exponential give the z_j coefficient of f_j as
// (u_j)_{z_j} + 1/2 sum_a (u_j)_a (u(a))_{z_j}, a running over x_i, y_i.
Rational central_shift(const TangentialDerivation& u, int j)
{
    const Alphabet& al = u.alphabet();
    const Word zj = Word::letter(al.z(j));
    Rational acc(0);
    for (int a = 0; a < 2 * al.g(); ++a) {
        auto l = static_cast<Letter>(a);
        acc += u.tangential(j).coefficient(Word::letter(l)) * u.image(l).coefficient(zj);
    }
    return acc / 2;
}

}  // namespace

Automorphism der_exp(const TangentialDerivation& u)
{
    const Alphabet& al = u.alphabet();
    const int cut = u.cut();
    auto series = [&](Letter l) {
        LieSeries w = LieSeries::generator(al, al.weight(l) + cut, l);
        return w + operator_series(w, [&](const LieSeries& s) { return apply(u, s); },
                                   [](int k) -> Rational { return 1 / factorial(k); });
    };
    std::vector<LieSeries> xy;
    for (int a = 0; a < 2 * al.g(); ++a) xy.push_back(series(static_cast<Letter>(a)));
    std::vector<LieSeries> f;
    for (int j = 0; j < al.n(); ++j) {
        Letter z = al.z(j);
        LieSeries shift(al, cut);
        shift.add(Word::letter(z), u.tangential(j).coefficient(Word::letter(z)) + central_shift(u, j));
        f.push_back(bch(shift, normalize_conjugator(conjugator_of(z, series(z), cut), z)));
    }
    return Automorphism(al, cut, std::move(xy), std::move(f));
}

TangentialDerivation aut_log(const Automorphism& F)
{
    const Alphabet& al = F.alphabet();
    const int cut = F.cut();
    auto minus_id = [&](const LieSeries& s) { return apply(F, s) - s; };
    auto coeff = [](int k) { return ratio(k % 2 ? 1 : -1, k); };
    std::vector<LieSeries> xy;
    for (int a = 0; a < 2 * al.g(); ++a) {
        auto l = static_cast<Letter>(a);
        LieSeries first = F.image(l) - LieSeries::generator(al, 1 + cut, l);
        xy.push_back(first + operator_series(first, minus_id, [&](int k) { return coeff(k + 1); }));
    }
    std::vector<LieSeries> tang;
    for (int j = 0; j < al.n(); ++j) {
        Letter z = al.z(j);
        LieSeries first = F.image(z) - LieSeries::generator(al, 2 + cut, z);
        LieSeries uz = first + operator_series(first, minus_id, [&](int k) { return coeff(k + 1); });
        tang.push_back(normalize_tangential(solve_commutator(z, uz).with_cut(cut), z));
    }
    TangentialDerivation u(al, cut, std::move(xy), tang);
    for (int j = 0; j < al.n(); ++j) {
        Letter z = al.z(j);
        tang[j].add(Word::letter(z), F.tangential(j).coefficient(Word::letter(z)) - central_shift(u, j));
    }
    return TangentialDerivation(al, cut, u.xy_images(), std::move(tang));
}

Automorphism aut_compose(const Automorphism& F, const Automorphism& G)
{
    require_same_context(F.alphabet(), F.cut(), G.alphabet(), G.cut(), "aut_compose");
    const Alphabet& al = F.alphabet();
    std::vector<LieSeries> xy;
    for (int a = 0; a < 2 * al.g(); ++a) xy.push_back(apply(F, G.image(static_cast<Letter>(a))));
    std::vector<LieSeries> f;
    for (int j = 0; j < al.n(); ++j) f.push_back(bch(F.tangential(j), apply(F, G.tangential(j))));
    return Automorphism(al, F.cut(), std::move(xy), std::move(f));
}

Automorphism aut_inverse(const Automorphism& F)
{
    const Alphabet& al = F.alphabet();
    const int cut = F.cut();
    // F^{-1} = sum_k (id - F)^k.
    auto id_minus = [&](const LieSeries& s) { return s - apply(F, s); };
    std::vector<LieSeries> all;
    for (int a = 0; a < al.size(); ++a) {
        auto l = static_cast<Letter>(a);
        LieSeries w = LieSeries::generator(al, al.weight(l) + cut, l);
        all.push_back(w + operator_series(w, id_minus, [](int) { return Rational(1); }));
    }
    std::vector<LieSeries> xy(all.begin(), all.begin() + 2 * al.g());
    std::vector<LieSeries> g;
    for (int j = 0; j < al.n(); ++j) {
        LieSeries fj = F.tangential(j);
        std::vector<LieSeries> imgs;
        for (const auto& im : all) imgs.push_back(im.with_cut(cut));
        g.push_back(-substitute(fj, imgs));
    }
    return Automorphism(al, cut, std::move(xy), std::move(g));
}

}  // namespace kv
