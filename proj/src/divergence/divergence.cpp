#include "kv/divergence/divergence.hpp"

#include <unordered_map>

#include "kv/algebra/errors.hpp"
#include "kv/algebra/lyndon.hpp"

namespace kv {

namespace {

const Terms& partial_of_basis(Letter w, const Word& lyndon)
{
    thread_local std::unordered_map<Word, Terms, WordHash> cache[256];
    auto& memo = cache[w];
    if (auto it = memo.find(lyndon); it != memo.end()) return it->second;
    Terms out;
    if (lyndon.size() == 1) {
        if (lyndon[0] == w) out.emplace(Word{}, Rational(1));
    } else {
        auto [u, v] = standard_factorization(lyndon);
        // d[u, v] = P_u dP_v - P_v dP_u
        Terms du = partial_of_basis(w, u);
        Terms dv = partial_of_basis(w, v);
        const Terms& pu = lyndon_expansion(u);
        const Terms& pv = lyndon_expansion(v);
        for (const auto& [a, ca] : pu)
            for (const auto& [b, cb] : dv) add_term(out, a + b, ca * cb);
        for (const auto& [a, ca] : pv)
            for (const auto& [b, cb] : du) add_term(out, a + b, -(ca * cb));
    }
    return memo.emplace(lyndon, std::move(out)).first->second;
}

}  // namespace

TensorSeries partial_derivative(Letter w, const LieSeries& a)
{
    if (w >= a.alphabet().size()) throw PreconditionError("partial_derivative: generator outside alphabet");
    Terms out;
    for (const auto& [lw, c] : a.terms()) add_scaled(out, partial_of_basis(w, lw), c);
    return TensorSeries(a.alphabet(), a.cut(), std::move(out));
}

CyclicSeries div(const TangentialDerivation& u)
{
    const Alphabet& al = u.alphabet();
    const int cut = u.cut();
    CyclicSeries out(al, cut);
    for (int a = 0; a < 2 * al.g(); ++a) {
        auto l = static_cast<Letter>(a);
        out += tr_project(partial_derivative(l, u.image(l)).with_cut(cut));
    }
    for (int j = 0; j < al.n(); ++j) {
        Letter z = al.z(j);
        TensorSeries d = partial_derivative(z, u.tangential(j));
        out += tr_project(TensorSeries::generator(al, cut, z) * d.with_cut(cut));
    }
    return out;
}

CyclicSeries j_of_exp(const TangentialDerivation& u)
{
    CyclicSeries d = div(u);
    CyclicSeries out = d;
    CyclicSeries term = d;
    for (int k = 1; !term.is_zero(); ++k) {
        term = apply(u, term);
        out += term * (1 / factorial(k + 1));
    }
    return out;
}

CyclicSeries j_cocycle(const Automorphism& F) { return j_of_exp(aut_log(F)); }

CyclicSeries r_element(const Alphabet& alphabet, int cut)
{
    CyclicSeries out(alphabet, cut);
    ScalarSeries r = r_series(cut);
    for (int a = 0; a < 2 * alphabet.g(); ++a) {
        Word w;
        for (int k = 1; k <= cut; ++k) {
            w.push_back(static_cast<Letter>(a));
            out.add(w, r.coefficient(k));
        }
    }
    return out;
}

CyclicSeries tr_power(const LieSeries& a, int k)
{
    return tr_project(power(a.to_tensor(), k));
}

CyclicSeries tr_h(const ScalarSeries& h, const LieSeries& a)
{
    CyclicSeries out(a.alphabet(), a.cut());
    TensorSeries t = a.to_tensor();
    TensorSeries p = TensorSeries::one(a.alphabet(), a.cut());
    for (int k = 1; k <= h.order(); ++k) {
        p = p * t;
        if (p.is_zero()) break;
        if (sgn(h.coefficient(k)) != 0) out += tr_project(p) * h.coefficient(k);
    }
    return out;
}

}  // namespace kv
