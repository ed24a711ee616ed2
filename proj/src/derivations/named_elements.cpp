#include "kv/derivations/named_elements.hpp"

#include "kv/algebra/errors.hpp"

namespace kv {

TangentialDerivation make_t(const Alphabet& alphabet, int cut)
{
    if (alphabet.g() != 0 || alphabet.n() != 2) throw PreconditionError("make_t: needs the (g, n) = (0, 2) alphabet");
    auto z1 = LieSeries::generator(alphabet, cut, alphabet.z(0));
    auto z2 = LieSeries::generator(alphabet, cut, alphabet.z(1));
    return TangentialDerivation(alphabet, cut, {}, {z2, z1});
}

TangentialDerivation make_delta_2n(const Alphabet& alphabet, int cut, int n)
{
    if (alphabet.g() != 1 || alphabet.n() != 0)
        throw PreconditionError("make_delta_2n: needs the (g, n) = (1, 0) alphabet");
    if (n < 1) throw PreconditionError("make_delta_2n: n must be positive");
    if (cut < 2 * n) throw PreconditionError("make_delta_2n: cut must be at least 2n");
    const int c = cut + 1;
    auto x = LieSeries::generator(alphabet, c, alphabet.x(0));
    auto y = LieSeries::generator(alphabet, c, alphabet.y(0));
    LieSeries dx = y;
    for (int k = 0; k < 2 * n; ++k) dx = lie_bracket(x, dx);
    LieSeries dy = solve_commutator(alphabet.x(0), lie_bracket(y, dx));
    return TangentialDerivation(alphabet, cut, {dx, dy}, {});
}

Automorphism make_phi_aut(const Alphabet& alphabet, int cut)
{
    if (alphabet.g() != 1 || alphabet.n() != 0) throw PreconditionError("make_phi_aut: needs the (g, n) = (1, 0) alphabet");
    const int c = cut + 1;
    auto x = LieSeries::generator(alphabet, c, alphabet.x(0));
    auto y = LieSeries::generator(alphabet, c, alphabet.y(0));
    LieSeries image = y;
    LieSeries term = y;
    for (int k = 1; k <= cut; ++k) {
        term = lie_bracket(x, term);
        image += term * (1 / factorial(k + 1));
    }
    return Automorphism(alphabet, cut, {x, image}, {});
}

}  // namespace kv
