#pragma once

#include "kv/derivations/automorphism.hpp"

namespace kv {

// t: z_1 -> [z_1, z_2], z_2 -> [z_2, z_1] on the alphabet (g, n) = (0, 2).
TangentialDerivation make_t(const Alphabet& alphabet, int cut);

// delta_{2n} on the alphabet (1, 0): x -> ad_x^{2n} y and y the solution of
// [x, delta(y)] = [y, delta(x)] without a linear x term.  Needs cut >= 2n.
TangentialDerivation make_delta_2n(const Alphabet& alphabet, int cut, int n);

// phi(x) = x, phi(y) = (e^{ad x} - 1)/ad x (y) on the alphabet (1, 0).
Automorphism make_phi_aut(const Alphabet& alphabet, int cut);

}  // namespace kv
