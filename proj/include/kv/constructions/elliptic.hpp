#pragma once

#include "kv/constructions/gluing.hpp"

namespace kv {

// psi_1 = e^{ad x} y and psi_2 = -y on the alphabet (1, 0).
struct EllipticContext {
    Alphabet source{0, 2};
    Alphabet target{1, 0};
    int cut;
    LieSeries psi1;
    LieSeries psi2;
};
EllipticContext make_elliptic_context(int cut);

// Weight-4 part of F(z1 - z2) - (z1 - z2), minus (c_1 + c_2)[z1, z2] where c_j
// is the z_j coefficient of f_j (zero for normalized conjugators).  F lives on (0, 2).
LieSeries elliptic_stab_defect(const Automorphism& F);
// Passes iff the defect vanishes, so that F(z1 - z2) - (z1 - z2) starts in
// weight 6.  This is exactly the condition for the lift to be positive.
bool elliptic_stab_check(const Automorphism& F);

// Lift to (1, 0) at derivation cut `cut`:
//   x -> log(e^{-f_1(psi)} e^x e^{f_2(psi)}),  y -> e^{-ad f_2(psi)} y.
// Substituting weight-1 psi's for weight-2 z's halves weights, so F must be
// known through cut 2*cut + 2.
Automorphism elliptic_lift(const Automorphism& F, int cut);
// Infinitesimal version, computed by the Lie formulas
//   x -> (ad_x / (1 - e^{-ad_x}))(u_2(psi) - e^{-ad_x} u_1(psi)),  y -> [y, u_2(psi)].
TangentialDerivation elliptic_lift_der(const TangentialDerivation& u, int cut);

struct EllipticResult {
    LambdaFit fit;
    KVSolution solution;
};

// Chooses lambda so that F exp(lambda t) passes the stabilizer check, lifts,
// composes with the genus-one automorphism phi, solves for h and certifies.
EllipticResult elliptic_solve(const KVSolution& f03, int cut);

}  // namespace kv
