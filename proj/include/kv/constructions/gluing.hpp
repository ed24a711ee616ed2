#pragma once

#include <array>
#include <utility>
#include <vector>

#include "kv/problem/kv_problem.hpp"

namespace kv {

// Places a left (g1, n1) and a right (g2, n2) alphabet side by side inside
// (g1+g2, n1+n2).  Blocks are indexed in boundary-word order: block 0 is the
// factor whose boundary comes first.  Normally that is the left factor; when
// g1 = 0 < n1 and g2 > 0 the blocks are swapped, since the target boundary
// word lists all commutators before all z's.
struct GluePlan {
    Alphabet left;
    Alphabet right;
    Alphabet target;
    bool swapped = false;
    std::array<Alphabet, 2> blocks;
    std::array<std::vector<Letter>, 2> maps;     // block letter -> target letter
    std::vector<std::pair<int, Letter>> origin;  // target letter -> (block, block letter)

    int left_block() const { return swapped ? 1 : 0; }
    int right_block() const { return swapped ? 0 : 1; }
};

// Throws PreconditionError unless n1 = n2 = 0, g1 = 0 or g2 = 0.
GluePlan make_glue_plan(const Alphabet& left, const Alphabet& right);

// Series of a block alphabet rewritten in the target alphabet.
LieSeries relabel(const LieSeries& a, const GluePlan& plan, int block, int cut);
// phi of block k in target letters.
LieSeries block_phi(const GluePlan& plan, int block, int cut);

// P(u): w -> [w, u_k(phi_1, phi_2)] for w in block k.  u lives on (0, 2).
TangentialDerivation glue_der(const TangentialDerivation& u, const GluePlan& plan);
// P(F): w -> e^{-ad f_k(phi_1, phi_2)} w for w in block k.
Automorphism glue_aut(const Automorphism& F, const GluePlan& plan);
// F1 x F2 acting blockwise.
Automorphism product_aut(const Automorphism& left, const Automorphism& right, const GluePlan& plan);

struct LambdaFit {
    Rational lambda;
    int critical_weight = -1;  // -1 when the residual does not depend on lambda
    Rational slope;            // derivative of the first lambda-sensitive coordinate
};

struct GlueResult {
    KVSolution solution;
    LambdaFit fit;
};

// (F1 x F2) o P(F exp(lambda t)) with lambda solved at the first weight where
// it enters.  Duflo functions must agree through cut/2.  Certified.
GlueResult combine_solutions(const KVSolution& left, const KVSolution& right, const KVSolution& f03,
                             const GluePlan& plan);

}  // namespace kv
