#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kv/algebra/errors.hpp"
#include "kv/divergence/divergence.hpp"
#include "kv/linalg/affine_system.hpp"

namespace kv {

struct KVInstance {
    Alphabet alphabet;
    int cut;
    LieSeries phi;  // sum [x_i, y_i] + sum z_j
    LieSeries xi;   // log(prod e^{x_i} e^{y_i} e^{-x_i} e^{-y_i} prod e^{z_j})
};

LieSeries phi_element(const Alphabet& alphabet, int cut);
LieSeries xi_element(const Alphabet& alphabet, int cut);
KVInstance make_instance(int g, int n, int cut);

// Duflo functions are kept through s^{cut/2}.
int duflo_order(int cut);

struct KVSolution {
    Automorphism F;
    ScalarSeries h;
};

// F(phi) - xi.
LieSeries kv1_residual(const Automorphism& F, const KVInstance& inst);
// j(F) - (sum_j tr h(z_j) - tr h(xi) - r).
CyclicSeries kv2_residual(const Automorphism& F, const ScalarSeries& h, const KVInstance& inst);

struct ResidualReport {
    LieSeries kv1;
    CyclicSeries kv2;
    std::map<int, int> kv1_nonzero;  // weight -> number of nonzero coefficients
    std::map<int, int> kv2_nonzero;
    bool pass() const { return kv1.is_zero() && kv2.is_zero(); }
};
ResidualReport residual_report(const KVSolution& sol, const KVInstance& inst);

// sum_j tr(z_j^k) - tr(a^k): the coefficient of c_k in sum tr h(z_j) - tr h(a).
CyclicSeries duflo_column(const LieSeries& a, int k);

// Solves KVII for h given F.  Free coefficients are set to zero.  Throws
// InconsistentSystem with the lowest weight at which no h exists.
ScalarSeries kv2_solve_h(const Automorphism& F, const KVInstance& inst);

enum class Strategy { joint, kv1_then_correct };

struct SolveOptions {
    Strategy strategy = Strategy::joint;
    PivotOrder pivot = PivotOrder::first;
    // When set, the Duflo function is fixed instead of solved for.
    std::optional<ScalarSeries> fixed_h;
};

// Degree-by-degree solver; the result is certified by residual_report.
// Throws InconsistentSystem when a degree cannot be solved even after
// revising the previous degree's free parameters.
KVSolution solve_kv(const KVInstance& inst, const SolveOptions& options = {});

struct KrvResult {
    bool annihilates_phi = false;
    std::optional<ScalarSeries> h;
    std::string diagnostic;
    bool pass() const { return annihilates_phi && h.has_value(); }
};
// u(phi) = 0 and div(u) = sum tr h(z_j) - tr h(phi) for some h.
KrvResult krv_check(const TangentialDerivation& u, const KVInstance& inst);

struct KrvBasisElement {
    TangentialDerivation u;
    Rational duflo;  // the coefficient c_{m/2} (zero for odd m)
};
// Basis of the degree-m solutions of the krv constraints.
std::vector<KrvBasisElement> krv_basis(const KVInstance& inst, int m);

// G(phi) = phi and j(G) = sum tr h(z_j) - tr h(phi).
KrvResult stabilizer_check(const Automorphism& G, const KVInstance& inst);

// F o G with Duflo function h + h_G; certified.  Throws PreconditionError
// when G fails the stabilizer check.
KVSolution torsor_act(const KVSolution& sol, const Automorphism& G, const KVInstance& inst);

}  // namespace kv
