#pragma once

#include "kv/algebra/scalar_series.hpp"
#include "kv/derivations/automorphism.hpp"

namespace kv {

// Right partial derivative: the unique element with a = sum_w (d_w a) w in
// U(L), equivalently the first-order variation a(w + eps xi) = a + eps
// ad(d_w a) xi.  Computed from the bracket recursion d[a,b] = a db - b da.
// The result keeps the cut of a.
TensorSeries partial_derivative(Letter w, const LieSeries& a);

// sum_i tr(d_{x_i} u(x_i)) + tr(d_{y_i} u(y_i)) + sum_j tr(z_j d_{z_j} u_j),
// at the cut of u.
CyclicSeries div(const TangentialDerivation& u);

// Group cocycle: j(exp u) = sum_k u^k div(u) / (k+1)!, through aut_log.
CyclicSeries j_cocycle(const Automorphism& F);
CyclicSeries j_of_exp(const TangentialDerivation& u);

// sum_i tr r(x_i) + tr r(y_i), r(s) = log(s / (e^s - 1)).
CyclicSeries r_element(const Alphabet& alphabet, int cut);

// sum_k c_k tr(a^k).
CyclicSeries tr_h(const ScalarSeries& h, const LieSeries& a);
// tr(a^k) alone.
CyclicSeries tr_power(const LieSeries& a, int k);

}  // namespace kv
