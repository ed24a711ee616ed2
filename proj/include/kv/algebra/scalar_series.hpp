#pragma once

#include <vector>

#include "kv/algebra/rational.hpp"

namespace kv {

// One-variable power series sum_{k=1}^{order} c_k s^k with zero constant term.
class ScalarSeries {
public:
    explicit ScalarSeries(int order = 0);

    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const Rational& coefficient(int k) const;
    void set(int k, Rational c);
    bool is_zero() const;

    ScalarSeries truncated(int order) const;
    ScalarSeries even_part() const;

    ScalarSeries& operator+=(const ScalarSeries& other);
    ScalarSeries& operator-=(const ScalarSeries& other);
    friend ScalarSeries operator+(ScalarSeries a, const ScalarSeries& b) { return a += b; }
    friend ScalarSeries operator-(ScalarSeries a, const ScalarSeries& b) { return a -= b; }
    friend bool operator==(const ScalarSeries&, const ScalarSeries&) = default;

private:
    std::vector<Rational> coeffs_;  // coeffs_[0] == 0 always
};

// r(s) = log(s / (e^s - 1)) through s^order.
ScalarSeries r_series(int order);

// Coefficients b_k of z / (1 - e^{-z}) = sum b_k z^k, k = 0..order.
std::vector<Rational> z_over_one_minus_exp_neg(int order);

// Bernoulli numbers B_0..B_order (B_1 = -1/2).
std::vector<Rational> bernoulli_numbers(int order);

}  // namespace kv
