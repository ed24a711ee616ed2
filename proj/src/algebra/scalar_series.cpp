#include "kv/algebra/scalar_series.hpp"

#include <algorithm>

#include "kv/algebra/errors.hpp"

namespace kv {

ScalarSeries::ScalarSeries(int order)
{
    if (order < 0) throw PreconditionError("scalar series: negative order");
    coeffs_.assign(order + 1, Rational(0));
}

const Rational& ScalarSeries::coefficient(int k) const
{
    static const Rational zero(0);
    if (k <= 0 || k > order()) return zero;
    return coeffs_[k];
}

void ScalarSeries::set(int k, Rational c)
{
    if (k <= 0 || k > order()) throw PreconditionError("scalar series: coefficient index out of range");
    coeffs_[k] = std::move(c);
}

bool ScalarSeries::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

ScalarSeries ScalarSeries::truncated(int order) const
{
    ScalarSeries out(order);
    for (int k = 1; k <= std::min(order, this->order()); ++k) out.coeffs_[k] = coeffs_[k];
    return out;
}

ScalarSeries ScalarSeries::even_part() const
{
    ScalarSeries out(order());
    for (int k = 2; k <= order(); k += 2) out.coeffs_[k] = coeffs_[k];
    return out;
}

ScalarSeries& ScalarSeries::operator+=(const ScalarSeries& other)
{
    if (other.order() > order()) coeffs_.resize(other.coeffs_.size(), Rational(0));
    for (int k = 1; k <= other.order(); ++k) coeffs_[k] += other.coeffs_[k];
    return *this;
}

ScalarSeries& ScalarSeries::operator-=(const ScalarSeries& other)
{
    if (other.order() > order()) coeffs_.resize(other.coeffs_.size(), Rational(0));
    for (int k = 1; k <= other.order(); ++k) coeffs_[k] -= other.coeffs_[k];
    return *this;
}

std::vector<Rational> bernoulli_numbers(int order)
{
    std::vector<Rational> b(order + 1);
    b[0] = 1;
    for (int m = 1; m <= order; ++m) {
        Rational acc(0);
        mpz_class binom = 1;  // C(m+1, k)
        for (int k = 0; k < m; ++k) {
            acc += Rational(binom) * b[k];
            binom = binom * (m + 1 - k) / (k + 1);
        }
        b[m] = -acc / (m + 1);
    }
    return b;
}

std::vector<Rational> z_over_one_minus_exp_neg(int order)
{
    auto b = bernoulli_numbers(order);
    std::vector<Rational> out(order + 1);
    for (int k = 0; k <= order; ++k) out[k] = (k % 2 ? -b[k] : b[k]) / factorial(k);
    return out;
}

ScalarSeries r_series(int order)
{
    // s/(e^s - 1) = 1 + g(s), g(s) = sum_{k>=1} B_k s^k / k!
    auto b = bernoulli_numbers(order);
    std::vector<Rational> g(order + 1, Rational(0));
    for (int k = 1; k <= order; ++k) g[k] = b[k] / factorial(k);

    std::vector<Rational> result(order + 1, Rational(0));
    std::vector<Rational> power(order + 1, Rational(0));
    power[0] = 1;
    for (int m = 1; m <= order; ++m) {
        std::vector<Rational> next(order + 1, Rational(0));
        for (int i = 0; i <= order; ++i) {
            if (sgn(power[i]) == 0) continue;
            for (int j = 1; i + j <= order; ++j) next[i + j] += power[i] * g[j];
        }
        power = std::move(next);
        Rational scale = ratio(m % 2 ? 1 : -1, m);
        for (int k = 1; k <= order; ++k) result[k] += scale * power[k];
    }
    ScalarSeries out(order);
    for (int k = 1; k <= order; ++k) out.set(k, result[k]);
    return out;
}

}  // namespace kv
