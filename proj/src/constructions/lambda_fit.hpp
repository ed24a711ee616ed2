#pragma once

#include <array>
#include <map>
#include <tuple>

#include "kv/constructions/gluing.hpp"

namespace kv::detail {

// Residual coordinates keyed by (weight, block, word), so that map order
// visits weights from the lowest.
using Sample = std::map<std::tuple<int, int, Word>, Rational>;

template <class Series>
void add_sample(Sample& s, int block, const Series& series)
{
    for (const auto& [w, c] : series.terms()) s[{weight(series.alphabet(), w), block, w}] = c;
}

// Given residuals at lambda = 0, 1, 2, solves the lowest weight where they
// differ for lambda.  Throws InconsistentSystem when the residual is nonzero
// below that weight, has no root there, or is not affine there.
LambdaFit fit_lambda(const std::array<Sample, 3>& samples);

}  // namespace kv::detail
