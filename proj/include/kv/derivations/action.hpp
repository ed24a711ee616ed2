#pragma once

#include <vector>

#include "kv/algebra/lie_series.hpp"

namespace kv {

// Throws PreconditionError when acting on `terms` (cut input_cut) would need
// derivation degrees above der_cut.
void require_exact_action(const Alphabet& alphabet, const Terms& terms, int input_cut, int der_cut, const char* op);

// Re-cuts one image per generator to weight(generator) + cut.
std::vector<LieSeries> recut_images(const Alphabet& alphabet, int cut, const std::vector<LieSeries>& images);

// Leibniz extension of a generator -> image map to the tensor algebra,
// truncated at a.cut().
TensorSeries apply_derivation_images(const Alphabet& alphabet, const std::vector<LieSeries>& images,
                                     const TensorSeries& a);

}  // namespace kv
