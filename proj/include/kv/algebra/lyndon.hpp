#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "kv/algebra/terms.hpp"

namespace kv {

bool is_lyndon(const Word& w);

// w = uv with v the longest proper Lyndon suffix.  Requires |w| >= 2.
std::pair<Word, Word> standard_factorization(const Word& w);

// Tensor expansion of the standard bracketing P_w of a Lyndon word.  P_w equals
// w plus lexicographically larger rearrangements of w.  Cached per thread.
const Terms& lyndon_expansion(const Word& w);

// All Lyndon words of the given weight, lexicographically sorted.  Cached.
const std::vector<Word>& lyndon_words(const Alphabet& alphabet, int weight);

// Expresses a tensor element on the Lyndon basis by triangular elimination.
// Returns nullopt when the input is not a Lie element.
std::optional<Terms> lie_coordinates(Terms tensor);

// Least rotation of a nonempty word.
Word least_rotation(const Word& w);

}  // namespace kv
