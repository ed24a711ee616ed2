#pragma once

#include <string_view>
#include <vector>

#include "kv/algebra/tensor_series.hpp"

namespace kv {

// A letter of the fundamental-group word: alpha_i, beta_i or gamma_j, with an
// exponent of +1 or -1.  Indices are zero-based.
struct GroupLetter {
    enum class Kind { alpha, beta, gamma } kind;
    int index;
    bool inverse = false;
};

// Parses whitespace-separated tokens a<i>, b<i>, c<j> (one-based), each
// optionally followed by ^-1, e.g. "a1 b1 a1^-1 b1^-1 c1".
std::vector<GroupLetter> parse_group_word(std::string_view text);

// The expansion alpha_i -> e^{x_i}, beta_i -> e^{y_i}, gamma_j -> e^{z_j},
// extended multiplicatively.  Throws PreconditionError for a letter outside
// the alphabet.
TensorSeries theta_exp(const Alphabet& alphabet, int cut, const std::vector<GroupLetter>& word);

// prod_i [alpha_i, beta_i] prod_j gamma_j.
std::vector<GroupLetter> boundary_word(const Alphabet& alphabet);

}  // namespace kv
