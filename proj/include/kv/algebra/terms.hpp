#pragma once

#include <map>

#include "kv/algebra/alphabet.hpp"
#include "kv/algebra/rational.hpp"

namespace kv {

// Sparse coefficient map shared by all word-indexed series.  Zero
// coefficients are never stored.
using Terms = std::map<Word, Rational>;

inline void add_term(Terms& terms, const Word& w, const Rational& c)
{
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms.erase(it);
    }
}

inline void add_scaled(Terms& into, const Terms& from, const Rational& scale)
{
    if (sgn(scale) == 0) return;
    for (const auto& [w, c] : from) add_term(into, w, c * scale);
}

inline Terms scaled(const Terms& terms, const Rational& scale)
{
    Terms out;
    if (sgn(scale) == 0) return out;
    for (const auto& [w, c] : terms) out.emplace(w, c * scale);
    return out;
}

// Keeps the terms whose weight lies in [lo, hi].
Terms weight_window(const Alphabet& alphabet, const Terms& terms, int lo, int hi);

int min_weight(const Alphabet& alphabet, const Terms& terms, int fallback);
int max_weight(const Alphabet& alphabet, const Terms& terms);

}  // namespace kv
