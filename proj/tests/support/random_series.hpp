#pragma once

#include <ostream>
#include <random>

#include "kv/algebra/lie_series.hpp"
#include "kv/algebra/lyndon.hpp"

namespace kv::fixtures {

// Sparse random Lie series: `count` Lyndon keys with weight in [lo, hi] and
// small integer coefficients.
inline LieSeries random_lie(std::mt19937& rng, const Alphabet& alphabet, int cut, int lo, int hi, int count)
{
    LieSeries out(alphabet, cut);
    std::vector<Word> pool;
    for (int w = lo; w <= std::min(hi, cut); ++w) {
        const auto& words = lyndon_words(alphabet, w);
        pool.insert(pool.end(), words.begin(), words.end());
    }
    if (pool.empty()) return out;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int i = 0; i < count; ++i) out.add(pool[pick(rng)], ratio(coeff(rng), 1 + (i % 2)));
    return out;
}

inline TensorSeries random_tensor(std::mt19937& rng, const Alphabet& alphabet, int cut, int max_len, int count)
{
    TensorSeries out(alphabet, cut);
    std::uniform_int_distribution<int> letter(0, alphabet.size() - 1);
    std::uniform_int_distribution<int> len(1, max_len);
    std::uniform_int_distribution<int> coeff(-4, 4);
    for (int i = 0; i < count; ++i) {
        Word w;
        int l = len(rng);
        for (int k = 0; k < l; ++k) w.push_back(static_cast<Letter>(letter(rng)));
        out.add(w, Rational(coeff(rng)));
    }
    return out;
}

}  // namespace kv::fixtures

namespace kv {

inline void print_terms(const Alphabet& a, const Terms& terms, std::ostream* os)
{
    *os << "{";
    for (const auto& [w, c] : terms) *os << " " << c.get_str() << "*[" << format_word(a, w) << "]";
    *os << " }";
}

inline void PrintTo(const LieSeries& s, std::ostream* os) { print_terms(s.alphabet(), s.terms(), os); }
inline void PrintTo(const TensorSeries& s, std::ostream* os) { print_terms(s.alphabet(), s.terms(), os); }

}  // namespace kv

#include "kv/derivations/automorphism.hpp"

namespace kv::fixtures {

inline TangentialDerivation random_derivation(std::mt19937& rng, const Alphabet& a, int cut, int count = 2,
                                              int max_degree = 3)
{
    std::vector<LieSeries> xy;
    for (int i = 0; i < 2 * a.g(); ++i) xy.push_back(random_lie(rng, a, cut + 1, 2, 1 + max_degree, count));
    std::vector<LieSeries> tang;
    for (int j = 0; j < a.n(); ++j) tang.push_back(random_lie(rng, a, cut, 1, max_degree, count));
    return TangentialDerivation(a, cut, xy, tang);
}

inline Automorphism random_automorphism(std::mt19937& rng, const Alphabet& a, int cut, int count = 2,
                                        int max_degree = 3)
{
    return der_exp(random_derivation(rng, a, cut, count, max_degree));
}

}  // namespace kv::fixtures

namespace kv {

inline void PrintTo(const CyclicSeries& s, std::ostream* os) { print_terms(s.alphabet(), s.terms(), os); }

}  // namespace kv
