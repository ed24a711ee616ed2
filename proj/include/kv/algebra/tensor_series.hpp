#pragma once

#include <vector>

#include "kv/algebra/terms.hpp"

namespace kv {

// Truncated element of the completed tensor algebra U(L) on a weighted
// alphabet.  Every stored word has weight <= cut; the empty word carries the
// constant term.
class TensorSeries {
public:
    TensorSeries(Alphabet alphabet, int cut);
    TensorSeries(Alphabet alphabet, int cut, Terms terms);

    static TensorSeries one(const Alphabet& alphabet, int cut);
    static TensorSeries generator(const Alphabet& alphabet, int cut, Letter a);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    int cut() const noexcept { return cut_; }
    const Terms& terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    Rational coefficient(const Word& w) const;
    Rational constant_term() const { return coefficient(Word{}); }

    // Adds c * w, silently dropping words above the cut.
    void add(const Word& w, const Rational& c);

    // Terms of exactly this weight, same cut.
    TensorSeries homogeneous(int weight) const;
    // Lower cuts truncate; a higher cut re-labels the container (the caller
    // asserts the missing terms are zero).
    TensorSeries with_cut(int cut) const;
    // Lowest weight carrying a nonzero term, or cut + 1 for zero.
    int min_weight() const;

    TensorSeries& operator+=(const TensorSeries& other);
    TensorSeries& operator-=(const TensorSeries& other);
    TensorSeries& operator*=(const Rational& scale);

    friend TensorSeries operator+(TensorSeries a, const TensorSeries& b) { return a += b; }
    friend TensorSeries operator-(TensorSeries a, const TensorSeries& b) { return a -= b; }
    friend TensorSeries operator-(TensorSeries a) { return a *= Rational(-1); }
    friend TensorSeries operator*(TensorSeries a, const Rational& s) { return a *= s; }
    friend TensorSeries operator*(const Rational& s, TensorSeries a) { return a *= s; }
    friend bool operator==(const TensorSeries&, const TensorSeries&) = default;

private:
    Alphabet alphabet_;
    int cut_;
    Terms terms_;
};

// Concatenation product truncated at the common cut.
TensorSeries tensor_mul(const TensorSeries& a, const TensorSeries& b);
inline TensorSeries operator*(const TensorSeries& a, const TensorSeries& b) { return tensor_mul(a, b); }

// ab - ba.
TensorSeries commutator(const TensorSeries& a, const TensorSeries& b);

// a^k truncated (a^0 = 1).
TensorSeries power(const TensorSeries& a, int k);

// The unique filtered algebra morphism sending generator i of a's alphabet to
// images[i].  All images share one target alphabet and cut; none may carry a
// constant term.  The result has the images' cut.
TensorSeries substitute(const TensorSeries& a, const std::vector<TensorSeries>& images);

void require_same_context(const Alphabet& a, int cut_a, const Alphabet& b, int cut_b, const char* op);

}  // namespace kv
