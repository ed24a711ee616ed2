#pragma once

#include "kv/algebra/lie_series.hpp"

namespace kv {

// Truncated series in cyclic words.  Keys are least rotations; the empty
// cyclic word is excluded.
class CyclicSeries {
public:
    CyclicSeries(Alphabet alphabet, int cut);
    // Keys are canonicalised on construction.
    CyclicSeries(Alphabet alphabet, int cut, const Terms& words);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    int cut() const noexcept { return cut_; }
    const Terms& terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    Rational coefficient(const Word& w) const;
    // Adds c * tr(w) for any representative w.
    void add(const Word& w, const Rational& c);

    CyclicSeries homogeneous(int weight) const;
    CyclicSeries with_cut(int cut) const;
    int min_weight() const;

    CyclicSeries& operator+=(const CyclicSeries& other);
    CyclicSeries& operator-=(const CyclicSeries& other);
    CyclicSeries& operator*=(const Rational& scale);

    friend CyclicSeries operator+(CyclicSeries a, const CyclicSeries& b) { return a += b; }
    friend CyclicSeries operator-(CyclicSeries a, const CyclicSeries& b) { return a -= b; }
    friend CyclicSeries operator-(CyclicSeries a) { return a *= Rational(-1); }
    friend CyclicSeries operator*(CyclicSeries a, const Rational& s) { return a *= s; }
    friend CyclicSeries operator*(const Rational& s, CyclicSeries a) { return a *= s; }
    friend bool operator==(const CyclicSeries&, const CyclicSeries&) = default;

private:
    Alphabet alphabet_;
    int cut_;
    Terms terms_;
};

// Word -> rotation class; the constant term is dropped.
CyclicSeries tr_project(const TensorSeries& a);

}  // namespace kv
