#pragma once

#include <vector>

#include "kv/algebra/tensor_series.hpp"

namespace kv {

// Truncated element of the completed free Lie algebra, stored on the basis of
// standard bracketings of Lyndon words.  Keys have weight in [1, cut].
class LieSeries {
public:
    LieSeries(Alphabet alphabet, int cut);
    // Terms must be keyed by Lyndon words; this is checked.
    LieSeries(Alphabet alphabet, int cut, Terms lyndon_terms);

    static LieSeries generator(const Alphabet& alphabet, int cut, Letter a);
    // Projects a Lie element of the tensor algebra onto the Lyndon basis.
    // Throws NotLieError when the input is not Lie.
    static LieSeries from_tensor(const TensorSeries& t);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    int cut() const noexcept { return cut_; }
    const Terms& terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    Rational coefficient(const Word& lyndon) const;
    void add(const Word& lyndon, const Rational& c);

    LieSeries homogeneous(int weight) const;
    LieSeries weight_range(int lo, int hi) const;
    LieSeries with_cut(int cut) const;
    int min_weight() const;

    TensorSeries to_tensor() const;
    TensorSeries to_tensor(int cut) const;

    LieSeries& operator+=(const LieSeries& other);
    LieSeries& operator-=(const LieSeries& other);
    LieSeries& operator*=(const Rational& scale);

    friend LieSeries operator+(LieSeries a, const LieSeries& b) { return a += b; }
    friend LieSeries operator-(LieSeries a, const LieSeries& b) { return a -= b; }
    friend LieSeries operator-(LieSeries a) { return a *= Rational(-1); }
    friend LieSeries operator*(LieSeries a, const Rational& s) { return a *= s; }
    friend LieSeries operator*(const Rational& s, LieSeries a) { return a *= s; }
    friend bool operator==(const LieSeries&, const LieSeries&) = default;

private:
    Alphabet alphabet_;
    int cut_;
    Terms terms_;
};

LieSeries lie_bracket(const LieSeries& a, const LieSeries& b);

// e^{s ad_a}(b), truncated at the common cut.
LieSeries adjoint_exp(const LieSeries& a, const LieSeries& b, const Rational& s = 1);

// exp: L -> U(L), group-like output.
TensorSeries exp(const LieSeries& a);
// log: group-like U(L) -> L.  Throws PreconditionError when the constant term
// is not 1 and NotLieError when the logarithm is not Lie.
LieSeries log(const TensorSeries& a);

// log(exp(a) exp(b)), computed on the Lyndon representation by the
// Varadarajan recursion (brackets only, no tensor-algebra logarithm).
LieSeries bch(const LieSeries& a, const LieSeries& b);

// Dynkin-Specht-Wever projection with weighted first letter, divided by the
// weight of each component.  Fixes Lie elements.  Requires zero constant term.
LieSeries dynkin_project(const TensorSeries& a);

// Lie endomorphism extending generator i -> images[i].  Images must share an
// alphabet and cut; the result has that cut.
LieSeries substitute(const LieSeries& a, const std::vector<LieSeries>& images);

// Solves [g, X] = target for X with no linear g term.  Throws NotLieError
// when target is not in the image of ad_g.
LieSeries solve_commutator(Letter g, const LieSeries& target);

}  // namespace kv
