#pragma once

#include <vector>

#include "kv/algebra/cyclic_series.hpp"
#include "kv/algebra/lie_series.hpp"

namespace kv {

// A tangential derivation truncated at derivation degree `cut`: the image of a
// generator w is stored through weight wt(w) + cut, the tangential data u_j
// through weight cut.  u(z_j) = [z_j, u_j] and u_j has no z_j term.
class TangentialDerivation {
public:
    // The zero derivation.
    TangentialDerivation(Alphabet alphabet, int cut);
    // xy_images lists u(x_1..x_g) then u(y_1..y_g); tangential lists u_1..u_n.
    // Series are re-cut to the storage convention above.  Throws
    // PreconditionError when an image has a term of weight <= wt(w).
    TangentialDerivation(Alphabet alphabet, int cut, std::vector<LieSeries> xy_images,
                         std::vector<LieSeries> tangential);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    int cut() const noexcept { return cut_; }
    const LieSeries& image(Letter a) const { return images_.at(a); }
    const std::vector<LieSeries>& images() const noexcept { return images_; }
    const LieSeries& tangential(int j) const { return tangential_.at(j); }
    const std::vector<LieSeries>& tangential() const noexcept { return tangential_; }
    std::vector<LieSeries> xy_images() const;

    bool is_zero() const;
    // Degree-d component (images of degree exactly d).
    TangentialDerivation degree_part(int d) const;

    TangentialDerivation& operator+=(const TangentialDerivation& other);
    TangentialDerivation& operator-=(const TangentialDerivation& other);
    TangentialDerivation& operator*=(const Rational& s);
    friend TangentialDerivation operator+(TangentialDerivation a, const TangentialDerivation& b) { return a += b; }
    friend TangentialDerivation operator-(TangentialDerivation a, const TangentialDerivation& b) { return a -= b; }
    friend TangentialDerivation operator*(TangentialDerivation a, const Rational& s) { return a *= s; }
    friend TangentialDerivation operator*(const Rational& s, TangentialDerivation a) { return a *= s; }
    friend bool operator==(const TangentialDerivation&, const TangentialDerivation&) = default;

private:
    void rebuild_z_images();

    Alphabet alphabet_;
    int cut_;
    std::vector<LieSeries> images_;      // one per generator
    std::vector<LieSeries> tangential_;  // one per z_j
};

// Removes the z_j coefficient from tangential data (additive normalisation).
LieSeries normalize_tangential(const LieSeries& u, Letter z);

// Leibniz extension.  Exact when cut(a) - min_weight(a) <= u.cut(); otherwise
// PreconditionError.  The result keeps the cut of a.
TensorSeries apply(const TangentialDerivation& u, const TensorSeries& a);
LieSeries apply(const TangentialDerivation& u, const LieSeries& a);
CyclicSeries apply(const TangentialDerivation& u, const CyclicSeries& a);

// [u, v] = u v - v u; tangential data u(v_j) - v(u_j) + [u_j, v_j].
TangentialDerivation der_bracket(const TangentialDerivation& u, const TangentialDerivation& v);

}  // namespace kv
