#pragma once

#include "kv/derivations/tangential_derivation.hpp"

namespace kv {

// A tangential automorphism truncated at derivation degree `cut`, with the
// same storage convention as TangentialDerivation.  F(z_j) = e^{-ad f_j} z_j
// and f_j has no z_j term.
class Automorphism {
public:
    // The identity.
    Automorphism(Alphabet alphabet, int cut);
    // xy_images are the full images F(x_i), F(y_i) (generator included);
    // tangential lists f_1..f_n.  f_j is normalised by f -> bch(-c z_j, f).
    Automorphism(Alphabet alphabet, int cut, std::vector<LieSeries> xy_images, std::vector<LieSeries> tangential);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    int cut() const noexcept { return cut_; }
    const LieSeries& image(Letter a) const { return images_.at(a); }
    const std::vector<LieSeries>& images() const noexcept { return images_; }
    const LieSeries& tangential(int j) const { return tangential_.at(j); }
    const std::vector<LieSeries>& tangential() const noexcept { return tangential_; }
    std::vector<LieSeries> xy_images() const;

    bool is_identity() const;

    friend bool operator==(const Automorphism&, const Automorphism&) = default;

private:
    Alphabet alphabet_;
    int cut_;
    std::vector<LieSeries> images_;
    std::vector<LieSeries> tangential_;
};

// Normalises conjugation data: returns bch(-c z, f), c the z coefficient of f.
LieSeries normalize_conjugator(const LieSeries& f, Letter z);

// Algebra endomorphism extending the images; same exactness rule as for
// derivations.
TensorSeries apply(const Automorphism& F, const TensorSeries& a);
LieSeries apply(const Automorphism& F, const LieSeries& a);
CyclicSeries apply(const Automorphism& F, const CyclicSeries& a);

// Recovers normalised f with e^{-ad f} z = target degree by degree; target is
// read through weight cut + 2.  Throws NotLieError when target is not a
// conjugate of z.
LieSeries conjugator_of(Letter z, const LieSeries& target, int cut);

Automorphism der_exp(const TangentialDerivation& u);
TangentialDerivation aut_log(const Automorphism& F);
// (F o G)(a) = F(G(a)); (F o G)_j = bch(f_j, F(g_j)), renormalised.
Automorphism aut_compose(const Automorphism& F, const Automorphism& G);
Automorphism aut_inverse(const Automorphism& F);

}  // namespace kv
