#include "kv/derivations/tangential_derivation.hpp"

#include <string>

#include "kv/algebra/errors.hpp"
#include "kv/derivations/action.hpp"

namespace kv {

void require_exact_action(const Alphabet& alphabet, const Terms& terms, int input_cut, int der_cut, const char* op)
{
    int lowest = input_cut + 1;
    for (const auto& [w, c] : terms)
        if (!w.empty()) lowest = std::min(lowest, weight(alphabet, w));
    if (lowest <= input_cut && input_cut - lowest > der_cut) {
        throw PreconditionError(std::string(op) + ": input cut " + std::to_string(input_cut) +
                                " needs derivation degrees beyond " + std::to_string(der_cut));
    }
}

std::vector<LieSeries> recut_images(const Alphabet& alphabet, int cut, const std::vector<LieSeries>& images)
{
    std::vector<LieSeries> out;
    out.reserve(images.size());
    for (int a = 0; a < alphabet.size(); ++a)
        out.push_back(images[a].with_cut(alphabet.weight(static_cast<Letter>(a)) + cut));
    return out;
}

LieSeries normalize_tangential(const LieSeries& u, Letter z)
{
    LieSeries out = u;
    out.add(Word::letter(z), -u.coefficient(Word::letter(z)));
    return out;
}

TangentialDerivation::TangentialDerivation(Alphabet alphabet, int cut) : alphabet_(alphabet), cut_(cut)
{
    if (cut < 1) throw PreconditionError("derivation: cut must be positive");
    for (int a = 0; a < alphabet.size(); ++a)
        images_.emplace_back(alphabet, alphabet.weight(static_cast<Letter>(a)) + cut);
    for (int j = 0; j < alphabet.n(); ++j) tangential_.emplace_back(alphabet, cut);
}

TangentialDerivation::TangentialDerivation(Alphabet alphabet, int cut, std::vector<LieSeries> xy_images,
                                           std::vector<LieSeries> tangential)
    : TangentialDerivation(alphabet, cut)
{
    if (static_cast<int>(xy_images.size()) != 2 * alphabet.g() ||
        static_cast<int>(tangential.size()) != alphabet.n())
        throw PreconditionError("derivation: wrong number of images");
    for (int a = 0; a < 2 * alphabet.g(); ++a) {
        if (!(xy_images[a].alphabet() == alphabet)) throw ContextMismatch("derivation: image alphabet differs");
        images_[a] = xy_images[a].with_cut(1 + cut);
        if (images_[a].min_weight() < 2)
            throw PreconditionError("derivation: image of " + alphabet.name(static_cast<Letter>(a)) +
                                    " does not raise degree");
    }
    for (int j = 0; j < alphabet.n(); ++j) {
        if (!(tangential[j].alphabet() == alphabet)) throw ContextMismatch("derivation: tangential alphabet differs");
        tangential_[j] = tangential[j].with_cut(cut);
    }
    rebuild_z_images();
}

void TangentialDerivation::rebuild_z_images()
{
    for (int j = 0; j < alphabet_.n(); ++j) {
        Letter z = alphabet_.z(j);
        images_[z] = lie_bracket(LieSeries::generator(alphabet_, cut_ + 2, z), tangential_[j].with_cut(cut_ + 2));
    }
}

std::vector<LieSeries> TangentialDerivation::xy_images() const
{
    return {images_.begin(), images_.begin() + 2 * alphabet_.g()};
}

bool TangentialDerivation::is_zero() const
{
    for (const auto& im : images_)
        if (!im.is_zero()) return false;
    for (const auto& t : tangential_)
        if (!t.is_zero()) return false;
    return true;
}

TangentialDerivation TangentialDerivation::degree_part(int d) const
{
    TangentialDerivation out(alphabet_, cut_);
    for (int a = 0; a < alphabet_.size(); ++a) {
        int wt = alphabet_.weight(static_cast<Letter>(a)) + d;
        out.images_[a] = images_[a].homogeneous(wt);
    }
    for (int j = 0; j < alphabet_.n(); ++j) out.tangential_[j] = tangential_[j].homogeneous(d);
    return out;
}

TangentialDerivation& TangentialDerivation::operator+=(const TangentialDerivation& other)
{
    require_same_context(alphabet_, cut_, other.alphabet_, other.cut_, "derivation +");
    for (std::size_t a = 0; a < images_.size(); ++a) images_[a] += other.images_[a];
    for (std::size_t j = 0; j < tangential_.size(); ++j) tangential_[j] += other.tangential_[j];
    return *this;
}

TangentialDerivation& TangentialDerivation::operator-=(const TangentialDerivation& other)
{
    require_same_context(alphabet_, cut_, other.alphabet_, other.cut_, "derivation -");
    for (std::size_t a = 0; a < images_.size(); ++a) images_[a] -= other.images_[a];
    for (std::size_t j = 0; j < tangential_.size(); ++j) tangential_[j] -= other.tangential_[j];
    return *this;
}

TangentialDerivation& TangentialDerivation::operator*=(const Rational& s)
{
    for (auto& im : images_) im *= s;
    for (auto& t : tangential_) t *= s;
    return *this;
}

TensorSeries apply_derivation_images(const Alphabet& alphabet, const std::vector<LieSeries>& images,
                                     const TensorSeries& a)
{
    const int cut = a.cut();
    std::vector<Terms> img;
    std::vector<std::vector<int>> img_wt;
    img.reserve(images.size());
    for (const auto& im : images) {
        img.push_back(im.with_cut(cut).to_tensor().terms());
        std::vector<int> wts;
        for (const auto& [w, c] : img.back()) wts.push_back(weight(alphabet, w));
        img_wt.push_back(std::move(wts));
    }
    Terms out;
    for (const auto& [w, c] : a.terms()) {
        if (w.empty()) continue;
        const int total = weight(alphabet, w);
        for (std::size_t i = 0; i < w.size(); ++i) {
            const Letter l = w[i];
            const int budget = cut - (total - alphabet.weight(l));
            const Word prefix = w.substr(0, i);
            const Word suffix = w.substr(i + 1);
            std::size_t k = 0;
            for (const auto& [v, cv] : img[l]) {
                if (img_wt[l][k++] > budget) continue;
                add_term(out, prefix + v + suffix, c * cv);
            }
        }
    }
    return TensorSeries(alphabet, cut, std::move(out));
}

TensorSeries apply(const TangentialDerivation& u, const TensorSeries& a)
{
    if (!(u.alphabet() == a.alphabet())) throw ContextMismatch("der_apply: alphabets differ");
    require_exact_action(a.alphabet(), a.terms(), a.cut(), u.cut(), "der_apply");
    return apply_derivation_images(u.alphabet(), u.images(), a);
}

LieSeries apply(const TangentialDerivation& u, const LieSeries& a)
{
    return LieSeries::from_tensor(apply(u, a.to_tensor()));
}

CyclicSeries apply(const TangentialDerivation& u, const CyclicSeries& a)
{
    return tr_project(apply(u, TensorSeries(a.alphabet(), a.cut(), a.terms())));
}

TangentialDerivation der_bracket(const TangentialDerivation& u, const TangentialDerivation& v)
{
    require_same_context(u.alphabet(), u.cut(), v.alphabet(), v.cut(), "der_bracket");
    const Alphabet& al = u.alphabet();
    std::vector<LieSeries> xy;
    for (int a = 0; a < 2 * al.g(); ++a) {
        auto a_letter = static_cast<Letter>(a);
        xy.push_back(apply(u, v.image(a_letter)) - apply(v, u.image(a_letter)));
    }
    std::vector<LieSeries> tang;
    for (int j = 0; j < al.n(); ++j) {
        tang.push_back(apply(u, v.tangential(j)) - apply(v, u.tangential(j)) +
                       lie_bracket(u.tangential(j), v.tangential(j)));
    }
    return TangentialDerivation(al, u.cut(), std::move(xy), std::move(tang));
}

}  // namespace kv
