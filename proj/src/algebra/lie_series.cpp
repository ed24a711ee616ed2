#include "kv/algebra/lie_series.hpp"

#include <optional>
#include <unordered_map>

#include "kv/algebra/errors.hpp"
#include "kv/algebra/lyndon.hpp"
#include "kv/algebra/scalar_series.hpp"

namespace kv {

LieSeries::LieSeries(Alphabet alphabet, int cut) : alphabet_(alphabet), cut_(cut)
{
    if (cut < 0) throw PreconditionError("lie series: negative cut");
}

LieSeries::LieSeries(Alphabet alphabet, int cut, Terms lyndon_terms) : LieSeries(alphabet, cut)
{
    for (auto& [w, c] : lyndon_terms) add(w, c);
}

LieSeries LieSeries::generator(const Alphabet& alphabet, int cut, Letter a)
{
    if (a >= alphabet.size()) throw PreconditionError("lie series: generator outside alphabet");
    LieSeries out(alphabet, cut);
    out.add(Word::letter(a), Rational(1));
    return out;
}

LieSeries LieSeries::from_tensor(const TensorSeries& t)
{
    if (sgn(t.constant_term()) != 0) throw NotLieError("tensor element has a constant term");
    auto coords = lie_coordinates(t.terms());
    if (!coords) throw NotLieError("tensor element is not a Lie element");
    LieSeries out(t.alphabet(), t.cut());
    out.terms_ = std::move(*coords);
    return out;
}

Rational LieSeries::coefficient(const Word& lyndon) const
{
    auto it = terms_.find(lyndon);
    return it == terms_.end() ? Rational(0) : it->second;
}

void LieSeries::add(const Word& lyndon, const Rational& c)
{
    for (std::size_t i = 0; i < lyndon.size(); ++i) {
        if (lyndon[i] >= alphabet_.size()) throw PreconditionError("lie series: letter outside alphabet");
    }
    if (!is_lyndon(lyndon)) throw PreconditionError("lie series: key is not a Lyndon word");
    if (weight(alphabet_, lyndon) > cut_) return;
    add_term(terms_, lyndon, c);
}

LieSeries LieSeries::homogeneous(int wt) const { return weight_range(wt, wt); }

LieSeries LieSeries::weight_range(int lo, int hi) const
{
    LieSeries out(alphabet_, cut_);
    out.terms_ = weight_window(alphabet_, terms_, lo, hi);
    return out;
}

LieSeries LieSeries::with_cut(int cut) const
{
    LieSeries out(alphabet_, cut);
    out.terms_ = cut >= cut_ ? terms_ : weight_window(alphabet_, terms_, 1, cut);
    return out;
}

int LieSeries::min_weight() const { return kv::min_weight(alphabet_, terms_, cut_ + 1); }

TensorSeries LieSeries::to_tensor() const { return to_tensor(cut_); }

TensorSeries LieSeries::to_tensor(int cut) const
{
    Terms out;
    for (const auto& [w, c] : terms_) {
        if (weight(alphabet_, w) > cut) continue;
        add_scaled(out, lyndon_expansion(w), c);
    }
    TensorSeries t(alphabet_, cut);
    for (auto& [w, c] : out) t.add(w, c);
    return t;
}

LieSeries& LieSeries::operator+=(const LieSeries& other)
{
    require_same_context(alphabet_, cut_, other.alphabet_, other.cut_, "lie +");
    add_scaled(terms_, other.terms_, Rational(1));
    return *this;
}

LieSeries& LieSeries::operator-=(const LieSeries& other)
{
    require_same_context(alphabet_, cut_, other.alphabet_, other.cut_, "lie -");
    add_scaled(terms_, other.terms_, Rational(-1));
    return *this;
}

LieSeries& LieSeries::operator*=(const Rational& scale)
{
    terms_ = scaled(terms_, scale);
    return *this;
}

LieSeries lie_bracket(const LieSeries& a, const LieSeries& b)
{
    require_same_context(a.alphabet(), a.cut(), b.alphabet(), b.cut(), "lie_bracket");
    if (a.is_zero() || b.is_zero()) return LieSeries(a.alphabet(), a.cut());
    if (a.min_weight() + b.min_weight() > a.cut()) return LieSeries(a.alphabet(), a.cut());
    return LieSeries::from_tensor(commutator(a.to_tensor(), b.to_tensor()));
}

LieSeries adjoint_exp(const LieSeries& a, const LieSeries& b, const Rational& s)
{
    LieSeries out = b;
    LieSeries term = b;
    for (int k = 1; !term.is_zero(); ++k) {
        term = lie_bracket(a, term) * (s / k);
        out += term;
    }
    return out;
}

TensorSeries exp(const LieSeries& a)
{
    TensorSeries x = a.to_tensor();
    TensorSeries out = TensorSeries::one(a.alphabet(), a.cut());
    TensorSeries term = out;
    for (int k = 1; !term.is_zero(); ++k) {
        term = (term * x) * ratio(1, k);
        out += term;
    }
    return out;
}

LieSeries log(const TensorSeries& a)
{
    if (a.constant_term() != 1) throw PreconditionError("log: constant term must be 1");
    TensorSeries x = a - TensorSeries::one(a.alphabet(), a.cut());
    TensorSeries out(a.alphabet(), a.cut());
    TensorSeries term = TensorSeries::one(a.alphabet(), a.cut());
    for (int k = 1;; ++k) {
        term = term * x;
        if (term.is_zero()) break;
        out += term * ratio(k % 2 ? 1 : -1, k);
    }
    LieSeries lie = dynkin_project(out);
    if (!(lie.to_tensor() == out)) throw NotLieError("log: input is not group-like");
    return lie;
}

LieSeries bch(const LieSeries& a, const LieSeries& b)
{
    require_same_context(a.alphabet(), a.cut(), b.alphabet(), b.cut(), "bch");
    const int cut = a.cut();
    const LieSeries sum = a + b;
    const LieSeries diff = (a - b) * ratio(1, 2);
    const auto bernoulli = bernoulli_numbers(cut + 1);

    // z[k] is the part of bch of total degree k in (a, b).
    std::vector<LieSeries> z{LieSeries(a.alphabet(), cut), sum};
    // nested[p][m] = sum over compositions k_1 + ... + k_p = m of
    // [z_{k_1}, [..., [z_{k_p}, a + b]...]].
    std::vector<std::vector<std::optional<LieSeries>>> nested(cut + 1,
                                                              std::vector<std::optional<LieSeries>>(cut + 1));
    nested[0][0] = sum;
    auto get_nested = [&](auto&& self, int p, int m) -> const LieSeries& {
        auto& slot = nested[p][m];
        if (!slot) {
            LieSeries acc(a.alphabet(), cut);
            if (p > 0 && m >= p) {
                for (int k = 1; k <= m - p + 1; ++k) acc += lie_bracket(z[k], self(self, p - 1, m - k));
            }
            slot = std::move(acc);
        }
        return *slot;
    };

    LieSeries out = sum;
    for (int n = 1; n < cut; ++n) {
        LieSeries next = lie_bracket(diff, z[n]);
        for (int p = 1; 2 * p <= n; ++p) {
            const Rational coeff = bernoulli[2 * p] / factorial(2 * p);
            next += get_nested(get_nested, 2 * p, n) * coeff;
        }
        next *= ratio(1, n + 1);
        out += next;
        z.push_back(std::move(next));
    }
    return out;
}

namespace {

const Terms& left_normed_expansion(const Word& w)
{
    thread_local std::unordered_map<Word, Terms, WordHash> cache;
    if (auto it = cache.find(w); it != cache.end()) return it->second;
    Terms out;
    if (w.size() == 1) {
        out.emplace(w, Rational(1));
    } else {
        Word head = w.substr(0, w.size() - 1);
        Word last = w.substr(w.size() - 1);
        Terms inner = left_normed_expansion(head);
        for (const auto& [u, c] : inner) {
            add_term(out, u + last, c);
            add_term(out, last + u, -c);
        }
    }
    return cache.emplace(w, std::move(out)).first->second;
}

}  // namespace

LieSeries dynkin_project(const TensorSeries& a)
{
    if (sgn(a.constant_term()) != 0) throw PreconditionError("dynkin_project: nonzero constant term");
    const Alphabet& alphabet = a.alphabet();
    Terms acc;
    for (const auto& [w, c] : a.terms()) {
        Rational scale = c * ratio(alphabet.weight(w[0]), weight(alphabet, w));
        add_scaled(acc, left_normed_expansion(w), scale);
    }
    auto coords = lie_coordinates(std::move(acc));
    // Left-normed brackets are Lie, so the projection cannot fail.
    LieSeries out(alphabet, a.cut());
    for (auto& [w, c] : *coords) out.add(w, c);
    return out;
}

LieSeries substitute(const LieSeries& a, const std::vector<LieSeries>& images)
{
    std::vector<TensorSeries> tensor_images;
    tensor_images.reserve(images.size());
    for (const auto& img : images) tensor_images.push_back(img.to_tensor());
    return LieSeries::from_tensor(substitute(a.to_tensor(), tensor_images));
}

namespace {

// Solves gY - Yg = s in the tensor algebra, choosing the solution without
// pure powers of g.  Returns false when no solution exists.
bool solve_commutator_tensor(const Alphabet& alphabet, Letter g, const Terms& s, Terms& y)
{
    if (s.empty()) return true;
    Terms not_starting;  // pi(Y)
    Terms stripped;      // S' (words of S starting with g, first letter removed)
    for (const auto& [w, c] : s) {
        if (w[0] == g) {
            add_term(stripped, w.substr(1), c);
        } else {
            if (w.back() != g || w.size() < 2) return false;
            add_term(not_starting, w.substr(0, w.size() - 1), -c);
        }
    }
    Terms rhs = stripped;
    add_scaled(rhs, not_starting, Rational(-1));
    // A constant term in rhs means [g, Y'] would have to produce a scalar.
    if (rhs.count(Word{})) return false;
    Terms inner;
    if (!solve_commutator_tensor(alphabet, g, rhs, inner)) return false;
    y = not_starting;
    for (const auto& [w, c] : inner) add_term(y, Word::letter(g) + w, c);
    return true;
}

}  // namespace

LieSeries solve_commutator(Letter g, const LieSeries& target)
{
    const Alphabet& alphabet = target.alphabet();
    Terms y;
    if (!solve_commutator_tensor(alphabet, g, target.to_tensor().terms(), y))
        throw NotLieError("solve_commutator: target is not in the image of ad");
    auto coords = lie_coordinates(y);
    if (!coords) throw NotLieError("solve_commutator: solution is not Lie");
    LieSeries x(alphabet, target.cut(), *coords);
    if (!(lie_bracket(LieSeries::generator(alphabet, target.cut(), g), x) == target))
        throw NotLieError("solve_commutator: target is not in the image of ad");
    return x;
}

}  // namespace kv
