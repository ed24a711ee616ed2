#include "kv/algebra/tensor_series.hpp"

#include <algorithm>
#include <string>

#include "kv/algebra/errors.hpp"

namespace kv {

Terms weight_window(const Alphabet& alphabet, const Terms& terms, int lo, int hi)
{
    Terms out;
    for (const auto& [w, c] : terms) {
        int wt = weight(alphabet, w);
        if (wt >= lo && wt <= hi) out.emplace(w, c);
    }
    return out;
}

int min_weight(const Alphabet& alphabet, const Terms& terms, int fallback)
{
    int best = fallback;
    for (const auto& [w, c] : terms) best = std::min(best, weight(alphabet, w));
    return best;
}

int max_weight(const Alphabet& alphabet, const Terms& terms)
{
    int best = -1;
    for (const auto& [w, c] : terms) best = std::max(best, weight(alphabet, w));
    return best;
}

void require_same_context(const Alphabet& a, int cut_a, const Alphabet& b, int cut_b, const char* op)
{
    if (!(a == b)) throw ContextMismatch(std::string(op) + ": alphabets differ");
    if (cut_a != cut_b) {
        throw ContextMismatch(std::string(op) + ": degree cuts differ (" + std::to_string(cut_a) + " vs " +
                              std::to_string(cut_b) + ")");
    }
}

namespace {

struct WeightedTerm {
    const Word* word;
    const Rational* coeff;
    int weight;
};

std::vector<WeightedTerm> weighted(const Alphabet& alphabet, const Terms& terms)
{
    std::vector<WeightedTerm> out;
    out.reserve(terms.size());
    for (const auto& [w, c] : terms) out.push_back({&w, &c, weight(alphabet, w)});
    std::stable_sort(out.begin(), out.end(),
                     [](const WeightedTerm& a, const WeightedTerm& b) { return a.weight < b.weight; });
    return out;
}

Terms mul_truncated(const Alphabet& alphabet, const Terms& a, const Terms& b, int level)
{
    Terms out;
    if (a.empty() || b.empty()) return out;
    auto wb = weighted(alphabet, b);
    for (const auto& [wa, ca] : a) {
        int wt = weight(alphabet, wa);
        for (const auto& t : wb) {
            if (wt + t.weight > level) break;
            add_term(out, wa + *t.word, ca * *t.coeff);
        }
    }
    return out;
}

}  // namespace

TensorSeries::TensorSeries(Alphabet alphabet, int cut) : alphabet_(alphabet), cut_(cut)
{
    if (cut < 0) throw PreconditionError("tensor series: negative cut");
}

TensorSeries::TensorSeries(Alphabet alphabet, int cut, Terms terms) : TensorSeries(alphabet, cut)
{
    for (auto& [w, c] : terms) add(w, c);
}

TensorSeries TensorSeries::one(const Alphabet& alphabet, int cut)
{
    TensorSeries t(alphabet, cut);
    t.add(Word{}, Rational(1));
    return t;
}

TensorSeries TensorSeries::generator(const Alphabet& alphabet, int cut, Letter a)
{
    if (a >= alphabet.size()) throw PreconditionError("tensor series: generator outside alphabet");
    TensorSeries t(alphabet, cut);
    t.add(Word::letter(a), Rational(1));
    return t;
}

Rational TensorSeries::coefficient(const Word& w) const
{
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
}

void TensorSeries::add(const Word& w, const Rational& c)
{
    if (weight(alphabet_, w) > cut_) return;
    add_term(terms_, w, c);
}

TensorSeries TensorSeries::homogeneous(int wt) const
{
    return TensorSeries(alphabet_, cut_, weight_window(alphabet_, terms_, wt, wt));
}

TensorSeries TensorSeries::with_cut(int cut) const
{
    TensorSeries out(alphabet_, cut);
    out.terms_ = cut >= cut_ ? terms_ : weight_window(alphabet_, terms_, 0, cut);
    return out;
}

int TensorSeries::min_weight() const { return kv::min_weight(alphabet_, terms_, cut_ + 1); }

TensorSeries& TensorSeries::operator+=(const TensorSeries& other)
{
    require_same_context(alphabet_, cut_, other.alphabet_, other.cut_, "tensor +");
    add_scaled(terms_, other.terms_, Rational(1));
    return *this;
}

TensorSeries& TensorSeries::operator-=(const TensorSeries& other)
{
    require_same_context(alphabet_, cut_, other.alphabet_, other.cut_, "tensor -");
    add_scaled(terms_, other.terms_, Rational(-1));
    return *this;
}

TensorSeries& TensorSeries::operator*=(const Rational& scale)
{
    terms_ = scaled(terms_, scale);
    return *this;
}

TensorSeries tensor_mul(const TensorSeries& a, const TensorSeries& b)
{
    require_same_context(a.alphabet(), a.cut(), b.alphabet(), b.cut(), "tensor_mul");
    TensorSeries out(a.alphabet(), a.cut());
    for (auto& [w, c] : mul_truncated(a.alphabet(), a.terms(), b.terms(), a.cut())) out.add(w, c);
    return out;
}

TensorSeries commutator(const TensorSeries& a, const TensorSeries& b) { return a * b - b * a; }

TensorSeries power(const TensorSeries& a, int k)
{
    TensorSeries out = TensorSeries::one(a.alphabet(), a.cut());
    for (int i = 0; i < k; ++i) {
        out = out * a;
        if (out.is_zero()) break;
    }
    return out;
}

TensorSeries substitute(const TensorSeries& a, const std::vector<TensorSeries>& images)
{
    if (static_cast<int>(images.size()) != a.alphabet().size())
        throw PreconditionError("substitute: one image per generator required");
    if (images.empty()) {
        // Only a constant term can be present.
        throw PreconditionError("substitute: empty alphabet has no target context");
    }
    const Alphabet& target = images.front().alphabet();
    const int cut = images.front().cut();
    std::vector<int> min_wt;
    for (const auto& img : images) {
        require_same_context(target, cut, img.alphabet(), img.cut(), "substitute");
        if (sgn(img.constant_term()) != 0) throw PreconditionError("substitute: image with a weight-0 term");
        min_wt.push_back(img.min_weight());
    }

    Terms result;
    // prefix[k] = product of the images of the first k letters of `current`,
    // truncated at level[k].
    std::vector<Terms> prefix{Terms{{Word{}, Rational(1)}}};
    std::vector<int> level{cut};
    Word current;

    for (const auto& [w, c] : a.terms()) {
        if (w.empty()) {
            add_term(result, w, c);
            continue;
        }
        std::vector<int> rem(w.size() + 1, 0);
        for (std::size_t k = w.size(); k-- > 0;) rem[k] = rem[k + 1] + min_wt[w[k]];
        if (rem[0] > cut) continue;

        std::size_t common = 0;
        while (common < current.size() && common < w.size() && current[common] == w[common] &&
               common + 1 < prefix.size() && level[common + 1] >= cut - rem[common + 1])
            ++common;
        prefix.resize(common + 1);
        level.resize(common + 1);
        for (std::size_t k = common; k < w.size(); ++k) {
            int lvl = cut - rem[k + 1];
            prefix.push_back(mul_truncated(target, prefix[k], images[w[k]].terms(), lvl));
            level.push_back(lvl);
        }
        current = w;
        add_scaled(result, prefix[w.size()], c);
    }
    return TensorSeries(target, cut, std::move(result));
}

}  // namespace kv
