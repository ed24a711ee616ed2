#include "kv/algebra/cyclic_series.hpp"

#include "kv/algebra/errors.hpp"
#include "kv/algebra/lyndon.hpp"

namespace kv {

CyclicSeries::CyclicSeries(Alphabet alphabet, int cut) : alphabet_(alphabet), cut_(cut)
{
    if (cut < 0) throw PreconditionError("cyclic series: negative cut");
}

CyclicSeries::CyclicSeries(Alphabet alphabet, int cut, const Terms& words) : CyclicSeries(alphabet, cut)
{
    for (const auto& [w, c] : words) add(w, c);
}

Rational CyclicSeries::coefficient(const Word& w) const
{
    if (w.empty()) return Rational(0);
    auto it = terms_.find(least_rotation(w));
    return it == terms_.end() ? Rational(0) : it->second;
}

void CyclicSeries::add(const Word& w, const Rational& c)
{
    if (w.empty()) return;
    if (weight(alphabet_, w) > cut_) return;
    add_term(terms_, least_rotation(w), c);
}

CyclicSeries CyclicSeries::homogeneous(int wt) const
{
    CyclicSeries out(alphabet_, cut_);
    out.terms_ = weight_window(alphabet_, terms_, wt, wt);
    return out;
}

CyclicSeries CyclicSeries::with_cut(int cut) const
{
    CyclicSeries out(alphabet_, cut);
    out.terms_ = cut >= cut_ ? terms_ : weight_window(alphabet_, terms_, 1, cut);
    return out;
}

int CyclicSeries::min_weight() const { return kv::min_weight(alphabet_, terms_, cut_ + 1); }

CyclicSeries& CyclicSeries::operator+=(const CyclicSeries& other)
{
    require_same_context(alphabet_, cut_, other.alphabet_, other.cut_, "cyclic +");
    add_scaled(terms_, other.terms_, Rational(1));
    return *this;
}

CyclicSeries& CyclicSeries::operator-=(const CyclicSeries& other)
{
    require_same_context(alphabet_, cut_, other.alphabet_, other.cut_, "cyclic -");
    add_scaled(terms_, other.terms_, Rational(-1));
    return *this;
}

CyclicSeries& CyclicSeries::operator*=(const Rational& scale)
{
    terms_ = scaled(terms_, scale);
    return *this;
}

CyclicSeries tr_project(const TensorSeries& a)
{
    CyclicSeries out(a.alphabet(), a.cut());
    for (const auto& [w, c] : a.terms()) out.add(w, c);
    return out;
}

}  // namespace kv
