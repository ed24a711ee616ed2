#include "kv/algebra/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace kv {

namespace {

mpz_class parse_integer(std::string_view text)
{
    std::string s(text);
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("empty integer literal");
    for (std::size_t i = start; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw std::invalid_argument("malformed integer literal '" + s + "'");
    }
    if (s[0] == '+') s.erase(0, 1);
    return mpz_class(s, 10);
}

}  // namespace

Rational make_rational(std::string_view num, std::string_view den)
{
    mpz_class n = parse_integer(num);
    mpz_class d = parse_integer(den);
    if (d == 0) throw std::invalid_argument("zero denominator");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string numerator_string(const Rational& q) { return q.get_num().get_str(); }

std::string denominator_string(const Rational& q) { return q.get_den().get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace kv
