#include "kv/algebra/alphabet.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "kv/algebra/errors.hpp"

namespace kv {

Alphabet::Alphabet(int g, int n) : g_(g), n_(n)
{
    if (g < 0 || n < 0) throw PreconditionError("alphabet: g and n must be nonnegative");
    if (2 * g + n > 255) throw PreconditionError("alphabet: too many generators");
}

Letter Alphabet::x(int i) const
{
    if (i < 0 || i >= g_) throw PreconditionError("alphabet: x index out of range");
    return static_cast<Letter>(i);
}

Letter Alphabet::y(int i) const
{
    if (i < 0 || i >= g_) throw PreconditionError("alphabet: y index out of range");
    return static_cast<Letter>(g_ + i);
}

Letter Alphabet::z(int j) const
{
    if (j < 0 || j >= n_) throw PreconditionError("alphabet: z index out of range");
    return static_cast<Letter>(2 * g_ + j);
}

GeneratorKind Alphabet::kind(Letter a) const
{
    if (a < g_) return GeneratorKind::x;
    if (a < 2 * g_) return GeneratorKind::y;
    return GeneratorKind::z;
}

int Alphabet::index(Letter a) const
{
    if (a < g_) return a;
    if (a < 2 * g_) return a - g_;
    return a - 2 * g_;
}

std::string Alphabet::name(Letter a) const
{
    const char* prefix = kind(a) == GeneratorKind::x ? "x" : (kind(a) == GeneratorKind::y ? "y" : "z");
    return prefix + std::to_string(index(a) + 1);
}

std::optional<Letter> Alphabet::parse(std::string_view name) const
{
    if (name.size() < 2) return std::nullopt;
    int idx = 0;
    auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
    if (ec != std::errc{} || ptr != name.data() + name.size() || idx < 1) return std::nullopt;
    --idx;
    switch (name[0]) {
    case 'x':
        if (idx < g_) return static_cast<Letter>(idx);
        break;
    case 'y':
        if (idx < g_) return static_cast<Letter>(g_ + idx);
        break;
    case 'z':
        if (idx < n_) return static_cast<Letter>(2 * g_ + idx);
        break;
    default:
        break;
    }
    return std::nullopt;
}

int weight(const Alphabet& alphabet, const Word& w)
{
    int total = 0;
    for (std::size_t i = 0; i < w.size(); ++i) total += alphabet.weight(w[i]);
    return total;
}

std::string format_word(const Alphabet& alphabet, const Word& w)
{
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += alphabet.name(w[i]);
    }
    return out;
}

Word parse_word(const Alphabet& alphabet, std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string token;
    Word w;
    while (in >> token) {
        auto letter = alphabet.parse(token);
        if (!letter) throw PreconditionError("unknown generator '" + token + "'");
        w.push_back(*letter);
    }
    return w;
}

bool weight_lex_less(const Alphabet& alphabet, const Word& a, const Word& b)
{
    int wa = weight(alphabet, a);
    int wb = weight(alphabet, b);
    if (wa != wb) return wa < wb;
    return a < b;
}

}  // namespace kv
