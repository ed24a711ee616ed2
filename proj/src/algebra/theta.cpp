#include "kv/algebra/theta.hpp"

#include <charconv>
#include <sstream>
#include <string>

#include "kv/algebra/errors.hpp"
#include "kv/algebra/lie_series.hpp"

namespace kv {

std::vector<GroupLetter> parse_group_word(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string token;
    std::vector<GroupLetter> out;
    while (in >> token) {
        GroupLetter letter{GroupLetter::Kind::alpha, 0, false};
        std::string_view body = token;
        if (body.size() > 3 && body.substr(body.size() - 3) == "^-1") {
            letter.inverse = true;
            body.remove_suffix(3);
        }
        if (body.size() < 2) throw PreconditionError("unknown group letter '" + token + "'");
        switch (body[0]) {
        case 'a': letter.kind = GroupLetter::Kind::alpha; break;
        case 'b': letter.kind = GroupLetter::Kind::beta; break;
        case 'c': letter.kind = GroupLetter::Kind::gamma; break;
        default: throw PreconditionError("unknown group letter '" + token + "'");
        }
        int idx = 0;
        auto [ptr, ec] = std::from_chars(body.data() + 1, body.data() + body.size(), idx);
        if (ec != std::errc{} || ptr != body.data() + body.size() || idx < 1)
            throw PreconditionError("unknown group letter '" + token + "'");
        letter.index = idx - 1;
        out.push_back(letter);
    }
    return out;
}

TensorSeries theta_exp(const Alphabet& alphabet, int cut, const std::vector<GroupLetter>& word)
{
    TensorSeries out = TensorSeries::one(alphabet, cut);
    for (const auto& letter : word) {
        Letter gen = 0;
        switch (letter.kind) {
        case GroupLetter::Kind::alpha:
            if (letter.index >= alphabet.g()) throw PreconditionError("theta_exp: alpha index out of range");
            gen = alphabet.x(letter.index);
            break;
        case GroupLetter::Kind::beta:
            if (letter.index >= alphabet.g()) throw PreconditionError("theta_exp: beta index out of range");
            gen = alphabet.y(letter.index);
            break;
        case GroupLetter::Kind::gamma:
            if (letter.index >= alphabet.n()) throw PreconditionError("theta_exp: gamma index out of range");
            gen = alphabet.z(letter.index);
            break;
        }
        LieSeries a = LieSeries::generator(alphabet, cut, gen);
        if (letter.inverse) a = -a;
        out = out * exp(a);
    }
    return out;
}

std::vector<GroupLetter> boundary_word(const Alphabet& alphabet)
{
    using K = GroupLetter::Kind;
    std::vector<GroupLetter> out;
    for (int i = 0; i < alphabet.g(); ++i) {
        out.push_back({K::alpha, i, false});
        out.push_back({K::beta, i, false});
        out.push_back({K::alpha, i, true});
        out.push_back({K::beta, i, true});
    }
    for (int j = 0; j < alphabet.n(); ++j) out.push_back({K::gamma, j, false});
    return out;
}

}  // namespace kv
