#include "kv/algebra/lyndon.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <unordered_map>

#include "kv/algebra/errors.hpp"

namespace kv {

bool is_lyndon(const Word& w)
{
    if (w.empty()) return false;
    const std::string& s = w.bytes();
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s.compare(i, std::string::npos, s) <= 0) return false;
    }
    return true;
}

std::pair<Word, Word> standard_factorization(const Word& w)
{
    if (w.size() < 2) throw PreconditionError("standard_factorization: word too short");
    for (std::size_t i = 1; i < w.size(); ++i) {
        Word suffix = w.substr(i);
        if (is_lyndon(suffix)) return {w.substr(0, i), suffix};
    }
    // A single letter is always Lyndon, so the loop returns.
    return {w.substr(0, w.size() - 1), w.substr(w.size() - 1)};
}

const Terms& lyndon_expansion(const Word& w)
{
    thread_local std::unordered_map<Word, Terms, WordHash> cache;
    if (auto it = cache.find(w); it != cache.end()) return it->second;
    Terms out;
    if (w.size() == 1) {
        out.emplace(w, Rational(1));
    } else {
        auto [u, v] = standard_factorization(w);
        // Copies: the recursive calls may rehash the cache.
        Terms pu = lyndon_expansion(u);
        Terms pv = lyndon_expansion(v);
        for (const auto& [a, ca] : pu) {
            for (const auto& [b, cb] : pv) {
                add_term(out, a + b, ca * cb);
                add_term(out, b + a, -(ca * cb));
            }
        }
    }
    return cache.emplace(w, std::move(out)).first->second;
}

namespace {

void enumerate_words(const Alphabet& alphabet, int remaining, Word& prefix, std::vector<Word>& out)
{
    if (remaining == 0) {
        if (is_lyndon(prefix)) out.push_back(prefix);
        return;
    }
    for (int a = 0; a < alphabet.size(); ++a) {
        int wt = alphabet.weight(static_cast<Letter>(a));
        if (wt > remaining) continue;
        // A Lyndon word never starts with a letter larger than a later one;
        // in particular no letter may be smaller than the first.
        if (!prefix.empty() && a < prefix[0]) continue;
        prefix.push_back(static_cast<Letter>(a));
        enumerate_words(alphabet, remaining - wt, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

const std::vector<Word>& lyndon_words(const Alphabet& alphabet, int wt)
{
    thread_local std::map<std::tuple<int, int, int>, std::vector<Word>> cache;
    auto key = std::make_tuple(alphabet.g(), alphabet.n(), wt);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    std::vector<Word> out;
    if (wt > 0) {
        Word prefix;
        enumerate_words(alphabet, wt, prefix, out);
    }
    std::sort(out.begin(), out.end());
    return cache.emplace(key, std::move(out)).first->second;
}

std::optional<Terms> lie_coordinates(Terms tensor)
{
    Terms coords;
    while (!tensor.empty()) {
        auto it = tensor.begin();
        Word w = it->first;
        Rational c = it->second;
        if (!is_lyndon(w)) return std::nullopt;
        coords.emplace(w, c);
        for (const auto& [u, cu] : lyndon_expansion(w)) add_term(tensor, u, -(c * cu));
    }
    return coords;
}

Word least_rotation(const Word& w)
{
    const std::string& s = w.bytes();
    std::string best = s;
    for (std::size_t i = 1; i < s.size(); ++i) {
        std::string r = s.substr(i) + s.substr(0, i);
        if (r < best) best = std::move(r);
    }
    return Word(std::move(best));
}

}  // namespace kv
