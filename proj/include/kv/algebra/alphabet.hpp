#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace kv {

using Letter = unsigned char;

enum class GeneratorKind { x, y, z };

// The generator system x_1..x_g, y_1..y_g, z_1..z_n in this fixed total order.
// x and y generators have weight 1, z generators have weight 2.
class Alphabet {
public:
    Alphabet() = default;
    Alphabet(int g, int n);

    int g() const noexcept { return g_; }
    int n() const noexcept { return n_; }
    int size() const noexcept { return 2 * g_ + n_; }

    // Indices are zero-based: x(0) is the generator printed as "x1".
    Letter x(int i) const;
    Letter y(int i) const;
    Letter z(int j) const;

    GeneratorKind kind(Letter a) const;
    int index(Letter a) const;
    int weight(Letter a) const { return a >= 2 * g_ ? 2 : 1; }

    std::string name(Letter a) const;
    std::optional<Letter> parse(std::string_view name) const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    int g_ = 0;
    int n_ = 0;
};

// A finite sequence of generators.  Letters are stored as bytes so that the
// natural string ordering is the lexicographic order induced by the alphabet.
class Word {
public:
    Word() = default;
    explicit Word(std::string letters) : letters_(std::move(letters)) {}

    static Word letter(Letter a) { return Word(std::string(1, static_cast<char>(a))); }

    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return static_cast<Letter>(letters_[i]); }
    Letter front() const { return static_cast<Letter>(letters_.front()); }
    Letter back() const { return static_cast<Letter>(letters_.back()); }

    Word substr(std::size_t pos, std::size_t len = std::string::npos) const
    {
        return Word(letters_.substr(pos, len));
    }
    void push_back(Letter a) { letters_.push_back(static_cast<char>(a)); }
    void pop_back() { letters_.pop_back(); }
    Word& operator+=(const Word& other)
    {
        letters_ += other.letters_;
        return *this;
    }
    friend Word operator+(Word a, const Word& b)
    {
        a += b;
        return a;
    }

    const std::string& bytes() const noexcept { return letters_; }

    friend bool operator==(const Word&, const Word&) = default;
    friend std::strong_ordering operator<=>(const Word& a, const Word& b)
    {
        int c = a.letters_.compare(b.letters_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    std::string letters_;
};

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept
    {
        return std::hash<std::string>{}(w.bytes());
    }
};

int weight(const Alphabet& alphabet, const Word& w);

// Space-separated generator names, e.g. "x1 y1 z1".  The empty word prints as "".
std::string format_word(const Alphabet& alphabet, const Word& w);
Word parse_word(const Alphabet& alphabet, std::string_view text);

// Total order used for canonical output: by weight, then lexicographically.
bool weight_lex_less(const Alphabet& alphabet, const Word& a, const Word& b);

}  // namespace kv
