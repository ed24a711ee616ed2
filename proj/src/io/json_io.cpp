#include "kv/io/json_io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>

namespace kv {

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
}

namespace {

const Json& field(const Json& j, const char* name)
{
    if (!j.is_object() || !j.contains(name)) throw FormatError(std::string("missing field '") + name + "'");
    return j.at(name);
}

int int_field(const Json& j, const char* name)
{
    const Json& v = field(j, name);
    if (!v.is_number_integer()) throw FormatError(std::string("field '") + name + "' must be an integer");
    return v.get<int>();
}

std::string string_field(const Json& j, const char* name)
{
    const Json& v = field(j, name);
    if (!v.is_string()) throw FormatError(std::string("field '") + name + "' must be a string");
    return v.get<std::string>();
}

void expect_kind(const Json& j, const char* kind)
{
    const std::string actual = string_field(j, "kind");
    if (actual != kind) throw FormatError("expected kind '" + std::string(kind) + "', found '" + actual + "'");
}

Rational parse_rational(const Json& term)
{
    Rational q;
    try {
        q = Rational(mpz_class(string_field(term, "num")), mpz_class(string_field(term, "den")));
    } catch (const std::invalid_argument&) {
        throw FormatError("coefficient is not a decimal integer pair");
    }
    if (sgn(q.get_den()) == 0) throw FormatError("zero denominator");
    q.canonicalize();
    return q;
}

Json term_json(std::string key, const Rational& c)
{
    return Json{{"key", std::move(key)}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}};
}

Json series_json(const Alphabet& a, int cut, const char* kind, const Terms& terms)
{
    std::vector<const Terms::value_type*> sorted;
    for (const auto& t : terms) sorted.push_back(&t);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [&](const auto* p, const auto* q) { return weight_lex_less(a, p->first, q->first); });
    Json list = Json::array();
    for (const auto* t : sorted) list.push_back(term_json(format_word(a, t->first), t->second));
    return Json{{"alphabet", to_json(a)}, {"cut", cut}, {"kind", kind}, {"terms", std::move(list)}};
}

// Reads alphabet, cut and word-keyed terms of the given kind.
template <class Add>
void read_series(const Json& j, const char* kind, const Alphabet& a, Add add)
{
    expect_kind(j, kind);
    const Json& terms = field(j, "terms");
    if (!terms.is_array()) throw FormatError("'terms' must be an array");
    for (const Json& t : terms) {
        Word w;
        try {
            w = parse_word(a, string_field(t, "key"));
        } catch (const PreconditionError& e) {
            throw FormatError(std::string("bad term key: ") + e.what());
        }
        add(w, parse_rational(t));
    }
}

int cut_of(const Json& j)
{
    int cut = int_field(j, "cut");
    if (cut < 0) throw FormatError("negative cut");
    return cut;
}

}  // namespace

Json to_json(const Alphabet& a) { return Json{{"g", a.g()}, {"n", a.n()}}; }

Json to_json(const LieSeries& s) { return series_json(s.alphabet(), s.cut(), "lie", s.terms()); }
Json to_json(const TensorSeries& s) { return series_json(s.alphabet(), s.cut(), "tensor", s.terms()); }
Json to_json(const CyclicSeries& s) { return series_json(s.alphabet(), s.cut(), "cyclic", s.terms()); }

Json to_json(const ScalarSeries& s)
{
    Json list = Json::array();
    for (int k = 1; k <= s.order(); ++k)
        if (sgn(s.coefficient(k)) != 0) list.push_back(term_json("s^" + std::to_string(k), s.coefficient(k)));
    return Json{{"cut", s.order()}, {"kind", "scalar"}, {"terms", std::move(list)}};
}

namespace {

Json map_json(const Alphabet& a, const std::vector<LieSeries>& images, const std::vector<LieSeries>& tangential,
              const char* kind, int cut)
{
    Json imgs = Json::object();
    for (int l = 0; l < a.size(); ++l) imgs[a.name(static_cast<Letter>(l))] = to_json(images[l]);
    Json tang = Json::array();
    for (const auto& t : tangential) tang.push_back(to_json(t));
    return Json{{"alphabet", to_json(a)}, {"cut", cut}, {"images", std::move(imgs)}, {"kind", kind},
                {"tangential", std::move(tang)}};
}

struct MapParts {
    Alphabet alphabet;
    int cut;
    std::vector<LieSeries> xy;
    std::vector<LieSeries> tangential;
};

MapParts read_map(const Json& j, const char* kind)
{
    expect_kind(j, kind);
    MapParts p{alphabet_from_json(field(j, "alphabet")), cut_of(j), {}, {}};
    const Json& imgs = field(j, "images");
    if (!imgs.is_object()) throw FormatError("'images' must be an object");
    for (const auto& [name, value] : imgs.items())
        if (!p.alphabet.parse(name)) throw FormatError("unknown generator '" + name + "' in images");
    for (int i = 0; i < 2 * p.alphabet.g(); ++i) {
        const std::string name = p.alphabet.name(static_cast<Letter>(i));
        if (!imgs.contains(name)) throw FormatError("missing image of " + name);
        p.xy.push_back(lie_from_json(imgs.at(name)));
    }
    // z images are written for readability; they are rebuilt from the tangential data.
    const Json& tang = field(j, "tangential");
    if (!tang.is_array() || static_cast<int>(tang.size()) != p.alphabet.n())
        throw FormatError("'tangential' must list one series per z generator");
    for (const Json& t : tang) p.tangential.push_back(lie_from_json(t));
    for (const auto& s : p.xy)
        if (!(s.alphabet() == p.alphabet)) throw FormatError("image over a different alphabet");
    for (const auto& s : p.tangential)
        if (!(s.alphabet() == p.alphabet)) throw FormatError("tangential data over a different alphabet");
    return p;
}

}  // namespace

Json to_json(const TangentialDerivation& u)
{
    return map_json(u.alphabet(), u.images(), u.tangential(), "tder", u.cut());
}

Json to_json(const Automorphism& F) { return map_json(F.alphabet(), F.images(), F.tangential(), "taut", F.cut()); }

Json instance_to_json(const KVInstance& inst)
{
    return Json{{"instance", {{"cut", inst.cut}, {"g", inst.alphabet.g()}, {"n", inst.alphabet.n()}}},
                {"phi", to_json(inst.phi)},
                {"xi", to_json(inst.xi)}};
}

Json to_json(const KVSolution& sol, const KVInstance& inst)
{
    return Json{{"aut", to_json(sol.F)},
                {"duflo", to_json(sol.h)},
                {"instance", {{"cut", inst.cut}, {"g", inst.alphabet.g()}, {"n", inst.alphabet.n()}}}};
}

Alphabet alphabet_from_json(const Json& j)
{
    int g = int_field(j, "g"), n = int_field(j, "n");
    if (g < 0 || n < 0 || 2 * g + n > 200) throw FormatError("alphabet size out of range");
    return Alphabet(g, n);
}

LieSeries lie_from_json(const Json& j)
{
    LieSeries out(alphabet_from_json(field(j, "alphabet")), cut_of(j));
    read_series(j, "lie", out.alphabet(), [&](const Word& w, const Rational& c) {
        try {
            out.add(w, c);
        } catch (const PreconditionError& e) {
            throw FormatError(std::string("bad lie term: ") + e.what());
        }
    });
    return out;
}

TensorSeries tensor_from_json(const Json& j)
{
    TensorSeries out(alphabet_from_json(field(j, "alphabet")), cut_of(j));
    read_series(j, "tensor", out.alphabet(), [&](const Word& w, const Rational& c) { out.add(w, c); });
    return out;
}

CyclicSeries cyclic_from_json(const Json& j)
{
    CyclicSeries out(alphabet_from_json(field(j, "alphabet")), cut_of(j));
    read_series(j, "cyclic", out.alphabet(), [&](const Word& w, const Rational& c) {
        if (w.empty()) throw FormatError("empty cyclic word");
        out.add(w, c);
    });
    return out;
}

ScalarSeries scalar_from_json(const Json& j)
{
    expect_kind(j, "scalar");
    ScalarSeries out(cut_of(j));
    const Json& terms = field(j, "terms");
    if (!terms.is_array()) throw FormatError("'terms' must be an array");
    for (const Json& t : terms) {
        const std::string key = string_field(t, "key");
        if (key.rfind("s^", 0) != 0) throw FormatError("scalar key must look like s^k");
        int k = 0;
        try {
            k = std::stoi(key.substr(2));
        } catch (const std::exception&) {
            throw FormatError("scalar key must look like s^k");
        }
        if (k < 1 || k > out.order()) throw FormatError("scalar power outside 1..cut");
        out.set(k, out.coefficient(k) + parse_rational(t));
    }
    return out;
}

TangentialDerivation derivation_from_json(const Json& j)
{
    MapParts p = read_map(j, "tder");
    try {
        TangentialDerivation u(p.alphabet, p.cut, p.xy, p.tangential);
        return u;
    } catch (const PreconditionError& e) {
        throw FormatError(std::string("invalid derivation: ") + e.what());
    }
}

Automorphism automorphism_from_json(const Json& j)
{
    MapParts p = read_map(j, "taut");
    try {
        Automorphism F(p.alphabet, p.cut, p.xy, p.tangential);
        return F;
    } catch (const PreconditionError& e) {
        throw FormatError(std::string("invalid automorphism: ") + e.what());
    }
}

LoadedSolution solution_from_json(const Json& j)
{
    const Json& inst = field(j, "instance");
    const int g = int_field(inst, "g"), n = int_field(inst, "n"), cut = int_field(inst, "cut");
    Automorphism F = automorphism_from_json(field(j, "aut"));
    if (!(F.alphabet() == Alphabet(g, n)) || F.cut() != cut)
        throw FormatError("solution automorphism does not match its instance header");
    if (cut < 1) throw FormatError("instance cut must be positive");
    return LoadedSolution{make_instance(g, n, cut), KVSolution{F, scalar_from_json(field(j, "duflo"))}};
}

std::string sha256_hex(const std::string& bytes)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 15]);
    }
    return out;
}

}  // namespace kv
