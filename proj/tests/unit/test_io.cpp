#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "../support/random_series.hpp"
#include "kv/io/cli.hpp"
#include "kv/io/json_io.hpp"

using namespace kv;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

class TempDir : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir = fs::temp_directory_path() / ("kv_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                           "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    fs::path dir;
};

}  // namespace

TEST(Json, SeriesRoundtrip)
{
    std::mt19937 rng(4);
    for (const auto& a : {Alphabet(0, 2), Alphabet(1, 1), Alphabet(2, 0)}) {
        auto l = fixtures::random_lie(rng, a, 6, 1, 6, 5);
        EXPECT_EQ(lie_from_json(parse_json(canonical_dump(to_json(l)))), l);
        auto t = fixtures::random_tensor(rng, a, 5, 4, 6);
        EXPECT_EQ(tensor_from_json(parse_json(canonical_dump(to_json(t)))), t);
        auto c = tr_project(t);
        EXPECT_EQ(cyclic_from_json(parse_json(canonical_dump(to_json(c)))), c);
        auto u = fixtures::random_derivation(rng, a, 4);
        EXPECT_EQ(derivation_from_json(parse_json(canonical_dump(to_json(u)))), u);
        auto F = fixtures::random_automorphism(rng, a, 4);
        const std::string bytes = canonical_dump(to_json(F));
        auto G = automorphism_from_json(parse_json(bytes));
        EXPECT_EQ(G, F);
        EXPECT_EQ(canonical_dump(to_json(G)), bytes);
    }
    ScalarSeries h(6);
    h.set(2, ratio(1, 48));
    h.set(4, ratio(-1, 5760));
    EXPECT_EQ(scalar_from_json(parse_json(canonical_dump(to_json(h)))), h);
}

TEST(Json, TypedErrors)
{
    Alphabet a(1, 0);
    TensorSeries t(a, 3);
    t.add(Word::letter(0) + Word::letter(1), Rational(1));
    EXPECT_THROW(lie_from_json(to_json(t)), FormatError);
    EXPECT_THROW(parse_json("{ not json"), FormatError);
    Json bad = to_json(LieSeries::generator(a, 3, 0));
    bad["terms"][0]["key"] = "y1 x1";  // not a Lyndon word
    EXPECT_THROW(lie_from_json(bad), FormatError);
    bad = to_json(LieSeries::generator(a, 3, 0));
    bad["terms"][0]["den"] = "0";
    EXPECT_THROW(lie_from_json(bad), FormatError);
}

TEST(Json, Sha256KnownVector)
{
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Cli, ArgumentErrors)
{
    EXPECT_EQ(run({}).code, exit_usage);
    EXPECT_EQ(run({"frobnicate"}).code, exit_usage);
    EXPECT_EQ(run({"solve", "--g", "0", "--n", "2"}).code, exit_usage);
    EXPECT_EQ(run({"solve", "--g", "0", "--n", "2", "--deg", "4", "--strategy", "greedy"}).code, exit_usage);
    EXPECT_EQ(run({"instance", "--g", "-1", "--n", "2", "--deg", "4"}).code, exit_usage);
    EXPECT_EQ(run({"check", "--in", "/nonexistent/file.json"}).code, exit_usage);
}

TEST_F(TempDir, SolveCheckReplay)
{
    const std::string sol = path("sol.json"), man = path("run.json");
    std::vector<std::string> args{"solve", "--g", "0", "--n", "2", "--deg", "6", "--out", sol, "--manifest", man};
    ASSERT_EQ(run(args).code, exit_ok);
    const std::string first = slurp(sol);
    ASSERT_EQ(run(args).code, exit_ok);
    EXPECT_EQ(slurp(sol), first);

    Json m = parse_json(slurp(man));
    EXPECT_EQ(m["outputs"][0]["sha256"], sha256_hex(first));
    EXPECT_EQ(m["exit_code"], 0);
    EXPECT_EQ(run({"replay", "--manifest", man}).code, exit_ok);

    EXPECT_EQ(run({"check", "--in", sol}).code, exit_ok);

    // A corrupted coefficient is a mathematical failure, not a format error.
    Json j = parse_json(first);
    j["aut"]["tangential"][0]["terms"][1]["num"] = "5";
    const std::string bad = path("bad.json");
    spit(bad, canonical_dump(j));
    CliRun r = run({"check", "--in", bad});
    EXPECT_EQ(r.code, exit_math_failure);
    EXPECT_FALSE(parse_json(r.out)["pass"].get<bool>());

    // Tampering with the recorded hash makes replay report a difference.
    m["outputs"][0]["sha256"] = std::string(64, '0');
    spit(man, canonical_dump(m));
    EXPECT_EQ(run({"replay", "--manifest", man}).code, exit_math_failure);
}

TEST_F(TempDir, FixedDufloRejected)
{
    ScalarSeries h(6);
    h.set(2, ratio(1, 24));  // twice the forced value
    const std::string hp = path("h.json");
    spit(hp, canonical_dump(to_json(h)));
    EXPECT_EQ(run({"solve", "--g", "0", "--n", "2", "--deg", "6", "--in", hp}).code, exit_math_failure);
}

TEST_F(TempDir, AlgebraVerbs)
{
    Alphabet a(1, 0);
    auto x = LieSeries::generator(a, 5, 0), y = LieSeries::generator(a, 5, 1);
    spit(path("x.json"), canonical_dump(to_json(x)));
    spit(path("y.json"), canonical_dump(to_json(y)));
    CliRun r = run({"bch", "--in", path("x.json"), "--in", path("y.json")});
    ASSERT_EQ(r.code, exit_ok);
    // Oracle: tensor-algebra logarithm of e^x e^y.
    EXPECT_EQ(lie_from_json(parse_json(r.out)).to_tensor(), log(exp(x) * exp(y)).to_tensor());
    EXPECT_EQ(run({"bch", "--in", path("x.json")}).code, exit_usage);
    EXPECT_EQ(run({"div", "--seed", "2", "--g", "1", "--n", "1", "--deg", "4"}).code, exit_ok);
    EXPECT_EQ(run({"jcocycle", "--seed", "2", "--g", "1", "--n", "1", "--deg", "4"}).code, exit_ok);
    EXPECT_EQ(run({"expand", "--g", "1", "--n", "0", "--deg", "4", "--word", "x1 q"}).code, exit_usage);
}
