#include "kv/io/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include "kv/algebra/lyndon.hpp"
#include "kv/algebra/theta.hpp"
#include "kv/constructions/elliptic.hpp"
#include "kv/io/json_io.hpp"

namespace kv {

namespace {

// Bad flags, unreadable files and other usage problems.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A mathematical failure with a message for stderr.
class MathFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::optional<int> g, n, deg, weight;
    std::vector<std::string> inputs;
    std::string out_path;
    std::string strategy = "joint";
    std::string pivot = "first";
    std::optional<unsigned> seed;
    int count = 0;
    std::string manifest;
    std::string word;
    bool log = false;
};

struct Outcome {
    std::optional<Json> document;  // written to --out or stdout
    std::string summary;           // printed when the document goes to a file
    int code = exit_ok;
};

struct Context {
    std::string verb;
    Options opt;
    std::vector<std::pair<std::string, std::string>> input_hashes;  // path, sha256
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& bytes)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << bytes;
}

Json load_input(Context& ctx, std::size_t i)
{
    if (i >= ctx.opt.inputs.size())
        throw UsageError(ctx.verb + ": expected at least " + std::to_string(i + 1) + " --in file(s)");
    Json j = parse_json(read_file(ctx.opt.inputs[i]));
    ctx.input_hashes.emplace_back(ctx.opt.inputs[i], sha256_hex(canonical_dump(j)));
    return j;
}

void require_inputs(const Context& ctx, std::size_t n)
{
    if (ctx.opt.inputs.size() != n)
        throw UsageError(ctx.verb + ": expected exactly " + std::to_string(n) + " --in file(s)");
}

int need(const std::optional<int>& v, const char* flag, const Context& ctx, int min)
{
    if (!v) throw UsageError(ctx.verb + ": missing " + flag);
    if (*v < min) throw UsageError(ctx.verb + ": " + flag + " must be at least " + std::to_string(min));
    return *v;
}

Alphabet alphabet_opt(const Context& ctx) { return Alphabet(need(ctx.opt.g, "--g", ctx, 0), need(ctx.opt.n, "--n", ctx, 0)); }

Json rational_json(const Rational& q) { return Json{{"den", q.get_den().get_str()}, {"num", q.get_num().get_str()}}; }

Json weight_counts(const std::map<int, int>& m)
{
    Json j = Json::object();
    for (const auto& [w, c] : m) j[std::to_string(w)] = c;
    return j;
}

// Random inputs for the property drivers.
LieSeries random_lie(std::mt19937& rng, const Alphabet& a, int cut, int lo, int hi, int count)
{
    LieSeries out(a, cut);
    std::vector<Word> pool;
    for (int w = lo; w <= std::min(hi, cut); ++w) {
        const auto& words = lyndon_words(a, w);
        pool.insert(pool.end(), words.begin(), words.end());
    }
    if (pool.empty()) return out;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int i = 0; i < count; ++i) out.add(pool[pick(rng)], ratio(coeff(rng), 1 + i % 2));
    return out;
}

TangentialDerivation random_derivation(std::mt19937& rng, const Alphabet& a, int cut)
{
    std::vector<LieSeries> xy;
    for (int i = 0; i < 2 * a.g(); ++i) xy.push_back(random_lie(rng, a, cut + 1, 2, 4, 2));
    std::vector<LieSeries> tang;
    for (int j = 0; j < a.n(); ++j) tang.push_back(random_lie(rng, a, cut, 1, 3, 2));
    return TangentialDerivation(a, cut, xy, tang);
}

template <class Check>
Outcome property_driver(const Context& ctx, const char* name, int default_count, Check check)
{
    const Alphabet a = alphabet_opt(ctx);
    const int cut = need(ctx.opt.deg, "--deg", ctx, 1);
    const int count = ctx.opt.count > 0 ? ctx.opt.count : default_count;
    std::mt19937 rng(*ctx.opt.seed);
    int failures = 0;
    for (int i = 0; i < count; ++i)
        if (!check(rng, a, cut)) ++failures;
    Outcome o;
    o.document = Json{{"check", name}, {"cut", cut}, {"failures", failures}, {"g", a.g()}, {"n", a.n()},
                      {"pass", failures == 0}, {"samples", count}, {"seed", *ctx.opt.seed}};
    o.summary = std::string(name) + ": " + std::to_string(count - failures) + "/" + std::to_string(count) + " hold";
    o.code = failures == 0 ? exit_ok : exit_math_failure;
    return o;
}

Outcome verb_bch(Context& ctx)
{
    if (ctx.opt.seed) {
        return property_driver(ctx, "bch", 10, [](std::mt19937& rng, const Alphabet& a, int cut) {
            auto x = random_lie(rng, a, cut, 1, 3, 3), y = random_lie(rng, a, cut, 1, 3, 3);
            return bch(x, y) == log(exp(x) * exp(y));
        });
    }
    require_inputs(ctx, 2);
    LieSeries a = lie_from_json(load_input(ctx, 0)), b = lie_from_json(load_input(ctx, 1));
    if (!(a.alphabet() == b.alphabet()) || a.cut() != b.cut()) throw ContextMismatch("bch: inputs differ in context");
    return Outcome{to_json(bch(a, b)), "bch written", exit_ok};
}

Outcome verb_exp(Context& ctx)
{
    require_inputs(ctx, 1);
    return Outcome{to_json(exp(lie_from_json(load_input(ctx, 0)))), "exp written", exit_ok};
}

Outcome verb_log(Context& ctx)
{
    require_inputs(ctx, 1);
    TensorSeries t = tensor_from_json(load_input(ctx, 0));
    try {
        return Outcome{to_json(log(t)), "log written", exit_ok};
    } catch (const NotLieError& e) {
        throw MathFailure(e.what());
    } catch (const PreconditionError& e) {
        throw MathFailure(e.what());
    }
}

Outcome verb_div(Context& ctx)
{
    if (ctx.opt.seed) {
        return property_driver(ctx, "div-cocycle", 20, [](std::mt19937& rng, const Alphabet& a, int cut) {
            auto u = random_derivation(rng, a, cut), v = random_derivation(rng, a, cut);
            return div(der_bracket(u, v)) == apply(u, div(v)) - apply(v, div(u));
        });
    }
    require_inputs(ctx, 1);
    return Outcome{to_json(div(derivation_from_json(load_input(ctx, 0)))), "div written", exit_ok};
}

Outcome verb_jcocycle(Context& ctx)
{
    if (ctx.opt.seed) {
        return property_driver(ctx, "j-cocycle", 20, [](std::mt19937& rng, const Alphabet& a, int cut) {
            auto F = der_exp(random_derivation(rng, a, cut)), G = der_exp(random_derivation(rng, a, cut));
            return j_cocycle(aut_compose(F, G)) == j_cocycle(F) + apply(F, j_cocycle(G));
        });
    }
    require_inputs(ctx, 1);
    return Outcome{to_json(j_cocycle(automorphism_from_json(load_input(ctx, 0)))), "j written", exit_ok};
}

Outcome verb_instance(Context& ctx)
{
    const Alphabet a = alphabet_opt(ctx);
    KVInstance inst = make_instance(a.g(), a.n(), need(ctx.opt.deg, "--deg", ctx, 1));
    return Outcome{instance_to_json(inst), "instance written", exit_ok};
}

Json check_report(const KVSolution& sol, const KVInstance& inst)
{
    ResidualReport r = residual_report(sol, inst);
    return Json{{"kv1_nonzero", weight_counts(r.kv1_nonzero)},
                {"kv2_nonzero", weight_counts(r.kv2_nonzero)},
                {"pass", r.pass()}};
}

Outcome solution_outcome(const KVSolution& sol, const KVInstance& inst, const std::string& what)
{
    std::ostringstream s;
    s << what << " (" << inst.alphabet.g() << "," << inst.alphabet.n() << ") cut " << inst.cut
      << ": certified, h =";
    for (int k = 1; k <= sol.h.order(); ++k) s << " " << sol.h.coefficient(k).get_str();
    return Outcome{to_json(sol, inst), s.str(), exit_ok};
}

Outcome verb_solve(Context& ctx)
{
    const Alphabet a = alphabet_opt(ctx);
    const int cut = need(ctx.opt.deg, "--deg", ctx, 2);
    SolveOptions options;
    options.strategy = ctx.opt.strategy == "joint" ? Strategy::joint : Strategy::kv1_then_correct;
    options.pivot = ctx.opt.pivot == "first" ? PivotOrder::first : PivotOrder::last;
    if (ctx.opt.inputs.size() > 1) throw UsageError("solve: at most one --in (a fixed Duflo function)");
    if (!ctx.opt.inputs.empty()) options.fixed_h = scalar_from_json(load_input(ctx, 0));
    KVInstance inst = make_instance(a.g(), a.n(), cut);
    return solution_outcome(solve_kv(inst, options), inst, "solve");
}

Outcome verb_check(Context& ctx)
{
    require_inputs(ctx, 1);
    LoadedSolution s = solution_from_json(load_input(ctx, 0));
    Json report = check_report(s.solution, s.instance);
    const bool pass = report["pass"].get<bool>();
    std::string summary = pass ? "check: residuals are zero" : "check: nonzero residuals at weights (kv1 " +
                                                                   report["kv1_nonzero"].dump() + ", kv2 " +
                                                                   report["kv2_nonzero"].dump() + ")";
    return Outcome{report, summary, pass ? exit_ok : exit_math_failure};
}

Outcome verb_krv_check(Context& ctx)
{
    require_inputs(ctx, 1);
    TangentialDerivation u = derivation_from_json(load_input(ctx, 0));
    KrvResult r = krv_check(u, make_instance(u.alphabet().g(), u.alphabet().n(), u.cut()));
    Json doc{{"annihilates_phi", r.annihilates_phi},
             {"diagnostic", r.diagnostic},
             {"duflo", r.h ? to_json(*r.h) : Json(nullptr)},
             {"pass", r.pass()}};
    return Outcome{doc, r.pass() ? "krv-check: pass" : "krv-check: fail: " + r.diagnostic,
                   r.pass() ? exit_ok : exit_math_failure};
}

Outcome verb_krv_basis(Context& ctx)
{
    const Alphabet a = alphabet_opt(ctx);
    const int cut = need(ctx.opt.deg, "--deg", ctx, 1);
    const int m = need(ctx.opt.weight, "--weight", ctx, 1);
    auto basis = krv_basis(make_instance(a.g(), a.n(), cut), m);
    Json list = Json::array();
    for (const auto& b : basis) list.push_back(Json{{"derivation", to_json(b.u)}, {"duflo_coefficient", rational_json(b.duflo)}});
    Json doc{{"basis", std::move(list)}, {"instance", {{"cut", cut}, {"g", a.g()}, {"n", a.n()}}}, {"weight", m}};
    return Outcome{doc, "krv-basis: dimension " + std::to_string(basis.size()), exit_ok};
}

Json fit_json(const LambdaFit& fit)
{
    return Json{{"critical_weight", fit.critical_weight}, {"lambda", rational_json(fit.lambda)},
                {"slope", rational_json(fit.slope)}};
}

Outcome verb_glue(Context& ctx)
{
    require_inputs(ctx, 3);
    LoadedSolution left = solution_from_json(load_input(ctx, 0));
    LoadedSolution right = solution_from_json(load_input(ctx, 1));
    LoadedSolution f03 = solution_from_json(load_input(ctx, 2));
    if (!(f03.instance.alphabet == Alphabet(0, 2))) throw UsageError("glue: third input must be a (0,2) solution");
    GluePlan plan = make_glue_plan(left.instance.alphabet, right.instance.alphabet);
    GlueResult res = combine_solutions(left.solution, right.solution, f03.solution, plan);
    KVInstance inst = make_instance(plan.target.g(), plan.target.n(), f03.instance.cut);
    Outcome o = solution_outcome(res.solution, inst, "glue");
    (*o.document)["construction"] = fit_json(res.fit);
    o.summary += ", lambda = " + res.fit.lambda.get_str();
    return o;
}

Outcome verb_elliptic(Context& ctx)
{
    require_inputs(ctx, 1);
    const int cut = need(ctx.opt.deg, "--deg", ctx, 1);
    LoadedSolution f03 = solution_from_json(load_input(ctx, 0));
    if (!(f03.instance.alphabet == Alphabet(0, 2))) throw UsageError("elliptic: input must be a (0,2) solution");
    if (f03.instance.cut < 2 * cut + 2)
        throw UsageError("elliptic: input cut must be at least 2*deg+2 = " + std::to_string(2 * cut + 2));
    if (!residual_report(f03.solution, f03.instance).pass()) throw MathFailure("elliptic: input is not certified");
    EllipticResult res = elliptic_solve(f03.solution, cut);
    Outcome o = solution_outcome(res.solution, make_instance(1, 0, cut), "elliptic");
    (*o.document)["construction"] = fit_json(res.fit);
    o.summary += ", lambda = " + res.fit.lambda.get_str();
    return o;
}

Outcome verb_expand(Context& ctx)
{
    const Alphabet a = alphabet_opt(ctx);
    const int cut = need(ctx.opt.deg, "--deg", ctx, 1);
    std::vector<GroupLetter> word;
    try {
        word = ctx.opt.word.empty() ? boundary_word(a) : parse_group_word(ctx.opt.word);
    } catch (const PreconditionError& e) {
        throw UsageError(std::string("expand: ") + e.what());
    }
    TensorSeries t = theta_exp(a, cut, word);
    if (!ctx.opt.log) return Outcome{to_json(t), "expansion written", exit_ok};
    return Outcome{to_json(log(t)), "log of expansion written", exit_ok};
}

Outcome verb_torsor(Context& ctx)
{
    require_inputs(ctx, 2);
    LoadedSolution s = solution_from_json(load_input(ctx, 0));
    Automorphism G = automorphism_from_json(load_input(ctx, 1));
    if (!(G.alphabet() == s.instance.alphabet) || G.cut() != s.instance.cut)
        throw ContextMismatch("torsor: G does not match the solution's instance");
    KrvResult check = stabilizer_check(G, s.instance);
    if (!check.pass()) throw MathFailure("torsor: G fails the stabilizer check: " + check.diagnostic);
    return solution_outcome(torsor_act(s.solution, G, s.instance), s.instance, "torsor");
}

using Verb = Outcome (*)(Context&);

struct VerbEntry {
    std::string name;
    Verb fn;
    std::string help;
};

const std::vector<VerbEntry>& verbs()
{
    static const std::vector<VerbEntry> table{
        {"bch", verb_bch, "log(e^a e^b) of two Lie series"},
        {"exp", verb_exp, "exponential of a Lie series"},
        {"log", verb_log, "logarithm of a group-like tensor series"},
        {"div", verb_div, "divergence of a tangential derivation"},
        {"jcocycle", verb_jcocycle, "j cocycle of an automorphism"},
        {"instance", verb_instance, "phi and xi for (g, n) at cut N"},
        {"solve", verb_solve, "solve KVI and KVII degree by degree"},
        {"check", verb_check, "residual report for a solution"},
        {"krv-check", verb_krv_check, "test a derivation for krv membership"},
        {"krv-basis", verb_krv_basis, "basis of krv in one weight"},
        {"glue", verb_glue, "combine two solutions through a (0,2) solution"},
        {"elliptic", verb_elliptic, "genus-one solution from a (0,2) solution"},
        {"expand", verb_expand, "group-like expansion of a group word"},
        {"torsor", verb_torsor, "act on a solution by a stabilizer element"},
    };
    return table;
}

void add_flags(CLI::App* sub, Options& opt)
{
    sub->add_option("--g", opt.g, "genus g");
    sub->add_option("--n", opt.n, "number of z generators");
    sub->add_option("--deg", opt.deg, "degree cut N");
    sub->add_option("--in", opt.inputs, "input JSON file (repeatable)");
    sub->add_option("--out", opt.out_path, "output JSON file (default: stdout)");
    sub->add_option("--strategy", opt.strategy, "solver strategy")->check(CLI::IsMember({"joint", "kv1-then-correct"}));
    sub->add_option("--pivot", opt.pivot, "pivot order")->check(CLI::IsMember({"first", "last"}));
    sub->add_option("--seed", opt.seed, "run the randomized property check with this seed");
    sub->add_option("--count", opt.count, "number of random samples")->check(CLI::PositiveNumber);
    sub->add_option("--manifest", opt.manifest, "write a run manifest to this file");
    sub->add_option("--weight", opt.weight, "weight m for krv-basis");
    sub->add_option("--word", opt.word, "group word for expand, e.g. \"a1 b1 a1^-1 b1^-1 c1\"");
    sub->add_flag("--log", opt.log, "expand: output the logarithm");
}

Json manifest_json(const Context& ctx, const std::vector<std::string>& args, const std::string& output_sha,
                   int code, double seconds)
{
    Json inputs = Json::array();
    for (const auto& [path, sha] : ctx.input_hashes) inputs.push_back(Json{{"path", path}, {"sha256", sha}});
    Json outputs = Json::array();
    if (!output_sha.empty())
        outputs.push_back(Json{{"path", ctx.opt.out_path.empty() ? "-" : ctx.opt.out_path}, {"sha256", output_sha}});
    Json params = Json::object();
    if (ctx.opt.g) params["g"] = *ctx.opt.g;
    if (ctx.opt.n) params["n"] = *ctx.opt.n;
    if (ctx.opt.weight) params["weight"] = *ctx.opt.weight;
    if (ctx.opt.seed) params["seed"] = *ctx.opt.seed;
    if (ctx.opt.count > 0) params["count"] = ctx.opt.count;
    if (!ctx.opt.word.empty()) params["word"] = ctx.opt.word;
    if (ctx.opt.log) params["log"] = true;
    params["pivot"] = ctx.opt.pivot;
    return Json{{"argv", args},
                {"command", ctx.verb},
                {"cut", ctx.opt.deg ? Json(*ctx.opt.deg) : Json(nullptr)},
                {"exit_code", code},
                {"inputs", std::move(inputs)},
                {"outputs", std::move(outputs)},
                {"params", std::move(params)},
                {"strategy", ctx.opt.strategy},
                {"wall_time_seconds", seconds}};
}

// Re-runs the command recorded in a manifest and compares output hashes.
int replay(const std::string& manifest_path, const std::string& out_override, std::ostream& out, std::ostream& err)
{
    Json m = parse_json(read_file(manifest_path));
    if (!m.contains("argv") || !m["argv"].is_array() || !m.contains("outputs"))
        throw FormatError("replay: not a run manifest");
    std::vector<std::string> args;
    const Json& argv = m["argv"];
    for (std::size_t i = 0; i < argv.size(); ++i) {
        std::string a = argv[i].get<std::string>();
        if (a == "--manifest" || a == "--out") {
            ++i;
            continue;
        }
        if (a.rfind("--manifest=", 0) == 0 || a.rfind("--out=", 0) == 0) continue;
        args.push_back(a);
    }
    std::ostringstream produced;
    std::ostringstream diag;
    const int code = run_cli(args, produced, diag);
    const std::string bytes = produced.str();
    if (!out_override.empty()) write_file(out_override, bytes);
    const std::string sha = sha256_hex(bytes);
    std::string recorded;
    if (!m["outputs"].empty()) recorded = m["outputs"][0].value("sha256", "");
    const bool same = code == m.value("exit_code", 0) && sha == recorded;
    out << (same ? "replay: identical output " : "replay: output differs ") << sha << "\n";
    if (!same) err << diag.str();
    return same ? exit_ok : exit_math_failure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact workbench for the higher-genus Kashiwara-Vergne problems", "kv"};
    app.require_subcommand(1);
    Options opt;
    std::vector<std::pair<CLI::App*, Verb>> subs;
    for (const auto& [name, fn, help] : verbs()) {
        subs.emplace_back(app.add_subcommand(name, help), fn);
        add_flags(subs.back().first, opt);
    }
    std::string replay_manifest, replay_out;
    CLI::App* replay_cmd = app.add_subcommand("replay", "re-run a manifest and compare output hashes");
    replay_cmd->add_option("--manifest", replay_manifest, "manifest file")->required();
    replay_cmd->add_option("--out", replay_out, "write the reproduced output here");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (replay_cmd->parsed()) return replay(replay_manifest, replay_out, out, err);
        Context ctx;
        Verb fn = nullptr;
        for (const auto& [sub, f] : subs) {
            if (sub->parsed()) {
                ctx.verb = sub->get_name();
                fn = f;
            }
        }
        ctx.opt = opt;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn(ctx);
        } catch (const MathFailure& e) {
            err << "kv " << ctx.verb << ": " << e.what() << "\n";
            o.code = exit_math_failure;
        } catch (const InconsistentSystem& e) {
            err << "kv " << ctx.verb << ": " << e.what() << " (weight " << e.weight() << ")\n";
            o.code = exit_math_failure;
        } catch (const NotLieError& e) {
            err << "kv " << ctx.verb << ": " << e.what() << "\n";
            o.code = exit_math_failure;
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        std::string sha;
        if (o.document) {
            const std::string bytes = canonical_dump(*o.document);
            sha = sha256_hex(bytes);
            if (ctx.opt.out_path.empty()) {
                out << bytes;
            } else {
                write_file(ctx.opt.out_path, bytes);
                out << o.summary << "\n";
            }
        }
        if (o.code != exit_ok && !o.summary.empty() && !ctx.opt.out_path.empty()) err << o.summary << "\n";
        if (!ctx.opt.manifest.empty())
            write_file(ctx.opt.manifest, canonical_dump(manifest_json(ctx, args, sha, o.code, seconds)));
        return o.code;
    } catch (const UsageError& e) {
        err << "kv: " << e.what() << "\n";
    } catch (const FormatError& e) {
        err << "kv: " << e.what() << "\n";
    } catch (const ContextMismatch& e) {
        err << "kv: " << e.what() << "\n";
    } catch (const PreconditionError& e) {
        err << "kv: " << e.what() << "\n";
    }
    return exit_usage;
}

}  // namespace kv
