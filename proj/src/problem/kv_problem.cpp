#include "kv/problem/kv_problem.hpp"

#include <algorithm>
#include <sstream>

#include "kv/algebra/lyndon.hpp"
#include "kv/problem/parallel.hpp"

namespace kv {

LieSeries phi_element(const Alphabet& alphabet, int cut)
{
    LieSeries out(alphabet, cut);
    for (int i = 0; i < alphabet.g(); ++i) {
        out += lie_bracket(LieSeries::generator(alphabet, cut, alphabet.x(i)),
                           LieSeries::generator(alphabet, cut, alphabet.y(i)));
    }
    for (int j = 0; j < alphabet.n(); ++j) out += LieSeries::generator(alphabet, cut, alphabet.z(j));
    return out;
}

LieSeries xi_element(const Alphabet& alphabet, int cut)
{
    LieSeries acc(alphabet, cut);
    for (int i = 0; i < alphabet.g(); ++i) {
        const LieSeries x = LieSeries::generator(alphabet, cut, alphabet.x(i));
        const LieSeries y = LieSeries::generator(alphabet, cut, alphabet.y(i));
        acc = bch(acc, x);
        acc = bch(acc, y);
        acc = bch(acc, -x);
        acc = bch(acc, -y);
    }
    for (int j = 0; j < alphabet.n(); ++j) acc = bch(acc, LieSeries::generator(alphabet, cut, alphabet.z(j)));
    return acc;
}

KVInstance make_instance(int g, int n, int cut)
{
    if (g < 0 || n < 0) throw PreconditionError("instance: g and n must be non-negative");
    if (cut < 1) throw PreconditionError("instance: cut must be positive");
    Alphabet alphabet(g, n);
    return KVInstance{alphabet, cut, phi_element(alphabet, cut), xi_element(alphabet, cut)};
}

int duflo_order(int cut) { return cut / 2; }

namespace {

void require_instance(const Alphabet& alphabet, int cut, const KVInstance& inst, const char* op)
{
    if (!(alphabet == inst.alphabet) || cut != inst.cut)
        throw ContextMismatch(std::string(op) + ": input does not match the instance context");
}

CyclicSeries duflo_side(const ScalarSeries& h, const LieSeries& a)
{
    CyclicSeries out(a.alphabet(), a.cut());
    for (int j = 0; j < a.alphabet().n(); ++j)
        out += tr_h(h, LieSeries::generator(a.alphabet(), a.cut(), a.alphabet().z(j)));
    out -= tr_h(h, a);
    return out;
}

// exp(u) applied to a, as sum u^k(a) / k!.
LieSeries exp_apply(const TangentialDerivation& u, const LieSeries& a)
{
    LieSeries out = a;
    LieSeries term = a;
    for (int k = 1;; ++k) {
        term = apply(u, term) * ratio(1, k);
        if (term.is_zero()) break;
        out += term;
    }
    return out;
}

template <class Series>
std::map<int, int> count_by_weight(const Series& s)
{
    std::map<int, int> out;
    for (const auto& [w, c] : s.terms()) ++out[weight(s.alphabet(), w)];
    return out;
}

// Linear problems are assembled column by column over row keys (block, word):
// block 0 holds Lie coordinates (KVI), block 1 cyclic coordinates (KVII).
using RowKey = std::pair<int, Word>;
using ColumnVector = std::map<RowKey, Rational>;

void add_block(ColumnVector& v, int block, const Terms& terms, const Rational& scale = Rational(1))
{
    for (const auto& [w, c] : terms) {
        Rational& slot = v[{block, w}];
        slot += c * scale;
        if (sgn(slot) == 0) v.erase({block, w});
    }
}

struct LinearProblem {
    std::vector<ColumnVector> columns;
    ColumnVector rhs;
};

AffineSystem to_system(const LinearProblem& p, int max_weight, const Alphabet& alphabet)
{
    std::map<RowKey, int> rows;
    auto keep = [&](const RowKey& key) { return max_weight < 0 || weight(alphabet, key.second) <= max_weight; };
    for (const auto& col : p.columns)
        for (const auto& [key, c] : col)
            if (keep(key)) rows.emplace(key, 0);
    for (const auto& [key, c] : p.rhs)
        if (keep(key)) rows.emplace(key, 0);
    int index = 0;
    for (auto& [key, i] : rows) i = index++;
    std::vector<SparseVector> coeffs(rows.size());
    std::vector<Rational> rhs(rows.size());
    for (int c = 0; c < static_cast<int>(p.columns.size()); ++c)
        for (const auto& [key, v] : p.columns[c])
            if (keep(key)) coeffs[rows.at(key)][c] = v;
    for (const auto& [key, v] : p.rhs)
        if (keep(key)) rhs[rows.at(key)] = v;
    AffineSystem sys(static_cast<int>(p.columns.size()));
    for (std::size_t i = 0; i < coeffs.size(); ++i) sys.add_row(std::move(coeffs[i]), rhs[i]);
    return sys;
}

int lowest_failing_weight(const LinearProblem& p, const Alphabet& alphabet, int cut)
{
    for (int w = 1; w <= cut; ++w)
        if (!solve_affine(to_system(p, w, alphabet)).consistent()) return w;
    return cut;
}

// One unknown coefficient of a homogeneous derivation: a Lyndon word in the
// image of an x/y generator, or in the tangential data of z_j.
struct Coordinate {
    bool tangential;
    int index;  // generator letter, or j
    Word word;
};

std::vector<Coordinate> degree_coordinates(const Alphabet& alphabet, int m)
{
    std::vector<Coordinate> out;
    for (int a = 0; a < 2 * alphabet.g(); ++a)
        for (const Word& w : lyndon_words(alphabet, m + 1)) out.push_back({false, a, w});
    for (int j = 0; j < alphabet.n(); ++j)
        for (const Word& w : lyndon_words(alphabet, m))
            out.push_back({true, j, w});
    return out;
}

TangentialDerivation combine(const Alphabet& alphabet, int cut, const std::vector<Coordinate>& coords,
                             const std::vector<Rational>& values, std::size_t offset = 0)
{
    std::vector<LieSeries> xy(2 * alphabet.g(), LieSeries(alphabet, cut + 2));
    std::vector<LieSeries> tang(alphabet.n(), LieSeries(alphabet, cut));
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const Rational& v = values[offset + i];
        if (sgn(v) == 0) continue;
        const Coordinate& c = coords[i];
        (c.tangential ? tang[c.index] : xy[c.index]).add(c.word, v);
    }
    return TangentialDerivation(alphabet, cut, std::move(xy), std::move(tang));
}

TangentialDerivation combine_sparse(const Alphabet& alphabet, int cut, const std::vector<Coordinate>& coords,
                                    const SparseVector& v)
{
    std::vector<Rational> dense(coords.size());
    for (const auto& [c, x] : v)
        if (c < static_cast<int>(coords.size())) dense[c] = x;
    return combine(alphabet, cut, coords, dense);
}

// u(phi) at weight m+2 and div(u) for each basis derivation of degree m.
struct DegreeColumns {
    std::vector<Coordinate> coords;
    std::vector<Terms> phi_image;
    std::vector<Terms> divergence;
};

DegreeColumns degree_columns(const LieSeries& phi, int der_cut, int m)
{
    const Alphabet& alphabet = phi.alphabet();
    DegreeColumns out;
    out.coords = degree_coordinates(alphabet, m);
    const int n = static_cast<int>(out.coords.size());
    out.phi_image.resize(n);
    out.divergence.resize(n);
    parallel_for(n, [&](int i) {
        std::vector<Rational> unit(n);
        unit[i] = 1;
        TangentialDerivation e = combine(alphabet, der_cut, out.coords, unit);
        out.phi_image[i] = apply(e, phi).homogeneous(m + 2).terms();
        out.divergence[i] = div(e).homogeneous(m).terms();
    });
    return out;
}

using Pins = std::vector<std::optional<Rational>>;  // c_k, k = 0..K (slot 0 unused)

struct SolverContext {
    const KVInstance& inst;
    int K;
    std::vector<CyclicSeries> H;  // H[k] = duflo_column(xi, k)
    CyclicSeries r;
    PivotOrder pivot;
    bool use_kvi;
    bool use_kv2;

    SolverContext(const KVInstance& instance, PivotOrder order, bool kvi, bool kv2)
        : inst(instance), K(duflo_order(instance.cut)), r(r_element(instance.alphabet, instance.cut)),
          pivot(order), use_kvi(kvi), use_kv2(kv2)
    {
        H.emplace_back(inst.alphabet, inst.cut);
        for (int k = 1; k <= K; ++k) H.push_back(duflo_column(inst.xi, k));
    }

    // Right-hand side for degree m given the current KVI image and j-value.
    ColumnVector rhs(int m, const LieSeries& image_of_phi, const CyclicSeries& j, const Pins& pins) const
    {
        ColumnVector out;
        if (use_kvi && m + 2 <= inst.cut) add_block(out, 0, (inst.xi - image_of_phi).homogeneous(m + 2).terms());
        if (use_kv2) {
            CyclicSeries target = -j - r;
            for (int k = 1; k <= K; ++k)
                if (pins[k]) target += H[k] * *pins[k];
            add_block(out, 1, target.homogeneous(m).terms());
        }
        return out;
    }
};

// F = exp(u) with u accumulated degree by degree.
struct DerivationState {
    TangentialDerivation u;
    ColumnVector rhs(const SolverContext& ctx, int m, const Pins& pins) const
    {
        LieSeries image = ctx.use_kvi ? exp_apply(u, ctx.inst.phi) : ctx.inst.phi;
        CyclicSeries j = ctx.use_kv2 ? j_of_exp(u) : CyclicSeries(u.alphabet(), u.cut());
        return ctx.rhs(m, image, j, pins);
    }
    DerivationState advanced(const TangentialDerivation& step) const { return {u + step}; }
    Automorphism finish() const { return der_exp(u); }
};

// F updated by F <- F o exp(step).
struct AutomorphismState {
    Automorphism F;
    ColumnVector rhs(const SolverContext& ctx, int m, const Pins& pins) const
    {
        LieSeries image = ctx.use_kvi ? apply(F, ctx.inst.phi) : ctx.inst.phi;
        CyclicSeries j = ctx.use_kv2 ? j_cocycle(F) : CyclicSeries(F.alphabet(), F.cut());
        return ctx.rhs(m, image, j, pins);
    }
    AutomorphismState advanced(const TangentialDerivation& step) const
    {
        return {aut_compose(F, der_exp(step))};
    }
    Automorphism finish() const { return F; }
};

template <class State>
struct StepRecord {
    State before;
    TangentialDerivation step;
    std::map<int, Rational> step_pins;
    std::vector<TangentialDerivation> null_steps;
    std::vector<std::map<int, Rational>> null_pins;
};

std::string inconsistency_message(int m, const char* what)
{
    std::ostringstream out;
    out << "no solution at degree " << m << ": " << what;
    return out.str();
}

template <class State>
State run_degrees(const SolverContext& ctx, State state, Pins& pins, int m_lo, int m_hi)
{
    const Alphabet& alphabet = ctx.inst.alphabet;
    const int N = ctx.inst.cut;
    std::optional<StepRecord<State>> prev;

    for (int m = m_lo; m <= m_hi; ++m) {
        DegreeColumns dc = degree_columns(ctx.inst.phi, N, m);
        const int ncoords = static_cast<int>(dc.coords.size());
        LinearProblem p;
        for (int i = 0; i < ncoords; ++i) {
            ColumnVector col;
            if (ctx.use_kvi && m + 2 <= N) add_block(col, 0, dc.phi_image[i]);
            if (ctx.use_kv2) add_block(col, 1, dc.divergence[i]);
            p.columns.push_back(std::move(col));
        }
        std::vector<int> duflo_ks;
        if (ctx.use_kv2) {
            for (int k = 1; k <= ctx.K; ++k) {
                if (pins[k]) continue;
                CyclicSeries hk = ctx.H[k].homogeneous(m);
                if (hk.is_zero()) continue;
                duflo_ks.push_back(k);
                ColumnVector col;
                add_block(col, 1, hk.terms(), Rational(-1));
                p.columns.push_back(std::move(col));
            }
        }
        p.rhs = state.rhs(ctx, m, pins);
        AffineSolution sol = solve_affine(to_system(p, -1, alphabet), ctx.pivot);

        std::vector<Rational> x;
        if (sol.consistent()) {
            x = sol.particular;
        } else {
            // Revise the previous degree inside its solution space.  The
            // right-hand side is sampled at the origin and the unit vectors;
            // the revised solution is re-verified since the dependence need
            // not be affine.
            if (!prev || prev->null_steps.empty())
                throw InconsistentSystem(m, inconsistency_message(m, "linear system is inconsistent"));
            const int r = static_cast<int>(prev->null_steps.size());
            auto trial = [&](const std::vector<Rational>& t, Pins& trial_pins) {
                TangentialDerivation step = prev->step;
                std::map<int, Rational> sp = prev->step_pins;
                for (int i = 0; i < r; ++i) {
                    if (sgn(t[i]) == 0) continue;
                    step += prev->null_steps[i] * t[i];
                    for (const auto& [k, v] : prev->null_pins[i]) sp[k] += v * t[i];
                }
                trial_pins = pins;
                for (const auto& [k, v] : sp) trial_pins[k] = v;
                return prev->before.advanced(step);
            };
            std::vector<Rational> t0(r);
            Pins pins0;
            const ColumnVector b0 = trial(t0, pins0).rhs(ctx, m, pins0);
            LinearProblem ext = p;
            ext.rhs = b0;
            for (int i = 0; i < r; ++i) {
                std::vector<Rational> ti(r);
                ti[i] = 1;
                Pins pins_i;
                ColumnVector diff = trial(ti, pins_i).rhs(ctx, m, pins_i);
                for (const auto& [key, v] : b0) {
                    Rational& slot = diff[key];
                    slot -= v;
                    if (sgn(slot) == 0) diff.erase(key);
                }
                for (auto& [key, v] : diff) v = -v;
                ext.columns.push_back(std::move(diff));
            }
            AffineSolution ext_sol = solve_affine(to_system(ext, -1, alphabet), ctx.pivot);
            if (!ext_sol.consistent())
                throw InconsistentSystem(
                    m, inconsistency_message(m, "inconsistent even after revising the previous degree"));
            std::vector<Rational> t(ext_sol.particular.end() - r, ext_sol.particular.end());
            Pins revised_pins;
            State revised = trial(t, revised_pins);
            p.rhs = revised.rhs(ctx, m, revised_pins);
            x.assign(ext_sol.particular.begin(), ext_sol.particular.end() - r);
            const AffineSystem check = to_system(p, -1, alphabet);
            const auto res = residual(check, x);
            if (std::any_of(res.begin(), res.end(), [](const Rational& v) { return sgn(v) != 0; }))
                throw InconsistentSystem(
                    m, inconsistency_message(m, "revision of the previous degree does not close the system"));
            state = std::move(revised);
            pins = std::move(revised_pins);
            sol = solve_affine(check, ctx.pivot);
        }

        StepRecord<State> rec{state, combine(alphabet, N, dc.coords, x), {}, {}, {}};
        for (std::size_t i = 0; i < duflo_ks.size(); ++i) rec.step_pins[duflo_ks[i]] = x[ncoords + i];
        for (const SparseVector& v : sol.nullspace) {
            rec.null_steps.push_back(combine_sparse(alphabet, N, dc.coords, v));
            std::map<int, Rational> np;
            for (std::size_t i = 0; i < duflo_ks.size(); ++i)
                if (auto it = v.find(ncoords + static_cast<int>(i)); it != v.end()) np[duflo_ks[i]] = it->second;
            rec.null_pins.push_back(std::move(np));
        }
        for (const auto& [k, v] : rec.step_pins) pins[k] = v;
        state = state.advanced(rec.step);
        prev = std::move(rec);
    }
    return state;
}

ScalarSeries pins_to_series(const Pins& pins, int K)
{
    ScalarSeries h(K);
    for (int k = 1; k <= K; ++k)
        if (pins[k]) h.set(k, *pins[k]);
    return h;
}

int lowest_weight(const ResidualReport& report)
{
    int w = -1;
    if (!report.kv1_nonzero.empty()) w = report.kv1_nonzero.begin()->first;
    if (!report.kv2_nonzero.empty() && (w < 0 || report.kv2_nonzero.begin()->first < w))
        w = report.kv2_nonzero.begin()->first;
    return w;
}

// Solves sum_k c_k duflo_column(a, k) = target for k = 1..cut/2.
std::optional<ScalarSeries> solve_duflo(const LieSeries& a, const CyclicSeries& target, int* failing_weight)
{
    const int K = duflo_order(a.cut());
    LinearProblem p;
    for (int k = 1; k <= K; ++k) {
        ColumnVector col;
        add_block(col, 1, duflo_column(a, k).terms());
        p.columns.push_back(std::move(col));
    }
    add_block(p.rhs, 1, target.terms());
    AffineSolution sol = solve_affine(to_system(p, -1, a.alphabet()));
    if (!sol.consistent()) {
        if (failing_weight) *failing_weight = lowest_failing_weight(p, a.alphabet(), a.cut());
        return std::nullopt;
    }
    ScalarSeries h(K);
    for (int k = 1; k <= K; ++k) h.set(k, sol.particular[k - 1]);
    return h;
}

}  // namespace

LieSeries kv1_residual(const Automorphism& F, const KVInstance& inst)
{
    require_instance(F.alphabet(), F.cut(), inst, "kv1_residual");
    return apply(F, inst.phi) - inst.xi;
}

CyclicSeries kv2_residual(const Automorphism& F, const ScalarSeries& h, const KVInstance& inst)
{
    require_instance(F.alphabet(), F.cut(), inst, "kv2_residual");
    return j_cocycle(F) - (duflo_side(h, inst.xi) - r_element(inst.alphabet, inst.cut));
}

ResidualReport residual_report(const KVSolution& sol, const KVInstance& inst)
{
    ResidualReport out{kv1_residual(sol.F, inst), kv2_residual(sol.F, sol.h, inst), {}, {}};
    out.kv1_nonzero = count_by_weight(out.kv1);
    out.kv2_nonzero = count_by_weight(out.kv2);
    return out;
}

CyclicSeries duflo_column(const LieSeries& a, int k)
{
    CyclicSeries out(a.alphabet(), a.cut());
    for (int j = 0; j < a.alphabet().n(); ++j)
        out += tr_power(LieSeries::generator(a.alphabet(), a.cut(), a.alphabet().z(j)), k);
    out -= tr_power(a, k);
    return out;
}

ScalarSeries kv2_solve_h(const Automorphism& F, const KVInstance& inst)
{
    require_instance(F.alphabet(), F.cut(), inst, "kv2_solve_h");
    int failing = inst.cut;
    auto h = solve_duflo(inst.xi, j_cocycle(F) + r_element(inst.alphabet, inst.cut), &failing);
    if (!h) {
        throw InconsistentSystem(failing, "KVII admits no Duflo function: first obstruction at weight " +
                                              std::to_string(failing));
    }
    return *h;
}

KVSolution solve_kv(const KVInstance& inst, const SolveOptions& options)
{
    const Alphabet& alphabet = inst.alphabet;
    const int N = inst.cut;
    const int K = duflo_order(N);
    Pins pins(K + 1);
    if (options.fixed_h)
        for (int k = 1; k <= K; ++k) pins[k] = options.fixed_h->coefficient(k);

    Automorphism F(alphabet, N);
    if (options.strategy == Strategy::joint) {
        SolverContext ctx(inst, options.pivot, true, true);
        F = run_degrees(ctx, DerivationState{TangentialDerivation(alphabet, N)}, pins, 1, N).finish();
    } else {
        SolverContext kvi(inst, options.pivot, true, false);
        TangentialDerivation u = run_degrees(kvi, DerivationState{TangentialDerivation(alphabet, N)}, pins, 1, N - 2).u;
        SolverContext correct(inst, options.pivot, true, true);
        F = run_degrees(correct, AutomorphismState{der_exp(u)}, pins, 1, N).finish();
    }

    KVSolution sol{F, pins_to_series(pins, K)};
    ResidualReport report = residual_report(sol, inst);
    if (!report.pass()) {
        const int w = lowest_weight(report);
        throw InconsistentSystem(w, "solution failed certification at weight " + std::to_string(w));
    }
    return sol;
}

KrvResult krv_check(const TangentialDerivation& u, const KVInstance& inst)
{
    require_instance(u.alphabet(), u.cut(), inst, "krv_check");
    KrvResult out;
    LieSeries image = apply(u, inst.phi);
    out.annihilates_phi = image.is_zero();
    std::ostringstream diag;
    if (!out.annihilates_phi) diag << "u(phi) is nonzero from weight " << image.min_weight() << "; ";
    int failing = inst.cut;
    out.h = solve_duflo(inst.phi, div(u), &failing);
    if (!out.h) diag << "div(u) has no Duflo form: first obstruction at weight " << failing;
    out.diagnostic = diag.str();
    return out;
}

std::vector<KrvBasisElement> krv_basis(const KVInstance& inst, int m)
{
    if (m < 1) throw PreconditionError("krv_basis: degree must be positive");
    const Alphabet& alphabet = inst.alphabet;
    const int D = std::max(inst.cut, m);
    const LieSeries phi = phi_element(alphabet, D + 2);
    DegreeColumns dc = degree_columns(phi, D, m);
    const int ncoords = static_cast<int>(dc.coords.size());
    LinearProblem p;
    for (int i = 0; i < ncoords; ++i) {
        ColumnVector col;
        add_block(col, 0, dc.phi_image[i]);
        add_block(col, 1, dc.divergence[i]);
        p.columns.push_back(std::move(col));
    }
    bool has_duflo = false;
    if (m % 2 == 0) {
        CyclicSeries hk = duflo_column(phi.with_cut(m), m / 2).homogeneous(m);
        if (!hk.is_zero()) {
            ColumnVector col;
            add_block(col, 1, hk.terms(), Rational(-1));
            p.columns.push_back(std::move(col));
            has_duflo = true;
        }
    }
    AffineSolution sol = solve_affine(to_system(p, -1, alphabet));
    std::vector<KrvBasisElement> out;
    for (const SparseVector& v : sol.nullspace) {
        Rational c = 0;
        if (has_duflo)
            if (auto it = v.find(ncoords); it != v.end()) c = it->second;
        out.push_back({combine_sparse(alphabet, D, dc.coords, v), c});
    }
    return out;
}

KrvResult stabilizer_check(const Automorphism& G, const KVInstance& inst)
{
    require_instance(G.alphabet(), G.cut(), inst, "stabilizer_check");
    KrvResult out;
    LieSeries moved = apply(G, inst.phi) - inst.phi;
    out.annihilates_phi = moved.is_zero();
    std::ostringstream diag;
    if (!out.annihilates_phi) diag << "G(phi) differs from phi from weight " << moved.min_weight() << "; ";
    int failing = inst.cut;
    out.h = solve_duflo(inst.phi, j_cocycle(G), &failing);
    if (!out.h) diag << "j(G) has no Duflo form: first obstruction at weight " << failing;
    out.diagnostic = diag.str();
    return out;
}

KVSolution torsor_act(const KVSolution& sol, const Automorphism& G, const KVInstance& inst)
{
    KrvResult check = stabilizer_check(G, inst);
    if (!check.pass()) throw PreconditionError("torsor_act: G is not in the stabilizer: " + check.diagnostic);
    KVSolution out{aut_compose(sol.F, G), sol.h + *check.h};
    ResidualReport report = residual_report(out, inst);
    if (!report.pass()) {
        const int w = lowest_weight(report);
        throw InconsistentSystem(w, "torsor action failed certification at weight " + std::to_string(w));
    }
    return out;
}

}  // namespace kv
