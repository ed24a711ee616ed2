#include "kv/linalg/affine_system.hpp"

#include <algorithm>

#include "kv/algebra/errors.hpp"

namespace kv {

void AffineSystem::add_row(SparseVector coeffs, Rational rhs)
{
    for (auto it = coeffs.begin(); it != coeffs.end();) {
        if (it->first < 0 || it->first >= columns_) throw PreconditionError("affine system: column out of range");
        if (sgn(it->second) == 0)
            it = coeffs.erase(it);
        else
            ++it;
    }
    rows_.push_back(std::move(coeffs));
    rhs_.push_back(std::move(rhs));
}

namespace {

void axpy(SparseVector& into, const SparseVector& from, const Rational& scale)
{
    for (const auto& [c, v] : from) {
        auto [it, inserted] = into.try_emplace(c, v * scale);
        if (!inserted) {
            it->second += v * scale;
            if (sgn(it->second) == 0) into.erase(it);
        }
    }
}

struct PivotRow {
    SparseVector coeffs;
    Rational rhs;
};

}  // namespace

AffineSolution solve_affine(const AffineSystem& sys, PivotOrder order)
{
    AffineSolution out;
    std::map<int, PivotRow> reduced;  // pivot column -> row, kept in RREF

    for (int r = 0; r < sys.rows(); ++r) {
        PivotRow row{sys.row(r), sys.rhs(r)};
        for (const auto& [p, prow] : reduced) {
            auto it = row.coeffs.find(p);
            if (it == row.coeffs.end()) continue;
            Rational f = -it->second;
            axpy(row.coeffs, prow.coeffs, f);
            row.rhs += f * prow.rhs;
        }
        if (row.coeffs.empty()) {
            if (sgn(row.rhs) != 0 && !out.inconsistency) out.inconsistency = InconsistencyCertificate{r, row.rhs};
            continue;
        }
        int pivot = order == PivotOrder::first ? row.coeffs.begin()->first : row.coeffs.rbegin()->first;
        Rational inv = 1 / row.coeffs[pivot];
        for (auto& [c, v] : row.coeffs) v *= inv;
        row.rhs *= inv;
        for (auto& [p, prow] : reduced) {
            auto it = prow.coeffs.find(pivot);
            if (it == prow.coeffs.end()) continue;
            Rational f = -it->second;
            axpy(prow.coeffs, row.coeffs, f);
            prow.rhs += f * row.rhs;
        }
        reduced.emplace(pivot, std::move(row));
    }

    out.particular.assign(sys.columns(), Rational(0));
    std::vector<bool> is_pivot(sys.columns(), false);
    for (const auto& [p, prow] : reduced) {
        out.pivots.push_back(p);
        is_pivot[p] = true;
        out.particular[p] = prow.rhs;
    }
    for (int c = 0; c < sys.columns(); ++c) {
        if (is_pivot[c]) continue;
        out.free_columns.push_back(c);
        SparseVector v{{c, Rational(1)}};
        for (const auto& [p, prow] : reduced) {
            auto it = prow.coeffs.find(c);
            if (it != prow.coeffs.end()) v[p] = -it->second;
        }
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

std::vector<Rational> residual(const AffineSystem& sys, const std::vector<Rational>& x)
{
    if (static_cast<int>(x.size()) != sys.columns()) throw PreconditionError("residual: wrong vector length");
    std::vector<Rational> out(sys.rows());
    for (int r = 0; r < sys.rows(); ++r) {
        Rational acc = -sys.rhs(r);
        for (const auto& [c, v] : sys.row(r)) acc += v * x[c];
        out[r] = acc;
    }
    return out;
}

std::vector<Rational> apply_matrix(const AffineSystem& sys, const SparseVector& v)
{
    std::vector<Rational> out(sys.rows());
    for (int r = 0; r < sys.rows(); ++r) {
        Rational acc(0);
        for (const auto& [c, a] : sys.row(r)) {
            auto it = v.find(c);
            if (it != v.end()) acc += a * it->second;
        }
        out[r] = acc;
    }
    return out;
}

}  // namespace kv
