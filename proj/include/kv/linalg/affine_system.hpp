#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kv/algebra/rational.hpp"

namespace kv {

using SparseVector = std::map<int, Rational>;

// Rows sum_c a_c x_c = b over a fixed number of unknowns.
class AffineSystem {
public:
    explicit AffineSystem(int columns = 0) : columns_(columns) {}

    int columns() const noexcept { return columns_; }
    int rows() const noexcept { return static_cast<int>(rows_.size()); }
    int add_column() { return columns_++; }

    // Zero coefficients are dropped; column indices are checked.
    void add_row(SparseVector coeffs, Rational rhs);

    const SparseVector& row(int i) const { return rows_[i]; }
    const Rational& rhs(int i) const { return rhs_[i]; }

private:
    int columns_;
    std::vector<SparseVector> rows_;
    std::vector<Rational> rhs_;
};

enum class PivotOrder { first, last };

struct InconsistencyCertificate {
    int row;          // index of the original row that reduced to 0 = rhs
    Rational reduced; // the nonzero reduced right-hand side
};

struct AffineSolution {
    std::optional<InconsistencyCertificate> inconsistency;
    std::vector<Rational> particular;   // free variables set to zero
    std::vector<SparseVector> nullspace; // one vector per free column, ascending
    std::vector<int> pivots;             // pivot column per reduced row
    std::vector<int> free_columns;

    bool consistent() const noexcept { return !inconsistency.has_value(); }
};

// Reduced row echelon form by incremental insertion.  With PivotOrder::first
// every reduced row pivots on its first nonzero column, with ::last on its last
// one.  Pivot rows are normalised to 1.
AffineSolution solve_affine(const AffineSystem& sys, PivotOrder order = PivotOrder::first);

// A x - b for each row.
std::vector<Rational> residual(const AffineSystem& sys, const std::vector<Rational>& x);
// A v for a sparse v (homogeneous part only).
std::vector<Rational> apply_matrix(const AffineSystem& sys, const SparseVector& v);

}  // namespace kv
