#pragma once

#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <vector>

#include "cuspforge/quad.hpp"

namespace cuspforge {

/// Dense integer matrix over cpp_int. Everything here is tiny (at most 4x8),
/// so elementary row/column operations are all we need.
class IMat {
public:
    IMat() : rows_(0), cols_(0) {}
    IMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}
    IMat(int rows, int cols, std::initializer_list<Int> entries);

    static IMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    IMat operator*(const IMat& o) const;
    IMat operator-() const;

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);
    void add_row(int dst, int src, const Int& factor);  // row dst += factor*row src
    void add_col(int dst, int src, const Int& factor);  // col dst += factor*col src
    void negate_row(int i);
    void negate_col(int j);

    /// Columns [c0, c1) as a new matrix.
    IMat col_slice(int c0, int c1) const;
    /// Horizontal concatenation.
    static IMat hcat(const IMat& a, const IMat& b);
    /// Block diagonal of two square matrices.
    static IMat block_diag(const IMat& a, const IMat& b);

    friend bool operator==(const IMat&, const IMat&) = default;

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

std::ostream& operator<<(std::ostream&, const IMat&);

/// Exact determinant, square matrices up to 4x4 (cofactor expansion).
Int det(const IMat& m);

/// Adjugate: adj(m) * m = det(m) * I.
IMat adjugate(const IMat& m);

/// Column-style Hermite normal form of the lattice spanned by the columns:
/// square, lower triangular, positive diagonal, and 0 <= h[i][j] < h[i][i]
/// for j < i. Throws degenerate_lattice_error when the span has rank < rows.
IMat hnf_columns(const IMat& gens);

/// Smith normal form with both transform directions:
///   L * M * R = S  and  M = Linv * S * Rinv,
/// L, R unimodular, S diagonal with s1 | s2 | ... >= 0.
struct SnfResult {
    IMat S, L, Linv, R, Rinv;
};
SnfResult snf(const IMat& m);

/// One integer solution of M*x = rhs, or nullopt.
std::optional<std::vector<Int>> solve_integer(const IMat& m, const std::vector<Int>& rhs);

/// Floor division (rounds toward minus infinity), b != 0.
Int floor_div(const Int& a, const Int& b);
/// Nearest integer to a/b, b > 0; ties round up.
Int round_div_nearest(const Int& a, const Int& b);

} // namespace cuspforge
