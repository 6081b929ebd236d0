#include "cuspforge/intmat.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace cuspforge {

IMat::IMat(int rows, int cols, std::initializer_list<Int> entries)
    : rows_(rows), cols_(cols), a_(entries) {
    if (a_.size() != size_t(rows) * cols)
        throw std::invalid_argument("IMat: entry count does not match shape");
}

IMat IMat::identity(int n) {
    IMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IMat IMat::operator*(const IMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IMat: shape mismatch in product");
    IMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

IMat IMat::operator-() const {
    IMat r = *this;
    for (auto& v : r.a_) v = -v;
    return r;
}

void IMat::swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IMat::swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IMat::add_row(int dst, int src, const Int& factor) {
    if (factor == 0) return;
    for (int c = 0; c < cols_; ++c) at(dst, c) += factor * at(src, c);
}

void IMat::add_col(int dst, int src, const Int& factor) {
    if (factor == 0) return;
    for (int r = 0; r < rows_; ++r) at(r, dst) += factor * at(r, src);
}

void IMat::negate_row(int i) {
    for (int c = 0; c < cols_; ++c) at(i, c) = -at(i, c);
}

void IMat::negate_col(int j) {
    for (int r = 0; r < rows_; ++r) at(r, j) = -at(r, j);
}

IMat IMat::col_slice(int c0, int c1) const {
    IMat r(rows_, c1 - c0);
    for (int i = 0; i < rows_; ++i)
        for (int j = c0; j < c1; ++j) r.at(i, j - c0) = at(i, j);
    return r;
}

IMat IMat::hcat(const IMat& a, const IMat& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("IMat::hcat: row mismatch");
    IMat r(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
    }
    return r;
}

IMat IMat::block_diag(const IMat& a, const IMat& b) {
    IMat r(a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) r.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return r;
}

std::ostream& operator<<(std::ostream& os, const IMat& m) {
    os << "[";
    for (int i = 0; i < m.rows(); ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m.at(i, j);
    }
    return os << "]";
}

Int det(const IMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: non-square");
    const int n = m.rows();
    switch (n) {
    case 0: return 1;
    case 1: return m.at(0, 0);
    case 2: return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
    default: {
        Int d = 0;
        IMat sub(n - 1, n - 1);
        for (int k = 0; k < n; ++k) {
            if (m.at(0, k) == 0) continue;
            for (int i = 1; i < n; ++i)
                for (int j = 0, c = 0; j < n; ++j)
                    if (j != k) sub.at(i - 1, c++) = m.at(i, j);
            Int cof = m.at(0, k) * det(sub);
            d += (k % 2 == 0) ? cof : -cof;
        }
        return d;
    }
    }
}

IMat adjugate(const IMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("adjugate: non-square");
    const int n = m.rows();
    IMat adj(n, n);
    if (n == 1) {
        adj.at(0, 0) = 1;
        return adj;
    }
    IMat sub(n - 1, n - 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0, cc = 0; c < n; ++c)
                    if (c != j) sub.at(rr, cc++) = m.at(r, c);
                ++rr;
            }
            Int minor = det(sub);
            adj.at(j, i) = ((i + j) % 2 == 0) ? minor : -minor;  // transpose of cofactors
        }
    return adj;
}

IMat hnf_columns(const IMat& gens) {
    const int n = gens.rows();
    IMat h = gens;
    int pivot_col = 0;
    for (int row = 0; row < n; ++row) {
        // Euclid across columns >= pivot_col until row has a single nonzero.
        for (;;) {
            int best = -1;
            for (int j = pivot_col; j < h.cols(); ++j)
                if (h.at(row, j) != 0 &&
                    (best < 0 || abs(h.at(row, j)) < abs(h.at(row, best))))
                    best = j;
            if (best < 0)
                throw degenerate_lattice_error("hnf_columns: generators have rank < rows");
            h.swap_cols(pivot_col, best);
            bool clean = true;
            for (int j = pivot_col + 1; j < h.cols(); ++j) {
                if (h.at(row, j) == 0) continue;
                Int q = floor_div(h.at(row, j), h.at(row, pivot_col));
                h.add_col(j, pivot_col, -q);
                if (h.at(row, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h.at(row, pivot_col) < 0) h.negate_col(pivot_col);
        ++pivot_col;
    }
    IMat out = h.col_slice(0, n);
    // Reduce entries left of each diagonal into [0, diag).
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            Int q = floor_div(out.at(i, j), out.at(i, i));
            out.add_col(j, i, -q);
        }
    return out;
}

namespace {

struct SnfWork {
    IMat S, L, Linv, R, Rinv;

    void row_swap(int i, int j) {
        S.swap_rows(i, j);
        L.swap_rows(i, j);
        Linv.swap_cols(i, j);
    }
    void col_swap(int i, int j) {
        S.swap_cols(i, j);
        R.swap_cols(i, j);
        Rinv.swap_rows(i, j);
    }
    // row dst += k * row src on S
    void row_add(int dst, int src, const Int& k) {
        S.add_row(dst, src, k);
        L.add_row(dst, src, k);
        Linv.add_col(src, dst, -k);
    }
    // col dst += k * col src on S
    void col_add(int dst, int src, const Int& k) {
        S.add_col(dst, src, k);
        R.add_col(dst, src, k);
        Rinv.add_row(src, dst, -k);
    }
    void row_negate(int i) {
        S.negate_row(i);
        L.negate_row(i);
        Linv.negate_col(i);
    }
};

} // namespace

SnfResult snf(const IMat& m) {
    const int rows = m.rows(), cols = m.cols();
    const int nmin = std::min(rows, cols);
    SnfWork w{m, IMat::identity(rows), IMat::identity(rows),
              IMat::identity(cols), IMat::identity(cols)};

    for (int s = 0; s < nmin; ++s) {
        for (;;) {
            // Locate smallest nonzero |entry| in the trailing block.
            int pi = -1, pj = -1;
            for (int i = s; i < rows; ++i)
                for (int j = s; j < cols; ++j)
                    if (w.S.at(i, j) != 0 &&
                        (pi < 0 || abs(w.S.at(i, j)) < abs(w.S.at(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) goto done;  // trailing block all zero
            w.row_swap(s, pi);
            w.col_swap(s, pj);

            bool clean = true;
            for (int i = s + 1; i < rows; ++i)
                if (w.S.at(i, s) != 0) {
                    w.row_add(i, s, -floor_div(w.S.at(i, s), w.S.at(s, s)));
                    if (w.S.at(i, s) != 0) clean = false;
                }
            for (int j = s + 1; j < cols; ++j)
                if (w.S.at(s, j) != 0) {
                    w.col_add(j, s, -floor_div(w.S.at(s, j), w.S.at(s, s)));
                    if (w.S.at(s, j) != 0) clean = false;
                }
            if (!clean) continue;

            // Pivot must divide the trailing block for the divisor chain.
            bool divides = true;
            for (int i = s + 1; i < rows && divides; ++i)
                for (int j = s + 1; j < cols && divides; ++j)
                    if (w.S.at(i, j) % w.S.at(s, s) != 0) {
                        w.row_add(s, i, 1);
                        divides = false;
                    }
            if (divides) break;
        }
        if (w.S.at(s, s) < 0) w.row_negate(s);
    }
done:
    return {w.S, w.L, w.Linv, w.R, w.Rinv};
}

std::optional<std::vector<Int>> solve_integer(const IMat& m, const std::vector<Int>& rhs) {
    if (int(rhs.size()) != m.rows()) throw std::invalid_argument("solve_integer: rhs size");
    SnfResult f = snf(m);
    // m = Linv S Rinv; solve S w = L rhs, then x = R w.
    std::vector<Int> b(m.rows(), 0);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.rows(); ++j) b[i] += f.L.at(i, j) * rhs[j];
    std::vector<Int> wv(m.cols(), 0);
    const int nmin = std::min(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        const Int& s = (i < nmin) ? f.S.at(i, i) : Int(0);
        if (s == 0) {
            if (b[i] != 0) return std::nullopt;
        } else {
            if (b[i] % s != 0) return std::nullopt;
            wv[i] = b[i] / s;
        }
    }
    std::vector<Int> x(m.cols(), 0);
    for (int i = 0; i < m.cols(); ++i)
        for (int j = 0; j < m.cols(); ++j) x[i] += f.R.at(i, j) * wv[j];
    return x;
}

Int floor_div(const Int& a, const Int& b) {
    if (b == 0) throw std::domain_error("floor_div: zero divisor");
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Int round_div_nearest(const Int& a, const Int& b) {
    if (b <= 0) throw std::domain_error("round_div_nearest: divisor must be positive");
    return floor_div(2 * a + b, 2 * b);
}

} // namespace cuspforge
