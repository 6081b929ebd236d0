#include "cuspforge/lattice.hpp"

#include <algorithm>
#include <atomic>

#include "cuspforge/errors.hpp"

namespace cuspforge {

IMat mul_matrix(const QuadInt& q) {
    // Columns: coordinates of q*1 and q*omega.
    QuadInt qo = q * QuadInt::omega(q.tag());
    IMat m(2, 2);
    m.at(0, 0) = q.x();
    m.at(1, 0) = q.y();
    m.at(0, 1) = qo.x();
    m.at(1, 1) = qo.y();
    return m;
}

Lattice2::Lattice2(FieldTag tag, const IMat& generators) : tag_(tag), basis_(2, 2) {
    if (generators.rows() != 2) throw std::invalid_argument("Lattice2: generators must have 2 rows");
    basis_ = hnf_columns(generators);
}

Int Lattice2::det() const {
    return basis_.at(0, 0) * basis_.at(1, 1);  // HNF diagonal is positive
}

Lattice2 lattice_of_order(const OrderRef& o) {
    IMat g(2, 2);
    g.at(0, 0) = 1;
    g.at(1, 1) = o.conductor();
    return {o.tag(), g};
}

Lattice2 span(const std::vector<QuadInt>& gens, const OrderRef& scale) {
    QuadInt momega(scale.tag(), 0, scale.conductor());
    std::vector<QuadInt> cols;
    for (const QuadInt& g : gens) {
        if (g.tag() != scale.tag()) throw std::domain_error("span: field tag mismatch");
        if (g.is_zero()) continue;
        cols.push_back(g);
        cols.push_back(g * momega);
    }
    if (cols.empty()) throw degenerate_lattice_error("span: no nonzero generators");
    IMat m(2, int(cols.size()));
    for (int j = 0; j < int(cols.size()); ++j) {
        m.at(0, j) = cols[j].x();
        m.at(1, j) = cols[j].y();
    }
    return {scale.tag(), m};
}

Int index(const Lattice2& sub, const Lattice2& sup) {
    if (sub.tag() != sup.tag()) throw std::domain_error("index: field tag mismatch");
    for (int j = 0; j < 2; ++j) {
        QuadInt col(sub.tag(), sub.basis().at(0, j), sub.basis().at(1, j));
        if (!contains(sup, col)) throw std::domain_error("index: sub is not contained in sup");
    }
    Int d_sub = sub.det(), d_sup = sup.det();
    if (d_sub % d_sup != 0)
        throw internal_check_error("index: determinant ratio is not integral");
    return d_sub / d_sup;
}

Lattice2 sum(const Lattice2& a, const Lattice2& b) {
    if (a.tag() != b.tag()) throw std::domain_error("sum: field tag mismatch");
    return {a.tag(), IMat::hcat(a.basis(), b.basis())};
}

Lattice2 intersect(const Lattice2& a, const Lattice2& b) {
    if (a.tag() != b.tag()) throw std::domain_error("intersect: field tag mismatch");
    // Kernel of [A | -B]: columns R*e_k with zero diagonal give A*x = B*y.
    IMat stacked = IMat::hcat(a.basis(), -b.basis());
    SnfResult f = snf(stacked);
    IMat gens(2, 2);
    int out = 0;
    for (int k = 0; k < 4; ++k) {
        bool in_kernel = k >= 2 || f.S.at(k, k) == 0;
        if (!in_kernel) continue;
        if (out >= 2) throw internal_check_error("intersect: kernel rank > 2");
        // x-part of the kernel vector, mapped through A.
        for (int i = 0; i < 2; ++i) {
            Int v = 0;
            for (int j = 0; j < 2; ++j) v += a.basis().at(i, j) * f.R.at(j, k);
            gens.at(i, out) = v;
        }
        ++out;
    }
    if (out != 2) throw internal_check_error("intersect: kernel rank < 2");
    return {a.tag(), gens};
}

bool contains(const Lattice2& l, const QuadInt& q) {
    if (l.tag() != q.tag()) throw std::domain_error("contains: field tag mismatch");
    // Lower triangular HNF basis: solve directly.
    const IMat& h = l.basis();
    if (q.x() % h.at(0, 0) != 0) return false;
    Int c1 = q.x() / h.at(0, 0);
    return (q.y() - c1 * h.at(1, 0)) % h.at(1, 1) == 0;
}

namespace {
std::atomic<long long> g_coset_cap{1000000};
}

Int coset_cap() { return Int(g_coset_cap.load()); }

void set_coset_cap(Int cap) {
    if (cap < 1) throw std::domain_error("coset cap must be positive");
    g_coset_cap.store(cap.convert_to<long long>());
}

std::vector<QuadInt> cosets(const Lattice2& sub, const Lattice2& sup) {
    Int n = index(sub, sup);  // also checks containment
    if (n > coset_cap())
        throw resource_limit_error("cosets: index exceeds the enumeration cap");
    // sub in sup-coordinates: C = sup^-1 * sub, integral by containment.
    IMat c = adjugate(sup.basis()) * sub.basis();
    Int d = det(sup.basis());
    IMat ci(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (c.at(i, j) % d != 0) throw internal_check_error("cosets: non-integral coordinates");
            ci.at(i, j) = c.at(i, j) / d;
        }
    SnfResult f = snf(ci);
    // Z^2 / C Z^2 = Z/s1 x Z/s2 in the coordinates w = L*u.
    std::vector<QuadInt> reps;
    reps.reserve(n.convert_to<size_t>());
    for (Int t0 = 0; t0 < f.S.at(0, 0); ++t0)
        for (Int t1 = 0; t1 < f.S.at(1, 1); ++t1) {
            Int u0 = f.Linv.at(0, 0) * t0 + f.Linv.at(0, 1) * t1;
            Int u1 = f.Linv.at(1, 0) * t0 + f.Linv.at(1, 1) * t1;
            Int vx = sup.basis().at(0, 0) * u0 + sup.basis().at(0, 1) * u1;
            Int vy = sup.basis().at(1, 0) * u0 + sup.basis().at(1, 1) * u1;
            reps.emplace_back(sub.tag(), vx, vy);
        }
    if (Int(reps.size()) != n) throw internal_check_error("cosets: representative count mismatch");
    return reps;
}

Lattice4::Lattice4(OrderRef f1, OrderRef f2, const IMat& generators)
    : f1_(std::move(f1)), f2_(std::move(f2)), basis_(4, 4) {
    if (f1_.tag() != f2_.tag()) throw std::domain_error("Lattice4: field tag mismatch");
    if (generators.rows() != 4) throw std::invalid_argument("Lattice4: generators must have 4 rows");
    basis_ = hnf_columns(generators);
}

Lattice4 Lattice4::ambient(const OrderRef& f1, const OrderRef& f2) {
    IMat b = IMat::block_diag(lattice_of_order(f1).basis(), lattice_of_order(f2).basis());
    return {f1, f2, b};
}

Int Lattice4::det() const {
    Int d = 1;
    for (int i = 0; i < 4; ++i) d *= basis_.at(i, i);
    return d;
}

namespace {

// x = m^-1 * v for square integral m, rational v.
RatVec solve_rational(const IMat& m, const RatVec& v) {
    IMat adj = adjugate(m);
    Int d = det(m);
    if (d == 0) throw std::domain_error("solve_rational: singular matrix");
    RatVec out(size_t(m.rows()), Rat(0));
    for (int i = 0; i < m.rows(); ++i) {
        Rat acc(0);
        for (int j = 0; j < m.cols(); ++j) acc += Rat(adj.at(i, j)) * v[size_t(j)];
        out[size_t(i)] = acc / Rat(d);
    }
    return out;
}

Rat frac(const Rat& r) {
    Int q = floor_div(numerator(r), denominator(r));
    return r - Rat(q);
}

RatVec mat_vec(const IMat& m, const RatVec& v) {
    RatVec out(size_t(m.rows()), Rat(0));
    for (int i = 0; i < m.rows(); ++i) {
        Rat acc(0);
        for (int j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0) acc += Rat(m.at(i, j)) * v[size_t(j)];
        out[size_t(i)] = acc;
    }
    return out;
}

} // namespace

bool contains(const Lattice4& l, const RatVec& v) {
    RatVec w = solve_rational(l.basis(), v);
    return std::all_of(w.begin(), w.end(),
                       [](const Rat& r) { return denominator(r) == 1; });
}

RatVec reduce_mod(const IMat& basis, const RatVec& v) {
    RatVec w = solve_rational(basis, v);
    for (Rat& r : w) r = frac(r);
    return mat_vec(basis, w);
}

std::vector<RatVec> solve_congruence(const IMat& a, const RatVec& b,
                                     const IMat& lmod, const IMat& lquot) {
    const int n = a.rows();
    if (a.cols() != n || lmod.rows() != n || lquot.rows() != n || int(b.size()) != n)
        throw std::invalid_argument("solve_congruence: shape mismatch");

    Int det_a = det(a);
    if (det_a == 0) {
        // Finite only when empty: check whether any rational x and integral t
        // satisfy a*x = b + lmod*t, i.e. c*(b + lmod*t) = 0 for the left
        // kernel rows c of a.
        SnfResult f = snf(a);
        std::vector<int> zero_rows;
        for (int i = 0; i < n; ++i)
            if (f.S.at(i, i) == 0) zero_rows.push_back(i);
        // rows of L indexed by zero_rows annihilate a
        IMat clm(int(zero_rows.size()), n);
        RatVec cb(zero_rows.size(), Rat(0));
        for (size_t r = 0; r < zero_rows.size(); ++r) {
            Rat acc(0);
            for (int j = 0; j < n; ++j) {
                Rat lv(f.L.at(zero_rows[r], j));
                acc += lv * b[size_t(j)];
                Int e = 0;
                for (int k = 0; k < n; ++k) e += f.L.at(zero_rows[r], k) * lmod.at(k, j);
                clm.at(int(r), j) = e;
            }
            cb[r] = acc;
        }
        // (C*lmod) t = -C*b must have an integral solution t.
        std::vector<Int> rhs(zero_rows.size());
        for (size_t r = 0; r < zero_rows.size(); ++r) {
            Rat v = -cb[r];
            if (denominator(v) != 1) return {};  // inconsistent
            rhs[r] = numerator(v);
        }
        if (!solve_integer(clm, rhs)) return {};
        throw degenerate_intersection_error(
            "solve_congruence: infinite solution family (singular system)");
    }

    // w = lmod^-1 * a * lquot must be integral: the congruence is then well
    // defined on the quotient by lquot.
    IMat alq = a * lquot;
    IMat adj_lmod = adjugate(lmod);
    Int det_lmod = det(lmod);
    IMat w0 = adj_lmod * alq;
    IMat w(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (w0.at(i, j) % det_lmod != 0)
                throw internal_check_error(
                    "solve_congruence: a*lquot is not contained in lmod");
            w.at(i, j) = w0.at(i, j) / det_lmod;
        }

    SnfResult f = snf(w);
    Int count = 1;
    for (int i = 0; i < n; ++i) count *= f.S.at(i, i);
    count = abs(count);
    if (count == 0) throw internal_check_error("solve_congruence: rank collapse");
    if (count > coset_cap())
        throw resource_limit_error("solve_congruence: solution count exceeds the cap");

    IMat adj_a = adjugate(a);
    std::vector<RatVec> out;
    out.reserve(count.convert_to<size_t>());
    std::vector<Int> t(size_t(n), 0);
    // Enumerate coset representatives of Z^n / w Z^n: u = Linv * diag-coords.
    std::vector<Int> limits(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) limits[size_t(i)] = abs(f.S.at(i, i));
    std::vector<Int> idx(size_t(n), 0);
    for (;;) {
        for (int i = 0; i < n; ++i) {
            Int acc = 0;
            for (int j = 0; j < n; ++j) acc += f.Linv.at(i, j) * idx[size_t(j)];
            t[size_t(i)] = acc;
        }
        // x = a^-1 (b + lmod t)
        RatVec rhs(size_t(n), Rat(0));
        for (int i = 0; i < n; ++i) {
            Rat acc = b[size_t(i)];
            for (int j = 0; j < n; ++j)
                if (lmod.at(i, j) != 0) acc += Rat(lmod.at(i, j) * t[size_t(j)]);
            rhs[size_t(i)] = acc;
        }
        RatVec x(size_t(n), Rat(0));
        for (int i = 0; i < n; ++i) {
            Rat acc(0);
            for (int j = 0; j < n; ++j)
                if (adj_a.at(i, j) != 0) acc += Rat(adj_a.at(i, j)) * rhs[size_t(j)];
            x[size_t(i)] = acc / Rat(det_a);
        }
        out.push_back(reduce_mod(lquot, x));
        // Next multi-index.
        int k = n - 1;
        while (k >= 0) {
            ++idx[size_t(k)];
            if (idx[size_t(k)] < limits[size_t(k)]) break;
            idx[size_t(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }
    if (Int(out.size()) != count)
        throw internal_check_error("solve_congruence: enumeration count mismatch");
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<RatVec> solve_mod(const IMat& a, const RatVec& b, const Lattice4& l) {
    return solve_congruence(a, b, l.basis(), l.basis());
}

} // namespace cuspforge
