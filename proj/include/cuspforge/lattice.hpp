#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cuspforge/intmat.hpp"
#include "cuspforge/quad.hpp"

namespace cuspforge {

/// 2x2 integer matrix of multiplication by q on the coordinate basis (1, omega).
IMat mul_matrix(const QuadInt& q);

/// Finite-index sublattice of O_{-d}: columns of `basis()` generate it in the
/// (1, omega) coordinates, stored in Hermite normal form. HNF is unique, so
/// two values are equal iff their matrices are identical.
class Lattice2 {
public:
    /// HNF of the Z-span of the given generator columns (2 x k).
    Lattice2(FieldTag tag, const IMat& generators);

    const FieldTag& tag() const { return tag_; }
    const IMat& basis() const { return basis_; }

    /// |det(basis)| = index in O_{-d}.
    Int det() const;

    friend bool operator==(const Lattice2&, const Lattice2&) = default;

private:
    FieldTag tag_;
    IMat basis_;
};

/// O_{-d,m} as a sublattice of O_{-d}: basis {(1,0), (0,m)}.
Lattice2 lattice_of_order(const OrderRef& o);

/// Sum of g*O_{-d,m} over the generators g (rank-2 span or error).
Lattice2 span(const std::vector<QuadInt>& gens, const OrderRef& scale);

/// [sup : sub]; requires sub to be contained in sup.
Int index(const Lattice2& sub, const Lattice2& sup);

Lattice2 sum(const Lattice2& a, const Lattice2& b);
Lattice2 intersect(const Lattice2& a, const Lattice2& b);

bool contains(const Lattice2& l, const QuadInt& q);

/// Representatives of sup/sub, exactly index-many, reduced via SNF
/// coordinates. Obeys the coset cap.
std::vector<QuadInt> cosets(const Lattice2& sub, const Lattice2& sup);

/// Global cap on enumeration sizes (cosets, congruence solution sets).
/// Overridden by the CUSPFORGE_COSET_CAP environment variable in the CLI.
Int coset_cap();
void set_coset_cap(Int cap);

/// Finite-index sublattice of O_{-d} x O_{-d}, rank 4 over Z, coordinates in
/// the basis (1, omega) x (1, omega).
class Lattice4 {
public:
    Lattice4(OrderRef f1, OrderRef f2, const IMat& generators);

    /// pi_1 of the product E_{-d,m1} x E_{-d,m2}: block diagonal basis.
    static Lattice4 ambient(const OrderRef& f1, const OrderRef& f2);

    const OrderRef& factor1() const { return f1_; }
    const OrderRef& factor2() const { return f2_; }
    const IMat& basis() const { return basis_; }
    Int det() const;

    friend bool operator==(const Lattice4&, const Lattice4&) = default;

private:
    OrderRef f1_, f2_;
    IMat basis_;
};

using RatVec = std::vector<Rat>;

bool contains(const Lattice4& l, const RatVec& v);

/// Canonical representative of v modulo the lattice: basis coordinates
/// reduced into [0,1).
RatVec reduce_mod(const IMat& basis, const RatVec& v);

/// All solutions x (rational 4-vectors mod lquot) of a*x = b mod lmod.
/// Requires a * lquot to be contained in lmod so the solution set is
/// well defined on the quotient; enumeration obeys the coset cap.
/// Empty result when inconsistent; degenerate_intersection_error when the
/// solution family is infinite (singular a with a consistent system).
std::vector<RatVec> solve_congruence(const IMat& a, const RatVec& b,
                                     const IMat& lmod, const IMat& lquot);

/// solve_congruence with lmod = lquot = L, the spec'd surface for callers
/// that quotient by the same lattice they reduce modulo.
std::vector<RatVec> solve_mod(const IMat& a, const RatVec& b, const Lattice4& l);

} // namespace cuspforge
