#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cuspforge/lattice.hpp"
#include "cuspforge/quad.hpp"

namespace cuspforge {

/// The product surface E_{-d,m1} x E_{-d,m2}; both factors share the field.
struct Ambient {
    OrderRef f1, f2;

    Ambient(OrderRef a, OrderRef b);
    static Ambient maximal_square(FieldTag tag);

    const FieldTag& tag() const { return f1.tag(); }
    bool maximal() const { return f1.maximal() && f2.maximal(); }
    Lattice4 lattice() const { return Lattice4::ambient(f1, f2); }

    friend bool operator==(const Ambient&, const Ambient&) = default;
};

/// Element of K = Q(sqrt(-d)) with rational coordinates in the (1, omega)
/// basis; the exact coordinate type for points.
struct RatK {
    Rat x, y;
    bool is_integral() const { return denominator(x) == 1 && denominator(y) == 1; }
    friend bool operator==(const RatK&, const RatK&) = default;
    auto operator<=>(const RatK&) const = default;
};

RatK mul(const QuadInt& g, const RatK& z);
/// z / g, exact in the fraction field.
RatK div(const RatK& z, const QuadInt& g);
RatK add(const RatK& a, const RatK& b);
RatK sub(const RatK& a, const RatK& b);

/// Torsion point of the product surface: four reduced rationals in the
/// (1, omega) x (1, omega) basis, canonicalized modulo the ambient lattice
/// (basis coordinates in [0,1)).
class TorsionPoint {
public:
    TorsionPoint(const Ambient& amb, const RatK& p, const RatK& q);
    TorsionPoint(const Ambient& amb, const RatVec& coords);
    static TorsionPoint origin(const Ambient& amb);

    const Ambient& ambient() const { return amb_; }
    const RatVec& coords() const { return c_; }
    RatK first() const { return {c_[0], c_[1]}; }
    RatK second() const { return {c_[2], c_[3]}; }

    friend bool operator==(const TorsionPoint&, const TorsionPoint&) = default;
    static bool coord_less(const TorsionPoint& a, const TorsionPoint& b);

private:
    Ambient amb_;
    RatVec c_;
};

/// Elliptic curve E(a, b) + base on the product surface. On a maximal-order
/// ambient the stored slope is coprime and unit-normalized (canonical());
/// on suborders the slope is kept as given and identity is geometric only.
class CurveOnSquare {
public:
    const Ambient& ambient() const { return amb_; }
    const QuadInt& slope_a() const { return a_; }
    const QuadInt& slope_b() const { return b_; }
    const TorsionPoint& base() const { return base_; }
    bool canonical() const { return canonical_; }

    /// The curve's membership lattice a*pi1(E2) + b*pi1(E1).
    Lattice2 mod_lattice() const;

    friend CurveOnSquare curve_new(const Ambient&, const QuadInt&, const QuadInt&,
                                   const TorsionPoint&);
    friend bool operator==(const CurveOnSquare&, const CurveOnSquare&) = default;

private:
    CurveOnSquare(Ambient amb, QuadInt a, QuadInt b, TorsionPoint base, bool canonical)
        : amb_(std::move(amb)), a_(std::move(a)), b_(std::move(b)),
          base_(std::move(base)), canonical_(canonical) {}

    Ambient amb_;
    QuadInt a_, b_;
    TorsionPoint base_;
    bool canonical_;
};

/// Build a curve: slope normalized (gcd divided out, unit-normalized) on
/// maximal-order ambients, base point reduced modulo the curve.
CurveOnSquare curve_new(const Ambient& amb, const QuadInt& a, const QuadInt& b,
                        const TorsionPoint& base);
CurveOnSquare curve_through_origin(const Ambient& amb, const QuadInt& a, const QuadInt& b);

/// Equality as point sets: proportional slopes and base difference on the
/// through-origin curve.
bool curve_eq(const CurveOnSquare& c1, const CurveOnSquare& c2);

bool point_on_curve(const CurveOnSquare& c, const TorsionPoint& p);

/// Translate the curve by a torsion point.
CurveOnSquare translate(const CurveOnSquare& c, const TorsionPoint& t);

/// pi_1 of the curve as a sublattice of C, presented as (1/den) * lat.
struct FundamentalGroup {
    Lattice2 lat;
    Int den;
};
FundamentalGroup curve_fundamental_group(const CurveOnSquare& c);

/// Common points of two non-parallel curves, canonical mod the ambient
/// lattice, sorted. Proportional slopes raise parallel_curves_error.
std::vector<TorsionPoint> intersect_curves(const CurveOnSquare& c1, const CurveOnSquare& c2);

/// Finite set of pairwise-distinct curves on one ambient; curves are sorted
/// canonically at construction and duplicates are rejected.
class Configuration {
public:
    Configuration(Ambient amb, std::vector<CurveOnSquare> curves);

    const Ambient& ambient() const { return amb_; }
    const std::vector<CurveOnSquare>& curves() const { return curves_; }
    int size() const { return int(curves_.size()); }

private:
    Ambient amb_;
    std::vector<CurveOnSquare> curves_;
};

struct SingularLocusReport {
    std::vector<std::pair<TorsionPoint, int>> points;  // point, incidence count
    Int total_points;                                  // |D^sing|
    Int incidence_sum;                                 // sum_i |D_i cap D^sing|
    bool proportional;                                 // incidence_sum == 4*total_points
    bool vacuous;                                      // no singular points at all
    bool intersecting;                                 // at least one singular point
};

SingularLocusReport singular_locus(const Configuration& d);

/// Euler number e = |D^sing|; meaningful as a ball-quotient invariant only
/// when the configuration is proportional (and intersecting).
struct EulerNumber {
    Int value;
    bool ball_quotient_meaningful;
};
EulerNumber euler_number(const Configuration& d);
EulerNumber euler_number(const SingularLocusReport& report);

/// Volume in units of 8*pi^2/3: equals the Euler number. Exact, no floats.
Int volume_units(const Configuration& d);

/// Image configuration under g in GL(2, O_{-d}) with unit determinant;
/// maximal-order ambients only.
Configuration apply_gl2(const std::array<QuadInt, 4>& g, const Configuration& d);

} // namespace cuspforge
