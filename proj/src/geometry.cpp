#include "cuspforge/geometry.hpp"

#include <algorithm>
#include <map>

#include "cuspforge/errors.hpp"

namespace cuspforge {

Ambient::Ambient(OrderRef a, OrderRef b) : f1(std::move(a)), f2(std::move(b)) {
    if (f1.tag() != f2.tag()) throw std::domain_error("Ambient: field tag mismatch");
}

Ambient Ambient::maximal_square(FieldTag tag) {
    return {OrderRef(tag, 1), OrderRef(tag, 1)};
}

RatK mul(const QuadInt& g, const RatK& z) {
    IMat m = mul_matrix(g);
    return {Rat(m.at(0, 0)) * z.x + Rat(m.at(0, 1)) * z.y,
            Rat(m.at(1, 0)) * z.x + Rat(m.at(1, 1)) * z.y};
}

RatK div(const RatK& z, const QuadInt& g) {
    if (g.is_zero()) throw std::domain_error("RatK div: division by zero");
    RatK t = mul(g.conj(), z);
    Rat n(g.norm());
    return {t.x / n, t.y / n};
}

RatK add(const RatK& a, const RatK& b) { return {a.x + b.x, a.y + b.y}; }
RatK sub(const RatK& a, const RatK& b) { return {a.x - b.x, a.y - b.y}; }

TorsionPoint::TorsionPoint(const Ambient& amb, const RatK& p, const RatK& q)
    : TorsionPoint(amb, RatVec{p.x, p.y, q.x, q.y}) {}

TorsionPoint::TorsionPoint(const Ambient& amb, const RatVec& coords) : amb_(amb) {
    if (coords.size() != 4) throw std::invalid_argument("TorsionPoint: need 4 coordinates");
    c_ = reduce_mod(amb.lattice().basis(), coords);
}

TorsionPoint TorsionPoint::origin(const Ambient& amb) {
    return {amb, RatVec(4, Rat(0))};
}

bool TorsionPoint::coord_less(const TorsionPoint& a, const TorsionPoint& b) {
    return a.c_ < b.c_;
}

namespace {

// Value of the fibration map psi(u, v) = b*u - a*v at a rational point.
RatK psi_value(const QuadInt& a, const QuadInt& b, const RatK& u, const RatK& v) {
    return sub(mul(b, u), mul(a, v));
}

Lattice2 curve_mod_lattice(const Ambient& amb, const QuadInt& a, const QuadInt& b) {
    // a*pi1(E2) + b*pi1(E1), dropping zero scalars.
    std::optional<Lattice2> acc;
    if (!a.is_zero()) acc = span({a}, amb.f2);
    if (!b.is_zero()) {
        Lattice2 t = span({b}, amb.f1);
        acc = acc ? sum(*acc, t) : t;
    }
    if (!acc) throw std::domain_error("curve: zero slope vector");
    return *acc;
}

bool value_in_lattice(const Lattice2& l, const RatK& v) {
    if (!v.is_integral()) return false;
    return contains(l, QuadInt(l.tag(), numerator(v.x), numerator(v.y)));
}

// Canonical representative of w modulo the rank-2 lattice l (basis
// coordinates in [0,1)).
RatK reduce_mod2(const Lattice2& l, const RatK& w) {
    const IMat& b = l.basis();
    Int d = det(b);
    IMat adj = adjugate(b);
    Rat u0 = (Rat(adj.at(0, 0)) * w.x + Rat(adj.at(0, 1)) * w.y) / Rat(d);
    Rat u1 = (Rat(adj.at(1, 0)) * w.x + Rat(adj.at(1, 1)) * w.y) / Rat(d);
    u0 -= Rat(floor_div(numerator(u0), denominator(u0)));
    u1 -= Rat(floor_div(numerator(u1), denominator(u1)));
    return {Rat(b.at(0, 0)) * u0 + Rat(b.at(0, 1)) * u1,
            Rat(b.at(1, 0)) * u0 + Rat(b.at(1, 1)) * u1};
}

// Section of psi: a base point with psi(sigma(w)) = w.
TorsionPoint psi_section(const Ambient& amb, const QuadInt& a, const QuadInt& b,
                         const RatK& w) {
    if (!b.is_zero()) return {amb, div(w, b), RatK{Rat(0), Rat(0)}};
    RatK neg = {-w.x, -w.y};
    return {amb, RatK{Rat(0), Rat(0)}, div(neg, a)};
}

// (1/den) * num with the common integer content divided out.
FundamentalGroup scale_reduce(const Lattice2& num, const Int& den) {
    Int g = den;
    for (int i = 0; i < 2 && g > 1; ++i)
        for (int j = 0; j < 2 && g > 1; ++j)
            g = boost::multiprecision::gcd(g, num.basis().at(i, j));
    if (g == 1) return {num, den};
    IMat b = num.basis();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) b.at(i, j) /= g;
    return {Lattice2(num.tag(), b), den / g};
}

} // namespace

Lattice2 CurveOnSquare::mod_lattice() const {
    return curve_mod_lattice(amb_, a_, b_);
}

CurveOnSquare curve_new(const Ambient& amb, const QuadInt& a_in, const QuadInt& b_in,
                        const TorsionPoint& base) {
    if (a_in.tag() != amb.tag() || b_in.tag() != amb.tag())
        throw std::domain_error("curve_new: field tag mismatch");
    if (a_in.is_zero() && b_in.is_zero())
        throw std::domain_error("curve_new: zero slope vector");
    if (base.ambient() != amb) throw std::domain_error("curve_new: base point ambient mismatch");

    QuadInt a = a_in, b = b_in;
    bool canonical = false;
    if (amb.maximal()) {
        // Divide out the gcd, then normalize the leading entry to its
        // canonical associate; suborders need not be PIDs, so they skip this.
        QuadInt g = gcd(a, b);
        a = *div_exact(a, g);
        b = *div_exact(b, g);
        const QuadInt& lead = a.is_zero() ? b : a;
        QuadInt u = *div_exact(canonical_associate(lead), lead);
        a = a * u;
        b = b * u;
        canonical = true;
    }

    // Reduce the base modulo the curve's own point set: only psi(base)
    // modulo the curve lattice matters, so store a canonical section of it.
    Lattice2 ml = curve_mod_lattice(amb, a, b);
    RatK w = psi_value(a, b, base.first(), base.second());
    TorsionPoint reduced = psi_section(amb, a, b, reduce_mod2(ml, w));
    return CurveOnSquare(amb, a, b, reduced, canonical);
}

CurveOnSquare curve_through_origin(const Ambient& amb, const QuadInt& a, const QuadInt& b) {
    return curve_new(amb, a, b, TorsionPoint::origin(amb));
}

bool point_on_curve(const CurveOnSquare& c, const TorsionPoint& p) {
    if (p.ambient() != c.ambient()) throw std::domain_error("point_on_curve: ambient mismatch");
    RatK diff = psi_value(c.slope_a(), c.slope_b(),
                          sub(p.first(), c.base().first()),
                          sub(p.second(), c.base().second()));
    return value_in_lattice(c.mod_lattice(), diff);
}

bool curve_eq(const CurveOnSquare& c1, const CurveOnSquare& c2) {
    if (c1.ambient() != c2.ambient()) throw std::domain_error("curve_eq: ambient mismatch");
    QuadInt cross = c1.slope_a() * c2.slope_b() - c2.slope_a() * c1.slope_b();
    if (!cross.is_zero()) return false;
    return point_on_curve(c1, c2.base());
}

CurveOnSquare translate(const CurveOnSquare& c, const TorsionPoint& t) {
    TorsionPoint moved(c.ambient(),
                       add(c.base().first(), t.first()),
                       add(c.base().second(), t.second()));
    return curve_new(c.ambient(), c.slope_a(), c.slope_b(), moved);
}

FundamentalGroup curve_fundamental_group(const CurveOnSquare& c) {
    const Ambient& amb = c.ambient();
    const QuadInt &a = c.slope_a(), &b = c.slope_b();
    Lattice2 l1 = lattice_of_order(amb.f1), l2 = lattice_of_order(amb.f2);
    if (b.is_zero()) {
        // pi_1 = a^-1 pi_1(E1) = (1/N(a)) * conj(a) * pi_1(E1)
        Lattice2 num(amb.tag(), mul_matrix(a.conj()) * l1.basis());
        return scale_reduce(num, a.norm());
    }
    if (a.is_zero()) {
        Lattice2 num(amb.tag(), mul_matrix(b.conj()) * l2.basis());
        return scale_reduce(num, b.norm());
    }
    // a^-1 L1 cap b^-1 L2 = (ab)^-1 (b L1 cap a L2)
    Lattice2 x = intersect(Lattice2(amb.tag(), mul_matrix(b) * l1.basis()),
                           Lattice2(amb.tag(), mul_matrix(a) * l2.basis()));
    QuadInt ab = a * b;
    Lattice2 num(amb.tag(), mul_matrix(ab.conj()) * x.basis());
    return scale_reduce(num, ab.norm());
}

std::vector<TorsionPoint> intersect_curves(const CurveOnSquare& c1, const CurveOnSquare& c2) {
    if (c1.ambient() != c2.ambient())
        throw std::domain_error("intersect_curves: ambient mismatch");
    const Ambient& amb = c1.ambient();
    QuadInt cross = c1.slope_a() * c2.slope_b() - c2.slope_a() * c1.slope_b();
    if (cross.is_zero()) throw parallel_curves_error(curve_eq(c1, c2));

    // Joint membership system: for each curve, b*u - a*v = psi(base) modulo
    // the curve lattice; unknown (u, v) modulo the ambient lattice.
    IMat top = IMat::hcat(mul_matrix(c1.slope_b()), -mul_matrix(c1.slope_a()));
    IMat bot = IMat::hcat(mul_matrix(c2.slope_b()), -mul_matrix(c2.slope_a()));
    IMat g(4, 4);
    for (int j = 0; j < 4; ++j) {
        g.at(0, j) = top.at(0, j);
        g.at(1, j) = top.at(1, j);
        g.at(2, j) = bot.at(0, j);
        g.at(3, j) = bot.at(1, j);
    }
    RatK w1 = psi_value(c1.slope_a(), c1.slope_b(), c1.base().first(), c1.base().second());
    RatK w2 = psi_value(c2.slope_a(), c2.slope_b(), c2.base().first(), c2.base().second());
    RatVec rhs{w1.x, w1.y, w2.x, w2.y};
    IMat lmod = IMat::block_diag(c1.mod_lattice().basis(), c2.mod_lattice().basis());
    IMat lamb = amb.lattice().basis();

    std::vector<RatVec> sols = solve_congruence(g, rhs, lmod, lamb);
    std::vector<TorsionPoint> pts;
    pts.reserve(sols.size());
    for (const RatVec& s : sols) pts.emplace_back(amb, s);
    std::sort(pts.begin(), pts.end(), TorsionPoint::coord_less);
    return pts;
}

Configuration::Configuration(Ambient amb, std::vector<CurveOnSquare> curves)
    : amb_(std::move(amb)), curves_(std::move(curves)) {
    for (const CurveOnSquare& c : curves_)
        if (c.ambient() != amb_) throw std::domain_error("Configuration: ambient mismatch");
    for (size_t i = 0; i < curves_.size(); ++i)
        for (size_t j = i + 1; j < curves_.size(); ++j)
            if (curve_eq(curves_[i], curves_[j]))
                throw std::domain_error("Configuration: duplicate curves");
    std::sort(curves_.begin(), curves_.end(),
              [](const CurveOnSquare& a, const CurveOnSquare& b) {
                  if (a.slope_a() != b.slope_a()) return QuadInt::yx_less(a.slope_a(), b.slope_a());
                  if (a.slope_b() != b.slope_b()) return QuadInt::yx_less(a.slope_b(), b.slope_b());
                  return TorsionPoint::coord_less(a.base(), b.base());
              });
}

SingularLocusReport singular_locus(const Configuration& d) {
    if (d.size() < 1) throw std::domain_error("singular_locus: empty configuration");
    std::vector<TorsionPoint> all;
    for (int i = 0; i < d.size(); ++i)
        for (int j = i + 1; j < d.size(); ++j) {
            const CurveOnSquare &ci = d.curves()[i], &cj = d.curves()[j];
            QuadInt cross = ci.slope_a() * cj.slope_b() - cj.slope_a() * ci.slope_b();
            if (cross.is_zero()) {
                if (curve_eq(ci, cj))
                    throw internal_check_error("singular_locus: duplicate curves in configuration");
                continue;  // parallel, disjoint
            }
            for (TorsionPoint& p : intersect_curves(ci, cj)) all.push_back(std::move(p));
        }
    std::sort(all.begin(), all.end(), TorsionPoint::coord_less);
    all.erase(std::unique(all.begin(), all.end()), all.end());

    SingularLocusReport rep;
    rep.total_points = Int(all.size());
    rep.incidence_sum = 0;
    for (TorsionPoint& p : all) {
        int inc = 0;
        for (const CurveOnSquare& c : d.curves())
            if (point_on_curve(c, p)) ++inc;
        rep.incidence_sum += inc;
        rep.points.emplace_back(std::move(p), inc);
    }
    rep.proportional = rep.incidence_sum == 4 * rep.total_points;
    rep.vacuous = rep.total_points == 0;
    rep.intersecting = rep.total_points > 0;
    return rep;
}

EulerNumber euler_number(const SingularLocusReport& report) {
    return {report.total_points, report.proportional && report.intersecting};
}

EulerNumber euler_number(const Configuration& d) {
    return euler_number(singular_locus(d));
}

Int volume_units(const Configuration& d) {
    return euler_number(d).value;
}

Configuration apply_gl2(const std::array<QuadInt, 4>& g, const Configuration& d) {
    if (!d.ambient().maximal())
        throw std::domain_error("apply_gl2: maximal-order ambient required");
    QuadInt det_g = g[0] * g[3] - g[1] * g[2];
    if (!det_g.is_unit()) throw std::domain_error("apply_gl2: determinant must be a unit");
    std::vector<CurveOnSquare> out;
    out.reserve(d.curves().size());
    for (const CurveOnSquare& c : d.curves()) {
        QuadInt a2 = g[0] * c.slope_a() + g[1] * c.slope_b();
        QuadInt b2 = g[2] * c.slope_a() + g[3] * c.slope_b();
        RatK p = c.base().first(), q = c.base().second();
        RatK p2 = add(mul(g[0], p), mul(g[1], q));
        RatK q2 = add(mul(g[2], p), mul(g[3], q));
        out.push_back(curve_new(d.ambient(), a2, b2, TorsionPoint(d.ambient(), p2, q2)));
    }
    return {d.ambient(), std::move(out)};
}

} // namespace cuspforge
