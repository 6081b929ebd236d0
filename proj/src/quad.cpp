#include "cuspforge/quad.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "cuspforge/intmat.hpp"

namespace cuspforge {

namespace {
constexpr int kClassNumberOne[] = {1, 2, 3, 7, 11, 19, 43, 67, 163};
}

FieldTag::FieldTag(int d) : d_(d) {
    if (std::find(std::begin(kClassNumberOne), std::end(kClassNumberOne), d) ==
        std::end(kClassNumberOne))
        throw std::domain_error("FieldTag: d must be squarefree with class number 1");
}

bool FieldTag::norm_euclidean() const {
    return d_ == 1 || d_ == 2 || d_ == 3 || d_ == 7 || d_ == 11;
}

std::ostream& operator<<(std::ostream& os, const FieldTag& t) {
    return os << "Q(sqrt(-" << t.d() << "))";
}

Int QuadInt::norm() const {
    if (tag_.half_basis())
        return x_ * x_ + x_ * y_ + y_ * y_ * ((1 + tag_.d()) / 4);
    return x_ * x_ + tag_.d() * y_ * y_;
}

QuadInt QuadInt::conj() const {
    if (tag_.half_basis()) return {tag_, x_ + y_, -y_};
    return {tag_, x_, -y_};
}

namespace {
void require_same_tag(const QuadInt& a, const QuadInt& b) {
    if (a.tag() != b.tag()) throw std::domain_error("QuadInt: field tag mismatch");
}
} // namespace

QuadInt QuadInt::operator+(const QuadInt& o) const {
    require_same_tag(*this, o);
    return {tag_, x_ + o.x_, y_ + o.y_};
}

QuadInt QuadInt::operator-(const QuadInt& o) const {
    require_same_tag(*this, o);
    return {tag_, x_ - o.x_, y_ - o.y_};
}

QuadInt QuadInt::operator*(const QuadInt& o) const {
    require_same_tag(*this, o);
    Int cross = x_ * o.y_ + y_ * o.x_;
    if (tag_.half_basis()) {
        // omega^2 = omega - (1+d)/4
        Int c = (1 + tag_.d()) / 4;
        return {tag_, x_ * o.x_ - c * y_ * o.y_, cross + y_ * o.y_};
    }
    // omega^2 = -d
    return {tag_, x_ * o.x_ - tag_.d() * y_ * o.y_, cross};
}

bool QuadInt::yx_less(const QuadInt& a, const QuadInt& b) {
    if (a.y_ != b.y_) return a.y_ < b.y_;
    return a.x_ < b.x_;
}

std::complex<double> QuadInt::embed() const {
    double om_re = tag_.half_basis() ? 0.5 : 0.0;
    double om_im = tag_.half_basis() ? std::sqrt(double(tag_.d())) / 2.0
                                     : std::sqrt(double(tag_.d()));
    double xd = double(x_), yd = double(y_);
    return {xd + yd * om_re, yd * om_im};
}

std::string QuadInt::str() const {
    std::ostringstream os;
    if (y_ == 0) {
        os << x_;
    } else if (x_ == 0) {
        if (y_ == 1)
            os << "w";
        else if (y_ == -1)
            os << "-w";
        else
            os << y_ << "w";
    } else {
        os << x_ << (y_ > 0 ? "+" : "-");
        Int ay = abs(y_);
        if (ay != 1) os << ay;
        os << "w";
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const QuadInt& q) {
    return os << q.str();
}

OrderRef::OrderRef(FieldTag tag, Int conductor) : tag_(tag), m_(std::move(conductor)) {
    if (m_ < 1) throw std::domain_error("OrderRef: conductor must be positive");
}

std::vector<QuadInt> units(FieldTag tag) {
    QuadInt one = QuadInt::one(tag), om = QuadInt::omega(tag);
    if (tag.d() == 1) return {one, om, -one, -om};
    if (tag.d() == 3) {
        QuadInt om1 = om - one;  // omega^2
        return {one, om, om1, -one, -om, -om1};
    }
    return {one, -one};
}

QuadInt canonical_associate(const QuadInt& q) {
    if (q.is_zero()) return q;
    std::optional<QuadInt> best;
    auto better = [](const QuadInt& a, const QuadInt& b) {
        if (a.y() != b.y()) return a.y() < b.y();
        bool ap = a.x() > 0, bp = b.x() > 0;
        if (ap != bp) return ap;
        if (abs(a.x()) != abs(b.x())) return abs(a.x()) < abs(b.x());
        return a.x() > b.x();
    };
    for (const QuadInt& u : units(q.tag())) {
        QuadInt cand = q * u;
        if (cand.y() < 0) continue;
        if (!best || better(cand, *best)) best = cand;
    }
    return *best;  // -q has y >= 0 whenever q does not
}

std::optional<QuadInt> div_exact(const QuadInt& a, const QuadInt& b) {
    require_same_tag(a, b);
    if (b.is_zero()) throw std::domain_error("div_exact: division by zero");
    QuadInt t = a * b.conj();
    Int n = b.norm();
    if (t.x() % n != 0 || t.y() % n != 0) return std::nullopt;
    return QuadInt(a.tag(), t.x() / n, t.y() / n);
}

QuadInt div_round(const QuadInt& a, const QuadInt& b) {
    require_same_tag(a, b);
    if (b.is_zero()) throw std::domain_error("div_round: division by zero");
    if (!a.tag().norm_euclidean())
        throw std::domain_error("div_round: field is not norm-Euclidean");
    QuadInt t = a * b.conj();
    Int n = b.norm();  // a/b = (t.x + t.y*omega) / n
    Int x, y;
    if (a.tag().half_basis()) {
        // Round the sqrt(-d) part first, then the rational part; this keeps
        // N(a/b - q) <= 1/4 + d/16 < 1 for d in {3, 7, 11}.
        y = round_div_nearest(t.y(), n);
        x = round_div_nearest(2 * t.x() + (t.y() - y * n), 2 * n);
    } else {
        x = round_div_nearest(t.x(), n);
        y = round_div_nearest(t.y(), n);
    }
    return {a.tag(), x, y};
}

namespace {

// Generators of the Z-module a*O + b*O as columns in the (1, omega) basis.
IMat ideal_generators(const QuadInt& a, const QuadInt& b) {
    QuadInt om = QuadInt::omega(a.tag());
    std::vector<QuadInt> gens;
    for (const QuadInt* g : {&a, &b}) {
        if (g->is_zero()) continue;
        gens.push_back(*g);
        gens.push_back(*g * om);
    }
    IMat m(2, int(gens.size()));
    for (int j = 0; j < int(gens.size()); ++j) {
        m.at(0, j) = gens[j].x();
        m.at(1, j) = gens[j].y();
    }
    return m;
}

// d in {19, 43, 67, 163}: principal generator of aO + bO by HNF index plus
// a bounded search for an element of norm equal to the index.
QuadInt gcd_by_norm_search(const QuadInt& a, const QuadInt& b) {
    const FieldTag tag = a.tag();
    const int d = tag.d();
    IMat h = hnf_columns(ideal_generators(a, b));
    Int n = h.at(0, 0) * h.at(1, 1);  // lattice index [O : aO + bO]

    // Solve x^2 + xy + y^2 (1+d)/4 = n: y is bounded by 4n/d and for each y
    // the discriminant 4n - d y^2 must be a perfect square.
    Int ymax = sqrt(Int(4 * n / d));
    for (Int y = -ymax; y <= ymax; ++y) {
        Int disc = 4 * n - d * y * y;
        if (disc < 0) continue;
        Int s = sqrt(disc);
        if (s * s != disc) continue;
        for (int sign : {1, -1}) {
            Int num = -y + sign * s;
            if (num % 2 != 0) continue;
            Int x = num / 2;
            // Membership in the HNF lattice (lower triangular basis).
            if (x % h.at(0, 0) != 0) continue;
            Int c1 = x / h.at(0, 0);
            Int rem = y - c1 * h.at(1, 0);
            if (rem % h.at(1, 1) != 0) continue;
            QuadInt g(tag, x, y);
            if (div_exact(a, g) && div_exact(b, g)) return canonical_associate(g);
        }
    }
    throw internal_check_error("gcd: no principal generator found (class number 1 violated?)");
}

} // namespace

QuadInt gcd(const QuadInt& a, const QuadInt& b) {
    require_same_tag(a, b);
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd(0, 0) is undefined");
    if (a.is_zero()) return canonical_associate(b);
    if (b.is_zero()) return canonical_associate(a);
    if (!a.tag().norm_euclidean()) return gcd_by_norm_search(a, b);
    QuadInt r0 = a, r1 = b;
    while (!r1.is_zero()) {
        QuadInt r2 = r0 - r1 * div_round(r0, r1);
        r0 = r1;
        r1 = r2;
    }
    return canonical_associate(r0);
}

std::pair<QuadInt, QuadInt> bezout(const QuadInt& a, const QuadInt& b) {
    require_same_tag(a, b);
    const FieldTag tag = a.tag();
    const QuadInt zero = QuadInt::zero(tag), one = QuadInt::one(tag);
    std::optional<std::pair<QuadInt, QuadInt>> result;
    if (b.is_zero()) {
        if (!a.is_unit()) throw std::domain_error("bezout: inputs are not coprime");
        result = {a.conj(), zero};
    } else if (a.is_zero()) {
        if (!b.is_unit()) throw std::domain_error("bezout: inputs are not coprime");
        result = {zero, b.conj()};
    } else if (tag.norm_euclidean()) {
        QuadInt r0 = a, r1 = b, s0 = one, s1 = zero, t0 = zero, t1 = one;
        while (!r1.is_zero()) {
            QuadInt q = div_round(r0, r1);
            QuadInt r2 = r0 - r1 * q, s2 = s0 - s1 * q, t2 = t0 - t1 * q;
            r0 = r1; r1 = r2;
            s0 = s1; s1 = s2;
            t0 = t1; t1 = t2;
        }
        if (!r0.is_unit()) throw std::domain_error("bezout: inputs are not coprime");
        QuadInt inv = r0.conj();  // unit inverse
        result = {s0 * inv, t0 * inv};
    } else {
        // Integer linear system a*a0 + b*b0 = 1 in the four coordinates.
        QuadInt om = QuadInt::omega(tag);
        QuadInt cols[4] = {a, a * om, b, b * om};
        IMat m(2, 4);
        for (int j = 0; j < 4; ++j) {
            m.at(0, j) = cols[j].x();
            m.at(1, j) = cols[j].y();
        }
        auto sol = solve_integer(m, {Int(1), Int(0)});
        if (!sol) throw std::domain_error("bezout: inputs are not coprime");
        result = {QuadInt(tag, (*sol)[0], (*sol)[1]), QuadInt(tag, (*sol)[2], (*sol)[3])};
    }
    if (a * result->first + b * result->second != one)
        throw internal_check_error("bezout: postcondition a*a0 + b*b0 = 1 failed");
    return *result;
}

QuadInt parse_quadint(const std::string& text, FieldTag tag) {
    size_t i = 0;
    auto fail = [&]() -> QuadInt {
        throw std::domain_error("invalid QuadInt literal: '" + text + "'");
    };
    auto parse_signed = [&](bool allow_empty_digits) -> std::optional<Int> {
        size_t start = i;
        bool neg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            neg = text[i] == '-';
            ++i;
        }
        std::string digits;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            digits += text[i++];
        if (digits.empty()) {
            if (!allow_empty_digits || start == i) {
                i = start;
                return std::nullopt;
            }
            return Int(neg ? -1 : 1);  // bare sign before 'w'
        }
        Int v(digits);
        return neg ? -v : v;
    };
    auto eat_w = [&]() -> bool {
        size_t save = i;
        if (i < text.size() && text[i] == '*') ++i;
        if (i < text.size() && text[i] == 'w') {
            ++i;
            return true;
        }
        i = save;
        return false;
    };

    if (text.empty()) fail();
    if (eat_w()) {  // bare "w"
        if (i != text.size()) fail();
        return {tag, 0, 1};
    }
    std::optional<Int> first = parse_signed(true);
    if (!first) fail();
    if (eat_w()) {
        if (i != text.size()) fail();
        return {tag, 0, *first};  // "Yw"
    }
    if (i == text.size()) return {tag, *first, 0};  // "X"
    std::optional<Int> second = parse_signed(true);
    if (!second || !eat_w() || i != text.size()) fail();
    return {tag, *first, *second};  // "X+Yw"
}

} // namespace cuspforge
