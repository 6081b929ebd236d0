#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cuspforge/errors.hpp"

namespace cuspforge {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// One of the class-number-one imaginary quadratic fields Q(sqrt(-d)),
/// d in {1, 2, 3, 7, 11, 19, 43, 67, 163}. Construction rejects any other d.
class FieldTag {
public:
    explicit FieldTag(int d);

    int d() const { return d_; }

    /// true when -d = 1 mod 4, so omega = (1 + sqrt(-d))/2; otherwise
    /// omega = sqrt(-d).
    bool half_basis() const { return d_ % 4 == 3; }

    /// true for the norm-Euclidean cases d in {1, 2, 3, 7, 11}.
    bool norm_euclidean() const;

    friend bool operator==(const FieldTag&, const FieldTag&) = default;

private:
    int d_;
};

std::ostream& operator<<(std::ostream&, const FieldTag&);

/// Element x + y*omega of the maximal order O_{-d}. All arithmetic is exact;
/// coordinates are arbitrary-precision integers.
class QuadInt {
public:
    QuadInt(FieldTag tag, Int x, Int y) : tag_(tag), x_(std::move(x)), y_(std::move(y)) {}
    static QuadInt zero(FieldTag tag) { return {tag, 0, 0}; }
    static QuadInt one(FieldTag tag) { return {tag, 1, 0}; }
    static QuadInt omega(FieldTag tag) { return {tag, 0, 1}; }

    const FieldTag& tag() const { return tag_; }
    const Int& x() const { return x_; }
    const Int& y() const { return y_; }

    bool is_zero() const { return x_ == 0 && y_ == 0; }
    bool is_unit() const { return norm() == 1; }

    /// N(x + y*omega); nonnegative, zero only at zero.
    Int norm() const;
    QuadInt conj() const;

    QuadInt operator-() const { return {tag_, -x_, -y_}; }
    QuadInt operator+(const QuadInt& o) const;
    QuadInt operator-(const QuadInt& o) const;
    QuadInt operator*(const QuadInt& o) const;

    friend bool operator==(const QuadInt&, const QuadInt&) = default;

    /// Lexicographic (y, x) order; used for canonical sorting only.
    static bool yx_less(const QuadInt& a, const QuadInt& b);

    /// Embedding into C, for sanity checks only; no float enters exact paths.
    std::complex<double> embed() const;

    std::string str() const;

private:
    FieldTag tag_;
    Int x_, y_;
};

std::ostream& operator<<(std::ostream&, const QuadInt&);

/// The coordinate epimorphisms x(q), y(q) with q = x(q) + omega*y(q).
inline const Int& x_map(const QuadInt& q) { return q.x(); }
inline const Int& y_map(const QuadInt& q) { return q.y(); }

/// The order O_{-d,m} = Z + m*omega*Z of conductor m; m = 1 is the maximal
/// order O_{-d}.
class OrderRef {
public:
    OrderRef(FieldTag tag, Int conductor);

    const FieldTag& tag() const { return tag_; }
    const Int& conductor() const { return m_; }
    bool maximal() const { return m_ == 1; }

    friend bool operator==(const OrderRef&, const OrderRef&) = default;

private:
    FieldTag tag_;
    Int m_;
};

/// The unit group O_{-d}^*: {+-1, +-i} for d=1, the sixth roots of unity
/// for d=3, {+-1} otherwise.
std::vector<QuadInt> units(FieldTag tag);

/// Canonical representative among unit multiples: minimal y >= 0, then
/// positive x preferred, then minimal |x|.
QuadInt canonical_associate(const QuadInt& q);

/// Exact quotient a/b when b | a; nullopt when a is not in b*O_{-d}.
std::optional<QuadInt> div_exact(const QuadInt& a, const QuadInt& b);

/// Rounded quotient: q with N(a - b*q) < N(b). Only for norm-Euclidean d.
QuadInt div_round(const QuadInt& a, const QuadInt& b);

/// Unit-normalized generator of the ideal aO + bO. Euclidean algorithm for
/// d in {1,2,3,7,11}; HNF index plus bounded norm search for the remaining
/// class-number-one d.
QuadInt gcd(const QuadInt& a, const QuadInt& b);

/// (a0, b0) with a*a0 + b*b0 = 1; requires gcd(a, b) to be a unit.
std::pair<QuadInt, QuadInt> bezout(const QuadInt& a, const QuadInt& b);

/// CLI literal `[-]x[+|-]y[*]w`, e.g. "1+1w", "-1+2*w", "2", "w".
QuadInt parse_quadint(const std::string& text, FieldTag tag);

} // namespace cuspforge
