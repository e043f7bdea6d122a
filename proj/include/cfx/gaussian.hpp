#pragma once

#include <optional>
#include <string>

#include "cfx/quadext.hpp"

namespace cfx {

/// Element p + q*w of Q(w) where w = i*sqrt(d); the imaginary base d >= 1 is
/// carried by the enclosing context, not the value (one ring at a time,
/// mirroring the radicand rule for QuadExt).  d = 1 is the Gaussian case.
struct GaussRational {
    Rational x; // coefficient of 1
    Rational y; // coefficient of w

    GaussRational() = default;
    GaussRational(Rational re, Rational im) : x(std::move(re)), y(std::move(im)) {}

    bool is_zero() const { return x == 0 && y == 0; }
    bool operator==(const GaussRational& o) const { return x == o.x && y == o.y; }
    bool operator!=(const GaussRational& o) const { return !(*this == o); }
};

GaussRational g_add(const GaussRational& a, const GaussRational& b);
GaussRational g_sub(const GaussRational& a, const GaussRational& b);
GaussRational g_neg(const GaussRational& a);
GaussRational g_conj(const GaussRational& a);
GaussRational g_mul(const GaussRational& a, const GaussRational& b, const Int& d);
Rational g_norm(const GaussRational& a, const Int& d); // |a|^2 = x^2 + d*y^2
GaussRational g_inv(const GaussRational& a, const Int& d);
GaussRational g_div(const GaussRational& a, const GaussRational& b, const Int& d);

/// Is g = (x+yw)^2 solvable over Z[w]?  Used to reject square discriminants.
bool gauss_is_square(const GaussRational& g, const Int& d, GaussRational* root = nullptr);

std::string gauss_to_string(const GaussRational& g, const Int& d);
/// Accepts "3-2i" (d=1), "1+2*isqrt(2)", "i", "-i", plain rationals.
GaussRational parse_gauss(const std::string& text, const Int& d);

/// Closed rational interval; endpoints exact.
struct RatInterval {
    Rational lo, hi;

    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
};

RatInterval iv_point(const Rational& v);
RatInterval iv_add(const RatInterval& a, const RatInterval& b);
RatInterval iv_sub(const RatInterval& a, const RatInterval& b);
RatInterval iv_neg(const RatInterval& a);
RatInterval iv_scale(const RatInterval& a, const Rational& c);
RatInterval iv_mul(const RatInterval& a, const RatInterval& b);
/// Certified enclosure of sqrt over a nonnegative interval, 2^-bits wide-ish.
RatInterval iv_sqrt(const RatInterval& a, unsigned bits);
RatInterval iv_sqrt_rational(const Rational& r, unsigned bits);

/// The two real coordinates of the principal square root of the complex
/// number A + B*i*sqrt(d), enclosed to roughly 2^-bits.  Coordinates are in
/// the (1, w) basis: sqrt(delta) = c1 + cw*w.
struct SqrtEnclosure {
    RatInterval c1;
    RatInterval cw;
};
SqrtEnclosure enclose_sqrt(const GaussRational& delta, const Int& d, unsigned bits);

/// u + v*sqrt(delta), u, v in Q(w), delta a non-square element of Z[w]:
/// the exact state of complex continued fractions of quadratic surds whose
/// discriminant is not real.  The representation (u, v) is unique, so
/// equality of states is decidable; lattice rounding is certified numerics
/// with precision escalation.
struct ComplexSurd {
    GaussRational u, v;
    GaussRational delta; // integer entries
    Int d;               // imaginary base of the ring Z[i*sqrt(d)]

    bool is_zero() const { return u.is_zero() && v.is_zero(); }
    bool operator==(const ComplexSurd& o) const { return u == o.u && v == o.v; }
};

ComplexSurd cs_make(const GaussRational& u, const GaussRational& v, const GaussRational& delta, const Int& d);
ComplexSurd cs_add_gauss(const ComplexSurd& z, const GaussRational& g);
ComplexSurd cs_mul_gauss(const ComplexSurd& z, const GaussRational& g);
ComplexSurd cs_inverse(const ComplexSurd& z);

/// Coordinates of z in the (1, w) basis, enclosed to ~2^-bits.
struct CoordEnclosure {
    RatInterval x, y;
};
CoordEnclosure cs_enclose(const ComplexSurd& z, unsigned bits);

/// Certified nearest-lattice rounding: the unique a+b*w (a, b integers) with
/// both residual coordinates in [-1/2, 1/2).  Escalates precision; throws
/// rounding_undecided if an exact half-integer tie resists separation.
GaussRational cs_round(const ComplexSurd& z);

/// Exact comparison of |z|^4 against 1 when decidable, else certified
/// numeric comparison; nullopt if undecided at the precision cap.
std::optional<int> cs_gauge4_cmp_one(const ComplexSurd& z);

std::string cs_to_string(const ComplexSurd& z);
double cs_approx_x(const ComplexSurd& z);
double cs_approx_y(const ComplexSurd& z);

} // namespace cfx
