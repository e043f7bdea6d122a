#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "cfx/errors.hpp"

namespace cfx {

using Int = boost::multiprecision::cpp_int;
// cpp_rational keeps gcd(|num|, den) = 1 and den > 0, which is exactly the
// canonical form we need; zero is 0/1.
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline int sign_of(const Rational& r) { return r.sign(); }
inline int sign_of(const Int& n) { return n.sign(); }

// Floor division for arbitrary-precision rationals.
Int floor_rat(const Rational& r);

// Unique n with r - n in [-1/2, 1/2) (lower-closed tie convention).
Int round_half_open(const Rational& r);

// Integer square root (floor).  n must be >= 0.
Int isqrt(const Int& n);

bool is_perfect_square(const Int& n, Int* root = nullptr);

// Splits n >= 0 as s^2 * f with f square-free (best effort above the trial
// bound; the residual cofactor is square-checked exactly either way).
struct SquarefreeSplit {
    Int square_part; // s
    Int free_part;   // f
};
SquarefreeSplit squarefree_split(const Int& n);

double to_double(const Rational& r);

/// Scales a quadratic's coefficient triple by a positive rational so the
/// coefficients become coprime integers (roots unchanged); keeps
/// discriminants small before square-free reduction.
void reduce_quadratic_triple(Rational& a, Rational& b, Rational& c);

// Text form: "p" or "p/q", canonical, round-trips exactly.
std::string rational_to_string(const Rational& r);
Rational parse_rational(const std::string& text);

} // namespace cfx
