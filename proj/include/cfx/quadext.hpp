#pragma once

#include <compare>
#include <iosfwd>
#include <string>

#include "cfx/rational.hpp"

namespace cfx {

/// Exact scalar a + b*sqrt(D) with rational a, b and a square-free radicand
/// D >= 0.  D = 0 is the rational case (b forced to 0).  Values with D > 1
/// are irrational whenever b != 0, so equality of canonical forms is
/// equality of real numbers.
///
/// Arithmetic mixes a value with a rational freely; combining two values
/// with different nonzero radicands is refused (one extension at a time).
class QuadExt {
public:
    QuadExt() : a_(0), b_(0), d_(0) {}
    QuadExt(int v) : a_(v), b_(0), d_(0) {}
    QuadExt(const Rational& v) : a_(v), b_(0), d_(0) {}
    QuadExt(const Int& v) : a_(Rational(v)), b_(0), d_(0) {}

    /// a + b*sqrt(d); d is reduced to square-free form (sqrt(8) -> 2*sqrt(2)).
    QuadExt(const Rational& a, const Rational& b, const Int& d);

    /// sqrt(r) for rational r >= 0, as an exact QuadExt.
    static QuadExt sqrt_of(const Rational& r);

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Int& radicand() const { return d_; }

    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    /// Exact sign of the real number a + b*sqrt(D).
    int sign() const;

    QuadExt operator-() const { return QuadExt(-a_, -b_, d_, no_reduce{}); }
    QuadExt operator+(const QuadExt& o) const;
    QuadExt operator-(const QuadExt& o) const;
    QuadExt operator*(const QuadExt& o) const;
    QuadExt operator/(const QuadExt& o) const;
    QuadExt inverse() const;

    QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
    QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
    QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
    QuadExt& operator/=(const QuadExt& o) { return *this = *this / o; }

    bool operator==(const QuadExt& o) const {
        return a_ == o.a_ && b_ == o.b_ && d_ == o.d_;
    }
    bool operator!=(const QuadExt& o) const { return !(*this == o); }
    bool operator<(const QuadExt& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const QuadExt& o) const { return (*this - o).sign() <= 0; }
    bool operator>(const QuadExt& o) const { return (*this - o).sign() > 0; }
    bool operator>=(const QuadExt& o) const { return (*this - o).sign() >= 0; }

    /// Galois conjugate a - b*sqrt(D).
    QuadExt conjugate() const { return QuadExt(a_, -b_, d_, no_reduce{}); }

    /// Exact floor as an integer (uses sign tests, not floating point).
    Int floor() const;
    /// Unique n with x - n in [-1/2, 1/2).
    Int round_half_open() const;

    double approx() const;

    /// "p/q", "p/q+r/s*sqrt(D)" (ASCII), canonical and round-trippable.
    std::string str() const;

    /// Deterministic total order usable as a map key (not the real-number
    /// order; lexicographic on (D, a, b)).
    static bool key_less(const QuadExt& x, const QuadExt& y);

private:
    struct no_reduce {};
    QuadExt(const Rational& a, const Rational& b, const Int& d, no_reduce)
        : a_(a), b_(b), d_(d) {
        if (b_ == 0) d_ = 0;
    }

    // Shared radicand for a binary op, or error.
    static Int merge_radicand(const QuadExt& x, const QuadExt& y);

    Rational a_, b_;
    Int d_;
};

std::ostream& operator<<(std::ostream& os, const QuadExt& x);

/// Parses "p/q", "p/q+r/s*sqrt(D)", "2sqrt(3)", "-sqrt(5)/2" and the like.
QuadExt parse_quadext(const std::string& text);

} // namespace cfx
