#include "cfx/rational.hpp"

#include <boost/multiprecision/integer.hpp>

namespace cfx {

const char* errc_name(errc e) {
    switch (e) {
        case errc::usage: return "Usage";
        case errc::mixed_radicand: return "MixedRadicand";
        case errc::division_by_zero: return "DivisionByZero";
        case errc::not_scalar_norm: return "NotScalarNorm";
        case errc::non_vector_result: return "NonVectorResult";
        case errc::space_mismatch: return "SpaceMismatch";
        case errc::inversion_of_zero: return "InversionOfZero";
        case errc::non_positive_factor: return "NonPositiveFactor";
        case errc::zero_state: return "ZeroState";
        case errc::bad_determinant: return "BadDeterminant";
        case errc::not_sl2h: return "NotSL2H";
        case errc::square_discriminant: return "SquareDiscriminant";
        case errc::degenerate_quadratic: return "DegenerateQuadratic";
        case errc::not_found_within_bound: return "NotFoundWithinBound";
        case errc::no_convergence: return "NoConvergence";
        case errc::identity_matrix: return "IdentityMatrix";
        case errc::not_valid_clifford_matrix: return "NotValidCliffordMatrix";
        case errc::non_unit_residual: return "NonUnitResidual";
        case errc::not_inverses: return "NotInverses";
        case errc::not_rational: return "NotRational";
        case errc::zero_encountered: return "ZeroEncountered";
        case errc::below_threshold: return "BelowThreshold";
        case errc::divergent_periodic_spec: return "DivergentPeriodicSpec";
        case errc::rounding_undecided: return "RoundingUndecided";
        case errc::parse_error: return "ParseError";
        case errc::internal: return "Internal";
    }
    return "Unknown";
}

Int floor_rat(const Rational& r) {
    Int n = num(r), d = den(r);
    Int q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

Int round_half_open(const Rational& r) {
    return floor_rat(r + Rational(1, 2));
}

Int isqrt(const Int& n) {
    if (n < 0) fail(errc::internal, "isqrt of negative value");
    return boost::multiprecision::sqrt(n);
}

bool is_perfect_square(const Int& n, Int* root) {
    if (n < 0) return false;
    Int r = isqrt(n);
    if (r * r == n) {
        if (root) *root = r;
        return true;
    }
    return false;
}

SquarefreeSplit squarefree_split(const Int& n) {
    if (n < 0) fail(errc::internal, "squarefree_split of negative value");
    SquarefreeSplit out{1, n};
    if (n <= 1) return out;
    Int m = n;
    Int s = 1;
    // Trial division by p^2.  Discriminants in this codebase stay small
    // enough that the bound is never the limiting factor; a perfect-square
    // residual is still extracted exactly below.
    for (Int p = 2; p * p <= m && p <= 1000000; ++p) {
        Int pp = p * p;
        while (m % pp == 0) {
            m /= pp;
            s *= p;
        }
    }
    Int r;
    if (is_perfect_square(m, &r)) {
        s *= r;
        m = 1;
    }
    out.square_part = s;
    out.free_part = m;
    return out;
}

double to_double(const Rational& r) {
    return r.convert_to<double>();
}

void reduce_quadratic_triple(Rational& a, Rational& b, Rational& c) {
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;
    Int l = lcm(lcm(den(a), den(b)), den(c));
    Int na = num(a) * (l / den(a));
    Int nb = num(b) * (l / den(b));
    Int nc = num(c) * (l / den(c));
    Int g = gcd(gcd(abs(na), abs(nb)), abs(nc));
    if (g == 0) g = 1;
    a = Rational(na / g);
    b = Rational(nb / g);
    c = Rational(nc / g);
}

std::string rational_to_string(const Rational& r) {
    Int n = num(r), d = den(r);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

Rational parse_rational(const std::string& text) {
    try {
        return Rational(text);
    } catch (const std::exception&) {
        fail(errc::parse_error, "not a rational: '" + text + "'");
    }
}

} // namespace cfx
