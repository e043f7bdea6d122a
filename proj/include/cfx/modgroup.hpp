#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfx/cf.hpp"
#include "cfx/clifford_matrix.hpp"
#include "cfx/gaussian.hpp"
#include "cfx/spaces.hpp"

namespace cfx {

enum class IsoKind { identity, elliptic, parabolic, loxodromic };

const char* iso_kind_name(IsoKind k);

/// Classification verdict plus the exact quantities it was decided from.
struct Classification {
    IsoKind kind = IsoKind::identity;
    int simplicity = 0; // 1..3 in the quaternionic case, else 0
    std::map<std::string, std::string> certificate;
};

using IntMat2 = std::array<std::array<Int, 2>, 2>;

/// Trace classification over SL(2,Z): |tr|<2 elliptic, =2 parabolic, >2
/// loxodromic (identity split off first).
Classification classify_real(const IntMat2& m);

struct GaussMat2 {
    GaussRational a, b, c, d;
};

/// Trace classification over SL(2, Z[i*sqrt(d)]).
Classification classify_complex(const GaussMat2& m, const Int& d);

/// The six conjugacy quantities of a 2x2 quaternion matrix (work over the
/// rank-2 Clifford model of the quaternions): alpha, beta, gamma, delta are
/// scalars, sigma and tau quaternions, with the documented four-way case
/// split for sigma and tau.
struct PSQuantities {
    QuadExt alpha, beta, gamma, delta;
    CliffordElement sigma, tau;
    int branch; // 1: c!=0, 2: c=0,b!=0, 3: b=c=0,a!=d, 4: b=c=0,a=d
};

PSQuantities ps_quantities(const CliffordMatrix& m);

/// Parker-Short classification of matrices with alpha = 1.
Classification classify_quaternionic(const CliffordMatrix& m);

/// Minimal positive solution of mu^2 * delta + 1 = n^2 (delta >= 2 and not
/// a square), by the continued fraction of sqrt(delta).
struct PellSolution {
    Int mu, n;
};
PellSolution pell_solve(const Int& delta);

/// Integer matrix with determinant 1, |trace| > 2, whose Moebius fixed
/// points are the roots of a x^2 + b x + c (irrational roots required).
/// Uses the minimal Pell solution and the + branch deterministically.
IntMat2 surd_to_loxodromic(const Int& a, const Int& b, const Int& c);

/// Bounded search for a nontrivial solution of x^2 + delta y^2 = 1 over
/// Z[i*sqrt(d)] (existence is guaranteed, a constructive bound is not).
struct ComplexPellResult {
    GaussRational x, y;
    std::string convention; // records the sign convention of the equation
};
std::optional<ComplexPellResult> complex_pell_search(const GaussRational& delta, const Int& d,
                                                     long bound);

/// Complex analogue of surd_to_loxodromic over Z[i*sqrt(d)], via the
/// bounded Pell search; nullopt if the search budget runs out.
std::optional<GaussMat2> surd_to_loxodromic_complex(const GaussRational& a,
                                                    const GaussRational& b,
                                                    const GaussRational& c, const Int& d,
                                                    long bound);

struct RealFixedPoints {
    bool includes_infinity = false;
    std::vector<QuadExt> points;
};
RealFixedPoints fixed_points_real(const IntMat2& m);

struct ComplexFixedPoints {
    bool includes_infinity = false;
    std::vector<ComplexSurd> points;
};
ComplexFixedPoints fixed_points_complex(const GaussMat2& m, const Int& d);

/// Attracting/repelling fixed points of a loxodromic Clifford matrix by
/// iterating the Moebius action from independent seeds (exact quadratics are
/// outside the scalar tower in the non-commutative case).
struct CliffordFixedPoints {
    bool includes_infinity = false;
    std::vector<std::vector<double>> points; // attracting first
    double seed_agreement = 0.0;
};
CliffordFixedPoints fixed_points_clifford(const CliffordMatrix& m, unsigned seed = 7);

/// Word in the modular group generators: the inversion and the lattice
/// translations.
struct WordToken {
    bool inv = false;
    LatticeElem trans; // valid when !inv
};

struct GeneratorWord {
    std::vector<WordToken> tokens;
    std::string str(const Space& space) const;
};

CliffordMatrix word_product(const Space& space, const GeneratorWord& w);

/// The six-token word [Inv, T(-b), Inv, T(-a), Inv, T(-b)] whose product is
/// diag(a, b); requires a*b = 1 and both +-a, +-b lattice vectors.
GeneratorWord hidden_symmetry_word(const Space& space, const CliffordElement& a,
                                   const CliffordElement& b);

/// Expresses diag(a, a') for a unit-norm lattice element a as a product of
/// hidden-symmetry words over unit vectors (a' is the involution of a).
GeneratorWord unit_diagonal_word(const Space& space, const CliffordElement& a);

struct ReduceStep {
    bool inversion;
    Int column_norm_before;
    Int column_norm_after;
};

struct ReduceResult {
    GeneratorWord word;
    std::vector<ReduceStep> steps;
};

/// Norm-descent reduction of a Clifford matrix over the integer (r3) or
/// Hurwitz (r4) ring into a generator word whose product equals the input
/// exactly.  Translation steps strictly decrease the left-column norm.
ReduceResult reduce_to_generators(const Space& space, const CliffordMatrix& m);

/// Exact checks that the multiplicative closure Z^8 + h Z^8 behaves:
/// h^2 = h (mod Z^8), e_i h = h e_i (mod Z^8), and random products stay
/// inside.
struct HurwitzClosureReport {
    bool h_squared_ok = false;
    bool commutation_ok = false;
    long samples = 0;
    long violations = 0;
};
HurwitzClosureReport hurwitz_closure_check(long samples, unsigned seed);

/// Membership of an A_3 element in Z^8 + h Z^8 (exact).
bool in_hurwitz_span(const CliffordElement& x);

} // namespace cfx
