#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfx/clifford_matrix.hpp"
#include "cfx/gaussian.hpp"
#include "cfx/spaces.hpp"

namespace cfx {

enum class ExpStatus { finite, periodic, truncated };

/// Digit sequence of a continued fraction expansion.
///
/// Reconstruction convention: when `has_leading` is set the first digit is
/// an integer part and the value is d1 + i(d2 + i(d3 + ...)); otherwise all
/// digits are Gauss digits and the value is i(d1 + i(d2 + ...)).  The
/// leading digit is emitted exactly when the input had gauge >= 1; points
/// inside the unit ball (where the inversion expands) start directly with
/// the Gauss map even when they sit outside K.
struct Expansion {
    std::vector<LatticeElem> digits;
    bool has_leading = false;
    ExpStatus status = ExpStatus::finite;
    long preperiod = 0; // digit count, includes the leading digit
    long period = 0;
    long iterations = 0;

    std::vector<LatticeElem> preperiod_digits() const;
    std::vector<LatticeElem> period_digits() const;
};

struct GaussStep {
    LatticeElem digit;
    Point next;
};

/// One application of the Gauss map T(x) = i(x) - [i(x)]; x must be nonzero.
GaussStep gauss_step(const Space& space, const Point& x);

constexpr long kDefaultMaxIter = 10000;

/// Full expansion with exact state-repeat detection; all state comparisons
/// are on canonical exact coordinates, never on floats.
Expansion expand(const Space& space, const Point& x, long max_iter = kDefaultMaxIter);

/// Expansion of u + v*sqrt(delta) over Z[i*sqrt(d)] when delta is not real:
/// exact (u, v) state arithmetic plus certified lattice rounding.
Expansion expand_complex_surd(const ComplexSurd& z, long max_iter = kDefaultMaxIter);

/// Matrices M_1..M_n with M_k x = T^k x, as words in the translation and
/// inversion generators.  Available for the vector-model spaces.
std::vector<CliffordMatrix> convergent_matrices(const Space& space, const Expansion& e);
std::vector<CliffordMatrix> convergent_matrices(const Space& space,
                                                const std::vector<LatticeElem>& digits,
                                                bool has_leading);

/// The inversion as a 2x2 Clifford matrix for this space.
CliffordMatrix inversion_matrix(const Space& space);

/// Result of evaluating a digit sequence.  Exactly one representation is
/// active; `approx` is always filled.
struct EvalResult {
    bool infinity = false;
    std::optional<Point> exact;       // vector-model / Heisenberg exact value
    std::optional<ComplexSurd> surd;  // complex value in the surd tower
    std::vector<double> approx;       // ambient coordinates
    bool is_exact() const { return exact.has_value() || surd.has_value(); }
    std::string cross_check;          // "exact", "numeric", or "skipped"
};

/// Evaluates a finite digit list, or a periodic spec when period > 0 (the
/// last `period` digits repeat).  Periodic values are attracting fixed
/// points of the period word: solved exactly where the scalar tower allows
/// (real, complex, collinear r3/r4 words), by damped iteration to 1e-12
/// Cygan distance otherwise.
EvalResult evaluate(const Space& space, const std::vector<LatticeElem>& digits,
                    bool has_leading, long period = 0);
EvalResult evaluate(const Space& space, const Expansion& e);

} // namespace cfx
