#pragma once

#include <vector>

#include "cfx/clifford.hpp"
#include "cfx/quadext.hpp"

namespace cfx {

/// The reciprocal-tower identities a + [a, ..., a] = 0 in R^d for the
/// inversion x -> conj(x)/|x|^2 (the plain reciprocal), with a = (0,1,...,1)
/// and d in {2,3,4}: tower depth 1, 2, 4 respectively.
struct DepthIdentityRecord {
    int d = 0;
    int depth = 0;
    long variants_checked = 0; // sign flips and coordinate permutations
    bool all_zero = false;
    std::string witness; // first failing variant, empty when all pass
};

DepthIdentityRecord check_depth_identity(int d);

/// Evaluates a + [a, ..., a] (tower of `depth` digits) exactly in the
/// Clifford model; zero iff the identity holds for this vector.
CliffordElement depth_tower_value(const CliffordElement& a, int depth);

/// x_1 = 1, x_{n+1} = 1 - 1/((d-1) x_n): the coefficient dynamics of the
/// tower for a = (0,1,...,1) in R^d.  A zero value is the obstruction the
/// recurrence is designed to rule out for d >= 5.
struct DepthSequence {
    int d = 0;
    std::vector<Rational> values; // x_1 .. x_N
};

DepthSequence depth_sequence(int d, long steps);

/// Fixed points x_- <= x_+ of the recurrence, exact; defined for d >= 5
/// (equal at d = 5).
struct RecurrenceFixedPoints {
    QuadExt lo, hi;
};

RecurrenceFixedPoints fixed_points_x(int d);

} // namespace cfx
