#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfx/clifford.hpp"

namespace cfx {

/// A point of the extended vector space R^m united with infinity, the stage
/// for the fractional-linear action of Clifford matrices.
struct MobiusPoint {
    std::optional<CliffordElement> v; // nullopt = infinity

    static MobiusPoint infinity() { return {std::nullopt}; }
    static MobiusPoint of(const CliffordElement& x) { return {x}; }
    bool is_infinity() const { return !v.has_value(); }
};

/// 2x2 matrix over A_n.  Validity means the Vahlen conditions: entries in
/// the Clifford group (or zero), pseudo-determinant a d* - b c* = 1, and the
/// ratio conditions making the Moebius action well defined.
struct CliffordMatrix {
    CliffordElement a, b, c, d;

    static CliffordMatrix identity(int rank);
    /// [[0,-1],[1,0]]: x -> -1/x.
    static CliffordMatrix inversion(int rank);
    /// [[1,t],[0,1]]: x -> x + t.
    static CliffordMatrix translation(const CliffordElement& t);

    int rank() const { return a.rank(); }
    CliffordElement pseudo_det() const; // a d* - b c*
    bool is_identity() const;

    CliffordMatrix operator*(const CliffordMatrix& o) const;
    bool operator==(const CliffordMatrix& o) const;

    /// Inverse of a Vahlen matrix: [[d*, -b*], [-c*, a*]].
    CliffordMatrix inverse() const;

    std::string str(bool quaternion_names = false) const;
};

/// Confidence levels for the Clifford-group membership test.  Membership in
/// the group generated by nonzero vectors is hard to decide in general; a
/// monomial (scalar times a single blade) factors explicitly, anything else
/// gets the scalar-norm test plus a randomized vector-sandwich test.
enum class MembershipStatus { proved, semidecided, failed, zero };

struct EntryReport {
    MembershipStatus status;
    std::string detail;
};

struct ValidationReport {
    bool pseudo_det_ok = false;
    bool ratios_ok = false;
    std::array<EntryReport, 4> entries{};
    std::string failure; // empty when valid

    bool valid() const { return failure.empty(); }
    /// True when every entry is proved (not merely semidecided).
    bool proved() const;
};

MembershipStatus clifford_group_membership(const CliffordElement& x, unsigned seed,
                                           int samples, std::string* detail);

ValidationReport cm_validate(const CliffordMatrix& m, unsigned seed = 12345);

/// Fractional-linear action (a x + b)(c x + d)^{-1} on R^m plus infinity.
/// A non-vector value signals an invalid matrix that slipped through the
/// membership semidecision.
MobiusPoint mobius_apply(const CliffordMatrix& m, const MobiusPoint& x);

/// Serialize as "[[a,b],[c,d]]" and back; entries use blade syntax.
std::string matrix_to_string(const CliffordMatrix& m, bool quaternion_names = false);
CliffordMatrix parse_matrix(const std::string& text, int rank);

} // namespace cfx
