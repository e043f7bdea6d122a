#pragma once

#include <string>
#include <vector>

#include "cfx/clifford.hpp"
#include "cfx/gaussian.hpp"
#include "cfx/quadext.hpp"

namespace cfx {

/// The supported inversion spaces.  Real comes in two flavours because the
/// classical expansions differ: the regular one (digits by floor, x -> 1/x)
/// and the nearest-integer one (x -> -1/x), which is the proper variant.
enum class SpaceKind {
    real_regular,
    real_nearest,
    complex_plane, // lattice Z[i*sqrt(d)]
    r3,            // lattice Z^3
    r4_hurwitz,    // Hurwitz lattice Z^4 + h Z^4
    heisenberg,    // integer Heisenberg lattice
};

/// Ambient point with exact coordinates.  Coordinate semantics by space:
///   real: (x); complex: (re, im); r3/r4: cartesian; heisenberg: (x, y, t)
/// where z = x + iy.
struct Point {
    std::vector<QuadExt> x;

    bool is_zero() const;
    bool operator==(const Point& o) const { return x == o.x; }
    static bool key_less(const Point& p, const Point& q);
};

/// Element of the digit lattice in abstract lattice coordinates: integers
/// for Z^m and the Heisenberg lattice, possibly half-integers for Hurwitz,
/// (a, b) meaning a + b*i*sqrt(d) for the complex lattices.
struct LatticeElem {
    std::vector<Rational> g;

    bool is_zero() const;
    bool operator==(const LatticeElem& o) const { return g == o.g; }
};

struct GaugeNorm {
    QuadExt fourth_power; // exact; comparisons happen here
    double value;         // evaluated root, for display
};

struct PropernessReport {
    Rational rad4;  // exact fourth power of rad(K)
    double radius;  // evaluated root
    bool proper;    // rad(K) < 1
    std::string warning;
};

class Space {
public:
    static Space real(bool nearest = true, const Int& scale = 1);
    static Space complex(const Int& imag_d = 1);
    static Space r3();
    static Space r4_hurwitz();
    static Space heisenberg();
    /// Vector model on R^m over Z^m with an explicit inversion sign pattern
    /// (+1/-1 per coordinate); used for the reciprocal-tower identities.
    static Space vector_model(int dim, std::vector<int> signs);

    SpaceKind kind() const { return kind_; }
    int dim() const { return dim_; }
    const Int& imag_d() const { return imag_d_; }
    /// Inversion sign pattern of the vector models; empty for Heisenberg.
    const std::vector<int>& inversion_signs() const { return signs_; }
    const Int& lattice_scale() const { return scale_; }

    /// Rank of the Clifford algebra A_{m-1} whose matrices encode this
    /// space's modular group; -1 where no such encoding is provided.
    int matrix_rank() const;
    /// Pseudo-determinant of the inversion matrix: +1 or -1.
    int inversion_det() const;

    Point zero() const;
    Point make_point(std::vector<QuadExt> coords) const;

    GaugeNorm gauge_norm(const Point& p) const;
    QuadExt gauge4(const Point& p) const;

    /// Left-invariant (Cygan) distance; exact on fourth powers.
    GaugeNorm cygan_dist(const Point& p, const Point& q) const;
    QuadExt cygan_dist4(const Point& p, const Point& q) const;

    /// Heisenberg group product (z,t)*(z',t'); errors on other spaces.
    Point heisenberg_mul(const Point& p, const Point& q) const;
    Point heisenberg_inv(const Point& p) const;

    /// The space's continued-fraction inversion (Koranyi inversion composed
    /// with the space's sign pattern).  p must be nonzero.
    Point invert(const Point& p) const;

    /// The unique lattice element g with g^{-1} p in K (half-open boxes,
    /// lower-closed; Hurwitz ties go to the integer coset).
    LatticeElem round_to_lattice(const Point& p) const;

    bool in_domain(const Point& p) const { return round_to_lattice(p).is_zero(); }

    /// Ambient point of a lattice element.
    Point lattice_point(const LatticeElem& g) const;

    /// g^{-1} . p (difference in vector models, group product on Heisenberg).
    Point translate_inv(const LatticeElem& g, const Point& p) const;
    /// g . p
    Point translate(const LatticeElem& g, const Point& p) const;

    Point dilate(const Point& p, const QuadExt& r) const;

    PropernessReport is_proper() const;
    Rational rad4() const;

    /// Lattice digit as a grade <= 1 Clifford element (vector spaces only).
    CliffordElement lattice_to_clifford(const LatticeElem& g) const;
    LatticeElem clifford_to_lattice(const CliffordElement& v) const;
    Point clifford_to_point(const CliffordElement& v) const;
    CliffordElement point_to_clifford(const Point& p) const;

    std::string point_to_string(const Point& p) const;
    Point parse_point(const std::string& text) const;
    std::string lattice_to_string(const LatticeElem& g) const;
    LatticeElem parse_lattice(const std::string& text) const;

    std::string name() const;

private:
    SpaceKind kind_ = SpaceKind::real_nearest;
    int dim_ = 1;
    Int imag_d_ = 1;
    Int scale_ = 1;
    std::vector<int> signs_; // inversion sign pattern for vector models

    QuadExt norm2(const Point& p) const; // sum of coordinate squares (vector models)
};

} // namespace cfx
