#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cfx/cf.hpp"
#include "cfx/spaces.hpp"

namespace cfx {

/// Point of the upper half-space model X x R_+; s is the horoheight from
/// infinity (for the real model this is the square of the Poincare height).
struct UpperHalfPoint {
    Point p;
    QuadExt s; // > 0
};

inline const QuadExt& horoheight(const UpperHalfPoint& x) { return x.s; }

/// Exact height carried as its fourth power (heights transform by gauge
/// factors, which are only rational at fourth powers).
struct Height4 {
    QuadExt fourth;
    double approx() const;
};

/// Height of the inverted horoball: ht(i(B)) = ht(B)/|base|, computed on
/// exact fourth powers.
Height4 horoball_invert_height(const Space& space, const Point& base, const Height4& h);

struct HoroballStep {
    LatticeElem digit;
    QuadExt state_gauge4;  // gauge^4 of the state that was inverted
    QuadExt height4;       // horoball height^4 after this inversion
    bool multiplier_ok;    // height gain >= rad(K)^{-1}, exactly
};

struct HoroballTrace {
    std::vector<HoroballStep> steps;
    bool finite = false;        // reached 0 within budget
    bool certificate_ok = true; // every multiplier bounded below by 1/rad(K)
    QuadExt final_height4;
    long iterations = 0;
};

/// Runs the Gauss map on a rational point, tracking the horoball height; the
/// strictly increasing height sequence is the termination certificate for
/// finite expansions.  Errors with NotRational on irrational coordinates.
HoroballTrace track_horoball(const Space& space, const Point& x, const Rational& h0,
                             long max_iter = kDefaultMaxIter);

/// The order-two extended Koranyi inversion on the upper half-space,
/// composed with the space's boundary sign pattern so that the s -> 0 limit
/// is exactly the space's inversion.
UpperHalfPoint extended_invert(const Space& space, const UpperHalfPoint& x);

/// Extended gauge (fourth power) of an upper-half-space point: the Cygan
/// distance to the origin (0, 0).
QuadExt upper_gauge4(const Space& space, const UpperHalfPoint& x);

/// |a| < rad(K) and |b| > rad(K)^{-1/2}, evaluated exactly on fourth powers;
/// infinity counts as arbitrarily large.
bool is_widely_spaced(const Space& space, const std::optional<Point>& a,
                      const std::optional<Point>& b, const Rational& rad4);

/// p in K and Cygan distance from (p, s) to the origin at least 1.
bool in_goalpost_region(const Space& space, const UpperHalfPoint& x);

/// Height (Poincare coordinates) at which the geodesic with boundary
/// endpoints a, b crosses the unit gauge sphere; real model, b may be
/// infinity.  nullopt when the geodesic misses the sphere.
std::optional<double> geodesic_sphere_height_real(double a, std::optional<double> b);

/// Same for the complex model (planar endpoints).
std::optional<double> geodesic_sphere_height_complex(const std::array<double, 2>& a,
                                                     const std::array<double, 2>& b);

struct GeodesicMinHeight {
    double min_height = 0;
    std::vector<double> argmin_a, argmin_b;
    long pairs = 0;
    long missed = 0; // pairs whose geodesic missed the sphere (none expected)
};

/// Minimum crossing height over a closed grid of endpoint pairs with
/// |a| <= eps and eps_prime <= |b| <= eps_prime + 2.  The infimum over the
/// open configuration is attained on the closure, which the grid includes.
GeodesicMinHeight geodesic_sphere_min_height(const Space& space, double eps, double eps_prime,
                                             int grid);

} // namespace cfx
