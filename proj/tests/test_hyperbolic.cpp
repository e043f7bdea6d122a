#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cfx/hyperbolic.hpp"

using namespace cfx;

namespace {

Point pt(const Space& sp, std::vector<Rational> coords) {
    std::vector<QuadExt> c;
    for (auto& r : coords) c.emplace_back(r);
    return sp.make_point(std::move(c));
}

Rational rr(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-30, 30);
    std::uniform_int_distribution<int> den(1, 9);
    return {num(rng), den(rng)};
}

} // namespace

TEST_CASE("horoheight laws") {
    Space heis = Space::heisenberg();
    UpperHalfPoint x{pt(heis, {Rational(1, 3), Rational(1, 5), Rational(2, 7)}), QuadExt(Rational(3, 4))};
    CHECK(horoheight(x) == QuadExt(Rational(3, 4)));
    // translations keep the height coordinate by definition of the model;
    // dilations square the factor
    Space r3 = Space::r3();
    UpperHalfPoint y{pt(r3, {1, 2, 3}), QuadExt(2)};
    QuadExt r(Rational(3, 2));
    UpperHalfPoint dil{r3.dilate(y.p, r), y.s * r * r};
    CHECK(horoheight(dil) == QuadExt(Rational(9, 2)));
}

TEST_CASE("horoball inversion height") {
    Space nr = Space::real(true);
    // |base| = 1/2, h = 1 -> h' = 2 (fourth powers: 1 / (1/16) = 16)
    Height4 h{QuadExt(1)};
    Height4 h2 = horoball_invert_height(nr, pt(nr, {Rational(1, 2)}), h);
    CHECK(h2.fourth == QuadExt(16));
    Height4 h3 = horoball_invert_height(nr, pt(nr, {1}), h);
    CHECK(h3.fourth == QuadExt(1));
    CHECK_THROWS_AS(horoball_invert_height(nr, nr.zero(), h), domain_error);
}

TEST_CASE("track_horoball on 1/3: strict doubling") {
    Space nr = Space::real(true);
    HoroballTrace t = track_horoball(nr, pt(nr, {Rational(1, 3)}), 1);
    CHECK(t.finite);
    CHECK(t.certificate_ok);
    CHECK(t.steps.size() >= 1);
    // each inversion multiplies the height by at least rad(K)^{-1} = 2:
    // height4 grows by >= 16 per step
    QuadExt prev(1);
    for (const auto& s : t.steps) {
        CHECK(s.height4 >= prev * QuadExt(16));
        prev = s.height4;
    }
}

TEST_CASE("track_horoball edge cases") {
    Space nr = Space::real(true);
    HoroballTrace t0 = track_horoball(nr, nr.zero(), 1);
    CHECK(t0.finite);
    CHECK(t0.steps.empty());
    QuadExt irr = QuadExt::sqrt_of(2);
    CHECK_THROWS_AS(track_horoball(nr, nr.make_point({irr}), 1), domain_error);

    Space cx = Space::complex(1);
    HoroballTrace tc = track_horoball(cx, pt(cx, {Rational(1, 3), Rational(1, 5)}), 1);
    CHECK(tc.finite);
    CHECK(tc.certificate_ok);

    Space heis = Space::heisenberg();
    HoroballTrace th = track_horoball(heis, pt(heis, {Rational(1, 3), Rational(1, 5), Rational(1, 7)}), 1, 4000);
    if (th.finite) CHECK(th.certificate_ok);
}

TEST_CASE("certificate bound across random rationals") {
    std::mt19937_64 rng(3);
    std::vector<Space> spaces = {Space::real(true), Space::complex(1), Space::r3()};
    for (const Space& sp : spaces) {
        Rational rad4 = sp.rad4();
        for (int i = 0; i < 60; ++i) {
            std::vector<QuadExt> c;
            for (int k = 0; k < sp.dim(); ++k) c.emplace_back(rr(rng));
            HoroballTrace t = track_horoball(sp, sp.make_point(c), 1);
            REQUIRE(t.finite);
            REQUIRE(t.certificate_ok);
            // height4 after i steps is at least rad4^{-i}
            QuadExt bound(1);
            for (const auto& s : t.steps) {
                bound = bound / QuadExt(rad4);
                CHECK(s.height4 >= bound);
            }
        }
    }
}

TEST_CASE("extended inversion is involutive and scales the gauge") {
    std::mt19937_64 rng(7);
    std::vector<Space> spaces = {Space::real(true), Space::real(false), Space::complex(1),
                                 Space::r3(), Space::r4_hurwitz(), Space::heisenberg()};
    for (const Space& sp : spaces) {
        for (int i = 0; i < 150; ++i) {
            std::vector<QuadExt> c;
            for (int k = 0; k < sp.dim(); ++k) c.emplace_back(rr(rng));
            Rational s = abs(rr(rng)) + Rational(1, 5);
            UpperHalfPoint x{sp.make_point(c), QuadExt(s)};
            UpperHalfPoint ix = extended_invert(sp, x);
            CHECK(ix.s.sign() > 0);
            // involution, exactly
            UpperHalfPoint back = extended_invert(sp, ix);
            CHECK(back.p == x.p);
            CHECK(back.s == x.s);
            // |i(x)| = |x|^{-1} on the extended gauge
            CHECK(upper_gauge4(sp, ix) * upper_gauge4(sp, x) == QuadExt(1));
        }
    }
}

TEST_CASE("extended inversion fixes the unit axis point and matches the boundary limit") {
    Space nr = Space::real(true);
    UpperHalfPoint axis{nr.zero(), QuadExt(1)};
    UpperHalfPoint img = extended_invert(nr, axis);
    CHECK(img.p == nr.zero());
    CHECK(img.s == QuadExt(1));

    // boundary limit: s = 1e-8 reproduces the boundary inversion to 1e-6
    std::mt19937_64 rng(11);
    std::vector<Space> spaces = {Space::real(true), Space::complex(1), Space::r3(),
                                 Space::heisenberg()};
    for (const Space& sp : spaces) {
        for (int i = 0; i < 50; ++i) {
            std::vector<QuadExt> c;
            for (int k = 0; k < sp.dim(); ++k) c.emplace_back(rr(rng));
            Point p = sp.make_point(c);
            // stay away from the inversion pole, where the limit is slower
            if (sp.gauge4(p) < QuadExt(Rational(1, 16))) continue;
            UpperHalfPoint x{p, QuadExt(Rational(1, 100000000))};
            UpperHalfPoint ix = extended_invert(sp, x);
            Point bp = sp.invert(p);
            for (int k = 0; k < sp.dim(); ++k)
                CHECK(std::abs(ix.p.x[k].approx() - bp.x[k].approx()) < 1e-6);
        }
    }
}

TEST_CASE("widely-spaced predicate") {
    Space nr = Space::real(true);
    Rational rad4 = nr.rad4(); // (1/2)^4
    CHECK(is_widely_spaced(nr, nr.zero(), std::nullopt, rad4)); // (0, infinity)
    CHECK(is_widely_spaced(nr, pt(nr, {Rational(1, 4)}), pt(nr, {Rational(3, 2)}), rad4));
    CHECK_FALSE(is_widely_spaced(nr, pt(nr, {Rational(1, 4)}), pt(nr, {Rational(5, 4)}), rad4));
    CHECK_FALSE(is_widely_spaced(nr, pt(nr, {Rational(3, 4)}), std::nullopt, rad4));
}

TEST_CASE("goalpost region") {
    Space nr = Space::real(true);
    CHECK(in_goalpost_region(nr, {nr.zero(), QuadExt(2)}));
    CHECK_FALSE(in_goalpost_region(nr, {nr.zero(), QuadExt(Rational(1, 2))}));
    // p outside K fails regardless of the height
    CHECK_FALSE(in_goalpost_region(nr, {pt(nr, {Rational(3, 4)}), QuadExt(100)}));
}

TEST_CASE("geodesic heights: axis, worked example, constant") {
    // (0, infinity): crossing at height 1
    auto h0 = geodesic_sphere_height_real(0.0, std::nullopt);
    REQUIRE(h0.has_value());
    CHECK(*h0 == doctest::Approx(1.0));
    // (0, 2): crossing height sqrt(3)/2
    auto h1 = geodesic_sphere_height_real(0.0, 2.0);
    REQUIRE(h1.has_value());
    CHECK(*h1 == doctest::Approx(std::sqrt(3.0) / 2));
    // both endpoints inside: no crossing
    CHECK_FALSE(geodesic_sphere_height_real(0.1, 0.5).has_value());

    double C = std::sqrt(3.0 * (9.0 - 4.0 * std::sqrt(2.0))) / 7.0;
    GeodesicMinHeight g = geodesic_sphere_min_height(Space::real(true), 0.5, std::sqrt(2.0), 200);
    CHECK(std::abs(g.min_height - C) < 1e-3);
    // argmin sits at the same-side corner (|a| = 1/2, |b| = sqrt 2)
    REQUIRE(g.argmin_a.size() == 1);
    CHECK(std::abs(std::abs(g.argmin_a[0]) - 0.5) < 1e-9);
    CHECK(std::abs(std::abs(g.argmin_b[0]) - std::sqrt(2.0)) < 1e-9);
    CHECK(g.argmin_a[0] * g.argmin_b[0] > 0);

    // monotonicity: shrinking eps or growing eps' never lowers the minimum
    GeodesicMinHeight tighter = geodesic_sphere_min_height(Space::real(true), 0.4, 1.6, 200);
    CHECK(tighter.min_height >= g.min_height - 1e-12);

    // complex model reproduces the same constant (collinear extremals)
    GeodesicMinHeight gc = geodesic_sphere_min_height(Space::complex(1), 0.5, std::sqrt(2.0), 320);
    CHECK(std::abs(gc.min_height - C) < 5e-3);
}

TEST_CASE("geodesic input validation") {
    CHECK_THROWS_AS(geodesic_sphere_min_height(Space::real(true), 1.5, 2.0, 100), domain_error);
    CHECK_THROWS_AS(geodesic_sphere_min_height(Space::r3(), 0.5, 1.5, 100), domain_error);
}
