#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cfx/cf.hpp"
#include "cfx/identities.hpp"

using namespace cfx;

TEST_CASE("depth identities are exactly zero for d = 2, 3, 4") {
    for (int d : {2, 3, 4}) {
        DepthIdentityRecord rec = check_depth_identity(d);
        CHECK(rec.all_zero);
        CHECK(rec.witness.empty());
    }
    CHECK(check_depth_identity(2).variants_checked == 2);
    CHECK(check_depth_identity(3).variants_checked == 8);   // 2^2 * 2!
    CHECK(check_depth_identity(4).variants_checked == 48);  // 2^3 * 3!
}

TEST_CASE("the worked instances") {
    // d=2, a=i: i + 1/i = 0
    CliffordElement a2 = CliffordElement::vector(1, {QuadExt(0), QuadExt(1)});
    CHECK(depth_tower_value(a2, 1).is_zero());
    // d=3, p = i+j: p + 1/(p + 1/p) = 0
    CliffordElement p = CliffordElement::vector(2, {QuadExt(0), QuadExt(1), QuadExt(1)});
    CHECK(depth_tower_value(p, 2).is_zero());
    // d=4, q = i+j+k: depth 4
    CliffordElement q =
        CliffordElement::vector(3, {QuadExt(0), QuadExt(1), QuadExt(1), QuadExt(1)});
    CHECK(depth_tower_value(q, 4).is_zero());
    // the shorter towers do NOT vanish
    CHECK_FALSE(depth_tower_value(q, 2).is_zero());
    CHECK_FALSE(depth_tower_value(p, 1).is_zero());
}

TEST_CASE("d=5 closed form (n+1)/(2n)") {
    DepthSequence s = depth_sequence(5, 100);
    for (long n = 1; n <= 100; ++n) CHECK(s.values[n - 1] == Rational(n + 1, 2 * n));
}

TEST_CASE("d=6 first step and fixed points") {
    DepthSequence s = depth_sequence(6, 2);
    CHECK(s.values[1] == Rational(4, 5));
    RecurrenceFixedPoints fx = fixed_points_x(6);
    // (1 +- sqrt(1/5))/2 = 1/2 +- sqrt(5)/10
    CHECK(fx.hi == QuadExt(Rational(1, 2)) + QuadExt::sqrt_of(Rational(1, 5)) / QuadExt(2));
    CHECK(fx.lo + fx.hi == QuadExt(1));
    // the recurrence fixes both points exactly
    for (const QuadExt& x : {fx.lo, fx.hi}) {
        QuadExt next = QuadExt(1) - (QuadExt(5) * x).inverse();
        CHECK(next == x);
    }
    CHECK_THROWS_AS(fixed_points_x(4), domain_error);
    RecurrenceFixedPoints f5 = fixed_points_x(5);
    CHECK(f5.lo == QuadExt(Rational(1, 2)));
    CHECK(f5.hi == QuadExt(Rational(1, 2)));
}

TEST_CASE("orbit trapping for d in 6..12") {
    // The orbit from x_1 = 1 decreases strictly toward x_+ and never leaves
    // (x_+, 1], so it never vanishes.  (The stronger containment in
    // [x_-, x_+] is checked - and honestly fails - in the acceptance suite.)
    for (int d = 6; d <= 12; ++d) {
        DepthSequence s = depth_sequence(d, 1000);
        RecurrenceFixedPoints fx = fixed_points_x(d);
        QuadExt prev(2);
        for (const Rational& v : s.values) {
            CHECK(v != 0);
            QuadExt x{v};
            CHECK(x > fx.hi);
            CHECK(x <= QuadExt(1));
            CHECK(x < prev);
            prev = x;
        }
    }
}

TEST_CASE("consistency with the expansion evaluator") {
    // evaluating [a, ..., a] through the generic machinery with the
    // reciprocal sign pattern matches the recurrence exactly
    for (int d : {3, 4}) {
        std::vector<int> signs(d, -1);
        signs[0] = +1; // reciprocal: conj(x)/|x|^2
        Space sp = Space::vector_model(d, signs);
        std::vector<Rational> ones(d, 1);
        ones[0] = 0;
        LatticeElem a{ones};
        int depth = d == 3 ? 2 : 4;
        std::vector<LatticeElem> digits(depth, a);
        // a + value([a,...,a]) = 0, with the tower evaluated inversion-first
        EvalResult v = evaluate(sp, digits, false, 0);
        REQUIRE(v.exact.has_value());
        Point expect = sp.lattice_point(a);
        for (int k = 0; k < d; ++k) CHECK(v.exact->x[k] == -expect.x[k]);
    }
    // and the recurrence value matches the tower coefficient for d = 5
    CliffordElement a5 =
        CliffordElement::vector(3, {QuadExt(0), QuadExt(1), QuadExt(1), QuadExt(1)});
    (void)a5; // d = 5 lives outside the rank <= 3 algebras; recurrence only
}

TEST_CASE("zero detection and argument guards") {
    CHECK_THROWS_AS(depth_sequence(4, 10), domain_error);  // below threshold
    CHECK_THROWS_AS(depth_sequence(5, 0), domain_error);
    CHECK_THROWS_AS(check_depth_identity(5), domain_error);
}
