#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <vector>

#include "cfx/clifford_matrix.hpp"

using namespace cfx;

namespace {

// Independent blade-product oracle for the tests: multiplies generator
// symbol lists and bubble-sorts them with explicit sign bookkeeping, with no
// shared code with the library's bitmask implementation.
struct OracleElem {
    // coefficient per sorted generator list, keyed by the list itself
    std::map<std::vector<int>, Rational> terms;
};

OracleElem oracle_mul(const OracleElem& x, const OracleElem& y) {
    OracleElem out;
    for (const auto& [lx, cx] : x.terms) {
        for (const auto& [ly, cy] : y.terms) {
            std::vector<int> word = lx;
            word.insert(word.end(), ly.begin(), ly.end());
            int sign = 1;
            // bubble sort adjacent generators; each swap flips the sign,
            // each equal adjacent pair contracts to -1
            bool changed = true;
            while (changed) {
                changed = false;
                for (size_t i = 0; i + 1 < word.size(); ++i) {
                    if (word[i] == word[i + 1]) {
                        sign = -sign;
                        word.erase(word.begin() + static_cast<long>(i), word.begin() + static_cast<long>(i) + 2);
                        changed = true;
                        break;
                    }
                    if (word[i] > word[i + 1]) {
                        std::swap(word[i], word[i + 1]);
                        sign = -sign;
                        changed = true;
                        break;
                    }
                }
            }
            out.terms[word] += Rational(sign) * cx * cy;
        }
    }
    return out;
}

OracleElem oracle_of(const CliffordElement& x) {
    OracleElem out;
    for (int b = 0; b < x.blade_count(); ++b) {
        if (x.coeff(b).is_zero()) continue;
        REQUIRE(x.coeff(b).is_rational());
        std::vector<int> word;
        for (int i = 0; i < 3; ++i)
            if (b & (1 << i)) word.push_back(i + 1);
        out.terms[word] = x.coeff(b).a();
    }
    return out;
}

bool oracle_equal(const OracleElem& o, const CliffordElement& x) {
    OracleElem expect = oracle_of(x);
    auto cleaned = [](const OracleElem& e) {
        std::map<std::vector<int>, Rational> t;
        for (const auto& [k, v] : e.terms)
            if (v != 0) t[k] = v;
        return t;
    };
    return cleaned(o) == cleaned(expect);
}

CliffordElement rand_elem(std::mt19937_64& rng, int rank, int bound) {
    std::uniform_int_distribution<int> c(-bound, bound);
    CliffordElement e(rank);
    for (int b = 0; b < (1 << rank); ++b) e.set_coeff(b, QuadExt(Rational(c(rng))));
    return e;
}

} // namespace

TEST_CASE("generator relations hold on all basis blades") {
    for (int rank = 1; rank <= 3; ++rank) {
        for (int i = 0; i < rank; ++i) {
            CliffordElement ei = CliffordElement::basis(rank, 1u << i);
            CHECK(ei * ei == CliffordElement(rank, QuadExt(-1)));
            for (int j = 0; j < rank; ++j) {
                if (i == j) continue;
                CliffordElement ej = CliffordElement::basis(rank, 1u << j);
                CHECK(ei * ej == -(ej * ei));
            }
        }
        // full blade table against the independent oracle
        std::mt19937_64 rng(17);
        for (int rep = 0; rep < 200; ++rep) {
            CliffordElement x = rand_elem(rng, rank, 5);
            CliffordElement y = rand_elem(rng, rank, 5);
            CHECK(oracle_equal(oracle_mul(oracle_of(x), oracle_of(y)), x * y));
        }
    }
}

TEST_CASE("basis product and the quaternion identification") {
    CliffordElement e1 = CliffordElement::basis(2, 1);
    CliffordElement e2 = CliffordElement::basis(2, 2);
    CHECK(e1 * e2 == CliffordElement::basis(2, 3));
    // A_2 is the quaternions with i=e1, j=e2, k=e1e2: check the 16 products
    CliffordElement one(2, QuadExt(1));
    CliffordElement i = e1, j = e2, k = e1 * e2;
    CHECK(i * i == -one);
    CHECK(j * j == -one);
    CHECK(k * k == -one);
    CHECK(i * j == k);
    CHECK(j * i == -k);
    CHECK(j * k == i);
    CHECK(k * j == -i);
    CHECK(k * i == j);
    CHECK(i * k == -j);
    CHECK(one * i == i);
    CHECK(i * one == i);
}

TEST_CASE("(i+j)^2 = -2") {
    CliffordElement p = CliffordElement::basis(2, 1) + CliffordElement::basis(2, 2);
    CHECK(p * p == CliffordElement(2, QuadExt(-2)));
    // and 1/p = -p/2
    CHECK(p.inverse() == p.scaled(QuadExt(Rational(-1, 2))));
}

TEST_CASE("h * h = h - 1 in the rank-3 algebra") {
    CliffordElement h = hurwitz_h();
    CliffordElement expected = h - CliffordElement(3, QuadExt(1));
    CHECK(h * h == expected);
    // independent oracle route
    CHECK(oracle_equal(oracle_mul(oracle_of(h.scaled(QuadExt(2))), oracle_of(h.scaled(QuadExt(2)))),
                       (h * h).scaled(QuadExt(4))));
}

TEST_CASE("involution, reversion, conjugate") {
    CliffordElement e12 = CliffordElement::basis(2, 3);
    CHECK(e12.involution() == e12);
    CHECK(e12.reversion() == -e12);
    // conjugate of a vector negates the generators, so v * conj(v) is |v|^2
    CliffordElement v = CliffordElement::vector(
        2, {QuadExt(1), QuadExt(Rational(1, 2)), QuadExt(0)});
    CHECK((v * v.conjugate()).is_scalar());
    CHECK(v.norm_sq() == QuadExt(Rational(5, 4)));
    // reversion is an anti-automorphism on random pairs
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 300; ++rep) {
        CliffordElement x = rand_elem(rng, 3, 4);
        CliffordElement y = rand_elem(rng, 3, 4);
        CHECK((x * y).reversion() == y.reversion() * x.reversion());
        CHECK((x * y).involution() == x.involution() * y.involution());
    }
}

TEST_CASE("norms: multiplicative on vectors, NotScalarNorm otherwise") {
    CHECK(CliffordElement::basis(3, 1).norm_sq() == QuadExt(1));
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> c(-6, 6);
    for (int rep = 0; rep < 300; ++rep) {
        CliffordElement p = CliffordElement::vector(
            3, {QuadExt(c(rng)), QuadExt(c(rng)), QuadExt(c(rng)), QuadExt(c(rng))});
        CliffordElement q = CliffordElement::vector(
            3, {QuadExt(c(rng)), QuadExt(c(rng)), QuadExt(c(rng)), QuadExt(c(rng))});
        if (p.is_zero() || q.is_zero()) continue;
        CHECK((p * q).norm_sq() == p.norm_sq() * q.norm_sq());
        CHECK(p.inverse() * p == CliffordElement(3, QuadExt(1)));
    }
    // 1 + e1e2e3 squares to 2 + 2 e1e2e3, so its norm is not scalar
    CliffordElement bad = CliffordElement(3, QuadExt(1)) + CliffordElement::basis(3, 7);
    CHECK_THROWS_AS(bad.norm_sq(), domain_error);
}

TEST_CASE("matrix validation") {
    CliffordMatrix S = CliffordMatrix::inversion(2);
    CHECK(cm_validate(S).valid());
    CHECK(cm_validate(S).proved());

    CliffordElement a = CliffordElement::vector(2, {QuadExt(1), QuadExt(2), QuadExt(0)});
    CHECK(cm_validate(CliffordMatrix::translation(a)).proved());

    // [[1, e1e2], [0, 1]] fails: b^-1 a = (e1e2)^-1 is not a vector
    CliffordMatrix bad{CliffordElement(2, QuadExt(1)), CliffordElement::basis(2, 3),
                       CliffordElement(2), CliffordElement(2, QuadExt(1))};
    CHECK_FALSE(cm_validate(bad).valid());

    // pseudo-determinant failure
    CliffordMatrix det2{CliffordElement(2, QuadExt(2)), CliffordElement(2),
                        CliffordElement(2), CliffordElement(2, QuadExt(1))};
    CHECK_FALSE(cm_validate(det2).valid());
}

TEST_CASE("matrix group operations") {
    CliffordMatrix S = CliffordMatrix::inversion(2);
    CliffordMatrix S2 = S * S;
    CHECK(S2.a == CliffordElement(2, QuadExt(-1)));
    CHECK(S2.d == CliffordElement(2, QuadExt(-1)));
    CHECK(S2.b.is_zero());
    CHECK(S2.c.is_zero());

    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int rep = 0; rep < 100; ++rep) {
        // random generator word, then product times reversed-inverse word
        std::vector<CliffordMatrix> gens;
        CliffordMatrix m = CliffordMatrix::identity(2);
        for (int i = 0; i < 6; ++i) {
            CliffordMatrix g = (c(rng) % 2 == 0)
                                   ? S
                                   : CliffordMatrix::translation(CliffordElement::vector(
                                         2, {QuadExt(c(rng)), QuadExt(c(rng)), QuadExt(c(rng))}));
            gens.push_back(g);
            m = m * g;
        }
        CliffordMatrix inv = CliffordMatrix::identity(2);
        for (auto it = gens.rbegin(); it != gens.rend(); ++it) inv = inv * it->inverse();
        CHECK((m * inv).is_identity());
        CHECK(m.inverse() * m == CliffordMatrix::identity(2));
        CliffordElement det = m.pseudo_det();
        CHECK(det == CliffordElement(2, QuadExt(1)));
    }
}

TEST_CASE("Moebius action basics") {
    CliffordMatrix S = CliffordMatrix::inversion(2);
    CliffordElement v = CliffordElement::vector(
        2, {QuadExt(Rational(1, 3)), QuadExt(Rational(2, 5)), QuadExt(0)});
    MobiusPoint img = mobius_apply(S, MobiusPoint::of(v));
    CHECK_FALSE(img.is_infinity());
    CHECK(*img.v == -(v.inverse()));

    CliffordElement t = CliffordElement::vector(2, {QuadExt(1), QuadExt(1), QuadExt(0)});
    CHECK(mobius_apply(CliffordMatrix::translation(t), MobiusPoint::infinity()).is_infinity());
    // pole goes to infinity
    CHECK(mobius_apply(S, MobiusPoint::of(CliffordElement(2))).is_infinity());
}

TEST_CASE("loxodromic example fixes its fixed point") {
    CliffordMatrix m = parse_matrix("[[1,(i+j)/2],[-2i-2j,3]]", 2);
    CHECK(cm_validate(m).valid());
    QuadExt beta = (QuadExt(-1) + QuadExt::sqrt_of(3)) / QuadExt(4);
    CliffordElement x = CliffordElement::vector(2, {QuadExt(0), beta, beta});
    MobiusPoint img = mobius_apply(m, MobiusPoint::of(x));
    REQUIRE_FALSE(img.is_infinity());
    CHECK(*img.v == x);
}

TEST_CASE("six-factor identity with a = b = 1") {
    // Inv T(-1) Inv T(-1) Inv T(-1) = diag(1, 1)
    CliffordMatrix S = CliffordMatrix::inversion(2);
    CliffordElement one_v = CliffordElement::vector(2, {QuadExt(-1), QuadExt(0), QuadExt(0)});
    CliffordMatrix T = CliffordMatrix::translation(one_v);
    CliffordMatrix prod = S * T * S * T * S * T;
    CHECK(prod.is_identity());
}

TEST_CASE("action is compositional including infinity") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> c(-3, 3);
    CliffordMatrix S = CliffordMatrix::inversion(2);
    for (int rep = 0; rep < 200; ++rep) {
        auto word = [&] {
            CliffordMatrix m = CliffordMatrix::identity(2);
            for (int i = 0; i < 4; ++i) {
                if (c(rng) % 2 == 0)
                    m = m * S;
                else
                    m = m * CliffordMatrix::translation(CliffordElement::vector(
                                2, {QuadExt(c(rng)), QuadExt(c(rng)), QuadExt(c(rng))}));
            }
            return m;
        };
        CliffordMatrix m1 = word(), m2 = word();
        MobiusPoint x = (rep % 8 == 0)
                            ? MobiusPoint::infinity()
                            : MobiusPoint::of(CliffordElement::vector(
                                  2, {QuadExt(Rational(c(rng), 7)), QuadExt(Rational(c(rng), 5)),
                                      QuadExt(Rational(c(rng), 3))}));
        MobiusPoint lhs = mobius_apply(m1 * m2, x);
        MobiusPoint rhs = mobius_apply(m1, mobius_apply(m2, x));
        CHECK(lhs.is_infinity() == rhs.is_infinity());
        if (!lhs.is_infinity()) CHECK(*lhs.v == *rhs.v);
    }
}

TEST_CASE("blade text round-trips") {
    CliffordMatrix m = parse_matrix("[[1,(i+j)/2],[-2i-2j,3]]", 2);
    CliffordMatrix again = parse_matrix(matrix_to_string(m, true), 2);
    CHECK(m == again);
    CliffordElement e = parse_clifford("1-2*e1+e1e2/2", 2);
    CHECK(parse_clifford(e.str(), 2) == e);
}
