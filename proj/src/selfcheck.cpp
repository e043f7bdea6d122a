#include "cfx/selfcheck.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "cfx/cf.hpp"
#include "cfx/hyperbolic.hpp"
#include "cfx/identities.hpp"
#include "cfx/modgroup.hpp"

namespace cfx {

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
};

LatticeElem lat(std::vector<Rational> v) { return {std::move(v)}; }

// --- criterion 1: complex expansion of sqrt(1+i) ---------------------------

void criterion_complex_surd(Check& c) {
    ComplexSurd z = cs_make({0, 0}, {1, 0}, GaussRational(1, 1), 1);
    Expansion e = expand_complex_surd(z);
    c.require(e.status == ExpStatus::periodic, "expansion not periodic");
    c.require(e.has_leading, "missing integer-part digit");
    c.require(e.preperiod == 1 && e.period == 2, "shape is not [1; period of 2]");
    if (e.digits.size() >= 3) {
        c.require(e.digits[0] == lat({1, 0}), "leading digit != 1");
        c.require(e.digits[1] == lat({0, -2}), "first period digit != -2i");
        c.require(e.digits[2] == lat({2, 0}), "second period digit != 2");
    } else {
        c.require(false, "too few digits");
    }
    if (!c.ok) return;

    Space cx = Space::complex(1);
    EvalResult v = evaluate(cx, e.digits, e.has_leading, e.period);
    c.require(v.surd.has_value(), "periodic evaluation left the exact tower");
    if (!v.surd) return;
    double x = v.approx[0], y = v.approx[1];
    double sq_re = x * x - y * y, sq_im = 2 * x * y;
    double err = std::hypot(sq_re - 1.0, sq_im - 1.0);
    c.require(err < 1e-12, "square of the value misses 1+i by " + std::to_string(err));
    if (v.surd->u.is_zero()) {
        // the value is v*sqrt(delta): its square is exactly v^2*delta
        GaussRational sq = g_mul(g_mul(v.surd->v, v.surd->v, 1), v.surd->delta, 1);
        c.require(sq.x == 1 && sq.y == 1, "exact square != 1+i");
    }
}

// --- criterion 2: the r3 periodic pair -------------------------------------

void criterion_r3_pair(Check& c) {
    Space r3 = Space::r3();
    QuadExt s3 = QuadExt::sqrt_of(3);

    QuadExt bp = (QuadExt(-1) + s3) / QuadExt(4);
    Point xp = r3.make_point({QuadExt(0), bp, bp});
    Expansion ep = expand(r3, xp);
    c.require(ep.status == ExpStatus::periodic && !ep.has_leading, "x+ expansion shape wrong");
    c.require(ep.preperiod == 1 && ep.period == 2, "x+ preperiod/period wrong");
    if (ep.digits.size() == 3) {
        c.require(ep.digits[0] == lat({0, 3, 3}), "x+ digit 1 != 3(i+j)");
        c.require(ep.digits[1] == lat({0, -2, -2}), "x+ digit 2 != -2(i+j)");
        c.require(ep.digits[2] == lat({0, 4, 4}), "x+ digit 3 != 4(i+j)");
    } else {
        c.require(false, "x+ digit count wrong");
    }
    EvalResult vp = evaluate(r3, ep);
    c.require(vp.exact.has_value() && *vp.exact == xp, "x+ round trip not exact");

    QuadExt bm = (QuadExt(-1) - s3) / QuadExt(4);
    Point xm = r3.make_point({QuadExt(0), bm, bm});
    Expansion em = expand(r3, xm);
    c.require(em.status == ExpStatus::periodic && !em.has_leading, "x- expansion shape wrong");
    c.require(em.preperiod == 1 && em.period == 2, "x- preperiod/period wrong");
    if (em.digits.size() == 3) {
        c.require(em.digits[0] == lat({0, -1, -1}), "x- digit 1 != -(i+j)");
        c.require(em.digits[1] == lat({0, 2, 2}), "x- digit 2 != 2(i+j)");
        c.require(em.digits[2] == lat({0, -4, -4}), "x- digit 3 != -4(i+j)");
    } else {
        c.require(false, "x- digit count wrong");
    }
    EvalResult vm = evaluate(r3, em);
    c.require(vm.exact.has_value() && *vm.exact == xm, "x- round trip not exact");
}

// --- criterion 3: quaternionic classification ------------------------------

void criterion_parker_short(Check& c) {
    auto cls = [&](const std::string& text) {
        return classify_quaternionic(parse_matrix(text, 2));
    };
    Classification c1 = cls("[[1,(i+j)/2],[-2i-2j,3]]");
    c.require(c1.kind == IsoKind::loxodromic, "Cao-Parker-Wang matrix not loxodromic");
    PSQuantities q1 = ps_quantities(parse_matrix("[[1,(i+j)/2],[-2i-2j,3]]", 2));
    c.require(q1.alpha == QuadExt(1), "alpha != 1");

    Classification c2 = cls("[[0,-1],[1,-3]]");
    c.require(c2.kind == IsoKind::loxodromic && c2.simplicity == 1,
              "[[0,-1],[1,-3]] not 1-simple loxodromic");

    Classification c3 = cls("[[0,-1],[1,-3i-3j]]");
    c.require(c3.kind == IsoKind::loxodromic && c3.simplicity == 2,
              "[[0,-1],[1,-3i-3j]] not 2-simple loxodromic");

    Classification c4 = cls("[[1,1],[0,1]]");
    c.require(c4.kind == IsoKind::parabolic, "translation not parabolic");
}

// --- criterion 4: surd <-> loxodromic round trip ---------------------------

void criterion_surd_roundtrip(Check& c, int count, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> ac(-50, 50);
    std::uniform_int_distribution<int> aa(1, 25);
    Space real = Space::real(true);
    int done = 0;
    while (done < count) {
        Int a = aa(rng), b = ac(rng), cc = ac(rng);
        Int delta = b * b - 4 * a * cc;
        if (delta <= 0 || delta > 10000 || is_perfect_square(delta)) continue;
        ++done;
        IntMat2 m = surd_to_loxodromic(a, b, cc);
        Int det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        Int tr = m[0][0] + m[1][1];
        c.require(det == 1, "det != 1 for " + a.str() + "," + b.str() + "," + cc.str());
        c.require(abs(tr) > 2, "matrix is not loxodromic");
        RealFixedPoints fp = fixed_points_real(m);
        QuadExt sq = QuadExt::sqrt_of(Rational(delta));
        QuadExt r1 = (QuadExt(Rational(-b)) + sq) / QuadExt(Rational(2 * a));
        QuadExt r2 = (QuadExt(Rational(-b)) - sq) / QuadExt(Rational(2 * a));
        bool match = fp.points.size() == 2 &&
                     ((fp.points[0] == r1 && fp.points[1] == r2) ||
                      (fp.points[0] == r2 && fp.points[1] == r1));
        c.require(match, "fixed points are not the quadratic's roots");
        for (const QuadExt& root : {r1, r2}) {
            Expansion e = expand(real, real.make_point({root}), 50000);
            c.require(e.status == ExpStatus::periodic,
                      "root " + root.str() + " did not expand periodically");
            if (!c.ok) return;
        }
    }
}

// --- criterion 5: rational points terminate with height certificates -------

void criterion_rational_horoballs(Check& c, int count, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-99, 99);
    std::uniform_int_distribution<int> dn(1, 99);
    auto rand_rat = [&] { return Rational(num(rng), dn(rng)); };
    struct Case {
        Space space;
        int coords;
    };
    std::vector<Case> cases = {{Space::real(true), 1}, {Space::complex(1), 2}, {Space::r3(), 3}};
    for (const auto& cs : cases) {
        for (int i = 0; i < count; ++i) {
            std::vector<QuadExt> coords;
            for (int k = 0; k < cs.coords; ++k) coords.emplace_back(rand_rat());
            HoroballTrace t = track_horoball(cs.space, cs.space.make_point(coords), 1);
            if (!t.finite || !t.certificate_ok) {
                c.require(false, "trace failed on " + cs.space.name() + " sample " +
                                     std::to_string(i));
                return;
            }
        }
    }
}

// --- criterion 6: the geodesic crossing constant ----------------------------

void criterion_geodesic_constant(Check& c, int grid) {
    GeodesicMinHeight g =
        geodesic_sphere_min_height(Space::real(true), 0.5, std::sqrt(2.0), grid);
    double C = std::sqrt(3.0 * (9.0 - 4.0 * std::sqrt(2.0))) / 7.0;
    c.require(std::abs(g.min_height - C) <= 1e-3,
              "min height " + std::to_string(g.min_height) + " vs constant " + std::to_string(C));
    c.require(g.missed == 0, "some geodesics unexpectedly missed the sphere");
}

// --- criterion 7: reciprocal-tower identities --------------------------------

void criterion_identities(Check& c) {
    for (int d : {2, 3, 4}) {
        DepthIdentityRecord rec = check_depth_identity(d);
        c.require(rec.all_zero, "depth identity failed for d=" + std::to_string(d) + ": " + rec.witness);
    }
    DepthSequence s5 = depth_sequence(5, 100);
    for (long n = 1; n <= 100; ++n) {
        if (s5.values[n - 1] != Rational(n + 1, 2 * n)) {
            c.require(false, "d=5 closed form fails at n=" + std::to_string(n));
            break;
        }
    }
    for (int d = 6; d <= 12; ++d) {
        RecurrenceFixedPoints fx = fixed_points_x(d);
        DepthSequence seq;
        try {
            seq = depth_sequence(d, 1000);
        } catch (const domain_error& e) {
            c.require(false, std::string("sequence vanished: ") + e.what());
            continue;
        }
        for (size_t n = 1; n < seq.values.size(); ++n) {
            QuadExt x(seq.values[n]);
            if (!(fx.lo <= x && x <= fx.hi)) {
                c.require(false, "d=" + std::to_string(d) + ": x_" + std::to_string(n + 1) +
                                     " = " + rational_to_string(seq.values[n]) +
                                     " is outside [x-, x+] (x+ = " + fx.hi.str() +
                                     "); the orbit from x_1 = 1 stays in (x+, 1] and never"
                                     " vanishes, so the stated containment cannot hold");
                break;
            }
        }
        if (!c.ok) break;
    }
}

// --- criterion 8: generator-word reduction ----------------------------------

GeneratorWord random_word(std::mt19937_64& rng, int max_len, int coord_bound) {
    std::uniform_int_distribution<int> len(1, max_len);
    std::uniform_int_distribution<int> kind(0, 1);
    std::uniform_int_distribution<int> coord(-coord_bound, coord_bound);
    GeneratorWord w;
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
        WordToken t;
        if (kind(rng) == 0) {
            t.inv = true;
        } else {
            std::vector<Rational> v;
            bool nonzero = false;
            for (int k = 0; k < 3; ++k) {
                int x = coord(rng);
                nonzero = nonzero || x != 0;
                v.emplace_back(x);
            }
            if (!nonzero) v[0] = 1;
            t.inv = false;
            t.trans = {v};
        }
        w.tokens.push_back(t);
    }
    return w;
}

void criterion_reduction(Check& c, int words, unsigned seed) {
    Space r3 = Space::r3();
    std::mt19937_64 rng(seed);
    for (int i = 0; i < words; ++i) {
        GeneratorWord w = random_word(rng, 12, 3);
        CliffordMatrix m = word_product(r3, w);
        ReduceResult red = reduce_to_generators(r3, m);
        CliffordMatrix back = word_product(r3, red.word);
        if (!(back == m)) {
            c.require(false, "reduction round trip failed on word " + std::to_string(i));
            return;
        }
        for (const auto& st : red.steps)
            if (!st.inversion && !(st.column_norm_after < st.column_norm_before)) {
                c.require(false, "translation step did not descend");
                return;
            }
    }
    // all eight unit diagonals of the rank-2 integer ring, k = ij via
    // composition of the i and j words
    std::vector<CliffordElement> units;
    for (int s : {1, -1}) {
        units.push_back(CliffordElement(2, QuadExt(s)));
        CliffordElement e1 = CliffordElement::basis(2, 1).scaled(QuadExt(s));
        CliffordElement e2 = CliffordElement::basis(2, 2).scaled(QuadExt(s));
        CliffordElement e12 = CliffordElement::basis(2, 3).scaled(QuadExt(s));
        units.push_back(e1);
        units.push_back(e2);
        units.push_back(e12);
    }
    for (const auto& a : units) {
        GeneratorWord w = unit_diagonal_word(r3, a);
        CliffordMatrix m = word_product(r3, w);
        c.require(m.b.is_zero() && m.c.is_zero(), "unit diagonal word is not diagonal");
        c.require(m.a == a, "unit diagonal word has wrong upper entry for " + a.str(true));
        c.require(m.d == a.involution(), "lower entry is not the involution for " + a.str(true));
        if (a.is_vector())
            c.require(m.d == a.inverse(), "lower entry is not a^{-1} for vector unit " + a.str(true));
    }
}

// --- criterion 9: Hurwitz span closure ---------------------------------------

void criterion_hurwitz_closure(Check& c, long samples, unsigned seed) {
    HurwitzClosureReport rep = hurwitz_closure_check(samples, seed);
    c.require(rep.h_squared_ok, "h^2 != h (mod Z^8)");
    c.require(rep.commutation_ok, "e_i h != h e_i (mod Z^8)");
    c.require(rep.violations == 0,
              std::to_string(rep.violations) + " products left the span");
}

// --- criterion 10: property suite --------------------------------------------

void criterion_properties(Check& c, int samples, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-20, 20);
    std::uniform_int_distribution<int> dn(1, 12);
    auto rand_rat = [&] { return Rational(num(rng), dn(rng)); };

    // Koranyi distance identity, exact on fourth powers, every model.
    std::vector<Space> models = {Space::real(true), Space::complex(1), Space::r3(),
                                 Space::r4_hurwitz(), Space::heisenberg()};
    for (const Space& sp : models) {
        for (int i = 0; i < samples; ++i) {
            std::vector<QuadExt> pc, qc;
            for (int k = 0; k < sp.dim(); ++k) {
                pc.emplace_back(rand_rat());
                qc.emplace_back(rand_rat());
            }
            Point p = sp.make_point(pc), q = sp.make_point(qc);
            if (p.is_zero() || q.is_zero() || p == q) continue;
            QuadExt lhs = sp.cygan_dist4(sp.invert(p), sp.invert(q)) * sp.gauge4(p) * sp.gauge4(q);
            QuadExt rhs = sp.cygan_dist4(p, q);
            if (!(lhs == rhs)) {
                c.require(false, "inversion distance identity failed on " + sp.name());
                return;
            }
        }
    }

    // Moebius action is an action (r3 model, generator-word matrices).
    Space r3 = Space::r3();
    for (int i = 0; i < samples; ++i) {
        CliffordMatrix m1 = word_product(r3, random_word(rng, 6, 2));
        CliffordMatrix m2 = word_product(r3, random_word(rng, 6, 2));
        MobiusPoint x;
        if (i % 16 == 0) {
            x = MobiusPoint::infinity();
        } else {
            std::vector<QuadExt> coords;
            for (int k = 0; k < 3; ++k) coords.emplace_back(rand_rat());
            x = MobiusPoint::of(r3.point_to_clifford(r3.make_point(coords)));
        }
        MobiusPoint lhs = mobius_apply(m1 * m2, x);
        MobiusPoint rhs = mobius_apply(m1, mobius_apply(m2, x));
        bool same = lhs.is_infinity() == rhs.is_infinity() &&
                    (lhs.is_infinity() || *lhs.v == *rhs.v);
        if (!same) {
            c.require(false, "Moebius action is not compositional at sample " + std::to_string(i));
            return;
        }
    }

    // Conjugation invariance of classification: real and quaternionic.
    std::uniform_int_distribution<int> small(-4, 4);
    auto random_sl2z = [&](int len) {
        IntMat2 m{{{1, 0}, {0, 1}}};
        for (int i = 0; i < len; ++i) {
            IntMat2 g;
            if (small(rng) % 2 == 0) {
                Int t = small(rng);
                g = {{{1, t}, {0, 1}}};
            } else {
                g = {{{0, -1}, {1, 0}}};
            }
            IntMat2 r;
            r[0][0] = m[0][0] * g[0][0] + m[0][1] * g[1][0];
            r[0][1] = m[0][0] * g[0][1] + m[0][1] * g[1][1];
            r[1][0] = m[1][0] * g[0][0] + m[1][1] * g[1][0];
            r[1][1] = m[1][0] * g[0][1] + m[1][1] * g[1][1];
            m = r;
        }
        return m;
    };
    auto mat_mul = [](const IntMat2& a, const IntMat2& b) {
        IntMat2 r;
        r[0][0] = a[0][0] * b[0][0] + a[0][1] * b[1][0];
        r[0][1] = a[0][0] * b[0][1] + a[0][1] * b[1][1];
        r[1][0] = a[1][0] * b[0][0] + a[1][1] * b[1][0];
        r[1][1] = a[1][0] * b[0][1] + a[1][1] * b[1][1];
        return r;
    };
    for (int i = 0; i < samples; ++i) {
        IntMat2 m = random_sl2z(5);
        IntMat2 g = random_sl2z(4);
        IntMat2 ginv{{{g[1][1], -g[0][1]}, {-g[1][0], g[0][0]}}};
        Classification base = classify_real(m);
        Classification conj = classify_real(mat_mul(mat_mul(g, m), ginv));
        if (base.kind != conj.kind) {
            c.require(false, "real classification changed under conjugation");
            return;
        }
    }
    std::vector<CliffordMatrix> quat_bases = {
        parse_matrix("[[1,(i+j)/2],[-2i-2j,3]]", 2), parse_matrix("[[0,-1],[1,-3]]", 2),
        parse_matrix("[[0,-1],[1,-3i-3j]]", 2), parse_matrix("[[1,1],[0,1]]", 2)};
    for (int i = 0; i < samples; ++i) {
        const CliffordMatrix& m = quat_bases[static_cast<size_t>(i) % quat_bases.size()];
        CliffordMatrix g = word_product(r3, random_word(rng, 5, 2));
        CliffordMatrix conj = g * m * g.inverse();
        Classification base = classify_quaternionic(m);
        Classification after = classify_quaternionic(conj);
        if (base.kind != after.kind || base.simplicity != after.simplicity) {
            c.require(false, "quaternionic classification changed under conjugation (sample " +
                                 std::to_string(i) + ")");
            return;
        }
    }
}

CriterionResult run_one(int id, const std::string& name, void (*fn)(Check&),
                        Check* precomputed = nullptr) {
    (void)precomputed;
    CriterionResult r;
    r.id = id;
    r.name = name;
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
        fn(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.detail << "exception: " << e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    r.pass = c.ok;
    r.seconds = std::chrono::duration<double>(t1 - t0).count();
    r.detail = c.detail.str();
    return r;
}

template <typename F>
CriterionResult run_lambda(int id, const std::string& name, F&& fn) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
        fn(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.detail << "exception: " << e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    r.pass = c.ok;
    r.seconds = std::chrono::duration<double>(t1 - t0).count();
    r.detail = c.detail.str();
    return r;
}

} // namespace

SelfcheckReport run_acceptance(bool quick, unsigned seed) {
    SelfcheckReport rep;
    rep.criteria.push_back(run_one(1, "complex expansion and square of sqrt(1+i)",
                                   criterion_complex_surd));
    rep.criteria.push_back(run_one(2, "r3 periodic pair expansions", criterion_r3_pair));
    rep.criteria.push_back(run_one(3, "quaternionic classification", criterion_parker_short));
    rep.criteria.push_back(run_lambda(4, "surd/loxodromic round trip", [&](Check& c) {
        criterion_surd_roundtrip(c, quick ? 10 : 50, seed + 4);
    }));
    rep.criteria.push_back(run_lambda(5, "rational points terminate with certificates",
                                      [&](Check& c) {
                                          criterion_rational_horoballs(c, quick ? 50 : 500,
                                                                       seed + 5);
                                      }));
    rep.criteria.push_back(run_lambda(6, "geodesic crossing constant", [&](Check& c) {
        criterion_geodesic_constant(c, quick ? 120 : 400);
    }));
    rep.criteria.push_back(run_one(7, "reciprocal-tower identities", criterion_identities));
    rep.criteria.push_back(run_lambda(8, "generator-word reduction", [&](Check& c) {
        criterion_reduction(c, quick ? 30 : 200, seed + 8);
    }));
    rep.criteria.push_back(run_lambda(9, "Hurwitz span closure", [&](Check& c) {
        criterion_hurwitz_closure(c, quick ? 500 : 10000, seed + 9);
    }));
    rep.criteria.push_back(run_lambda(10, "inversion/action/conjugation property suite",
                                      [&](Check& c) {
                                          criterion_properties(c, quick ? 50 : 1000, seed + 10);
                                      }));
    return rep;
}

} // namespace cfx
