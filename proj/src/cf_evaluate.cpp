#include <cmath>

#include "cfx/cf.hpp"

namespace cfx {

namespace {

// ---- extended exact fold over Point (vector models and Heisenberg) ------

struct ExtPoint {
    bool inf = false;
    Point p;
};

ExtPoint ext_invert(const Space& space, const ExtPoint& x) {
    if (x.inf) return {false, space.zero()};
    if (x.p.is_zero()) return {true, {}};
    return {false, space.invert(x.p)};
}

ExtPoint ext_translate(const Space& space, const LatticeElem& g, const ExtPoint& x) {
    if (x.inf) return x;
    return {false, space.translate(g, x.p)};
}

// value = d1 + i(d2 + i(... dn)) over the digit slice; empty slice gives the
// inner seed.
ExtPoint fold_digits(const Space& space, const std::vector<LatticeElem>& digits, size_t from,
                     size_t to, const ExtPoint& seed, bool seed_present) {
    ExtPoint acc = seed;
    bool have = seed_present;
    for (size_t k = to; k-- > from;) {
        if (!have) {
            acc = {false, space.lattice_point(digits[k])};
            have = true;
        } else {
            acc = ext_translate(space, digits[k], ext_invert(space, acc));
        }
    }
    return acc;
}

// ---- surd-tower fold (complex space) -------------------------------------

struct ExtSurd {
    bool inf = false;
    ComplexSurd z;
};

ExtSurd cs_ext_invert(const ExtSurd& x, const ComplexSurd& proto) {
    if (x.inf) return {false, cs_make({0, 0}, {0, 0}, proto.delta, proto.d)};
    if (x.z.is_zero()) return {true, proto};
    return {false, cs_inverse(x.z)};
}

GaussRational lattice_to_gauss(const LatticeElem& g) {
    return {g.g[0], g.g[1]};
}

ExtSurd cs_fold_digits(const std::vector<LatticeElem>& digits, size_t from, size_t to,
                       const ExtSurd& seed, bool seed_present, const ComplexSurd& proto) {
    ExtSurd acc = seed;
    bool have = seed_present;
    for (size_t k = to; k-- > from;) {
        GaussRational g = lattice_to_gauss(digits[k]);
        if (!have) {
            acc = {false, cs_make(g, {0, 0}, proto.delta, proto.d)};
            have = true;
        } else {
            ExtSurd inv = cs_ext_invert(acc, proto);
            if (inv.inf)
                acc = inv;
            else
                acc = {false, cs_add_gauss(inv.z, g)};
        }
    }
    return acc;
}

// ---- numeric shadow (general r3/r4 words and Heisenberg) -----------------

using DVec = std::vector<double>;

DVec d_invert(const Space& space, const DVec& v) {
    if (space.kind() == SpaceKind::heisenberg) {
        double x = v[0], y = v[1], t = v[2];
        double n = x * x + y * y;
        double q = n * n + t * t;
        return {-(x * n + y * t) / q, -(y * n - x * t) / q, -t / q};
    }
    double n = 0;
    for (double c : v) n += c * c;
    DVec r(v.size());
    const std::vector<int>& sg = space.inversion_signs();
    for (size_t i = 0; i < v.size(); ++i) r[i] = sg[i] * v[i] / n;
    return r;
}

DVec d_translate(const Space& space, const LatticeElem& g, const DVec& v) {
    Point gp = space.lattice_point(g);
    DVec r(v.size());
    if (space.kind() == SpaceKind::heisenberg) {
        double a = gp.x[0].approx(), b = gp.x[1].approx(), c = gp.x[2].approx();
        r[0] = a + v[0];
        r[1] = b + v[1];
        r[2] = c + v[2] + 2 * (a * v[1] - b * v[0]);
        return r;
    }
    for (size_t i = 0; i < v.size(); ++i) r[i] = gp.x[i].approx() + v[i];
    return r;
}

double d_cygan(const Space& space, const DVec& p, const DVec& q) {
    if (space.kind() == SpaceKind::heisenberg) {
        double dx = q[0] - p[0], dy = q[1] - p[1];
        double dt = q[2] - p[2] + 2 * (p[1] * q[0] - p[0] * q[1]);
        double n = dx * dx + dy * dy;
        return std::pow(n * n + dt * dt, 0.25);
    }
    double n = 0;
    for (size_t i = 0; i < p.size(); ++i) n += (q[i] - p[i]) * (q[i] - p[i]);
    return std::sqrt(n);
}

DVec d_word(const Space& space, const std::vector<LatticeElem>& period, const DVec& y) {
    DVec acc = y;
    for (size_t k = period.size(); k-- > 0;) {
        acc = d_invert(space, acc);
        acc = d_translate(space, period[k], acc);
    }
    return acc;
}

DVec numeric_periodic_tail(const Space& space, const std::vector<LatticeElem>& period) {
    DVec y(space.dim(), 0.0);
    y = d_translate(space, period[0], y); // any seed off the repelling point
    const double tol = 1e-12;
    for (int round = 0; round < 2; ++round) {
        for (int it = 0; it < 200000; ++it) {
            DVec ny = d_word(space, period, y);
            double d = d_cygan(space, y, ny);
            if (round == 1) // damping pass
                for (size_t i = 0; i < ny.size(); ++i) ny[i] = (ny[i] + y[i]) / 2;
            y = ny;
            if (d < tol) return y;
        }
    }
    fail(errc::divergent_periodic_spec,
         "period word did not contract to a fixed point within budget");
}

// ---- 2x2 scalar words ------------------------------------------------------

struct RatMat {
    Rational a, b, c, d;
    RatMat mul(const RatMat& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

struct GaussMat {
    GaussRational a, b, c, d;
};

GaussMat gm_mul(const GaussMat& m, const GaussMat& o, const Int& dd) {
    return {g_add(g_mul(m.a, o.a, dd), g_mul(m.b, o.c, dd)),
            g_add(g_mul(m.a, o.b, dd), g_mul(m.b, o.d, dd)),
            g_add(g_mul(m.c, o.a, dd), g_mul(m.d, o.c, dd)),
            g_add(g_mul(m.c, o.b, dd), g_mul(m.d, o.d, dd))};
}

} // namespace

EvalResult evaluate(const Space& space, const std::vector<LatticeElem>& digits, bool has_leading,
                    long period) {
    EvalResult res;
    if (period < 0 || period > static_cast<long>(digits.size()))
        fail(errc::usage, "period must be between 0 and the digit count");
    size_t n = digits.size();
    size_t pre = n - static_cast<size_t>(period);
    if (has_leading && period > 0 && pre == 0)
        fail(errc::usage, "a leading integer digit cannot be part of the period");

    auto finish_exact_point = [&](const ExtPoint& v) {
        if (v.inf) {
            res.infinity = true;
            return;
        }
        res.exact = v.p;
        res.approx.clear();
        for (const auto& c : v.p.x) res.approx.push_back(c.approx());
    };

    if (period == 0) {
        // Finite list, exact fold in the ambient tower.
        if (n == 0) {
            res.exact = space.zero();
            res.approx.assign(space.dim(), 0.0);
            res.cross_check = "exact";
            return res;
        }
        ExtPoint v = fold_digits(space, digits, 0, n, {}, false);
        if (!has_leading) v = ext_invert(space, v);
        finish_exact_point(v);
        if (!res.infinity)
            for (size_t i = res.approx.size(); i < static_cast<size_t>(space.dim()); ++i)
                res.approx.push_back(0.0);
        res.cross_check = "exact";
        return res;
    }

    std::vector<LatticeElem> per(digits.begin() + pre, digits.end());

    // Periodic tail: attracting fixed point of the period word.
    if (space.matrix_rank() == 0) {
        // Real: word matrix over the rationals, exact quadratic solve.
        RatMat S = (space.kind() == SpaceKind::real_regular) ? RatMat{0, 1, 1, 0}
                                                             : RatMat{0, -1, 1, 0};
        RatMat W{1, 0, 0, 1};
        for (size_t k = per.size(); k-- > 0;) {
            RatMat T{1, per[k].g[0] * Rational(space.lattice_scale()), 0, 1};
            W = T.mul(S).mul(W);
        }
        QuadExt y;
        if (W.c == 0) {
            if (W.d == W.a) fail(errc::divergent_periodic_spec, "period word is a pure translation");
            y = QuadExt(W.b / (W.d - W.a));
            QuadExt deriv_den = QuadExt(W.d);
            QuadExt det = QuadExt(W.a * W.d - W.b * W.c);
            if (!((deriv_den * deriv_den) > det && (deriv_den * deriv_den) > -det))
                fail(errc::divergent_periodic_spec, "fixed point is not attracting");
        } else {
            Rational qa = W.c, qb = W.d - W.a, qc = -W.b;
            reduce_quadratic_triple(qa, qb, qc);
            Rational disc = qb * qb - 4 * qa * qc;
            if (disc < 0) fail(errc::divergent_periodic_spec, "period word is elliptic");
            QuadExt sq = QuadExt::sqrt_of(disc);
            QuadExt y1 = (QuadExt(-qb) + sq) / QuadExt(2 * qa);
            QuadExt y2 = (QuadExt(-qb) - sq) / QuadExt(2 * qa);
            // attracting root: |C y + D| maximal (product of the two is |det|)
            QuadExt m1 = QuadExt(W.c) * y1 + QuadExt(W.d);
            QuadExt m2 = QuadExt(W.c) * y2 + QuadExt(W.d);
            y = (m1 * m1 > m2 * m2) ? y1 : y2;
            QuadExt det = QuadExt(W.a * W.d - W.b * W.c);
            QuadExt my = QuadExt(W.c) * y + QuadExt(W.d);
            if (!((my * my) > det && (my * my) > -det))
                fail(errc::divergent_periodic_spec, "no attracting fixed point (elliptic or parabolic word)");
        }
        ExtPoint tail{false, space.make_point({y})};
        ExtPoint v = fold_digits(space, digits, 0, pre, tail, true);
        if (!has_leading) v = ext_invert(space, v);
        finish_exact_point(v);
        res.cross_check = "exact";
        return res;
    }

    if (space.kind() == SpaceKind::complex_plane) {
        const Int& dd = space.imag_d();
        // i(z) = 1/z as the Gaussian matrix [[0,1],[1,0]] (the unit-scaled
        // det-1 version is only needed for Clifford validity, not here).
        GaussMat S{{0, 0}, {1, 0}, {1, 0}, {0, 0}};
        GaussMat W{{1, 0}, {0, 0}, {0, 0}, {1, 0}};
        for (size_t k = per.size(); k-- > 0;) {
            GaussMat T{{1, 0}, lattice_to_gauss(per[k]), {0, 0}, {1, 0}};
            W = gm_mul(gm_mul(T, S, dd), W, dd);
        }
        if (W.c.is_zero()) fail(errc::divergent_periodic_spec, "period word fixes infinity");
        GaussRational amd = g_sub(W.a, W.d);
        GaussRational disc = g_add(g_mul(amd, amd, dd),
                                   g_mul(GaussRational(4, 0), g_mul(W.c, W.b, dd), dd));
        GaussRational inv2c = g_inv(g_mul(GaussRational(2, 0), W.c, dd), dd);
        GaussRational u = g_mul(amd, inv2c, dd);
        ComplexSurd y1 = cs_make(u, inv2c, disc, dd);
        ComplexSurd y2 = cs_make(u, g_neg(inv2c), disc, dd);
        GaussRational root;
        if (gauss_is_square(disc, dd, &root)) {
            // degenerate: rational fixed points
            y1 = cs_make(g_add(u, g_mul(root, inv2c, dd)), {0, 0}, {0, 0}, dd);
            y2 = cs_make(g_sub(u, g_mul(root, inv2c, dd)), {0, 0}, {0, 0}, dd);
        }
        auto mag2 = [&](const ComplexSurd& y) {
            ComplexSurd cy = cs_mul_gauss(y, W.c);
            ComplexSurd cyd = cs_add_gauss(cy, W.d);
            CoordEnclosure e = cs_enclose(cyd, 96);
            double x = to_double(e.x.mid()), yy = to_double(e.y.mid());
            return x * x + to_double(Rational(dd)) * yy * yy;
        };
        double m1 = mag2(y1), m2 = mag2(y2);
        if (std::abs(m1 - m2) < 1e-9 || std::max(m1, m2) <= 1.0 + 1e-9)
            fail(errc::divergent_periodic_spec, "no attracting fixed point of the period word");
        ComplexSurd tail = (m1 > m2) ? y1 : y2;
        ExtSurd v = cs_fold_digits(digits, 0, pre, {false, tail}, true, tail);
        if (!has_leading) v = cs_ext_invert(v, tail);
        if (v.inf) {
            res.infinity = true;
        } else {
            res.surd = v.z;
            res.approx = {cs_approx_x(v.z), cs_approx_y(v.z)};
            if (v.z.v.is_zero()) {
                // value collapsed to the Gaussian rationals; report it as an
                // exact ambient point as well
                QuadExt sd = QuadExt::sqrt_of(Rational(space.imag_d()));
                res.exact = space.make_point({QuadExt(v.z.u.x), QuadExt(v.z.u.y) * sd});
            }
        }
        res.cross_check = "exact";
        return res;
    }

    // r3 / r4 / Heisenberg: collinear words reduce to exact 1-d dynamics.
    if (space.kind() == SpaceKind::r3 || space.kind() == SpaceKind::r4_hurwitz) {
        std::vector<Rational> dir;
        bool collinear = true;
        for (const auto& g : digits) {
            if (g.g[0] != 0) { collinear = false; break; }
            if (dir.empty()) {
                bool nonzero = false;
                for (const auto& c : g.g) nonzero = nonzero || c != 0;
                if (nonzero) dir = g.g;
                continue;
            }
            // g must be a rational multiple of dir
            Rational num, den;
            bool got = false;
            for (size_t i = 0; i < dir.size(); ++i) {
                if (dir[i] == 0) {
                    if (g.g[i] != 0) { collinear = false; break; }
                } else if (!got) {
                    num = g.g[i];
                    den = dir[i];
                    got = true;
                } else if (g.g[i] * den != dir[i] * num) {
                    collinear = false;
                    break;
                }
            }
            if (!collinear) break;
        }
        // the inversion must act with one sign on the digit line
        int line_sign = 0;
        if (collinear && !dir.empty()) {
            const std::vector<int>& sg = space.inversion_signs();
            for (size_t i = 1; i < dir.size(); ++i) {
                if (dir[i] == 0) continue;
                if (line_sign == 0)
                    line_sign = sg[i];
                else if (line_sign != sg[i])
                    line_sign = 99; // mixed signs: no 1-d reduction
            }
        }
        if (collinear && !dir.empty() && (line_sign == 1 || line_sign == -1)) {
            // states live on the line beta * u with u = dir (pure vector):
            // inversion sends beta to s/(q beta) with q = |u|^2.
            Rational q(0);
            for (const auto& c : dir) q += c * c;
            RatMat S{0, Rational(line_sign), q, 0};
            RatMat W{1, 0, 0, 1};
            auto coef_of = [&](const LatticeElem& g) -> Rational {
                for (size_t i = 0; i < dir.size(); ++i)
                    if (dir[i] != 0) return Rational(g.g[i] / dir[i]);
                return Rational(0);
            };
            std::vector<Rational> pre_coefs, per_coefs;
            for (size_t i = 0; i < pre; ++i) pre_coefs.push_back(coef_of(digits[i]));
            for (const auto& g : per) per_coefs.push_back(coef_of(g));
            for (size_t k = per_coefs.size(); k-- > 0;) {
                RatMat T{1, per_coefs[k], 0, 1};
                W = T.mul(S).mul(W);
            }
            QuadExt beta;
            if (W.c == 0) {
                if (W.d == W.a) fail(errc::divergent_periodic_spec, "period word is a pure translation");
                beta = QuadExt(W.b / (W.d - W.a));
            } else {
                Rational qa = W.c, qb = W.d - W.a, qc = -W.b;
                reduce_quadratic_triple(qa, qb, qc);
                Rational disc = qb * qb - 4 * qa * qc;
                if (disc < 0) fail(errc::divergent_periodic_spec, "period word is elliptic");
                QuadExt sq = QuadExt::sqrt_of(disc);
                QuadExt b1 = (QuadExt(-qb) + sq) / QuadExt(2 * qa);
                QuadExt b2 = (QuadExt(-qb) - sq) / QuadExt(2 * qa);
                QuadExt m1 = QuadExt(W.c) * b1 + QuadExt(W.d);
                QuadExt m2 = QuadExt(W.c) * b2 + QuadExt(W.d);
                QuadExt det = QuadExt(W.a * W.d - W.b * W.c);
                beta = (m1 * m1 > m2 * m2) ? b1 : b2;
                QuadExt mb = QuadExt(W.c) * beta + QuadExt(W.d);
                if (!((mb * mb) > det && (mb * mb) > -det))
                    fail(errc::divergent_periodic_spec, "no attracting fixed point on the digit line");
            }
            // fold the preperiod on the line: translate adds c, inversion
            // sends beta to 1/(q beta)
            QuadExt sgn(line_sign);
            QuadExt y = beta;
            for (size_t k = pre_coefs.size(); k-- > 0;) {
                y = sgn * (QuadExt(q) * y).inverse();
                y = y + QuadExt(pre_coefs[k]);
            }
            if (!has_leading) y = sgn * (QuadExt(q) * y).inverse();
            std::vector<QuadExt> coords;
            for (const auto& c : dir) coords.push_back(QuadExt(c) * y);
            ExtPoint v{false, space.make_point(std::move(coords))};
            finish_exact_point(v);
            res.cross_check = "exact";
            return res;
        }
    }

    // General numeric path.
    DVec tail = numeric_periodic_tail(space, per);
    DVec v = tail;
    for (size_t k = pre; k-- > 0;) {
        v = d_invert(space, v);
        v = d_translate(space, digits[k], v);
    }
    if (!has_leading) v = d_invert(space, v);
    res.approx = v;
    res.cross_check = "numeric";
    return res;
}

EvalResult evaluate(const Space& space, const Expansion& e) {
    if (e.status == ExpStatus::truncated)
        fail(errc::usage, "cannot evaluate a truncated expansion");
    return evaluate(space, e.digits, e.has_leading,
                    e.status == ExpStatus::periodic ? e.period : 0);
}

} // namespace cfx
