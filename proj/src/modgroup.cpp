#include "cfx/modgroup.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <sstream>

namespace cfx {

const char* iso_kind_name(IsoKind k) {
    switch (k) {
        case IsoKind::identity: return "identity";
        case IsoKind::elliptic: return "elliptic";
        case IsoKind::parabolic: return "parabolic";
        case IsoKind::loxodromic: return "loxodromic";
    }
    return "?";
}

Classification classify_real(const IntMat2& m) {
    Int det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (det != 1) fail(errc::bad_determinant, "determinant must be 1, got " + det.str());
    Classification cls;
    Int tr = m[0][0] + m[1][1];
    cls.certificate["trace"] = tr.str();
    bool plus_id = m[0][0] == 1 && m[1][1] == 1 && m[0][1] == 0 && m[1][0] == 0;
    bool minus_id = m[0][0] == -1 && m[1][1] == -1 && m[0][1] == 0 && m[1][0] == 0;
    if (plus_id || minus_id) {
        cls.kind = IsoKind::identity;
        return cls;
    }
    Int a = abs(tr);
    cls.kind = a < 2 ? IsoKind::elliptic : a == 2 ? IsoKind::parabolic : IsoKind::loxodromic;
    return cls;
}

Classification classify_complex(const GaussMat2& m, const Int& d) {
    GaussRational det = g_sub(g_mul(m.a, m.d, d), g_mul(m.b, m.c, d));
    if (!(det.x == 1 && det.y == 0))
        fail(errc::bad_determinant, "determinant must be 1, got " + gauss_to_string(det, d));
    Classification cls;
    GaussRational tr = g_add(m.a, m.d);
    cls.certificate["trace"] = gauss_to_string(tr, d);
    bool plus_id = m.a.x == 1 && m.a.y == 0 && m.d.x == 1 && m.d.y == 0 && m.b.is_zero() && m.c.is_zero();
    bool minus_id = m.a.x == -1 && m.a.y == 0 && m.d.x == -1 && m.d.y == 0 && m.b.is_zero() && m.c.is_zero();
    if (plus_id || minus_id) {
        cls.kind = IsoKind::identity;
        return cls;
    }
    if (tr.y == 0 && (tr.x == 2 || tr.x == -2)) {
        cls.kind = IsoKind::parabolic;
        return cls;
    }
    if (tr.y == 0 && tr.x > -2 && tr.x < 2) {
        cls.kind = IsoKind::elliptic;
        return cls;
    }
    cls.kind = IsoKind::loxodromic;
    return cls;
}

namespace {

QuadExt re_part(const CliffordElement& x) { return x.coeff(0); }

bool is_one(const CliffordElement& x) {
    return x.is_scalar() && x.coeff(0) == QuadExt(1);
}

bool is_real_scalar(const CliffordElement& x) { return x.is_scalar(); }

} // namespace

PSQuantities ps_quantities(const CliffordMatrix& m) {
    if (m.rank() != 2) fail(errc::usage, "quaternion quantities need a rank-2 matrix");
    const CliffordElement &a = m.a, &b = m.b, &c = m.c, &d = m.d;
    PSQuantities q{QuadExt(0), QuadExt(0), QuadExt(0), QuadExt(0), CliffordElement(2),
                   CliffordElement(2), 0};
    QuadExt na = a.norm_sq(), nb = b.norm_sq(), nc = c.norm_sq(), nd = d.norm_sq();
    CliffordElement acdb = a * c.conjugate() * d * b.conjugate();
    q.alpha = na * nd + nb * nc - QuadExt(2) * re_part(acdb);
    CliffordElement ad_bc = a * d - b * c;
    CliffordElement da_cb = d * a - c * b;
    q.beta = re_part(ad_bc * a.conjugate() + da_cb * d.conjugate());
    CliffordElement apd = a + d;
    q.gamma = apd.norm_sq() + QuadExt(2) * re_part(ad_bc);
    q.delta = re_part(apd);
    if (!c.is_zero()) {
        q.branch = 1;
        CliffordElement cac = c * a * c.inverse();
        q.sigma = cac * d - c * b;
        q.tau = cac + d;
    } else if (!b.is_zero()) {
        q.branch = 2;
        CliffordElement bdb = b * d * b.inverse();
        q.sigma = bdb * a;
        q.tau = bdb + a;
    } else if (!(a == d)) {
        q.branch = 3;
        CliffordElement dma = d - a;
        CliffordElement core = dma * a * dma.inverse();
        q.sigma = core * d;
        q.tau = core + d;
    } else {
        q.branch = 4;
        q.sigma = a * a.conjugate();
        q.tau = a + a.conjugate();
    }
    return q;
}

Classification classify_quaternionic(const CliffordMatrix& m) {
    PSQuantities q = ps_quantities(m);
    if (!(q.alpha == QuadExt(1)))
        fail(errc::not_sl2h, "alpha = " + q.alpha.str() + ", matrix is not in SL(2,H)");
    Classification cls;
    cls.certificate["alpha"] = q.alpha.str();
    cls.certificate["beta"] = q.beta.str();
    cls.certificate["gamma"] = q.gamma.str();
    cls.certificate["delta"] = q.delta.str();
    cls.certificate["sigma"] = q.sigma.str(true);
    cls.certificate["tau"] = q.tau.str(true);

    bool plus_id = is_one(m.a) && is_one(m.d) && m.b.is_zero() && m.c.is_zero();
    CliffordMatrix neg = {-m.a, -m.b, -m.c, -m.d};
    bool minus_id = is_one(neg.a) && is_one(neg.d) && neg.b.is_zero() && neg.c.is_zero();
    if (plus_id || minus_id) {
        // The case-1 formulas would report delta^2 = 4 (parabolic) here, so
        // the identity is split off before the case analysis.
        cls.kind = IsoKind::identity;
        return cls;
    }

    QuadExt d2 = q.delta * q.delta;
    if (is_one(q.sigma) && is_real_scalar(q.tau)) {
        cls.simplicity = 1;
        cls.kind = d2 < QuadExt(4)    ? IsoKind::elliptic
                   : d2 == QuadExt(4) ? IsoKind::parabolic
                                      : IsoKind::loxodromic;
        return cls;
    }
    if (q.beta == q.delta) {
        cls.simplicity = 2;
        QuadExt g = q.gamma - d2;
        cls.kind = g < QuadExt(2)    ? IsoKind::elliptic
                   : g == QuadExt(2) ? IsoKind::parabolic
                                     : IsoKind::loxodromic;
        return cls;
    }
    cls.simplicity = 3;
    cls.kind = IsoKind::loxodromic;
    return cls;
}

PellSolution pell_solve(const Int& delta) {
    if (delta < 2) fail(errc::square_discriminant, "need delta >= 2");
    Int a0;
    if (is_perfect_square(delta, &a0))
        fail(errc::square_discriminant, "delta = " + delta.str() + " is a perfect square");
    a0 = isqrt(delta);
    // Continued fraction of sqrt(delta): x_k = (P_k + sqrt(delta)) / Q_k.
    Int P = 0, Q = 1, a = a0;
    Int p_prev = 1, p = a0, q_prev = 0, q = 1;
    for (long k = 0; k < 100000000L; ++k) {
        if (p * p - delta * q * q == 1) return {q, p};
        P = a * Q - P;
        Q = (delta - P * P) / Q;
        a = (a0 + P) / Q;
        Int p_next = a * p + p_prev;
        Int q_next = a * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
    }
    fail(errc::internal, "Pell recurrence did not close");
}

IntMat2 surd_to_loxodromic(const Int& a, const Int& b, const Int& c) {
    if (a == 0) fail(errc::degenerate_quadratic, "leading coefficient is zero");
    Int delta = b * b - 4 * a * c;
    if (delta <= 0) fail(errc::degenerate_quadratic, "discriminant " + delta.str() + " <= 0");
    if (is_perfect_square(delta))
        fail(errc::degenerate_quadratic, "discriminant " + delta.str() + " is a square (rational roots)");
    PellSolution pell = pell_solve(delta);
    const Int& mu = pell.mu;
    const Int& n = pell.n;
    // lambda = 2 mu; A = (-lambda b + sqrt(lambda^2 delta + 4))/2 = n - mu b.
    IntMat2 m;
    m[0][0] = n - mu * b;
    m[0][1] = -2 * mu * c;
    m[1][0] = 2 * mu * a;
    m[1][1] = n + mu * b;
    return m;
}

std::optional<ComplexPellResult> complex_pell_search(const GaussRational& delta, const Int& d,
                                                     long bound) {
    if (delta.is_zero()) fail(errc::degenerate_quadratic, "delta must be nonzero");
    GaussRational root;
    if (gauss_is_square(g_neg(delta), d, &root)) {
        // x^2 + delta y^2 = (x - ry)(x + ry) with r^2 = -delta: degenerate
        fail(errc::square_discriminant, "-delta is a square; the form is degenerate");
    }
    // Enumerate y by max-coefficient shells so the first hit is minimal in
    // that order; x^2 = 1 - delta y^2 must be a Gaussian-integer square.
    for (long shell = 1; shell <= bound; ++shell) {
        for (long y1 = -shell; y1 <= shell; ++y1) {
            for (long y2 = -shell; y2 <= shell; ++y2) {
                if (std::max(std::abs(y1), std::abs(y2)) != shell) continue;
                GaussRational y{Rational(y1), Rational(y2)};
                GaussRational rhs = g_sub(GaussRational(1, 0), g_mul(delta, g_mul(y, y, d), d));
                GaussRational x;
                if (!gauss_is_square(rhs, d, &x)) continue;
                if (den(x.x) != 1 || den(x.y) != 1) continue;
                ComplexPellResult res;
                res.x = x;
                res.y = y;
                res.convention = "x^2 + delta*y^2 = 1";
                return res;
            }
        }
    }
    return std::nullopt;
}

std::optional<GaussMat2> surd_to_loxodromic_complex(const GaussRational& a, const GaussRational& b,
                                                    const GaussRational& c, const Int& d,
                                                    long bound) {
    if (a.is_zero()) fail(errc::degenerate_quadratic, "leading coefficient is zero");
    GaussRational delta = g_sub(g_mul(b, b, d), g_mul(GaussRational(4, 0), g_mul(a, c, d), d));
    if (gauss_is_square(delta, d))
        fail(errc::degenerate_quadratic, "discriminant is a square over the ring");
    // need n^2 - delta mu^2 = 1, i.e. the search with -delta.
    auto pell = complex_pell_search(g_neg(delta), d, bound);
    if (!pell) return std::nullopt;
    const GaussRational& mu = pell->y;
    const GaussRational& n = pell->x;
    GaussMat2 m;
    m.a = g_sub(n, g_mul(mu, b, d));
    m.b = g_neg(g_mul(GaussRational(2, 0), g_mul(mu, c, d), d));
    m.c = g_mul(GaussRational(2, 0), g_mul(mu, a, d), d);
    m.d = g_add(n, g_mul(mu, b, d));
    return m;
}

RealFixedPoints fixed_points_real(const IntMat2& m) {
    Int A = m[0][0], B = m[0][1], C = m[1][0], D = m[1][1];
    bool plus_id = A == 1 && D == 1 && B == 0 && C == 0;
    bool minus_id = A == -1 && D == -1 && B == 0 && C == 0;
    if (plus_id || minus_id) fail(errc::identity_matrix, "identity fixes everything");
    RealFixedPoints out;
    if (C == 0) {
        out.includes_infinity = true;
        if (D != A) out.points.push_back(QuadExt(Rational(B) / Rational(D - A)));
        return out;
    }
    // C x^2 + (D - A) x - B = 0, reduced by its content so the
    // discriminant stays small enough for exact square-free splitting
    Rational qa(C), qb(D - A), qc(-B);
    reduce_quadratic_triple(qa, qb, qc);
    Rational disc = qb * qb - 4 * qa * qc;
    if (disc < 0) {
        // elliptic: fixed points leave the real line
        return out;
    }
    QuadExt sq = QuadExt::sqrt_of(disc);
    QuadExt x1 = (QuadExt(-qb) + sq) / QuadExt(2 * qa);
    QuadExt x2 = (QuadExt(-qb) - sq) / QuadExt(2 * qa);
    out.points.push_back(x1);
    if (!(x1 == x2)) out.points.push_back(x2);
    return out;
}

ComplexFixedPoints fixed_points_complex(const GaussMat2& m, const Int& d) {
    bool plus_id = m.a.x == 1 && m.a.y == 0 && m.d.x == 1 && m.d.y == 0 && m.b.is_zero() && m.c.is_zero();
    bool minus_id = m.a.x == -1 && m.a.y == 0 && m.d.x == -1 && m.d.y == 0 && m.b.is_zero() && m.c.is_zero();
    if (plus_id || minus_id) fail(errc::identity_matrix, "identity fixes everything");
    ComplexFixedPoints out;
    if (m.c.is_zero()) {
        out.includes_infinity = true;
        GaussRational diff = g_sub(m.d, m.a);
        if (!diff.is_zero())
            out.points.push_back(cs_make(g_div(m.b, diff, d), {0, 0}, {0, 0}, d));
        return out;
    }
    GaussRational amd = g_sub(m.a, m.d);
    GaussRational disc = g_add(g_mul(g_sub(m.d, m.a), g_sub(m.d, m.a), d),
                               g_mul(GaussRational(4, 0), g_mul(m.c, m.b, d), d));
    GaussRational inv2c = g_inv(g_mul(GaussRational(2, 0), m.c, d), d);
    GaussRational u = g_mul(amd, inv2c, d);
    GaussRational root;
    if (gauss_is_square(disc, d, &root)) {
        GaussRational r1 = g_add(u, g_mul(root, inv2c, d));
        GaussRational r2 = g_sub(u, g_mul(root, inv2c, d));
        out.points.push_back(cs_make(r1, {0, 0}, {0, 0}, d));
        if (!(r1 == r2)) out.points.push_back(cs_make(r2, {0, 0}, {0, 0}, d));
        return out;
    }
    out.points.push_back(cs_make(u, inv2c, disc, d));
    out.points.push_back(cs_make(u, g_neg(inv2c), disc, d));
    return out;
}

namespace {

// Double-precision Clifford shadow for fixed-point iteration.
struct DCl {
    int rank;
    std::array<double, 8> c{};
};

DCl dcl_of(const CliffordElement& x) {
    DCl r{x.rank(), x.approx()};
    return r;
}

DCl dcl_mul(const DCl& a, const DCl& b) {
    DCl r{a.rank, {}};
    int n = 1 << a.rank;
    for (int i = 0; i < n; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < n; ++j) {
            if (b.c[j] == 0) continue;
            r.c[i ^ j] += CliffordElement::blade_sign(i, j) * a.c[i] * b.c[j];
        }
    }
    return r;
}

DCl dcl_add(const DCl& a, const DCl& b) {
    DCl r = a;
    for (int i = 0; i < (1 << a.rank); ++i) r.c[i] += b.c[i];
    return r;
}

DCl dcl_conj(const DCl& a) {
    DCl r = a;
    for (int i = 0; i < (1 << a.rank); ++i) {
        int k = __builtin_popcount(static_cast<unsigned>(i));
        int s = ((k % 2) ? -1 : 1) * (((k * (k - 1) / 2) % 2) ? -1 : 1);
        r.c[i] *= s;
    }
    return r;
}

std::optional<DCl> dcl_inverse(const DCl& a) {
    DCl cj = dcl_conj(a);
    DCl n = dcl_mul(a, cj);
    double norm = n.c[0];
    double resid = 0;
    for (int i = 1; i < (1 << a.rank); ++i) resid += std::abs(n.c[i]);
    if (std::abs(norm) < 1e-300 || resid > 1e-6 * std::abs(norm)) return std::nullopt;
    DCl r = cj;
    for (int i = 0; i < (1 << a.rank); ++i) r.c[i] /= norm;
    return r;
}

std::optional<std::vector<double>> dcl_mobius(const CliffordMatrix& m,
                                              const std::vector<double>& v) {
    int rank = m.rank();
    DCl x{rank, {}};
    x.c[0] = v[0];
    for (int i = 0; i < rank; ++i) x.c[1u << i] = v[i + 1];
    DCl den = dcl_add(dcl_mul(dcl_of(m.c), x), dcl_of(m.d));
    auto deninv = dcl_inverse(den);
    if (!deninv) return std::nullopt;
    DCl num = dcl_add(dcl_mul(dcl_of(m.a), x), dcl_of(m.b));
    DCl r = dcl_mul(num, *deninv);
    std::vector<double> out(rank + 1);
    out[0] = r.c[0];
    for (int i = 0; i < rank; ++i) out[i + 1] = r.c[1u << i];
    return out;
}

double vdist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

std::optional<std::vector<double>> iterate_fixed(const CliffordMatrix& m,
                                                 std::vector<double> z) {
    for (int it = 0; it < 100000; ++it) {
        auto nz = dcl_mobius(m, z);
        if (!nz) return std::nullopt; // hit the pole
        double norm = 0;
        for (double c : *nz) norm += c * c;
        if (norm > 1e24) return std::nullopt; // running off to infinity
        double d = vdist(z, *nz);
        z = *nz;
        if (d < 1e-13) return z;
    }
    return std::nullopt;
}

} // namespace

CliffordFixedPoints fixed_points_clifford(const CliffordMatrix& m, unsigned seed) {
    if (m.is_identity() || CliffordMatrix{-m.a, -m.b, -m.c, -m.d}.is_identity())
        fail(errc::identity_matrix, "identity fixes everything");
    CliffordFixedPoints out;
    int dim = m.rank() + 1;
    if (m.c.is_zero()) out.includes_infinity = true;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto run = [&](const CliffordMatrix& mat) -> std::optional<std::vector<double>> {
        std::vector<std::vector<double>> hits;
        for (int s = 0; s < 3; ++s) {
            std::vector<double> z(dim);
            for (double& c : z) c = u(rng);
            auto fp = iterate_fixed(mat, z);
            if (fp) hits.push_back(*fp);
        }
        if (hits.empty()) return std::nullopt;
        for (size_t i = 1; i < hits.size(); ++i)
            if (vdist(hits[0], hits[i]) > 1e-9)
                fail(errc::no_convergence, "seeds disagree on the attracting fixed point");
        double agree = 0;
        for (size_t i = 1; i < hits.size(); ++i) agree = std::max(agree, vdist(hits[0], hits[i]));
        out.seed_agreement = std::max(out.seed_agreement, agree);
        return hits[0];
    };

    auto attracting = run(m);
    auto repelling = run(m.inverse());
    if (!attracting && !repelling && !out.includes_infinity)
        fail(errc::no_convergence, "no fixed point found from any seed");
    if (attracting) out.points.push_back(*attracting);
    if (repelling && (!attracting || vdist(*attracting, *repelling) > 1e-9))
        out.points.push_back(*repelling);
    return out;
}

std::string GeneratorWord::str(const Space& space) const {
    std::ostringstream os;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (i) os << " ";
        if (tokens[i].inv)
            os << "Inv";
        else
            os << "T(" << space.lattice_to_string(tokens[i].trans) << ")";
    }
    return os.str();
}

CliffordMatrix word_product(const Space& space, const GeneratorWord& w) {
    int rank = space.matrix_rank();
    CliffordMatrix acc = CliffordMatrix::identity(rank);
    CliffordMatrix S = CliffordMatrix::inversion(rank);
    for (const auto& t : w.tokens) {
        if (t.inv)
            acc = acc * S;
        else
            acc = acc * CliffordMatrix::translation(space.lattice_to_clifford(t.trans));
    }
    return acc;
}

GeneratorWord hidden_symmetry_word(const Space& space, const CliffordElement& a,
                                   const CliffordElement& b) {
    if (!is_one(a * b))
        fail(errc::not_inverses, "need a*b = 1, got " + (a * b).str());
    auto trans_token = [&](const CliffordElement& v) {
        WordToken t;
        t.inv = false;
        t.trans = space.clifford_to_lattice(v);
        return t;
    };
    WordToken inv;
    inv.inv = true;
    GeneratorWord w;
    w.tokens = {inv, trans_token(-b), inv, trans_token(-a), inv, trans_token(-b)};
    return w;
}

namespace {

std::vector<CliffordElement> lattice_units(const Space& space) {
    std::vector<CliffordElement> units;
    int rank = space.matrix_rank();
    auto push_vec = [&](std::vector<QuadExt> coords) {
        units.push_back(CliffordElement::vector(rank, coords));
    };
    if (space.kind() == SpaceKind::r3) {
        for (int s : {1, -1}) {
            push_vec({QuadExt(s), QuadExt(0), QuadExt(0)});
            push_vec({QuadExt(0), QuadExt(s), QuadExt(0)});
            push_vec({QuadExt(0), QuadExt(0), QuadExt(s)});
        }
        return units;
    }
    if (space.kind() == SpaceKind::r4_hurwitz) {
        for (int i = 0; i < 4; ++i)
            for (int s : {1, -1}) {
                std::vector<QuadExt> c(4, QuadExt(0));
                c[i] = QuadExt(s);
                push_vec(c);
            }
        for (int s0 : {1, -1})
            for (int s1 : {1, -1})
                for (int s2 : {1, -1})
                    for (int s3 : {1, -1})
                        push_vec({QuadExt(Rational(s0, 2)), QuadExt(Rational(s1, 2)),
                                  QuadExt(Rational(s2, 2)), QuadExt(Rational(s3, 2))});
        return units;
    }
    fail(errc::space_mismatch, "generator reduction supports r3 and r4-hurwitz");
}

// BFS factorization of a unit-norm ring element into unit lattice vectors.
std::vector<CliffordElement> unit_vector_factorization(const Space& space,
                                                       const CliffordElement& a) {
    if (a.is_vector()) return {a};
    auto units = lattice_units(space);
    struct Node {
        CliffordElement value;
        std::vector<int> word;
    };
    auto key_cmp = [](const CliffordElement& x, const CliffordElement& y) {
        return CliffordElement::key_less(x, y);
    };
    std::map<CliffordElement, bool, decltype(key_cmp)> seen(key_cmp);
    std::deque<Node> queue;
    CliffordElement one(a.rank(), QuadExt(1));
    queue.push_back({one, {}});
    seen[one] = true;
    while (!queue.empty()) {
        Node n = queue.front();
        queue.pop_front();
        if (n.word.size() >= 4) continue;
        for (size_t i = 0; i < units.size(); ++i) {
            CliffordElement next = n.value * units[i];
            auto word = n.word;
            word.push_back(static_cast<int>(i));
            if (next == a) {
                std::vector<CliffordElement> out;
                for (int w : word) out.push_back(units[w]);
                return out;
            }
            if (!seen.emplace(next, true).second) continue;
            queue.push_back({next, word});
        }
    }
    fail(errc::non_unit_residual,
         "could not factor the diagonal unit into lattice vectors: " + a.str());
}

} // namespace

GeneratorWord unit_diagonal_word(const Space& space, const CliffordElement& a) {
    auto n = a.norm_sq_if_scalar();
    if (!n || !(*n == QuadExt(1)))
        fail(errc::non_unit_residual, "diagonal entry must have norm 1: " + a.str());
    GeneratorWord w;
    for (const CliffordElement& u : unit_vector_factorization(space, a)) {
        GeneratorWord piece = hidden_symmetry_word(space, u, u.inverse());
        w.tokens.insert(w.tokens.end(), piece.tokens.begin(), piece.tokens.end());
    }
    return w;
}

ReduceResult reduce_to_generators(const Space& space, const CliffordMatrix& m) {
    ValidationReport rep = cm_validate(m);
    if (!rep.valid())
        fail(errc::not_valid_clifford_matrix, "invalid Clifford matrix: " + rep.failure);
    int rank = space.matrix_rank();
    if (rank != m.rank()) fail(errc::space_mismatch, "matrix rank does not match space");

    ReduceResult result;
    CliffordMatrix cur = m;
    WordToken inv_token;
    inv_token.inv = true;

    auto int_norm = [](const CliffordElement& x) {
        QuadExt n = x.norm_sq();
        if (!n.is_rational() || den(n.a()) != 1)
            fail(errc::not_valid_clifford_matrix, "entry norm is not an integer: " + x.str());
        return num(n.a());
    };

    while (!cur.c.is_zero()) {
        Int na = int_norm(cur.a);
        Int nc = int_norm(cur.c);
        if (nc > na) {
            // swap step: left-multiply by the inversion
            cur = CliffordMatrix::inversion(rank) * cur;
            // S^-1 = S^3
            result.word.tokens.push_back(inv_token);
            result.word.tokens.push_back(inv_token);
            result.word.tokens.push_back(inv_token);
            result.steps.push_back({true, nc, nc});
        } else {
            CliffordElement ratio = cur.a * cur.c.inverse();
            if (!ratio.is_vector())
                fail(errc::not_valid_clifford_matrix, "a c^-1 is not a vector");
            LatticeElem a0 = space.round_to_lattice(space.clifford_to_point(ratio));
            if (a0.is_zero())
                fail(errc::internal, "rounding returned zero with |a| >= |c|");
            CliffordElement t = space.lattice_to_clifford(a0);
            cur = CliffordMatrix::translation(-t) * cur;
            Int na_new = int_norm(cur.a);
            if (na_new >= nc)
                fail(errc::internal, "column norm did not descend at a translation step");
            WordToken tok;
            tok.inv = false;
            tok.trans = a0;
            result.word.tokens.push_back(tok);
            result.steps.push_back({false, na, na_new});
        }
    }

    // c = 0: clear b, then expand the diagonal.
    if (!cur.b.is_zero()) {
        CliffordElement bd = cur.b * cur.d.inverse();
        if (!bd.is_vector()) fail(errc::not_valid_clifford_matrix, "b d^-1 is not a vector");
        LatticeElem off = space.clifford_to_lattice(bd);
        CliffordElement t = space.lattice_to_clifford(off);
        cur = CliffordMatrix::translation(-t) * cur;
        WordToken tok;
        tok.inv = false;
        tok.trans = off;
        result.word.tokens.push_back(tok);
    }
    if (!cur.b.is_zero() || !cur.c.is_zero())
        fail(errc::internal, "reduction did not reach a diagonal matrix");
    if (!is_one(cur.a) || !is_one(cur.d)) {
        GeneratorWord diag = unit_diagonal_word(space, cur.a);
        // check the expansion reproduces diag(a, d) exactly
        CliffordMatrix check = word_product(space, diag);
        if (!(check.a == cur.a && check.d == cur.d) || !check.b.is_zero() || !check.c.is_zero())
            fail(errc::non_unit_residual,
                 "terminal diagonal " + cur.str() + " is not a unit diagonal");
        result.word.tokens.insert(result.word.tokens.end(), diag.tokens.begin(),
                                  diag.tokens.end());
    }
    return result;
}

bool in_hurwitz_span(const CliffordElement& x) {
    if (x.rank() != 3) fail(errc::usage, "Hurwitz span lives in the rank-3 algebra");
    // x in Z^8 + h Z^8  <=>  2x integral and the parity vector of 2x lies in
    // the F2 column space of the blade images 2*h*e_I.
    std::array<int, 8> parity;
    for (int blade = 0; blade < 8; ++blade) {
        QuadExt c = x.coeff(blade);
        if (!c.is_rational()) return false;
        Rational two_c = c.a() * 2;
        if (den(two_c) != 1) return false;
        parity[blade] = static_cast<int>(num(two_c) % 2 != 0);
    }
    // columns: parities of 2 h e_I
    static const auto columns = [] {
        std::array<std::array<int, 8>, 8> cols{};
        CliffordElement h = hurwitz_h();
        for (int I = 0; I < 8; ++I) {
            CliffordElement he = h * CliffordElement::basis(3, static_cast<unsigned>(I));
            for (int blade = 0; blade < 8; ++blade) {
                Rational two_c = he.coeff(blade).a() * 2;
                cols[I][blade] = static_cast<int>(num(two_c) % 2 != 0);
            }
        }
        return cols;
    }();
    // Solve columns * beta = parity over F2 by elimination.
    std::array<std::array<int, 9>, 8> aug{};
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) aug[r][c] = columns[c][r];
        aug[r][8] = parity[r];
    }
    int row = 0;
    for (int col = 0; col < 8 && row < 8; ++col) {
        int pivot = -1;
        for (int r = row; r < 8; ++r)
            if (aug[r][col]) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(aug[row], aug[pivot]);
        for (int r = 0; r < 8; ++r)
            if (r != row && aug[r][col])
                for (int c2 = col; c2 <= 8; ++c2) aug[r][c2] ^= aug[row][c2];
        ++row;
    }
    for (int r = row; r < 8; ++r)
        if (aug[r][8]) return false;
    return true;
}

HurwitzClosureReport hurwitz_closure_check(long samples, unsigned seed) {
    HurwitzClosureReport rep;
    CliffordElement h = hurwitz_h();
    auto integral = [](const CliffordElement& x) {
        for (int b = 0; b < x.blade_count(); ++b) {
            if (!x.coeff(b).is_rational()) return false;
            if (den(x.coeff(b).a()) != 1) return false;
        }
        return true;
    };
    rep.h_squared_ok = integral(h * h - h);
    rep.commutation_ok = true;
    for (int i = 0; i < 3; ++i) {
        CliffordElement e = CliffordElement::basis(3, 1u << i);
        if (!integral(e * h - h * e)) rep.commutation_ok = false;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-4, 4);
    auto random_span_elem = [&] {
        CliffordElement alpha(3), beta(3);
        for (int b = 0; b < 8; ++b) {
            alpha.set_coeff(b, QuadExt(Rational(coeff(rng))));
            beta.set_coeff(b, QuadExt(Rational(coeff(rng))));
        }
        return alpha + h * beta;
    };
    for (long s = 0; s < samples; ++s) {
        CliffordElement x = random_span_elem();
        CliffordElement y = random_span_elem();
        if (!in_hurwitz_span(x * y)) ++rep.violations;
        ++rep.samples;
    }
    return rep;
}

} // namespace cfx
