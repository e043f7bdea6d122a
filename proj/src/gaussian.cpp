#include "cfx/gaussian.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace cfx {

GaussRational g_add(const GaussRational& a, const GaussRational& b) {
    return {a.x + b.x, a.y + b.y};
}
GaussRational g_sub(const GaussRational& a, const GaussRational& b) {
    return {a.x - b.x, a.y - b.y};
}
GaussRational g_neg(const GaussRational& a) { return {-a.x, -a.y}; }
GaussRational g_conj(const GaussRational& a) { return {a.x, -a.y}; }

GaussRational g_mul(const GaussRational& a, const GaussRational& b, const Int& d) {
    // (x + yw)(x' + y'w) with w^2 = -d
    return {a.x * b.x - Rational(d) * a.y * b.y, a.x * b.y + a.y * b.x};
}

Rational g_norm(const GaussRational& a, const Int& d) {
    return a.x * a.x + Rational(d) * a.y * a.y;
}

GaussRational g_inv(const GaussRational& a, const Int& d) {
    Rational n = g_norm(a, d);
    if (n == 0) fail(errc::division_by_zero, "inverse of zero Gaussian value");
    return {a.x / n, -a.y / n};
}

GaussRational g_div(const GaussRational& a, const GaussRational& b, const Int& d) {
    return g_mul(a, g_inv(b, d), d);
}

bool gauss_is_square(const GaussRational& g, const Int& d, GaussRational* root) {
    // Solve (x+yw)^2 = g over the rationals: x^2 - d y^2 = g.x, 2xy = g.y.
    if (g.y == 0) {
        if (g.x == 0) {
            if (root) *root = {0, 0};
            return true;
        }
        // y = 0 branch: x^2 = g.x
        if (g.x > 0) {
            Rational rx = g.x;
            Int rn, rd;
            if (is_perfect_square(num(rx), &rn) && is_perfect_square(den(rx), &rd)) {
                if (root) *root = {Rational(rn, rd), 0};
                return true;
            }
        }
        // x = 0 branch: -d y^2 = g.x
        Rational yy = -g.x / Rational(d);
        if (yy > 0) {
            Int rn, rd;
            if (is_perfect_square(num(yy), &rn) && is_perfect_square(den(yy), &rd)) {
                if (root) *root = {0, Rational(rn, rd)};
                return true;
            }
        }
        return false;
    }
    // x != 0 and y != 0; substitute y = g.y/(2x):
    // x^2 - d g.y^2/(4x^2) = g.x  =>  4x^4 - 4 g.x x^2 - d g.y^2 = 0
    // Solve the quadratic in t = x^2 exactly.
    Rational A(4), B = -4 * g.x, C = -Rational(d) * g.y * g.y;
    Rational disc = B * B - 4 * A * C;
    if (disc < 0) return false;
    Int dn, dd;
    if (!is_perfect_square(num(disc), &dn) || !is_perfect_square(den(disc), &dd)) return false;
    Rational sq(dn, dd);
    for (int s : {+1, -1}) {
        Rational t = (-B + (s > 0 ? sq : -sq)) / (2 * A);
        if (t <= 0) continue;
        Int tn, td;
        if (is_perfect_square(num(t), &tn) && is_perfect_square(den(t), &td)) {
            Rational x(tn, td);
            Rational y = g.y / (2 * x);
            if (root) *root = {x, y};
            return true;
        }
    }
    return false;
}

std::string gauss_to_string(const GaussRational& g, const Int& d) {
    std::string unit = (d == 1) ? "i" : ("i*sqrt(" + d.str() + ")");
    if (g.y == 0) return rational_to_string(g.x);
    std::ostringstream os;
    bool wrote = false;
    if (g.x != 0) {
        os << rational_to_string(g.x);
        wrote = true;
    }
    Rational yabs = g.y < 0 ? Rational(-g.y) : g.y;
    if (g.y < 0)
        os << "-";
    else if (wrote)
        os << "+";
    if (yabs != 1) os << rational_to_string(yabs) << "*";
    os << unit;
    return os.str();
}

namespace {

struct GaussParser {
    const std::string& s;
    const Int& d;
    size_t i = 0;

    GaussParser(const std::string& text, const Int& base) : s(text), d(base) {}

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }

    Rational parse_number() {
        skip_ws();
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail(errc::parse_error, "expected number in '" + s + "'");
        Int n(s.substr(start, i - start));
        Int dn = 1;
        size_t save = i;
        if (eat('/')) {
            skip_ws();
            size_t ds = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (i == ds)
                i = save;
            else
                dn = Int(s.substr(ds, i - ds));
        }
        return Rational(n, dn);
    }

    // term := [rational]['*']['i' | 'isqrt(d)' | 'i*sqrt(d)']
    GaussRational parse_term() {
        skip_ws();
        int sgn = 1;
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sgn = -sgn;
            ++i;
            skip_ws();
        }
        Rational coef(1);
        bool saw = false;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            coef = parse_number();
            saw = true;
        }
        eat('*');
        skip_ws();
        bool imag = false;
        if (i < s.size() && s[i] == 'i') {
            ++i;
            imag = true;
            // optional sqrt suffix, which must match the ring's base
            skip_ws();
            eat('*');
            skip_ws();
            if (s.compare(i, 4, "sqrt") == 0) {
                i += 4;
                if (!eat('(')) fail(errc::parse_error, "expected '(' in '" + s + "'");
                Rational base = parse_number();
                if (!eat(')')) fail(errc::parse_error, "expected ')' in '" + s + "'");
                if (base != Rational(d))
                    fail(errc::mixed_radicand, "imaginary base mismatch in '" + s + "'");
            }
        }
        if (!saw && !imag) fail(errc::parse_error, "expected term in '" + s + "'");
        if (sgn < 0) coef = -coef;
        return imag ? GaussRational(0, coef) : GaussRational(coef, 0);
    }

    GaussRational parse() {
        GaussRational acc = parse_term();
        skip_ws();
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            acc = g_add(acc, parse_term());
            skip_ws();
        }
        if (i != s.size()) fail(errc::parse_error, "trailing input in '" + s + "'");
        return acc;
    }
};

} // namespace

GaussRational parse_gauss(const std::string& text, const Int& d) {
    std::string t = text;
    // "isqrt(" is accepted as shorthand for "i*sqrt("
    size_t pos;
    while ((pos = t.find("isqrt(")) != std::string::npos) t.replace(pos, 6, "i*sqrt(");
    GaussParser p(t, d);
    return p.parse();
}

RatInterval iv_point(const Rational& v) { return {v, v}; }
RatInterval iv_add(const RatInterval& a, const RatInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
RatInterval iv_sub(const RatInterval& a, const RatInterval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
RatInterval iv_neg(const RatInterval& a) { return {-a.hi, -a.lo}; }

RatInterval iv_scale(const RatInterval& a, const Rational& c) {
    if (c >= 0) return {a.lo * c, a.hi * c};
    return {a.hi * c, a.lo * c};
}

RatInterval iv_mul(const RatInterval& a, const RatInterval& b) {
    Rational c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
    return {std::min(std::min(c1, c2), std::min(c3, c4)),
            std::max(std::max(c1, c2), std::max(c3, c4))};
}

RatInterval iv_sqrt_rational(const Rational& r, unsigned bits) {
    if (r < 0) fail(errc::internal, "sqrt enclosure of negative rational");
    if (r == 0) return {0, 0};
    // sqrt(p/q) = sqrt(p*q)/q scaled by 2^bits
    Int scale = Int(1) << bits;
    Int pq = num(r) * den(r);
    Int s = isqrt(pq * scale * scale);
    Rational lo(s, den(r) * scale);
    Rational hi(s + 1, den(r) * scale);
    return {lo, hi};
}

RatInterval iv_sqrt(const RatInterval& a, unsigned bits) {
    Rational lo = a.lo < 0 ? Rational(0) : a.lo;
    if (a.hi < 0) fail(errc::internal, "sqrt enclosure of negative interval");
    return {iv_sqrt_rational(lo, bits).lo, iv_sqrt_rational(a.hi, bits).hi};
}

SqrtEnclosure enclose_sqrt(const GaussRational& delta, const Int& d, unsigned bits) {
    // delta = A + B*w; as a complex number its real part is A and its
    // imaginary part is B*sqrt(d).  Principal square root via half-angle:
    //   re = sqrt((|delta| + A)/2), im = sign(Im) * sqrt((|delta| - A)/2).
    const Rational& A = delta.x;
    const Rational& B = delta.y;
    Rational n2 = A * A + Rational(d) * B * B; // |delta|^2
    RatInterval r = iv_sqrt_rational(n2, bits + 4);
    SqrtEnclosure out;
    if (B == 0) {
        if (A >= 0) {
            out.c1 = iv_sqrt_rational(A, bits);
            out.cw = iv_point(0);
        } else {
            out.c1 = iv_point(0);
            // sqrt(A) = i*sqrt(-A) = sqrt(-A/d) * w
            out.cw = iv_sqrt_rational(-A / Rational(d), bits);
        }
        return out;
    }
    RatInterval re2 = iv_scale(iv_add(r, iv_point(A)), Rational(1, 2));
    RatInterval im2 = iv_scale(iv_sub(r, iv_point(A)), Rational(1, 2));
    RatInterval re = iv_sqrt(re2, bits);
    RatInterval im = iv_sqrt(im2, bits);
    if (B < 0) im = iv_neg(im);
    // Principal root has re >= 0; convert im (complex units) to w units:
    // cw = im / sqrt(d).
    RatInterval sqd = iv_sqrt_rational(Rational(d), bits + 4);
    Rational inv_lo = 1 / sqd.hi, inv_hi = 1 / sqd.lo;
    RatInterval cw = iv_mul(im, RatInterval{inv_lo, inv_hi});
    out.c1 = re;
    out.cw = cw;
    return out;
}


namespace {

// Exact (1, w) coordinates of z when they live in one real quadratic tower:
// v = 0, real radicand, or |delta| rational (then both coordinates of
// sqrt(delta) are rational multiples of one square root).
std::optional<std::pair<QuadExt, QuadExt>> cs_exact_coords(const ComplexSurd& z) {
    if (z.v.is_zero()) return std::make_pair(QuadExt(z.u.x), QuadExt(z.u.y));
    const Rational& A = z.delta.x;
    const Rational& B = z.delta.y;
    if (B == 0) {
        if (A >= 0) {
            QuadExt s = QuadExt::sqrt_of(A);
            return std::make_pair(QuadExt(z.u.x) + QuadExt(z.v.x) * s,
                                  QuadExt(z.u.y) + QuadExt(z.v.y) * s);
        }
        QuadExt smd = QuadExt::sqrt_of(Rational(-A) * Rational(z.d));
        return std::make_pair(QuadExt(z.u.x) - QuadExt(z.v.y) * smd,
                              QuadExt(z.u.y) + QuadExt(z.v.x) * smd / QuadExt(Rational(z.d)));
    }
    // |delta|^2 = A^2 + d B^2; if |delta| is rational, sqrt(delta) has
    // coordinates c1 = sqrt(r1), cw = (B/(2 r1)) sqrt(r1) with
    // r1 = (|delta| + A)/2.
    Rational n2 = A * A + Rational(z.d) * B * B;
    Int root_num, root_den;
    if (!is_perfect_square(num(n2), &root_num) || !is_perfect_square(den(n2), &root_den))
        return std::nullopt;
    Rational mag(root_num, root_den);
    Rational r1 = (mag + A) / 2;
    if (r1 <= 0) return std::nullopt;
    QuadExt s1 = QuadExt::sqrt_of(r1);
    Rational cw_over_c1 = B / (2 * r1);
    // sqrt(delta) = s1 + (cw_over_c1 * s1) w
    QuadExt px = QuadExt(z.u.x) +
                 (QuadExt(z.v.x) - QuadExt(Rational(z.d)) * QuadExt(z.v.y) * QuadExt(cw_over_c1)) * s1;
    QuadExt qx = QuadExt(z.u.y) +
                 (QuadExt(z.v.x) * QuadExt(cw_over_c1) + QuadExt(z.v.y)) * s1;
    return std::make_pair(px, qx);
}

} // namespace

ComplexSurd cs_make(const GaussRational& u, const GaussRational& v, const GaussRational& delta, const Int& d) {
    ComplexSurd z;
    z.u = u;
    z.v = v;
    z.delta = delta;
    z.d = d;
    if (v.is_zero()) z.delta = GaussRational(0, 0);
    return z;
}

ComplexSurd cs_add_gauss(const ComplexSurd& z, const GaussRational& g) {
    return cs_make(g_add(z.u, g), z.v, z.delta, z.d);
}

ComplexSurd cs_mul_gauss(const ComplexSurd& z, const GaussRational& g) {
    return cs_make(g_mul(z.u, g, z.d), g_mul(z.v, g, z.d), z.delta, z.d);
}

ComplexSurd cs_inverse(const ComplexSurd& z) {
    if (z.is_zero()) fail(errc::division_by_zero, "inverse of zero");
    // 1/(u + v s) = (u - v s) / (u^2 - v^2 delta), s = sqrt(delta)
    GaussRational n = g_sub(g_mul(z.u, z.u, z.d), g_mul(g_mul(z.v, z.v, z.d), z.delta, z.d));
    if (n.is_zero())
        fail(errc::degenerate_quadratic, "square discriminant reached in surd arithmetic");
    GaussRational ninv = g_inv(n, z.d);
    return cs_make(g_mul(z.u, ninv, z.d), g_neg(g_mul(z.v, ninv, z.d)), z.delta, z.d);
}

CoordEnclosure cs_enclose(const ComplexSurd& z, unsigned bits) {
    CoordEnclosure out;
    if (z.v.is_zero()) {
        out.x = iv_point(z.u.x);
        out.y = iv_point(z.u.y);
        return out;
    }
    SqrtEnclosure s = enclose_sqrt(z.delta, z.d, bits);
    // v * sqrt(delta) = (vx + vy w)(c1 + cw w)
    //                 = vx c1 - d vy cw + (vx cw + vy c1) w
    RatInterval xs = iv_sub(iv_scale(s.c1, z.v.x), iv_scale(s.cw, Rational(z.d) * z.v.y));
    RatInterval ys = iv_add(iv_scale(s.cw, z.v.x), iv_scale(s.c1, z.v.y));
    out.x = iv_add(iv_point(z.u.x), xs);
    out.y = iv_add(iv_point(z.u.y), ys);
    return out;
}

namespace {

// Unique integer n with coordinate in [n-1/2, n+1/2), certified from an
// enclosure; nullopt if the enclosure straddles a boundary.
std::optional<Int> certified_round(const RatInterval& iv) {
    Int n = round_half_open(iv.mid());
    Rational lo_bound = Rational(n) - Rational(1, 2);
    Rational hi_bound = Rational(n) + Rational(1, 2);
    if (iv.lo >= lo_bound && iv.hi < hi_bound) return n;
    return std::nullopt;
}

constexpr unsigned kStartBits = 64;
constexpr unsigned kMaxBits = 4096;

} // namespace

GaussRational cs_round(const ComplexSurd& z) {
    if (auto exact = cs_exact_coords(z))
        return {Rational(exact->first.round_half_open()),
                Rational(exact->second.round_half_open())};
    for (unsigned bits = kStartBits; bits <= kMaxBits; bits *= 2) {
        CoordEnclosure c = cs_enclose(z, bits);
        auto nx = certified_round(c.x);
        auto ny = certified_round(c.y);
        if (nx && ny) return {Rational(*nx), Rational(*ny)};
    }
    fail(errc::rounding_undecided,
         "lattice rounding sits on a tie that certified precision cannot separate");
}

std::optional<int> cs_gauge4_cmp_one(const ComplexSurd& z) {
    if (auto exact = cs_exact_coords(z)) {
        QuadExt n2 = exact->first * exact->first +
                     QuadExt(Rational(z.d)) * exact->second * exact->second;
        QuadExt n4 = n2 * n2;
        return (n4 - QuadExt(1)).sign();
    }
    if (z.u.is_zero()) {
        // |z|^4 = |v|^4 * |delta|^2, all rational.
        Rational nv = g_norm(z.v, z.d);
        Rational nd = g_norm(z.delta, z.d);
        Rational n4 = nv * nv * nd;
        if (n4 < 1) return -1;
        if (n4 > 1) return +1;
        return 0;
    }
    for (unsigned bits = kStartBits; bits <= kMaxBits; bits *= 2) {
        CoordEnclosure c = cs_enclose(z, bits);
        // |z|^2 = x^2 + d y^2 in (1, w) coordinates
        RatInterval x2 = iv_mul(c.x, c.x);
        RatInterval y2 = iv_mul(c.y, c.y);
        RatInterval n2 = iv_add(x2, iv_scale(y2, Rational(z.d)));
        if (n2.hi < 1) return -1;
        if (n2.lo > 1) return +1;
    }
    return std::nullopt;
}

std::string cs_to_string(const ComplexSurd& z) {
    if (z.v.is_zero()) return gauss_to_string(z.u, z.d);
    std::ostringstream os;
    if (!z.u.is_zero()) os << gauss_to_string(z.u, z.d) << " + ";
    if (!(z.v.x == 1 && z.v.y == 0)) os << "(" << gauss_to_string(z.v, z.d) << ")*";
    os << "sqrt(" << gauss_to_string(z.delta, z.d) << ")";
    return os.str();
}

double cs_approx_x(const ComplexSurd& z) {
    CoordEnclosure c = cs_enclose(z, 64);
    return to_double(c.x.mid());
}

double cs_approx_y(const ComplexSurd& z) {
    CoordEnclosure c = cs_enclose(z, 64);
    return to_double(c.y.mid());
}

} // namespace cfx
