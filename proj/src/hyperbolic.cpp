#include "cfx/hyperbolic.hpp"

#include <cmath>
#include <limits>

namespace cfx {

double Height4::approx() const { return std::pow(fourth.approx(), 0.25); }

Height4 horoball_invert_height(const Space& space, const Point& base, const Height4& h) {
    if (base.is_zero()) fail(errc::inversion_of_zero, "horoball based at the inversion pole");
    QuadExt g4 = space.gauge4(base);
    return {h.fourth / g4};
}

HoroballTrace track_horoball(const Space& space, const Point& x, const Rational& h0,
                             long max_iter) {
    for (const auto& c : x.x)
        if (!c.is_rational())
            fail(errc::not_rational,
                 "horoball certificates apply to parabolic (rational) points only");
    HoroballTrace trace;
    Rational rad4 = space.rad4();
    QuadExt h4 = QuadExt(h0) * QuadExt(h0) * QuadExt(h0) * QuadExt(h0);

    Point state = x;
    if (!space.in_domain(state)) {
        LatticeElem a0 = space.round_to_lattice(state);
        state = space.translate_inv(a0, state); // translation keeps heights
    }
    while (!state.is_zero()) {
        if (trace.iterations >= max_iter) {
            trace.finite = false;
            trace.final_height4 = h4;
            return trace;
        }
        QuadExt g4 = space.gauge4(state);
        h4 = h4 / g4; // inversion raises the horoball by 1/|state|
        GaussStep step = gauss_step(space, state);
        HoroballStep hs;
        hs.digit = step.digit;
        hs.state_gauge4 = g4;
        hs.height4 = h4;
        hs.multiplier_ok = g4 <= QuadExt(rad4);
        if (!hs.multiplier_ok) trace.certificate_ok = false;
        trace.steps.push_back(std::move(hs));
        state = step.next;
        ++trace.iterations;
    }
    trace.finite = true;
    trace.final_height4 = h4;
    return trace;
}

UpperHalfPoint extended_invert(const Space& space, const UpperHalfPoint& x) {
    if (x.s.sign() <= 0) fail(errc::usage, "horoheight must be positive");
    if (space.kind() == SpaceKind::heisenberg) {
        const QuadExt &px = x.p.x[0], &py = x.p.x[1], &t = x.p.x[2];
        QuadExt n = px * px + py * py;
        QuadExt ns = n + x.s;
        QuadExt q = ns * ns + t * t; // |n + w|^2 with w = s + it
        if (q.is_zero()) fail(errc::inversion_of_zero, "extended inversion at its pole");
        QuadExt qi = q.inverse();
        // -z (ns - it) / q
        QuadExt nx = -(px * ns + py * t) * qi;
        QuadExt ny = -(py * ns - px * t) * qi;
        // conj(w)/q = (s - it)/q
        QuadExt nt = -t * qi;
        QuadExt s2 = x.s * qi;
        return {space.make_point({nx, ny, nt}), s2};
    }
    // vector models: denom = |z|^2 + s, z_i -> sigma_i z_i / denom,
    // s -> s / denom^2 (the sign pattern keeps the boundary limit equal to
    // the space's own inversion).
    QuadExt n(0);
    for (const auto& c : x.p.x) n += c * c;
    QuadExt denom = n + x.s;
    if (denom.is_zero()) fail(errc::inversion_of_zero, "extended inversion at its pole");
    QuadExt di = denom.inverse();
    const std::vector<int>& sg = space.inversion_signs();
    std::vector<QuadExt> z;
    z.reserve(x.p.x.size());
    for (size_t i = 0; i < x.p.x.size(); ++i) {
        QuadExt c = x.p.x[i] * di;
        z.push_back(sg[i] < 0 ? -c : c);
    }
    return {space.make_point(std::move(z)), x.s * di * di};
}

QuadExt upper_gauge4(const Space& space, const UpperHalfPoint& x) {
    if (space.kind() == SpaceKind::heisenberg) {
        QuadExt n = x.p.x[0] * x.p.x[0] + x.p.x[1] * x.p.x[1];
        QuadExt ns = n + x.s;
        return ns * ns + x.p.x[2] * x.p.x[2];
    }
    QuadExt n(0);
    for (const auto& c : x.p.x) n += c * c;
    QuadExt ns = n + x.s;
    return ns * ns;
}

bool is_widely_spaced(const Space& space, const std::optional<Point>& a,
                      const std::optional<Point>& b, const Rational& rad4) {
    bool a_ok = a.has_value() && space.gauge4(*a) < QuadExt(rad4);
    if (!a_ok) return false;
    if (!b.has_value()) return true; // infinity
    // |b| > rad^{-1/2}  <=>  gauge4(b)^2 > 1/rad4
    QuadExt g4 = space.gauge4(*b);
    return g4 * g4 * QuadExt(rad4) > QuadExt(1);
}

bool in_goalpost_region(const Space& space, const UpperHalfPoint& x) {
    if (!space.in_domain(x.p)) return false;
    return upper_gauge4(space, x) >= QuadExt(1);
}

std::optional<double> geodesic_sphere_height_real(double a, std::optional<double> b) {
    if (!b.has_value()) {
        // vertical line at a
        double y2 = 1 - a * a;
        if (y2 < 0) return std::nullopt;
        return std::sqrt(y2);
    }
    double bb = *b;
    bool a_in = std::abs(a) < 1, b_in = std::abs(bb) < 1;
    if (a_in == b_in) return std::nullopt;
    double x = (1 + a * bb) / (a + bb);
    double y2 = 1 - x * x;
    if (y2 < 0) return std::nullopt;
    return std::sqrt(y2);
}

std::optional<double> geodesic_sphere_height_complex(const std::array<double, 2>& a,
                                                     const std::array<double, 2>& b) {
    double cx = (a[0] + b[0]) / 2, cy = (a[1] + b[1]) / 2;
    double dx = b[0] - a[0], dy = b[1] - a[1];
    double len = std::sqrt(dx * dx + dy * dy);
    if (len < 1e-15) return std::nullopt;
    double ux = dx / len, uy = dy / len;
    double r = len / 2;
    double c2 = cx * cx + cy * cy;
    double cu = cx * ux + cy * uy;
    if (std::abs(cu) < 1e-15) {
        // semicircle symmetric about the origin plane; it meets the sphere
        // only in the degenerate tangent case
        return std::nullopt;
    }
    double ct = (1 - c2 - r * r) / (2 * r * cu);
    if (std::abs(ct) > 1) return std::nullopt;
    return r * std::sqrt(1 - ct * ct);
}

GeodesicMinHeight geodesic_sphere_min_height(const Space& space, double eps, double eps_prime,
                                             int grid) {
    if (!(eps < 1 && 1 < eps_prime)) fail(errc::usage, "need eps < 1 < eps_prime");
    if (grid < 2) fail(errc::usage, "grid too small");
    GeodesicMinHeight out;
    out.min_height = std::numeric_limits<double>::infinity();
    const double span = 2.0;

    if (space.kind() == SpaceKind::real_nearest || space.kind() == SpaceKind::real_regular) {
        for (int i = 0; i <= grid; ++i) {
            double a = -eps + (2 * eps * i) / grid;
            for (int j = 0; j <= grid; ++j) {
                double mag = eps_prime + (span * j) / grid;
                for (int s : {+1, -1}) {
                    double b = s * mag;
                    ++out.pairs;
                    auto y = geodesic_sphere_height_real(a, b);
                    if (!y) {
                        ++out.missed;
                        continue;
                    }
                    if (*y < out.min_height) {
                        out.min_height = *y;
                        out.argmin_a = {a};
                        out.argmin_b = {b};
                    }
                }
            }
        }
        return out;
    }
    if (space.kind() == SpaceKind::complex_plane) {
        int radial = std::max(2, grid / 16);
        int angular = std::max(8, grid / 2);
        const double pi = 3.14159265358979323846;
        for (int ia = 0; ia <= radial; ++ia) {
            double ra = (eps * ia) / radial;
            for (int ja = 0; ja < angular; ++ja) {
                double ta = (2 * pi * ja) / angular;
                std::array<double, 2> a{ra * std::cos(ta), ra * std::sin(ta)};
                for (int ib = 0; ib <= radial; ++ib) {
                    double rb = eps_prime + (span * ib) / radial;
                    for (int jb = 0; jb < angular; ++jb) {
                        double tb = (2 * pi * jb) / angular;
                        std::array<double, 2> b{rb * std::cos(tb), rb * std::sin(tb)};
                        ++out.pairs;
                        auto y = geodesic_sphere_height_complex(a, b);
                        if (!y) {
                            ++out.missed;
                            continue;
                        }
                        if (*y < out.min_height) {
                            out.min_height = *y;
                            out.argmin_a = {a[0], a[1]};
                            out.argmin_b = {b[0], b[1]};
                        }
                    }
                }
            }
        }
        return out;
    }
    fail(errc::space_mismatch,
         "geodesic heights are computed in the real and complex vector models only");
}

} // namespace cfx
