#include "cfx/spaces.hpp"

#include <cmath>
#include <sstream>

namespace cfx {

bool Point::is_zero() const {
    for (const auto& c : x)
        if (!c.is_zero()) return false;
    return true;
}

bool Point::key_less(const Point& p, const Point& q) {
    if (p.x.size() != q.x.size()) return p.x.size() < q.x.size();
    for (size_t i = 0; i < p.x.size(); ++i)
        if (!(p.x[i] == q.x[i])) return QuadExt::key_less(p.x[i], q.x[i]);
    return false;
}

bool LatticeElem::is_zero() const {
    for (const auto& c : g)
        if (c != 0) return false;
    return true;
}

Space Space::real(bool nearest, const Int& scale) {
    Space s;
    s.kind_ = nearest ? SpaceKind::real_nearest : SpaceKind::real_regular;
    s.dim_ = 1;
    s.scale_ = scale;
    s.signs_ = {nearest ? -1 : +1};
    return s;
}

Space Space::complex(const Int& imag_d) {
    if (imag_d < 1) fail(errc::usage, "imaginary base d must be >= 1");
    Space s;
    s.kind_ = SpaceKind::complex_plane;
    s.dim_ = 2;
    s.imag_d_ = imag_d;
    s.signs_ = {+1, -1}; // (x, -y)/|z|^2 = 1/z
    return s;
}

Space Space::r3() {
    Space s;
    s.kind_ = SpaceKind::r3;
    s.dim_ = 3;
    s.signs_ = {-1, +1, +1};
    return s;
}

Space Space::r4_hurwitz() {
    Space s;
    s.kind_ = SpaceKind::r4_hurwitz;
    s.dim_ = 4;
    s.signs_ = {-1, +1, +1, +1};
    return s;
}

Space Space::heisenberg() {
    Space s;
    s.kind_ = SpaceKind::heisenberg;
    s.dim_ = 3;
    return s;
}

Space Space::vector_model(int dim, std::vector<int> signs) {
    if (dim < 1 || dim > 4 || static_cast<int>(signs.size()) != dim)
        fail(errc::usage, "vector model needs 1..4 coordinates and matching signs");
    Space s;
    s.kind_ = dim == 1   ? (signs[0] < 0 ? SpaceKind::real_nearest : SpaceKind::real_regular)
              : dim == 2 ? SpaceKind::complex_plane
              : dim == 3 ? SpaceKind::r3
                         : SpaceKind::r4_hurwitz;
    s.dim_ = dim;
    s.signs_ = std::move(signs);
    // Keep the plain Z^m lattice for custom models.
    if (dim == 4) s.kind_ = SpaceKind::r4_hurwitz;
    return s;
}

int Space::matrix_rank() const {
    switch (kind_) {
        case SpaceKind::real_regular:
        case SpaceKind::real_nearest: return 0;
        case SpaceKind::complex_plane: return 1;
        case SpaceKind::r3: return 2;
        case SpaceKind::r4_hurwitz: return 3;
        case SpaceKind::heisenberg: return -1;
    }
    return -1;
}

int Space::inversion_det() const {
    // [[0,-1],[1,0]] has pseudo-determinant 1; x -> 1/x needs [[0,1],[1,0]]
    // (or a unit multiple) and for the real line that determinant is -1.
    return kind_ == SpaceKind::real_regular ? -1 : +1;
}

Point Space::zero() const {
    Point p;
    p.x.assign(dim_, QuadExt(0));
    return p;
}

Point Space::make_point(std::vector<QuadExt> coords) const {
    if (static_cast<int>(coords.size()) != dim_)
        fail(errc::space_mismatch, "expected " + std::to_string(dim_) + " coordinates");
    Point p;
    p.x = std::move(coords);
    return p;
}

QuadExt Space::norm2(const Point& p) const {
    QuadExt n(0);
    for (const auto& c : p.x) n += c * c;
    return n;
}

QuadExt Space::gauge4(const Point& p) const {
    if (kind_ == SpaceKind::heisenberg) {
        QuadExt z2 = p.x[0] * p.x[0] + p.x[1] * p.x[1];
        return z2 * z2 + p.x[2] * p.x[2];
    }
    QuadExt n = norm2(p);
    return n * n;
}

GaugeNorm Space::gauge_norm(const Point& p) const {
    QuadExt g4 = gauge4(p);
    double v = std::pow(g4.approx(), 0.25);
    return {g4, v};
}

QuadExt Space::cygan_dist4(const Point& p, const Point& q) const {
    if (p.x.size() != q.x.size())
        fail(errc::space_mismatch, "points from different spaces");
    if (kind_ == SpaceKind::heisenberg)
        return gauge4(heisenberg_mul(heisenberg_inv(p), q));
    Point diff;
    diff.x.reserve(p.x.size());
    for (size_t i = 0; i < p.x.size(); ++i) diff.x.push_back(q.x[i] - p.x[i]);
    return gauge4(diff);
}

GaugeNorm Space::cygan_dist(const Point& p, const Point& q) const {
    QuadExt d4 = cygan_dist4(p, q);
    return {d4, std::pow(d4.approx(), 0.25)};
}

Point Space::heisenberg_mul(const Point& p, const Point& q) const {
    if (kind_ != SpaceKind::heisenberg) fail(errc::space_mismatch, "not a Heisenberg space");
    // (z,t)*(z',t') = (z+z', t+t'+2 Im(conj(z) z'))
    const QuadExt &x1 = p.x[0], &y1 = p.x[1], &t1 = p.x[2];
    const QuadExt &x2 = q.x[0], &y2 = q.x[1], &t2 = q.x[2];
    QuadExt cross = (x1 * y2 - y1 * x2) * QuadExt(2);
    return make_point({x1 + x2, y1 + y2, t1 + t2 + cross});
}

Point Space::heisenberg_inv(const Point& p) const {
    if (kind_ != SpaceKind::heisenberg) fail(errc::space_mismatch, "not a Heisenberg space");
    return make_point({-p.x[0], -p.x[1], -p.x[2]});
}

Point Space::invert(const Point& p) const {
    if (p.is_zero()) fail(errc::inversion_of_zero, "inversion of the origin");
    if (kind_ == SpaceKind::heisenberg) {
        // iota(z,t) = (-z/(|z|^2 + it), -t/(|z|^4 + t^2)), computed on
        // exact coordinates: -z (n - it)/(n^2+t^2) with n = |z|^2.
        const QuadExt &x = p.x[0], &y = p.x[1], &t = p.x[2];
        QuadExt n = x * x + y * y;
        QuadExt q = n * n + t * t;
        QuadExt qi = q.inverse();
        // -(x+iy)(n-it) = -(xn + yt) - i(yn - xt)
        QuadExt nx = -(x * n + y * t) * qi;
        QuadExt ny = -(y * n - x * t) * qi;
        QuadExt nt = -t * qi;
        return make_point({nx, ny, nt});
    }
    QuadExt n = norm2(p);
    QuadExt ni = n.inverse();
    Point r;
    r.x.reserve(p.x.size());
    for (size_t i = 0; i < p.x.size(); ++i) {
        QuadExt c = p.x[i] * ni;
        r.x.push_back(signs_[i] < 0 ? -c : c);
    }
    return r;
}

LatticeElem Space::round_to_lattice(const Point& p) const {
    LatticeElem g;
    switch (kind_) {
        case SpaceKind::real_regular: {
            // K = [0, scale): digit = scale * floor(x/scale)
            QuadExt scaled = p.x[0] / QuadExt(Rational(scale_));
            g.g = {Rational(scaled.floor())};
            break;
        }
        case SpaceKind::real_nearest: {
            QuadExt scaled = p.x[0] / QuadExt(Rational(scale_));
            g.g = {Rational(scaled.round_half_open())};
            break;
        }
        case SpaceKind::complex_plane: {
            Rational a(p.x[0].round_half_open());
            // second coordinate lives on multiples of sqrt(d)
            QuadExt sd = QuadExt::sqrt_of(Rational(imag_d_));
            QuadExt yq = p.x[1] / sd;
            g.g = {a, Rational(yq.round_half_open())};
            break;
        }
        case SpaceKind::r3: {
            g.g.reserve(3);
            for (const auto& c : p.x) g.g.push_back(Rational(c.round_half_open()));
            break;
        }
        case SpaceKind::r4_hurwitz: {
            // Closer of the integer candidate and the half-integer candidate;
            // exact tie goes to the integer coset.
            std::vector<Rational> n0, n1;
            QuadExt d0(0), d1(0);
            for (const auto& c : p.x) {
                Rational r0(c.round_half_open());
                QuadExt e0 = c - QuadExt(r0);
                d0 += e0 * e0;
                n0.push_back(r0);
                Rational r1 = Rational((c - QuadExt(Rational(1, 2))).round_half_open()) + Rational(1, 2);
                QuadExt e1 = c - QuadExt(r1);
                d1 += e1 * e1;
                n1.push_back(r1);
            }
            g.g = (d1 < d0) ? n1 : n0;
            break;
        }
        case SpaceKind::heisenberg: {
            Rational a(p.x[0].round_half_open());
            Rational b(p.x[1].round_half_open());
            // residual t after undoing the group cross term of (a,b)
            QuadExt tres = p.x[2] - (QuadExt(a) * p.x[1] - QuadExt(b) * p.x[0]) * QuadExt(2);
            g.g = {a, b, Rational(tres.round_half_open())};
            break;
        }
    }
    return g;
}

Point Space::lattice_point(const LatticeElem& g) const {
    switch (kind_) {
        case SpaceKind::real_regular:
        case SpaceKind::real_nearest:
            return make_point({QuadExt(g.g[0] * Rational(scale_))});
        case SpaceKind::complex_plane: {
            QuadExt sd = QuadExt::sqrt_of(Rational(imag_d_));
            return make_point({QuadExt(g.g[0]), QuadExt(g.g[1]) * sd});
        }
        default: {
            std::vector<QuadExt> c;
            c.reserve(g.g.size());
            for (const auto& v : g.g) c.emplace_back(v);
            return make_point(std::move(c));
        }
    }
}

Point Space::translate_inv(const LatticeElem& g, const Point& p) const {
    Point gp = lattice_point(g);
    if (kind_ == SpaceKind::heisenberg) return heisenberg_mul(heisenberg_inv(gp), p);
    Point r;
    r.x.reserve(p.x.size());
    for (size_t i = 0; i < p.x.size(); ++i) r.x.push_back(p.x[i] - gp.x[i]);
    return r;
}

Point Space::translate(const LatticeElem& g, const Point& p) const {
    Point gp = lattice_point(g);
    if (kind_ == SpaceKind::heisenberg) return heisenberg_mul(gp, p);
    Point r;
    r.x.reserve(p.x.size());
    for (size_t i = 0; i < p.x.size(); ++i) r.x.push_back(p.x[i] + gp.x[i]);
    return r;
}

Point Space::dilate(const Point& p, const QuadExt& r) const {
    if (r.sign() <= 0) fail(errc::non_positive_factor, "dilation factor must be positive");
    Point q;
    q.x.reserve(p.x.size());
    if (kind_ == SpaceKind::heisenberg) {
        q.x.push_back(p.x[0] * r);
        q.x.push_back(p.x[1] * r);
        q.x.push_back(p.x[2] * r * r);
        return q;
    }
    for (const auto& c : p.x) q.x.push_back(c * r);
    return q;
}

Rational Space::rad4() const {
    switch (kind_) {
        case SpaceKind::real_regular: {
            Rational r(scale_); // K = [0, scale): sup |x| = scale
            return r * r * r * r;
        }
        case SpaceKind::real_nearest: {
            Rational r = Rational(scale_) / 2;
            return r * r * r * r;
        }
        case SpaceKind::complex_plane: {
            Rational r2 = (Rational(1) + Rational(imag_d_)) / 4;
            return r2 * r2;
        }
        case SpaceKind::r3: {
            Rational r2(3, 4);
            return r2 * r2;
        }
        case SpaceKind::r4_hurwitz: {
            // covering radius of the Hurwitz lattice: rad^2 = 1/2
            Rational r2(1, 2);
            return r2 * r2;
        }
        case SpaceKind::heisenberg:
            return {1, 2}; // max over the box of |z|^4 + t^2
    }
    return 1;
}

PropernessReport Space::is_proper() const {
    PropernessReport rep;
    rep.rad4 = rad4();
    rep.radius = std::pow(to_double(rep.rad4), 0.25);
    rep.proper = rep.rad4 < 1;
    if (!rep.proper)
        rep.warning = "rad(K) >= 1: the inversion is not uniformly expanding on K";
    if (kind_ == SpaceKind::heisenberg) {
        if (!rep.warning.empty()) rep.warning += "; ";
        rep.warning += "Heisenberg domain is a configuration default (unit box in (x, y, t))";
    }
    return rep;
}

CliffordElement Space::lattice_to_clifford(const LatticeElem& g) const {
    int rank = matrix_rank();
    if (rank < 0) fail(errc::space_mismatch, "no Clifford-matrix model for this space");
    Point p = lattice_point(g);
    return point_to_clifford(p);
}

LatticeElem Space::clifford_to_lattice(const CliffordElement& v) const {
    Point p = clifford_to_point(v);
    LatticeElem g = round_to_lattice(p);
    if (!(lattice_point(g) == p)) fail(errc::usage, "element is not a lattice point");
    return g;
}

Point Space::clifford_to_point(const CliffordElement& v) const {
    if (!v.is_vector()) fail(errc::non_vector_result, "not a vector: " + v.str());
    std::vector<QuadExt> c = v.vector_coords();
    c.resize(dim_, QuadExt(0));
    return make_point(std::move(c));
}

CliffordElement Space::point_to_clifford(const Point& p) const {
    int rank = matrix_rank();
    if (rank < 0) fail(errc::space_mismatch, "no Clifford-matrix model for this space");
    return CliffordElement::vector(rank, p.x);
}

std::string Space::point_to_string(const Point& p) const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < p.x.size(); ++i) {
        if (i) os << ", ";
        os << p.x[i].str();
    }
    os << ")";
    return os.str();
}

Point Space::parse_point(const std::string& text) const {
    std::string t = text;
    // strip outer parens
    size_t a = t.find_first_not_of(" \t");
    size_t b = t.find_last_not_of(" \t");
    if (a == std::string::npos) fail(errc::parse_error, "empty point");
    t = t.substr(a, b - a + 1);
    if (!t.empty() && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
    std::vector<QuadExt> coords;
    std::string cur;
    int depth = 0;
    for (char ch : t) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            coords.push_back(parse_quadext(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) coords.push_back(parse_quadext(cur));
    if (static_cast<int>(coords.size()) == 1 && dim_ > 1)
        coords.resize(dim_, QuadExt(0));
    return make_point(std::move(coords));
}

std::string Space::lattice_to_string(const LatticeElem& g) const {
    if (kind_ == SpaceKind::complex_plane) {
        GaussRational z(g.g[0], g.g[1]);
        return gauss_to_string(z, imag_d_);
    }
    if (dim_ == 1) return rational_to_string(g.g[0]);
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < g.g.size(); ++i) {
        if (i) os << ", ";
        os << rational_to_string(g.g[i]);
    }
    os << ")";
    return os.str();
}

LatticeElem Space::parse_lattice(const std::string& text) const {
    if (kind_ == SpaceKind::complex_plane) {
        GaussRational z = parse_gauss(text, imag_d_);
        return {{z.x, z.y}};
    }
    std::string t = text;
    size_t a = t.find_first_not_of(" \t");
    size_t b = t.find_last_not_of(" \t");
    if (a == std::string::npos) fail(errc::parse_error, "empty lattice element");
    t = t.substr(a, b - a + 1);
    if (!t.empty() && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
    LatticeElem g;
    std::string cur;
    for (char ch : t) {
        if (ch == ',') {
            g.g.push_back(parse_rational(cur));
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (!cur.empty()) g.g.push_back(parse_rational(cur));
    if (static_cast<int>(g.g.size()) != dim_)
        fail(errc::parse_error, "lattice element arity mismatch in '" + text + "'");
    return g;
}

std::string Space::name() const {
    switch (kind_) {
        case SpaceKind::real_regular: return "real(regular)";
        case SpaceKind::real_nearest: return "real";
        case SpaceKind::complex_plane: return imag_d_ == 1 ? "complex" : ("complex(d=" + imag_d_.str() + ")");
        case SpaceKind::r3: return "r3";
        case SpaceKind::r4_hurwitz: return "r4-hurwitz";
        case SpaceKind::heisenberg: return "heisenberg";
    }
    return "?";
}

} // namespace cfx
