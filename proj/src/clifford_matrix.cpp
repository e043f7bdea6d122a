#include "cfx/clifford_matrix.hpp"

#include <bit>
#include <random>
#include <sstream>

namespace cfx {

CliffordMatrix CliffordMatrix::identity(int rank) {
    CliffordMatrix m{CliffordElement(rank, QuadExt(1)), CliffordElement(rank),
                     CliffordElement(rank), CliffordElement(rank, QuadExt(1))};
    return m;
}

CliffordMatrix CliffordMatrix::inversion(int rank) {
    CliffordMatrix m{CliffordElement(rank), CliffordElement(rank, QuadExt(-1)),
                     CliffordElement(rank, QuadExt(1)), CliffordElement(rank)};
    return m;
}

CliffordMatrix CliffordMatrix::translation(const CliffordElement& t) {
    CliffordMatrix m{CliffordElement(t.rank(), QuadExt(1)), t, CliffordElement(t.rank()),
                     CliffordElement(t.rank(), QuadExt(1))};
    return m;
}

CliffordElement CliffordMatrix::pseudo_det() const {
    return a * d.reversion() - b * c.reversion();
}

bool CliffordMatrix::is_identity() const {
    return *this == identity(rank());
}

CliffordMatrix CliffordMatrix::operator*(const CliffordMatrix& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

bool CliffordMatrix::operator==(const CliffordMatrix& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
}

CliffordMatrix CliffordMatrix::inverse() const {
    return {d.reversion(), -b.reversion(), -c.reversion(), a.reversion()};
}

std::string CliffordMatrix::str(bool quaternion_names) const {
    return matrix_to_string(*this, quaternion_names);
}

MembershipStatus clifford_group_membership(const CliffordElement& x, unsigned seed,
                                           int samples, std::string* detail) {
    if (x.is_zero()) return MembershipStatus::zero;
    auto n = x.norm_sq_if_scalar();
    if (!n || n->is_zero()) {
        if (detail) *detail = "x*conj(x) is not a nonzero scalar";
        return MembershipStatus::failed;
    }
    // Monomials factor into generators explicitly: lambda * e_I is a product
    // of nonzero vectors, hence proved.  Nonzero vectors likewise.
    int nonzero_blades = 0;
    for (int b = 0; b < x.blade_count(); ++b)
        if (!x.coeff(b).is_zero()) ++nonzero_blades;
    if (nonzero_blades == 1 || x.is_vector()) return MembershipStatus::proved;

    // Sandwich test: members map vectors to vectors under v -> x v x*
    // (x v (x')^{-1} up to the positive factor |x|^2).
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-9, 9);
    for (int s = 0; s < samples; ++s) {
        CliffordElement v(x.rank());
        v.set_coeff(0, QuadExt(Rational(coeff(rng), 10)));
        for (int i = 0; i < x.rank(); ++i)
            v.set_coeff(1u << i, QuadExt(Rational(coeff(rng), 10)));
        CliffordElement sand = x * v * x.reversion();
        if (!sand.is_vector()) {
            if (detail) *detail = "vector sandwich left grade <= 1 on sample " + std::to_string(s);
            return MembershipStatus::failed;
        }
    }
    if (detail) *detail = "scalar norm and sandwich tests passed";
    return MembershipStatus::semidecided;
}

bool ValidationReport::proved() const {
    if (!valid()) return false;
    for (const auto& e : entries)
        if (e.status == MembershipStatus::semidecided) return false;
    return true;
}

ValidationReport cm_validate(const CliffordMatrix& m, unsigned seed) {
    ValidationReport rep;
    const CliffordElement* entries[4] = {&m.a, &m.b, &m.c, &m.d};
    const char* names[4] = {"a", "b", "c", "d"};
    for (int i = 0; i < 4; ++i) {
        std::string detail;
        MembershipStatus st = clifford_group_membership(*entries[i], seed + i, 10, &detail);
        rep.entries[i] = {st, detail};
        if (st == MembershipStatus::failed)
            rep.failure = std::string("entry ") + names[i] + " not in the Clifford group: " + detail;
    }
    if (!rep.failure.empty()) return rep;

    CliffordElement det = m.pseudo_det();
    rep.pseudo_det_ok = det.is_scalar() && det.coeff(0) == QuadExt(1);
    if (!rep.pseudo_det_ok) {
        rep.failure = "pseudo-determinant a d* - b c* != 1 (got " + det.str() + ")";
        return rep;
    }

    rep.ratios_ok = true;
    auto check_ratio = [&](const CliffordElement& p, const CliffordElement& q, const char* what) {
        if (!rep.ratios_ok) return;
        if (!(p * q).is_vector()) {
            rep.ratios_ok = false;
            rep.failure = std::string(what) + " is not a vector";
        }
    };
    if (!m.c.is_zero()) {
        CliffordElement cinv = m.c.inverse();
        check_ratio(m.a, cinv, "a c^-1");
        check_ratio(cinv, m.d, "c^-1 d");
    }
    if (!m.b.is_zero()) {
        CliffordElement binv = m.b.inverse();
        check_ratio(m.d, binv, "d b^-1");
        check_ratio(binv, m.a, "b^-1 a");
    }
    return rep;
}

MobiusPoint mobius_apply(const CliffordMatrix& m, const MobiusPoint& x) {
    if (x.is_infinity()) {
        if (m.c.is_zero()) return MobiusPoint::infinity();
        CliffordElement r = m.a * m.c.inverse();
        if (!r.is_vector()) fail(errc::non_vector_result, "a c^-1 is not a vector");
        return MobiusPoint::of(r);
    }
    const CliffordElement& v = *x.v;
    if (!v.is_vector()) fail(errc::usage, "Moebius action applied to a non-vector");
    CliffordElement denom = m.c * v + m.d;
    if (denom.is_zero()) return MobiusPoint::infinity();
    CliffordElement numer = m.a * v + m.b;
    CliffordElement r = numer * denom.inverse();
    if (!r.is_vector())
        fail(errc::non_vector_result,
             "Moebius image has grade > 1; matrix is not a Clifford matrix");
    return MobiusPoint::of(r);
}

std::string matrix_to_string(const CliffordMatrix& m, bool quaternion_names) {
    std::ostringstream os;
    os << "[[" << m.a.str(quaternion_names) << "," << m.b.str(quaternion_names) << "],["
       << m.c.str(quaternion_names) << "," << m.d.str(quaternion_names) << "]]";
    return os.str();
}

CliffordMatrix parse_matrix(const std::string& text, int rank) {
    // Split "[[a,b],[c,d]]" respecting nesting of () and [].
    std::vector<std::string> cells;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '[' || ch == '(') {
            ++depth;
            if (ch == '(' || depth > 2) cur += ch;
        } else if (ch == ']' || ch == ')') {
            if (ch == ')' || depth > 2) cur += ch;
            --depth;
            if (depth == 1 && !cur.empty()) {
                cells.push_back(cur);
                cur.clear();
            }
        } else if (ch == ',' && depth <= 2) {
            if (!cur.empty()) {
                cells.push_back(cur);
                cur.clear();
            }
        } else if (!std::isspace(static_cast<unsigned char>(ch)) || !cur.empty()) {
            cur += ch;
        }
    }
    if (!cur.empty()) cells.push_back(cur);
    if (cells.size() != 4)
        fail(errc::parse_error, "expected [[a,b],[c,d]] with four entries, got '" + text + "'");
    CliffordMatrix m{parse_clifford(cells[0], rank), parse_clifford(cells[1], rank),
                     parse_clifford(cells[2], rank), parse_clifford(cells[3], rank)};
    return m;
}

} // namespace cfx
