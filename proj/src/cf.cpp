#include "cfx/cf.hpp"

#include <map>

namespace cfx {

std::vector<LatticeElem> Expansion::preperiod_digits() const {
    return {digits.begin(), digits.begin() + preperiod};
}

std::vector<LatticeElem> Expansion::period_digits() const {
    if (status != ExpStatus::periodic) return {};
    return {digits.begin() + preperiod, digits.begin() + preperiod + period};
}

GaussStep gauss_step(const Space& space, const Point& x) {
    if (x.is_zero()) fail(errc::zero_state, "Gauss map applied to zero (expansion already finite)");
    Point ix = space.invert(x);
    LatticeElem digit = space.round_to_lattice(ix);
    Point next = space.translate_inv(digit, ix);
    return {digit, next};
}

Expansion expand(const Space& space, const Point& x, long max_iter) {
    Expansion e;
    if (x.is_zero()) return e;

    Point state = x;
    if (space.gauge4(x) >= QuadExt(1)) {
        LatticeElem a0 = space.round_to_lattice(x);
        e.digits.push_back(a0);
        e.has_leading = true;
        state = space.translate_inv(a0, x);
    }

    std::map<Point, long, decltype(&Point::key_less)> seen(&Point::key_less);
    long gauss_steps = 0;
    for (;;) {
        if (state.is_zero()) {
            e.status = ExpStatus::finite;
            e.preperiod = static_cast<long>(e.digits.size());
            e.period = 0;
            e.iterations = gauss_steps;
            return e;
        }
        auto [it, fresh] = seen.emplace(state, gauss_steps);
        if (!fresh) {
            // First revisit of a deterministic orbit: minimal preperiod and
            // period fall out of the collision indices.
            long first = it->second;
            e.status = ExpStatus::periodic;
            e.preperiod = first + (e.has_leading ? 1 : 0);
            e.period = gauss_steps - first;
            e.digits.resize(e.preperiod + e.period);
            e.iterations = gauss_steps;
            return e;
        }
        if (gauss_steps >= max_iter) {
            e.status = ExpStatus::truncated;
            e.preperiod = static_cast<long>(e.digits.size());
            e.iterations = gauss_steps;
            return e;
        }
        GaussStep step = gauss_step(space, state);
        e.digits.push_back(step.digit);
        state = step.next;
        ++gauss_steps;
    }
}

namespace {

struct SurdKey {
    Rational ux, uy, vx, vy;
    bool operator<(const SurdKey& o) const {
        if (ux != o.ux) return ux < o.ux;
        if (uy != o.uy) return uy < o.uy;
        if (vx != o.vx) return vx < o.vx;
        return vy < o.vy;
    }
};

SurdKey key_of(const ComplexSurd& z) {
    return {z.u.x, z.u.y, z.v.x, z.v.y};
}

LatticeElem gauss_to_lattice(const GaussRational& g) {
    return {{g.x, g.y}};
}

} // namespace

Expansion expand_complex_surd(const ComplexSurd& z, long max_iter) {
    Expansion e;
    if (z.is_zero()) return e;

    ComplexSurd state = z;
    auto cmp = cs_gauge4_cmp_one(z);
    if (!cmp.has_value() || *cmp >= 0) {
        GaussRational a0 = cs_round(z);
        e.digits.push_back(gauss_to_lattice(a0));
        e.has_leading = true;
        state = cs_add_gauss(z, g_neg(a0));
    }

    std::map<SurdKey, long> seen;
    long gauss_steps = 0;
    for (;;) {
        if (state.is_zero()) {
            e.status = ExpStatus::finite;
            e.preperiod = static_cast<long>(e.digits.size());
            e.iterations = gauss_steps;
            return e;
        }
        auto [it, fresh] = seen.emplace(key_of(state), gauss_steps);
        if (!fresh) {
            long first = it->second;
            e.status = ExpStatus::periodic;
            e.preperiod = first + (e.has_leading ? 1 : 0);
            e.period = gauss_steps - first;
            e.digits.resize(e.preperiod + e.period);
            e.iterations = gauss_steps;
            return e;
        }
        if (gauss_steps >= max_iter) {
            e.status = ExpStatus::truncated;
            e.preperiod = static_cast<long>(e.digits.size());
            e.iterations = gauss_steps;
            return e;
        }
        ComplexSurd inv = cs_inverse(state);
        GaussRational digit = cs_round(inv);
        e.digits.push_back(gauss_to_lattice(digit));
        state = cs_add_gauss(inv, g_neg(digit));
        ++gauss_steps;
    }
}

CliffordMatrix inversion_matrix(const Space& space) {
    int rank = space.matrix_rank();
    if (rank < 0) fail(errc::space_mismatch, "no matrix model for " + space.name());
    switch (space.kind()) {
        case SpaceKind::real_regular: {
            // x -> 1/x: [[0,1],[1,0]] (pseudo-determinant -1; the map is
            // orientation-reversing on the line).
            CliffordMatrix m{CliffordElement(rank), CliffordElement(rank, QuadExt(1)),
                             CliffordElement(rank, QuadExt(1)), CliffordElement(rank)};
            return m;
        }
        case SpaceKind::complex_plane: {
            // x -> 1/x with pseudo-determinant +1: [[0,i],[i,0]].
            CliffordElement i1 = CliffordElement::basis(rank, 1);
            CliffordMatrix m{CliffordElement(rank), i1, i1, CliffordElement(rank)};
            return m;
        }
        default:
            // x -> -1/x, which restricted to vectors is the sign-pattern
            // Koranyi inversion of these spaces.
            return CliffordMatrix::inversion(rank);
    }
}

std::vector<CliffordMatrix> convergent_matrices(const Space& space,
                                                const std::vector<LatticeElem>& digits,
                                                bool has_leading) {
    CliffordMatrix S = inversion_matrix(space);
    int rank = space.matrix_rank();
    std::vector<CliffordMatrix> out;
    out.reserve(digits.size());
    CliffordMatrix acc = CliffordMatrix::identity(rank);
    for (size_t i = 0; i < digits.size(); ++i) {
        CliffordElement t = space.lattice_to_clifford(digits[i]);
        CliffordMatrix trans = CliffordMatrix::translation(-t);
        if (i == 0 && has_leading)
            acc = trans * acc; // integer part: plain translation, no inversion
        else
            acc = trans * S * acc;
        out.push_back(acc);
    }
    return out;
}

std::vector<CliffordMatrix> convergent_matrices(const Space& space, const Expansion& e) {
    return convergent_matrices(space, e.digits, e.has_leading);
}

} // namespace cfx
