#include "cfx/identities.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cfx {

namespace {

// reciprocal of a nonzero vector: conj(x)/|x|^2
CliffordElement reciprocal(const CliffordElement& x) {
    QuadExt n = x.norm_sq();
    if (n.is_zero()) fail(errc::zero_encountered, "reciprocal of zero inside the tower");
    return x.conjugate().scaled(n.inverse());
}

CliffordElement vector_of(int rank, const std::vector<int>& coords) {
    std::vector<QuadExt> c;
    c.reserve(coords.size());
    for (int v : coords) c.emplace_back(v);
    return CliffordElement::vector(rank, c);
}

} // namespace

CliffordElement depth_tower_value(const CliffordElement& a, int depth) {
    // [a, ..., a] = r(a + r(a + ... r(a)))
    CliffordElement acc = reciprocal(a);
    for (int k = 1; k < depth; ++k) acc = reciprocal(a + acc);
    return a + acc;
}

DepthIdentityRecord check_depth_identity(int d) {
    if (d < 2 || d > 4) fail(errc::usage, "depth identities are the d = 2, 3, 4 family");
    DepthIdentityRecord rec;
    rec.d = d;
    rec.depth = (d == 2) ? 1 : (d == 3) ? 2 : 4;
    int rank = d - 1;
    rec.all_zero = true;

    std::vector<int> base(d - 1, 1);
    std::vector<int> idx(d - 1);
    std::iota(idx.begin(), idx.end(), 0);
    // all coordinate permutations and sign flips of (0, 1, ..., 1)
    std::vector<std::vector<int>> perms;
    std::sort(idx.begin(), idx.end());
    do {
        perms.push_back(idx);
    } while (std::next_permutation(idx.begin(), idx.end()));
    for (const auto& perm : perms) {
        for (unsigned mask = 0; mask < (1u << (d - 1)); ++mask) {
            std::vector<int> coords(d, 0);
            for (int i = 0; i < d - 1; ++i) {
                int v = base[perm[i]];
                if (mask & (1u << i)) v = -v;
                coords[i + 1] = v;
            }
            CliffordElement a = vector_of(rank, coords);
            CliffordElement value = depth_tower_value(a, rec.depth);
            ++rec.variants_checked;
            if (!value.is_zero()) {
                rec.all_zero = false;
                if (rec.witness.empty()) {
                    std::ostringstream os;
                    os << "a = " << a.str() << " gives " << value.str();
                    rec.witness = os.str();
                }
            }
        }
    }
    return rec;
}

DepthSequence depth_sequence(int d, long steps) {
    if (d < 5) fail(errc::below_threshold, "the obstruction recurrence needs d >= 5");
    if (steps < 1) fail(errc::usage, "need at least one step");
    DepthSequence seq;
    seq.d = d;
    Rational x(1);
    seq.values.push_back(x);
    for (long n = 1; n < steps; ++n) {
        if (x == 0)
            fail(errc::zero_encountered, "x_n vanished at n = " + std::to_string(n));
        x = Rational(1) - Rational(1) / (Rational(d - 1) * x);
        seq.values.push_back(x);
    }
    return seq;
}

RecurrenceFixedPoints fixed_points_x(int d) {
    if (d < 5) fail(errc::below_threshold, "fixed points exist for d >= 5");
    // x_{+-} = (1 +- sqrt(1 - 4/(d-1)))/2
    Rational inner = Rational(1) - Rational(4, d - 1);
    QuadExt root = QuadExt::sqrt_of(inner);
    QuadExt half(Rational(1, 2));
    return {half - root / QuadExt(2), half + root / QuadExt(2)};
}

} // namespace cfx
