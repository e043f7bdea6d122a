#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cfx/quadext.hpp"

namespace cfx {

/// Element of the Clifford algebra A_n (n <= 3) generated by e_1..e_n with
/// e_i^2 = -1 and e_i e_j = -e_j e_i.  Coefficients are exact scalars,
/// indexed by subset bitmask (bit i-1 set  <=>  e_i in the blade).
///
/// The ambient space R^m sits inside A_{m-1} as the elements of grade <= 1:
/// a_0 + a_1 e_1 + ... + a_{m-1} e_{m-1}.
class CliffordElement {
public:
    CliffordElement() : rank_(0) {}
    explicit CliffordElement(int rank) : rank_(rank) { check_rank(rank); }
    CliffordElement(int rank, const QuadExt& scalar) : rank_(rank) {
        check_rank(rank);
        c_[0] = scalar;
    }

    static CliffordElement basis(int rank, unsigned blade);
    /// Vector from coordinates (a_0, ..., a_{m-1}); rank = m-1.
    static CliffordElement vector(int rank, const std::vector<QuadExt>& coords);

    int rank() const { return rank_; }
    int blade_count() const { return 1 << rank_; }

    const QuadExt& coeff(unsigned blade) const { return c_[blade]; }
    void set_coeff(unsigned blade, const QuadExt& v);

    bool is_zero() const;
    bool is_scalar() const;
    /// Grade <= 1, i.e. a point of R^{rank+1}.
    bool is_vector() const;
    std::vector<QuadExt> vector_coords() const;

    bool operator==(const CliffordElement& o) const;
    bool operator!=(const CliffordElement& o) const { return !(*this == o); }

    CliffordElement operator+(const CliffordElement& o) const;
    CliffordElement operator-(const CliffordElement& o) const;
    CliffordElement operator-() const;
    CliffordElement operator*(const CliffordElement& o) const;
    CliffordElement scaled(const QuadExt& s) const;

    /// e_i -> -e_i on every generator.
    CliffordElement involution() const;
    /// Reverses every blade: sign (-1)^{k(k-1)/2} on grade k.
    CliffordElement reversion() const;
    /// conjugate = reversion of involution.
    CliffordElement conjugate() const;

    /// Scalar part of x * conj(x); errors with NotScalarNorm when the product
    /// has a nonzero component outside grade 0.
    QuadExt norm_sq() const;
    /// norm_sq without the scalarity check; nullopt when not scalar.
    std::optional<QuadExt> norm_sq_if_scalar() const;

    /// conj(x)/|x|^2; requires a nonzero scalar norm.
    CliffordElement inverse() const;

    /// Blade text: "1-2*e1+e1e2" etc.; quaternion aliases i,j,k for rank 2.
    std::string str(bool quaternion_names = false) const;

    std::array<double, 8> approx() const;

    static bool key_less(const CliffordElement& a, const CliffordElement& b);

    /// Sign of e_I * e_J under the generator relations; the resulting blade
    /// is I ^ J.
    static int blade_sign(unsigned I, unsigned J);

private:
    static void check_rank(int rank);
    int rank_;
    std::array<QuadExt, 8> c_{};
};

std::ostream& operator<<(std::ostream& os, const CliffordElement& x);

/// Parses blade syntax: "(i+j)/2", "-2i-2j", "3", "1+e1-2*e2e3", "h" is not
/// a token — spell it out.  rank selects the target algebra.
CliffordElement parse_clifford(const std::string& text, int rank);

/// (1 + e1 + e2 + e3)/2, the extra generator of the Hurwitz lattice in A_3.
CliffordElement hurwitz_h();

} // namespace cfx
