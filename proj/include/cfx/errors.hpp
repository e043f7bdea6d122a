#pragma once

#include <stdexcept>
#include <string>

namespace cfx {

// Error classes carried by domain_error. The C API maps these onto the
// coarse status codes in cfx.h; the CLI maps them onto exit codes.
enum class errc {
    usage,
    mixed_radicand,
    division_by_zero,
    not_scalar_norm,
    non_vector_result,
    space_mismatch,
    inversion_of_zero,
    non_positive_factor,
    zero_state,
    bad_determinant,
    not_sl2h,
    square_discriminant,
    degenerate_quadratic,
    not_found_within_bound,
    no_convergence,
    identity_matrix,
    not_valid_clifford_matrix,
    non_unit_residual,
    not_inverses,
    not_rational,
    zero_encountered,
    below_threshold,
    divergent_periodic_spec,
    rounding_undecided,
    parse_error,
    internal,
};

const char* errc_name(errc e);

// True for outcomes that mean "the configured budget ran out", not that the
// inputs were invalid.
inline bool is_budget_error(errc e) {
    return e == errc::not_found_within_bound || e == errc::no_convergence;
}

class domain_error : public std::runtime_error {
public:
    domain_error(errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw domain_error(code, what);
}

} // namespace cfx
