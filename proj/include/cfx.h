/*
 * cfx - exact continued fraction algorithms on inversion spaces.
 *
 * C interface to the core library: every call produces an opaque result
 * handle carrying a JSON document, a plain-text rendering, and (on failure)
 * an error message.  Exact scalars cross this boundary as strings; floating
 * point appears only in *_approx JSON fields.
 *
 * Status codes mirror the CLI exit codes: 0 ok, 1 usage, 2 domain error,
 * 3 budget exhausted (truncated expansions and bounded searches still fill
 * the result document).
 */
#ifndef CFX_H
#define CFX_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cfx_status {
    CFX_OK = 0,
    CFX_ERR_USAGE = 1,
    CFX_ERR_DOMAIN = 2,
    CFX_ERR_BUDGET = 3,
    CFX_ERR_INTERNAL = 4
} cfx_status;

typedef struct cfx_result cfx_result;

const char* cfx_version(void);

/* Accessors; all return NULL when the field is absent.  Strings live until
 * cfx_result_free. */
const char* cfx_result_json(const cfx_result* r);
const char* cfx_result_text(const cfx_result* r);
const char* cfx_result_error(const cfx_result* r);
void cfx_result_free(cfx_result* r);

/* space: "real", "complex", "r3", "r4-hurwitz", "heisenberg".
 * variant: NULL or "nearest" (default) or "regular" for the real space.
 * imaginary_d: base d of Z[i*sqrt(d)] for the complex space (use 1).
 * point syntax: "(1/3, 1/5)" with exact scalar coordinates such as
 * "1/2-1/2*sqrt(5)"; the complex space also accepts "sqrt(1+2i)". */
cfx_status cfx_expand(const char* space, const char* variant, long imaginary_d,
                      const char* point, long max_iter, cfx_result** out);

/* digits: JSON document as produced by cfx_expand (fields "digits",
 * "leading_digit", "period"), or a bare JSON array of digit strings. */
cfx_status cfx_evaluate(const char* space, const char* variant, long imaginary_d,
                        const char* digits_json, cfx_result** out);

/* ring: "z", "zi", "zid" (with imaginary_d), or "quat".
 * matrix: "[[a,b],[c,d]]" with entries in the ring's syntax. */
cfx_status cfx_classify(const char* ring, long imaginary_d, const char* matrix,
                        cfx_result** out);

/* Vahlen validity report for a Clifford matrix over the rank-2 or rank-3
 * algebra ("r3" / "r4-hurwitz" rings). */
cfx_status cfx_validate_matrix(const char* ring, const char* matrix, cfx_result** out);

/* Norm-descent reduction to a generator word; ring "r3" or "r4-hurwitz". */
cfx_status cfx_reduce(const char* ring, const char* matrix, cfx_result** out);

cfx_status cfx_pell(long long delta, cfx_result** out);

/* Loxodromic integer matrix fixing the roots of a x^2 + b x + c. */
cfx_status cfx_surd_to_matrix(long long a, long long b, long long c, cfx_result** out);

/* Bounded search for x^2 + delta y^2 = 1 over Z[i*sqrt(d)]; delta in the
 * ring's syntax ("-3", "1+2i", ...). */
cfx_status cfx_complex_pell(const char* delta, long imaginary_d, long bound, cfx_result** out);

/* Fixed points of the Moebius action; exact for rings "z"/"zi"/"zid",
 * seeded iteration for "quat". */
cfx_status cfx_fixed_points(const char* ring, long imaginary_d, const char* matrix,
                            unsigned long seed, cfx_result** out);

cfx_status cfx_horoball_trace(const char* space, const char* variant, long imaginary_d,
                              const char* point, long max_iter, cfx_result** out);

cfx_status cfx_geodesic_min_height(const char* space, double eps, double eps_prime, int grid,
                                   cfx_result** out);

/* Depth identities (d = 2..4) or the obstruction sequence (d >= 5). */
cfx_status cfx_identities(int d, long steps, cfx_result** out);

/* Properness report for a space's fundamental domain; lattice_scale scales
 * the real lattice (2 gives the even-integer variant). */
cfx_status cfx_properness(const char* space, const char* variant, long imaginary_d,
                          long lattice_scale, cfx_result** out);

/* Full acceptance suite; quick != 0 runs the reduced-sample variant. */
cfx_status cfx_selfcheck(int quick, unsigned long seed, cfx_result** out);

#ifdef __cplusplus
}
#endif

#endif /* CFX_H */
