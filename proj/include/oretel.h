/* oretel: exact creative telescoping for P-recursive sequences.
 *
 * C interface to the shared library.  All inputs and outputs are JSON
 * strings; returned strings are heap-allocated and must be released with
 * oretel_free().  On ORETEL_ERROR, oretel_last_error() describes the
 * problem (thread-local).
 */
#ifndef ORETEL_H
#define ORETEL_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    ORETEL_OK = 0,       /* success / affirmative verdict */
    ORETEL_ERROR = 1,    /* invalid input or internal failure */
    ORETEL_NEGATIVE = 2  /* definitive negative verdict */
} oretel_status;

const char* oretel_version(void);

/* thread-local message for the most recent ORETEL_ERROR */
const char* oretel_last_error(void);

void oretel_free(char* s);

/* local integral basis at a finite point set.
 * op_json:     {"field": "QQ"|"QQ(t)", "order": r, "coeffs": [poly, ...]}
 * points_json: [-1, 0] or [{"minpoly": "...", "offsets": [...]}, ...]
 * out:         {"T": [[ratfun, ...], ...], "e": ..., "M": ..., ...}          */
oretel_status oretel_ibasis(const char* op_json, const char* points_json, char** out_json);

/* local integral basis at infinity (diagonal normalization of the suitable
 * basis); out carries the frame plus the diagonal powers "tau"              */
oretel_status oretel_ibasis_infinity(const char* op_json, char** out_json);

/* suitable basis at the default beta points (largest root offsets shifted by
 * beta_extra >= 0)                                                          */
oretel_status oretel_suitable(const char* op_json, long beta_extra, char** out_json);

/* additive decomposition f = Delta g + (1/d) P W + (1/a) Q V               */
oretel_status oretel_decompose(const char* op_json, const char* elem_json, char** out_json);

/* summability decision; ORETEL_OK = summable with certificate, ORETEL_NEGATIVE
 * = not summable with witness (P, Q)                                       */
oretel_status oretel_summable(const char* op_json, const char* elem_json, char** out_json);

/* minimal telescoper for elem over the ideal <L, S_t - u_t>; operators over
 * QQ(t).  ORETEL_NEGATIVE when no telescoper up to max_order exists.        */
oretel_status oretel_telescope(const char* op_json, const char* ut_json, const char* elem_json,
                               long max_order, int want_certificate, char** out_json);

/* exact unrolling of the recurrence from r initial values
 * init_json: ["1", "0", ...]   out: {"x0": from, "values": ["...", ...]}    */
oretel_status oretel_eval(const char* op_json, const char* init_json, long from, long to,
                          char** out_json);

/* decompose and verify the identity pointwise on [from, to] against the
 * solution basis with unit initial vectors                                  */
oretel_status oretel_verify_decomposition(const char* op_json, const char* elem_json,
                                          long from, long to, char** out_json);

#ifdef __cplusplus
}
#endif

#endif
