#ifndef VC2LAB_VC2LAB_H
#define VC2LAB_VC2LAB_H

/*
 * C interface to vc2lab: Green-Sanders sets over F_p^n, VC and VC_2
 * shattering searches, quadratic-factor constructions and the bipartite
 * Ramsey tools.
 *
 * Conventions:
 *  - Every fallible call returns a vc2_status; on failure
 *    vc2_last_error() describes it (per thread, valid until the next call).
 *  - Objects are opaque handles released with the matching *_free.
 *  - Strings returned through char** are heap-allocated JSON (or text) and
 *    must be released with vc2_string_free.
 *  - Vectors are passed as arrays of residues in [0, p), coordinate 1 first.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(VC2LAB_BUILDING_LIBRARY)
#    define VC2LAB_API __declspec(dllexport)
#  else
#    define VC2LAB_API __declspec(dllimport)
#  endif
#else
#  define VC2LAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vc2_status {
  VC2_OK = 0,
  VC2_ERR_INVALID_ARGUMENT = 1,
  VC2_ERR_NOT_INVERTIBLE = 2,
  VC2_ERR_LIMIT_EXCEEDED = 3,
  VC2_ERR_VERIFICATION_FAILED = 4,
  VC2_ERR_BUDGET_EXHAUSTED = 5,
  VC2_ERR_PARSE = 6,
  VC2_ERR_IO = 7,
  VC2_ERR_INTERNAL = 8
} vc2_status;

typedef struct vc2_basis vc2_basis;
typedef struct vc2_set vc2_set;
typedef struct vc2_construction vc2_construction;
typedef struct vc2_colouring vc2_colouring;

VC2LAB_API const char* vc2_version(void);
VC2LAB_API const char* vc2_last_error(void);
VC2LAB_API void vc2_string_free(char* s);

/* ---- field ---- */

/* Inverse of a modulo the odd prime p. */
VC2LAB_API vc2_status vc2_scalar_inverse(uint32_t p, int64_t a, uint32_t* out);

/* ---- high-rank basis ---- */

/* Trace-form basis from the smallest irreducible of degree n. */
VC2LAB_API vc2_status vc2_basis_build(uint32_t p, size_t n, vc2_basis** out);
VC2LAB_API vc2_status vc2_basis_from_json(const char* json, vc2_basis** out);
VC2LAB_API vc2_status vc2_basis_to_json(const vc2_basis* basis, char** out);
VC2LAB_API uint32_t vc2_basis_p(const vc2_basis* basis);
VC2LAB_API size_t vc2_basis_n(const vc2_basis* basis);
/* Full-rank check of every nonzero combination (exhaustive != 0, needs
 * p^n <= 10^6) or of `samples` seeded random ones. *passed is 0 or 1;
 * report: {"passed", "checked", "mode", "witness"}. */
VC2LAB_API vc2_status vc2_basis_check(const vc2_basis* basis, int exhaustive, uint64_t samples, uint64_t seed,
                                      unsigned threads, int* passed, char** report);
VC2LAB_API void vc2_basis_free(vc2_basis* basis);

/* ---- sets ---- */

VC2LAB_API vc2_status vc2_set_gs(uint32_t p, size_t n, vc2_set** out);
VC2LAB_API vc2_status vc2_set_qgs(const vc2_basis* basis, vc2_set** out);
/* {"type": "gs"|"qgs"|"explicit", ...}, as embedded in certificates. */
VC2LAB_API vc2_status vc2_set_from_json(const char* json, vc2_set** out);
VC2LAB_API vc2_status vc2_set_contains(const vc2_set* set, const uint32_t* coords, size_t n, int* out);
VC2LAB_API void vc2_set_free(vc2_set* set);

/* ---- shattering ---- */

/* VC-dimension by pruned search over sets containing 0, with the shatter
 * certificate of the largest set found. */
VC2LAB_API vc2_status vc2_vc_dim(const vc2_set* set, size_t k_max, unsigned threads, size_t* dimension,
                                 char** certificate);
/* points: count * n residues. On success *shattered is 1 and result is a
 * certificate, else result is {"missing": bitmask}. */
VC2LAB_API vc2_status vc2_shatter_check(const vc2_set* set, const uint32_t* points, size_t count, unsigned threads,
                                        int* shattered, char** result);
/* Exhaustive-z VC_2 check of grid X x Y (count points each, x_0 = y_0 = 0). */
VC2LAB_API vc2_status vc2_vc2_check(const vc2_set* set, const uint32_t* x, const uint32_t* y, size_t count,
                                    unsigned threads, int* shattered, char** result);
/* Independent re-check; report: {"ok", "kind", "message", "checked"}. */
VC2LAB_API vc2_status vc2_verify_certificate(const char* json, int* ok, char** report);

/* ---- quadratic factors and constructions ---- */

VC2LAB_API vc2_status vc2_construction_build(const vc2_basis* basis, unsigned k, uint64_t seed,
                                             vc2_construction** out);
VC2LAB_API vc2_status vc2_construction_from_json(const char* json, vc2_construction** out);
VC2LAB_API vc2_status vc2_construction_to_json(const vc2_construction* c, char** out);
VC2LAB_API void vc2_construction_free(vc2_construction* c);
/* Realises every containment map on the k-grid. On success *all_realized is
 * 1 and result is the vc2 certificate, else {"failed_at": bits}. */
VC2LAB_API vc2_status vc2_construction_realize_all(const vc2_construction* c, uint64_t seed, unsigned threads,
                                                   int* all_realized, char** result);
/* Seeded factor with l independent random linear forms and Q_1..Q_q. */
VC2LAB_API vc2_status vc2_random_factor(const vc2_basis* basis, size_t l, size_t q, uint64_t seed, char** factor_json);
/* Exact atom census for the factor {"linear": [[...]], "quad": [t...]}
 * with the atom-size bound checked at r = n. */
VC2LAB_API vc2_status vc2_atom_census(const vc2_basis* basis, const char* factor_json, unsigned threads,
                                      int* bound_holds, char** report);
/* Seeded grid instances with exhaustive z-search (p^n <= 10^6). */
VC2LAB_API vc2_status vc2_prop32_suite(const vc2_basis* basis, size_t instances, uint64_t seed, unsigned threads,
                                       int* passed, char** report);

/* ---- bipartite Ramsey ---- */

VC2LAB_API vc2_status vc2_colouring_random(size_t m, size_t n, unsigned r, uint64_t seed, uint64_t index,
                                           vc2_colouring** out);
/* "m n r" followed by m rows of n colours in [1, r]. */
VC2LAB_API vc2_status vc2_colouring_parse(const char* text, vc2_colouring** out);
VC2LAB_API vc2_status vc2_colouring_write(const vc2_colouring* c, char** text);
VC2LAB_API void vc2_colouring_free(vc2_colouring* c);
/* result: {"found", "constructive", "budget_exhausted", "inspections",
 * "left", "right", "colour"}. */
VC2LAB_API vc2_status vc2_find_biclique(const vc2_colouring* c, size_t q, size_t s, int* found, char** result);
VC2LAB_API vc2_status vc2_br_bound(uint64_t r, uint64_t* value, char** report);
VC2LAB_API vc2_status vc2_lemma_a1(uint64_t m, uint64_t n, int64_t rho_num, int64_t rho_den, unsigned q, unsigned s,
                                   int* holds);

#ifdef __cplusplus
}
#endif

#endif /* VC2LAB_VC2LAB_H */
