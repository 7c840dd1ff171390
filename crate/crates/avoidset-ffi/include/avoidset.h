#ifndef AVOIDSET_H
#define AVOIDSET_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define AVOIDSET_OK 0

#define AVOIDSET_ERR_NULL 1

#define AVOIDSET_ERR_UTF8 2

#define AVOIDSET_ERR_PARSE 3

#define AVOIDSET_ERR_RANGE 4

#define AVOIDSET_ERR_CAPACITY 5

#define AVOIDSET_ERR_MISMATCH 6

#define AVOIDSET_ERR_OTHER 7

/*
 Opaque family handle.
 */
typedef struct avoidset_family avoidset_family;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parse a family from the text exchange format. On success writes a
 heap-allocated handle to `out`; free it with `avoidset_family_free`.

 # Safety
 `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
int avoidset_family_parse(const char *text, avoidset_family **out);

/*
 Release a handle returned by `avoidset_family_parse`.

 # Safety
 `family` must be a pointer previously returned by this library, or null.
 */
void avoidset_family_free(avoidset_family *family);

/*
 Number of member sets.

 # Safety
 `family` must be a valid handle.
 */
uint64_t avoidset_family_len(const avoidset_family *family);

/*
 Universe size n.

 # Safety
 `family` must be a valid handle.
 */
uint32_t avoidset_family_n(const avoidset_family *family);

/*
 Serialize back to the text exchange format. Free the result with
 `avoidset_string_free`.

 # Safety
 `family` must be a valid handle.
 */
char *avoidset_family_to_text(const avoidset_family *family);

/*
 Release a string returned by this library.

 # Safety
 `s` must be a string previously returned by this library, or null.
 */
void avoidset_string_free(char *s);

/*
 Exact |{(a,b) : a ∩ b = ∅}| as a decimal string in `out`.

 # Safety
 `a` and `b` must be valid handles and `out` a valid pointer.
 */
int avoidset_count_disjoint(const avoidset_family *a, const avoidset_family *b, char **out);

/*
 Whether the pair admits no cross pair with intersection exactly t;
 writes 0 or 1 to `out`.

 # Safety
 `a` and `b` must be valid handles and `out` a valid pointer.
 */
int avoidset_satisfies_cross_avoiding(const avoidset_family *a,
                                      const avoidset_family *b,
                                      uint32_t t,
                                      int *out);

/*
 The bound Σ_{k<t} C(n,k) 2^{n-k} as a decimal string in `out`.

 # Safety
 `out` must be a valid pointer.
 */
int avoidset_f_bound(uint64_t n, uint64_t t, char **out);

/*
 The optimal forbidden-cross-intersection-2 constant for a given r ≥ 3;
 writes the value to `out`.

 # Safety
 `out` must be a valid pointer.
 */
int avoidset_gamma_r(uint32_t r, double *out);

/*
 Library version as a static string; do not free.
 */
const char *avoidset_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* AVOIDSET_H */
