#ifndef CLIFFGRAD_H
#define CLIFFGRAD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every entry point.
typedef enum CgStatus {
  CG_STATUS_OK = 0,
  CG_STATUS_NULL_POINTER = 1,
  CG_STATUS_DIMENSION = 2,
  CG_STATUS_DEGENERATE = 3,
  CG_STATUS_DOMAIN = 4,
  CG_STATUS_PARSE = 5,
  CG_STATUS_SHAPE = 6,
  CG_STATUS_CONFIG = 7,
  CG_STATUS_BUFFER_TOO_SMALL = 8,
  CG_STATUS_INVALID_UTF8 = 9,
  CG_STATUS_PANIC = 10,
} CgStatus;

// Opaque scalar field.
typedef struct CgField CgField;

// Opaque multivector of `Cl(n,0,0)`.
typedef struct CgMultivector CgMultivector;

// Opaque simplex.
typedef struct CgSimplex CgSimplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copy the last error message of this thread into `buf` (NUL-terminated,
// truncated to `len`). Returns the full message length plus one.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
size_t cg_last_error_message(char *buf, size_t len);

// NUL-terminated library version; static storage.
const char *cg_version(void);

// Basis blade `coeff · e_mask` of `Cl(dim)`.
//
// # Safety
// `out` must be a valid pointer to a handle slot.
enum CgStatus cg_mv_basis_blade(size_t dim, size_t mask, double coeff, struct CgMultivector **out);

// Multivector from all `2^dim` coefficients in bitmask order.
//
// # Safety
// `coeffs` must point to `len` doubles; `out` to a handle slot.
enum CgStatus cg_mv_from_coeffs(size_t dim,
                                const double *coeffs,
                                size_t len,
                                struct CgMultivector **out);

// Grade-1 multivector from `dim` components.
//
// # Safety
// `v` must point to `dim` doubles; `out` to a handle slot.
enum CgStatus cg_mv_from_vector(const double *v, size_t dim, struct CgMultivector **out);

// `a b`, a new handle.
//
// # Safety
// `a`, `b` must be live handles; `out` a handle slot.
enum CgStatus cg_mv_geometric_product(const struct CgMultivector *a,
                                      const struct CgMultivector *b,
                                      struct CgMultivector **out);

// `a ∧ b`, a new handle.
//
// # Safety
// As [`cg_mv_geometric_product`].
enum CgStatus cg_mv_wedge(const struct CgMultivector *a,
                          const struct CgMultivector *b,
                          struct CgMultivector **out);

// `a + b`, a new handle.
//
// # Safety
// As [`cg_mv_geometric_product`].
enum CgStatus cg_mv_add(const struct CgMultivector *a,
                        const struct CgMultivector *b,
                        struct CgMultivector **out);

// `a − b`, a new handle.
//
// # Safety
// As [`cg_mv_geometric_product`].
enum CgStatus cg_mv_sub(const struct CgMultivector *a,
                        const struct CgMultivector *b,
                        struct CgMultivector **out);

// Dimension `n` of the algebra the multivector lives in.
//
// # Safety
// `mv` must be a live handle; `out` a valid pointer.
enum CgStatus cg_mv_dim(const struct CgMultivector *mv, size_t *out);

// Copy the `2^n` coefficients into `buf`.
//
// # Safety
// `mv` must be a live handle; `buf` must hold `len` doubles.
enum CgStatus cg_mv_coeffs(const struct CgMultivector *mv, double *buf, size_t len);

// Release a multivector. Null is ignored.
//
// # Safety
// `mv` must be null or a handle not yet freed.
void cg_mv_free(struct CgMultivector *mv);

// Field from a spec string (builtin name or expression). `dim = 0` lets
// builtins choose their own dimension.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` a handle slot.
enum CgStatus cg_field_from_spec(const char *spec, size_t dim, struct CgField **out);

// # Safety
// `field` must be a live handle; `out` a valid pointer.
enum CgStatus cg_field_dim(const struct CgField *field, size_t *out);

// `f(x)`.
//
// # Safety
// `field` must be a live handle, `x` must hold `dim` doubles, `out` valid.
enum CgStatus cg_field_eval(const struct CgField *field, const double *x, size_t dim, double *out);

// # Safety
// `field` must be null or a handle not yet freed.
void cg_field_free(struct CgField *field);

// Simplex in `E_dim` from `(dim+1)·dim` row-major vertex coordinates.
// Flat simplices are accepted; check [`cg_simplex_is_degenerate`].
//
// # Safety
// `coords` must hold `(dim+1)·dim` doubles; `out` a handle slot.
enum CgStatus cg_simplex_new(const double *coords, size_t dim, struct CgSimplex **out);

// Oriented volume `τ_n`.
//
// # Safety
// `s` must be a live handle; `out` valid.
enum CgStatus cg_simplex_tau(const struct CgSimplex *s, double *out);

// Writes 1 for degenerate, 0 otherwise.
//
// # Safety
// `s` must be a live handle; `out` valid.
enum CgStatus cg_simplex_is_degenerate(const struct CgSimplex *s, int32_t *out);

// # Safety
// `s` must be null or a handle not yet freed.
void cg_simplex_free(struct CgSimplex *s);

// Mirrored mean ratio `r̄_f` on `s`, written to `grad[0..n]`. The number of
// field evaluations goes to `evaluations` when it is not null.
//
// # Safety
// Handles must be live; `grad` must hold `len` doubles.
enum CgStatus cg_estimate_gradient(const struct CgField *field,
                                   const struct CgSimplex *s,
                                   double *grad,
                                   size_t len,
                                   size_t *evaluations);

// Secant ratio `r_f` from the vertex values only.
//
// # Safety
// Handles must be live; `grad` must hold `len` doubles.
enum CgStatus cg_secant_ratio(const struct CgField *field,
                              const struct CgSimplex *s,
                              double *grad,
                              size_t len);

// Determinant of a `k×k` row-major matrix via the Clifford quotient.
//
// # Safety
// `rows` must hold `k·k` doubles; `out` valid.
enum CgStatus cg_det_via_quotient(const double *rows, size_t k, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CLIFFGRAD_H */
