#include <math.h>
#include <stdio.h>
#include <string.h>

#include "cliffgrad.h"

#define CHECK(cond)                                                   \
  do {                                                                \
    if (!(cond)) {                                                    \
      char msg[256];                                                  \
      cg_last_error_message(msg, sizeof msg);                         \
      fprintf(stderr, "line %d: %s (%s)\n", __LINE__, #cond, msg);    \
      return 1;                                                       \
    }                                                                 \
  } while (0)

int main(void) {
  CgMultivector *e1 = NULL, *e2 = NULL, *p = NULL;
  CHECK(cg_mv_basis_blade(2, 1, 1.0, &e1) == CG_STATUS_OK);
  CHECK(cg_mv_basis_blade(2, 2, 1.0, &e2) == CG_STATUS_OK);
  CHECK(cg_mv_geometric_product(e1, e2, &p) == CG_STATUS_OK);
  double c[4];
  CHECK(cg_mv_coeffs(p, c, 4) == CG_STATUS_OK);
  CHECK(c[0] == 0.0 && c[3] == 1.0);
  CHECK(cg_mv_coeffs(p, c, 2) == CG_STATUS_BUFFER_TOO_SMALL);
  cg_mv_free(p);
  cg_mv_free(e1);
  cg_mv_free(e2);

  CgField *f = NULL;
  CHECK(cg_field_from_spec("linear:2,-3", 0, &f) == CG_STATUS_OK);
  double verts[6] = {0, 0, 1, 0, 0, 1};
  CgSimplex *s = NULL;
  CHECK(cg_simplex_new(verts, 2, &s) == CG_STATUS_OK);
  double g[2];
  size_t evals = 0;
  CHECK(cg_estimate_gradient(f, s, g, 2, &evals) == CG_STATUS_OK);
  CHECK(fabs(g[0] - 2.0) < 1e-12 && fabs(g[1] + 3.0) < 1e-12 && evals == 4);
  cg_simplex_free(s);

  double flat[6] = {0, 0, 1, 1, 2, 2};
  CHECK(cg_simplex_new(flat, 2, &s) == CG_STATUS_OK);
  CHECK(cg_estimate_gradient(f, s, g, 2, NULL) == CG_STATUS_DEGENERATE);
  char msg[128];
  CHECK(cg_last_error_message(msg, sizeof msg) > 1 && strstr(msg, "degenerate") != NULL);
  cg_simplex_free(s);
  cg_field_free(f);

  CHECK(cg_field_from_spec("x1 + * 2", 2, &f) == CG_STATUS_PARSE);

  double m[9] = {2, 0, 0, 0, 3, 0, 0, 0, 4};
  double d = 0;
  CHECK(cg_det_via_quotient(m, 3, &d) == CG_STATUS_OK && fabs(d - 24.0) < 1e-12);
  printf("ok %s\n", cg_version());
  return 0;
}
