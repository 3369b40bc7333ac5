#include <stdio.h>
#include <string.h>

#include "casorati.h"

#define CHECK(cond)                                                 \
  do {                                                              \
    if (!(cond)) {                                                  \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond);    \
      return 1;                                                     \
    }                                                               \
  } while (0)

int main(void) {
  CasoratiPoly *x = NULL, *x2 = NULL, *w = NULL;
  char *text = NULL;
  CHECK(casorati_poly_parse("0,1", &x) == CASORATI_STATUS_OK);
  CHECK(casorati_poly_parse("0,0,1", &x2) == CASORATI_STATUS_OK);

  const CasoratiPoly *fs[2] = {x, x2};
  CHECK(casorati_casoratian_real(fs, 2, &w) == CASORATI_STATUS_OK);
  CHECK(casorati_poly_coefficients(w, &text) == CASORATI_STATUS_OK);
  CHECK(strcmp(text, "0,1,1") == 0);
  casorati_string_free(text);
  casorati_poly_free(w);

  CHECK(casorati_casoratian_imag(fs, 2, "0", &w) == CASORATI_STATUS_ZERO_GAMMA);
  CHECK(casorati_last_error() != NULL);

  char *report = NULL;
  int32_t code = -1;
  CHECK(casorati_run("subcommand = identities\ntrials = 1\nidentities = eq1\n", &report, &code) ==
        CASORATI_STATUS_OK);
  CHECK(code == 0);
  CHECK(strstr(report, "\"schema\":1") != NULL);
  casorati_string_free(report);

  casorati_poly_free(x);
  casorati_poly_free(x2);
  printf("ok %s\n", casorati_version());
  return 0;
}
