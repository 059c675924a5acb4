#include <stdio.h>
#include <string.h>

#include "qes/qes.h"

int main(void) {
  qes_model_spec spec;
  memset(&spec, 0, sizeof spec);
  spec.kind = QES_MODEL_TWO_PHOTON;
  spec.coupling = "3/10";
  spec.level_splitting = "1";
  spec.bargmann_index = "1/4";

  qes_model* model = NULL;
  if (qes_model_create(&spec, &model) != QES_OK) {
    fprintf(stderr, "create: %s\n", qes_last_error());
    return 1;
  }
  char* energy = NULL;
  double value = 0.0;
  int failed = qes_exceptional_energy(model, 0, &energy, &value) != QES_OK || strcmp(energy, "-1/10") != 0;
  printf("E0 = %s (%.17g)\n", energy ? energy : "?", value);
  qes_string_free(energy);
  qes_model_destroy(model);
  return failed;
}
