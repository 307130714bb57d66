/* Compiled as C to keep the public header honest. */
#include "probclone.h"

#include <math.h>

int c_api_smoke(void) {
  const double zero[] = {1.0, 0.0, 0.0, 0.0};
  const double one[] = {0.6, 0.0, 0.8, 0.0};
  pclone_state* psi0 = NULL;
  pclone_state* psi1 = NULL;
  pclone_machine* machine = NULL;
  pclone_machine_info info;
  int result = 0;

  if (pclone_state_create(zero, 2, 0, &psi0) != PCLONE_OK) return 1;
  if (pclone_state_create(one, 2, 0, &psi1) != PCLONE_OK) return 2;
  if (pclone_machine_build(psi0, psi1, NULL, NULL, &machine) != PCLONE_OK) {
    result = 3;
    goto done;
  }
  if (pclone_machine_get_info(machine, &info) != PCLONE_OK) {
    result = 4;
    goto done;
  }
  if (info.total_dim != 8 || fabs(info.eta - 1.0 / 1.6) > 1e-12) result = 5;

done:
  pclone_machine_free(machine);
  pclone_state_free(psi1);
  pclone_state_free(psi0);
  return result;
}
