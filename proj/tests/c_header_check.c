/* Compiled as C to keep the public header C-clean. */
#include <string.h>
#include <surromix/surromix.h>

int main(void) {
  double risk = 0.0;
  if (smx_mean_risk(50, 100, 400, 0.3, 0.25, &risk) != SMX_OK) return 1;
  if (risk <= 0.0) return 1;
  return strlen(smx_version()) > 0 ? 0 : 1;
}
