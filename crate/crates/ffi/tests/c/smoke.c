#include "crossfam.h"

int main(void) {
    uint64_t v = 0;
    CfFamily *f = NULL;
    if (cf_binom(10, 3, &v) != CF_STATUS_OK || v != 120) return 1;
    if (cf_family_segment(CF_ORDER_COLEX, 6, 3, 5, &f) != CF_STATUS_OK) return 2;
    cf_family_free(f);
    return 0;
}
