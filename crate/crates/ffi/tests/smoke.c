#include <stdio.h>
#include <string.h>

#include "lmrttg.h"

int main(void) {
    LmrttgGraph *g = NULL;
    if (lmrttg_build_g(5, 7, &g) != LMRTTG_STATUS_OK) {
        fprintf(stderr, "build: %s\n", lmrttg_last_error());
        return 1;
    }
    uint64_t nv[16];
    size_t len = 0;
    if (lmrttg_n_vector(g, nv, 16, &len) != LMRTTG_STATUS_OK || len != 7 || nv[0] != 1) {
        return 2;
    }
    char *r = NULL;
    if (lmrttg_reliability(g, "1", &r) != LMRTTG_STATUS_OK || strcmp(r, "1") != 0) {
        return 3;
    }
    lmrttg_string_free(r);
    LmrttgClass c;
    if (lmrttg_classify(6, 7, &c) != LMRTTG_STATUS_OK || c.sign != LMRTTG_SIGN_STAR) {
        return 4;
    }
    lmrttg_graph_free(g);
    g = NULL;
    if (lmrttg_build_family(6, 5, LMRTTG_FAMILY_C3, &g) != LMRTTG_STATUS_DOES_NOT_EXIST) {
        return 5;
    }
    printf("ok\n");
    return 0;
}
