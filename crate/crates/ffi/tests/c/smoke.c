#include <stdio.h>
#include <string.h>

#include "pic2cone.h"

int main(int argc, char **argv) {
    if (argc != 2) {
        return 2;
    }
    P2cScenario *s = NULL;
    if (p2c_scenario_load(argv[1], &s) != P2C_STATUS_OK) {
        fprintf(stderr, "load: %s\n", p2c_last_error());
        return 1;
    }
    P2cProfile *p = NULL;
    if (p2c_classify(s, P2C_ACTION_BIR, &p) != P2C_STATUS_OK) {
        fprintf(stderr, "classify: %s\n", p2c_last_error());
        return 1;
    }
    char *alpha = NULL;
    int64_t f[4];
    if (p2c_profile_alpha(p, &alpha) != P2C_STATUS_OK || p2c_profile_plus_generator(p, f) != P2C_STATUS_OK) {
        return 1;
    }
    printf("kind=%d alpha=%s trace=%lld\n", (int)p2c_profile_kind(p), alpha, (long long)(f[0] + f[3]));
    p2c_string_free(alpha);
    p2c_profile_free(p);
    p2c_scenario_free(s);
    return 0;
}
