#include <stdio.h>

#include "galois_width.h"

int main(int argc, char **argv) {
    const char *expr = argc > 1 ? argv[1] : "wr(S(2),S(10)) & alt";
    GwOptions opts = gw_options_default();
    GwReport *report = NULL;
    GwStatus status = gw_width_expr(expr, &opts, &report);
    if (status != GW_STATUS_OK) {
        fprintf(stderr, "error %d: %s\n", (int)status, gw_last_error_message());
        return 1;
    }
    printf("width %llu\n", (unsigned long long)gw_report_width(report));
    printf("%s\n", gw_report_json(report));
    gw_report_free(report);
    return 0;
}
