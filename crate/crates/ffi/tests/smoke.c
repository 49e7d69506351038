#include <stdio.h>
#include <string.h>
#include "dyntwist.h"

int main(void) {
    DtDatum *d = NULL;
    DtTwist *j = NULL;
    char *report = NULL;
    int pass = 0;
    if (dt_datum_example("E0", &d) != DT_STATUS_OK) return 10;
    if (dt_compute_twist(d, &j) != DT_STATUS_OK) return 11;
    if (dt_twist_len(j) != 16) return 12;
    if (dt_twist_verify(j, &pass, &report) != DT_STATUS_OK || !pass) return 13;
    if (strstr(report, "2-cocycle") == NULL) return 14;
    dt_string_free(report);
    dt_twist_free(j);
    dt_datum_free(d);
    if (dt_datum_example("nope", &d) != DT_STATUS_INVALID_INPUT) return 15;
    if (dt_last_error() == NULL) return 16;
    puts("ok");
    return 0;
}
