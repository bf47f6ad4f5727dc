#include <stdio.h>
#include <string.h>
#include "lattice_area.h"

int main(void) {
    LaDistribution *d = NULL;
    if (la_dp_counts(4, &d) != LA_STATUS_OK) return 10;
    if (la_distribution_len(d) != 3) return 11;
    char buf[32];
    size_t need = 0;
    if (la_distribution_count(d, 0, buf, sizeof buf, &need) != LA_STATUS_OK) return 12;
    if (strcmp(buf, "28") != 0 || need != 3) return 13;
    char *json = la_distribution_to_json(d);
    printf("%s\n", json);
    la_string_free(json);
    la_distribution_free(d);
    if (la_dp_counts(3, &d) != LA_STATUS_INVALID_ARGUMENT) return 14;
    if (la_last_error_message() == NULL) return 15;
    double re = 0, im = 0;
    if (la_trace_power(4, 1, 2, &re, &im) != LA_STATUS_OK) return 16;
    if (re < 19.999999 || re > 20.000001) return 17;
    return 0;
}
