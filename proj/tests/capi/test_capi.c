/* compiles the public header as C and drives a small build */
#include <stdio.h>
#include <string.h>

#include "grssd/grssd.h"

int main(void) {
    grssd_field* f = NULL;
    grssd_code* c = NULL;
    grssd_build_options o;
    char* summary = NULL;
    int rc = 1;
    if (grssd_field_create(7, 1, &f) != GRSSD_OK) return 1;
    grssd_build_options_init(&o);
    if (grssd_build(f, "thm2", "l=6,s=0,l1=1,l2=0", &o, &c) == GRSSD_OK && grssd_code_length(c) == 10 &&
        grssd_code_summary(c, &summary) == GRSSD_OK && strstr(summary, "mds=pass") != NULL)
        rc = 0;
    if (rc != 0) fprintf(stderr, "%s\n", grssd_last_error());
    grssd_string_free(summary);
    grssd_code_destroy(c);
    grssd_field_destroy(f);
    if (grssd_field_create(4, 1, &f) != GRSSD_E_INVALID_ARGUMENT || f != NULL) rc = 1;
    return rc;
}
