#include <stdio.h>
#include "octad.h"

int main(int argc, char **argv) {
    unsigned char alpha, beta;
    bool even;
    if (octad_diagram_class("000101", &alpha, &beta, &even) != OCTAD_STATUS_OK) {
        return 1;
    }
    printf("000101: O%u%u %s\n", alpha, beta, even ? "even" : "odd");

    int code = 0;
    char *report = octad_run_json(argc > 1 ? argv[1] : "adjacency", &code);
    if (report != NULL) {
        printf("%s", report);
        octad_string_free(report);
    }
    return code;
}
