#include <stdio.h>
#include "ftmv.h"

int main(void) {
    FtmvGraph *g = NULL;
    FtmvSolution *s = NULL;
    if (ftmv_graph_from_spec("hamming:3,4", &g) != FTMV_STATUS_OK) return 10;
    if (ftmv_solve(g, 1, 1, 0.0, &s) != FTMV_STATUS_OK) return 11;
    size_t w[16];
    size_t n = ftmv_solution_witness(s, w, 16);
    bool ok = false;
    if (ftmv_verify(g, w, n, 1, &ok, NULL) != FTMV_STATUS_OK || !ok) return 12;
    printf("%zu\n", ftmv_solution_value(s));
    if (ftmv_graph_from_spec("bogus", &g) != FTMV_STATUS_PARSE_ERROR) return 13;
    if (ftmv_last_error_message() == NULL) return 14;
    ftmv_solution_free(s);
    ftmv_graph_free(g);
    return 0;
}
