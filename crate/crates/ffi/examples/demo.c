/* cc -I crates/ffi/include crates/ffi/examples/demo.c target/release/libassociahedra_ffi.a -lpthread -ldl -lm */
#include <stdio.h>

#include "associahedra.h"

int main(void) {
    AssocPolytope *p = NULL;
    if (assoc_build_default(ASSOC_CONSTRUCTION_MINKOWSKI, 3, &p) != ASSOC_STATUS_OK) {
        fprintf(stderr, "build: %s\n", assoc_last_error());
        return 1;
    }
    size_t facets = 0, count = 0;
    assoc_polytope_facet_count(p, &facets);
    printf("n=%zu vertices=%zu facets=%zu\n", assoc_polytope_n(p), assoc_polytope_vertex_count(p), facets);

    size_t buf[64];
    if (assoc_parallel_pairs(p, buf, 64, &count) == ASSOC_STATUS_OK) {
        for (size_t k = 0; k < count; k++) {
            printf("{%zu,%zu} || {%zu,%zu}\n", buf[4 * k], buf[4 * k + 1], buf[4 * k + 2], buf[4 * k + 3]);
        }
    }
    assoc_polytope_free(p);
    return 0;
}
