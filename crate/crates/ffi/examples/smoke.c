#include <stdio.h>
#include "quivrep.h"

int main(void) {
    const char *json =
        "{\"schema\":{\"family\":\"Qmn\",\"m\":3,\"n\":2},"
        "\"dims\":[[0,1],[5,1]],\"mats\":[]}";
    QuivrepRep *v = NULL;
    if (quivrep_rep_from_json(json, &v) != QUIVREP_STATUS_OK) {
        fprintf(stderr, "%s\n", quivrep_last_error());
        return 1;
    }
    QuivrepMorphism *g = NULL;
    quivrep_morphism_from_json("{\"kind\":\"g\",\"m\":3,\"n\":2}", &g);
    QuivrepRep *w = NULL;
    quivrep_pushforward(g, v, 0, &w);
    size_t dim = 0, rad = 0;
    quivrep_end_dims(v, &dim, &rad);
    printf("End(V) %zu\n", dim);
    quivrep_end_dims(w, &dim, &rad);
    printf("End(g_! V) %zu\n", dim);
    quivrep_rep_free(v);
    QuivrepRep *bad = NULL;
    if (quivrep_rep_from_json("{", &bad) != QUIVREP_STATUS_PARSE) return 1;
    printf("error: %s\n", quivrep_last_error());
    quivrep_rep_free(w);
    quivrep_morphism_free(g);
    return 0;
}
