/* Minimal consumer of the lagwave C API: evaluates the analyzing wavelet
 * by both routes, a Bergman transform, and a frame-bounds report. Exits
 * nonzero on any mismatch. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "lagwave.h"

static int check(enum LwfStatus status, const char *what) {
    if (status != LwfStatus_Ok) {
        fprintf(stderr, "%s failed with status %d\n", what, (int)status);
        return 1;
    }
    return 0;
}

int main(void) {
    double v = 0.0;
    if (check(lwf_gamma(5.0, &v), "lwf_gamma")) return 1;
    if (fabs(v - 24.0) > 1e-12) return 2;

    double re1, im1, re2, im2;
    if (check(lwf_analyzing_wavelet(2, 1.5, 0.3, &re1, &im1), "wavelet")) return 1;
    if (check(lwf_analyzing_wavelet_disc_route(2, 1.5, 0.3, &re2, &im2), "disc route"))
        return 1;
    if (hypot(re1 - re2, im1 - im2) > 1e-11) return 3;

    /* domain errors surface as status codes */
    if (lwf_gamma(-1.0, &v) != LwfStatus_InvalidArgument) return 4;

    LwfContext *ctx = NULL;
    if (check(lwf_context_new(&ctx), "context")) return 1;
    const double coeff_re = M_SQRT2; /* spectral function l_0^2 */
    LwfSignal *signal = NULL;
    if (check(lwf_signal_new(2.0, &coeff_re, NULL, 1, &signal), "signal")) return 1;

    double bre, bim;
    if (check(lwf_bergman_transform(ctx, signal, 1.0, 0.0, 1.0, &bre, &bim), "bergman"))
        return 1;
    if (fabs(bre - 16.0 / 27.0) > 1e-12 || fabs(bim) > 1e-13) return 5;

    char json[16384];
    size_t written = 0;
    enum LwfStatus status = lwf_frame_bounds_json(
        0, 2.0, 4.810477380965351, 1.0, -1, 1, -4, 4, 3, 0, false,
        json, sizeof(json), &written);
    if (check(status, "frame bounds")) return 1;
    if (strstr(json, "\"a_est\"") == NULL) return 6;

    lwf_signal_free(signal);
    lwf_context_free(ctx);
    printf("lagwave C API demo: ok (version %s)\n", lwf_version());
    return 0;
}
