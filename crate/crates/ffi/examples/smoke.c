/* cc -Icrates/ffi/include crates/ffi/examples/smoke.c target/debug/libspinor_kit_ffi.a -lpthread -ldl -lm */
#include <stdio.h>
#include "spinor_kit.h"

int main(void) {
    SkScalar *a = NULL, *b = NULL, *c = NULL;
    if (sk_scalar_parse("1+r2", &a) != SkStatus_Ok) {
        fprintf(stderr, "%s\n", sk_last_error_message());
        return 1;
    }
    sk_scalar_parse("1-r2", &b);
    sk_scalar_mul(a, b, &c);
    char *s = sk_scalar_to_string(c);
    printf("(1+r2)(1-r2) = %s\n", s);
    sk_string_free(s);
    sk_scalar_free(a);
    sk_scalar_free(b);
    sk_scalar_free(c);

    SkReport *r = NULL;
    if (sk_run_suite("pauli", 7, 10, &r) != SkStatus_Ok) {
        fprintf(stderr, "%s\n", sk_last_error_message());
        return 1;
    }
    printf("pauli failures: %llu\n", (unsigned long long)sk_report_failures(r));
    sk_report_free(r);
    return 0;
}
