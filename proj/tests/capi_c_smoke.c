/* Pure C caller: the shared library must be usable without any C++. */
#include <stdio.h>
#include <string.h>

#include "barfill.h"

static int failures = 0;

static void expect(int ok, const char* what) {
    if (!ok) {
        ++failures;
        fprintf(stderr, "FAIL %s\n", what);
    }
}

int main(void) {
    bf_session* s = bf_session_new();
    expect(s != NULL, "session_new");
    if (!s)
        return 1;

    char* out = NULL;
    expect(bf_group_info(s, "cyclic:4", &out) == BF_OK, "group_info status");
    expect(out && strstr(out, "\"order\":4") != NULL, "group_info order");
    bf_string_free(out);

    out = NULL;
    expect(bf_homology(s, "cyclic:2", 1, 2, &out) == BF_OK, "homology status");
    expect(out && strstr(out, "\"dim\":1") != NULL, "homology dim");
    bf_string_free(out);

    out = NULL;
    expect(bf_isop(s, "cyclic:2", 1, 2, 1, "exhaustive", 0, &out) == BF_OK, "isop status");
    expect(out && strstr(out, "\"value\":1") != NULL, "isop value");
    bf_string_free(out);

    out = NULL;
    expect(bf_check_phi(s, "cyclic:2", 1, 2, 1, 1, 0, &out) == BF_OK, "phi status");
    expect(out && strstr(out, "\"holds\":false") != NULL, "phi verdict");
    bf_string_free(out);

    out = NULL;
    expect(bf_group_info(s, "cyclic:x", &out) == BF_E_PARSE, "bad spec status");
    expect(out == NULL, "bad spec leaves out NULL");
    expect(strlen(bf_last_error(s)) > 0, "bad spec message");

    out = NULL;
    expect(bf_selftest(s, "isop", &out) == BF_OK, "selftest status");
    expect(bf_selftest_passed(out) == 1, "selftest passed");
    bf_string_free(out);

    bf_session_free(s);
    bf_session_free(NULL);
    if (failures == 0)
        puts("capi smoke: ok");
    return failures == 0 ? 0 : 1;
}
