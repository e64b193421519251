#include "semver.h"
#include <stdlib.h>
#include <string.h>

int semver_parse(const char *str, semver_t *ver) {
    char *end;
    memset(ver, 0, sizeof *ver);
    ver->major = (int)strtol(str, &end, 10);
    if (*end != '.') return -1;
    ver->minor = (int)strtol(end + 1, &end, 10);
    if (*end != '.') return -1;
    ver->patch = (int)strtol(end + 1, &end, 10);
    return 0;
}

int semver_compare(semver_t x, semver_t y) {
    if (x.major != y.major) return x.major > y.major ? 1 : -1;
    if (x.minor != y.minor) return x.minor > y.minor ? 1 : -1;
    if (x.patch != y.patch) return x.patch > y.patch ? 1 : -1;
    return 0;
}

int semver_satisfies(semver_t x, semver_t y, const char *op) {
    int c = semver_compare(x, y);
    if (strcmp(op, ">=") == 0) return c >= 0;
    if (strcmp(op, "<") == 0) return c < 0;
    return c == 0;
}

void semver_free(semver_t *x) {
    free(x->metadata);
    free(x->prerelease);
}
