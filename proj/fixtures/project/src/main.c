#include <stdio.h>
#include "semver.h"

int main(int argc, char **argv) {
    semver_t have, want;
    if (argc < 3 || semver_parse(argv[1], &have) || semver_parse(argv[2], &want))
        return 2;
    printf("%s\n", semver_compare(have, want) >= 0 ? "ok" : "outdated");
    return 0;
}
