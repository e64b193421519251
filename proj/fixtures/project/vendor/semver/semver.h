/* semver.c 0.2.0: semantic version parsing and comparison for C */
#ifndef SEMVER_H
#define SEMVER_H

typedef struct semver_version_s {
    int major;
    int minor;
    int patch;
    char *metadata;
    char *prerelease;
} semver_t;

int semver_parse(const char *str, semver_t *ver);
int semver_compare(semver_t x, semver_t y);
int semver_satisfies(semver_t x, semver_t y, const char *op);
void semver_free(semver_t *x);

#endif
