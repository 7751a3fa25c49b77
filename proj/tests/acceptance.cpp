// Acceptance suite: runs every criterion at its committed tolerance and
// prints one pass/fail line per criterion. Exit status is nonzero when any
// criterion fails.
#include <cstdio>
#include <cstring>

#include "pindex/verification.hpp"

int main(int argc, char** argv) {
    pindex::SuiteConfig cfg;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
            cfg.seed = std::strtoull(argv[++i], nullptr, 10);
        else if (std::strcmp(argv[i], "--workers") == 0 && i + 1 < argc)
            cfg.workers = std::atoi(argv[++i]);
    }

    const pindex::SuiteReport rep = pindex::run_acceptance_suite(cfg);
    for (const pindex::CriterionResult& r : rep.rows)
        std::printf("[%s] criterion %2d: %s  (%s, %.1fs)\n", r.pass ? "pass" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str(), r.seconds);
    std::printf("%s\n", rep.all_pass ? "acceptance: all criteria pass"
                                     : "acceptance: FAILURES present");
    return rep.all_pass ? 0 : 1;
}
