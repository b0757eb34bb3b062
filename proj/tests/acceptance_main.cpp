// Runs every acceptance criterion and prints one pass/fail line each.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "bglab/acceptance.hpp"

int main(int argc, char** argv) {
    bglab::SuiteOptions opts;
    opts.seed = 7;
    opts.deterministic = true;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::strcmp(argv[i], "--seed") == 0) opts.seed = std::strtoull(argv[i + 1], nullptr, 10);

    const bglab::SuiteReport report = bglab::run_acceptance(opts);
    std::fputs(bglab::format_summary(report).c_str(), stdout);
    for (const auto& c : report.criteria)
        std::printf("  [%d] %s: %.2fs\n", c.index, c.name.c_str(), c.seconds);
    return report.all_pass ? 0 : 1;
}
