// Acceptance battery runner: one pass/fail line per criterion.

#include <cstdio>
#include <cstring>
#include <string>

#include "sfe/acceptance.hpp"

int main(int argc, char** argv) {
    std::string filter;
    std::uint64_t seed = sfe::kDefaultSeed;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--filter") == 0 && i + 1 < argc) filter = argv[++i];
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) seed = std::stoull(argv[++i]);
    }
    auto results = sfe::acceptance::run_all(seed, filter);
    for (const auto& r : results) {
        std::printf("[%s] %2d. %-24s (%.2f s)%s%s\n", r.passed ? "PASS" : "FAIL", r.number,
                    r.name.c_str(), r.seconds, r.detail.empty() ? "" : " -- ",
                    r.detail.c_str());
    }
    if (results.empty()) {
        std::printf("no criteria matched the filter\n");
        return 1;
    }
    return sfe::acceptance::all_passed(results) ? 0 : 1;
}
