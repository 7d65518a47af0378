// Acceptance runner: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <mzv/acceptance.hpp>

#include <cstdio>
#include <cstring>
#include <string>

int main(int argc, char** argv) {
    std::string level = "full";
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--level") == 0 && i + 1 < argc) {
            level = argv[++i];
        } else {
            std::fprintf(stderr, "usage: acceptance [--level quick|stretch-only|full]\n");
            return 2;
        }
    }

    std::vector<mzv::CriterionResult> results;
    try {
        results = mzv::run_acceptance(level);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    bool all = true;
    for (const auto& r : results) {
        std::printf("%s  criterion %2d  %-55s  %7.2fs  %s\n",
                    r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                    r.detail.c_str());
        all = all && r.pass;
    }
    std::printf("%s: %zu criteria at level %s\n", all ? "SUCCESS" : "FAILURE",
                results.size(), level.c_str());
    return all ? 0 : 1;
}
