// Acceptance suite: runs every built-in scenario check and prints one
// pass/fail line per check. Exit status 0 only when everything passes.
#include <cstdio>
#include <cstring>
#include <string>

#include "lendsim/validation.hpp"

int main(int argc, char** argv) {
    using namespace lendsim::validation;

    std::string only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = argv[++i];
        } else if (std::strcmp(argv[i], "--list") == 0) {
            for (const auto& name : check_names()) {
                std::printf("%s\n", name.c_str());
            }
            return 0;
        }
    }

    std::vector<CheckResult> results;
    try {
        if (only.empty()) {
            results = run_all();
        } else {
            results.push_back(run_check(only));
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    bool all_passed = true;
    for (const auto& result : results) {
        std::printf("[%s] %s: %s\n", result.passed ? "PASS" : "FAIL",
                    result.name.c_str(), result.detail.c_str());
        all_passed = all_passed && result.passed;
    }
    return all_passed ? 0 : 1;
}
