#include <cstdlib>
#include <iostream>

#include "subdiv/verify.hpp"

// Runs every acceptance criterion and prints one line per criterion.
int main() {
    subdiv::VerifyOptions opt;
    if (const char* s = std::getenv("SUBDIV_SEED")) opt.seed = std::strtoull(s, nullptr, 10);
    const auto results = subdiv::verify_suite("all", opt);
    int failed = 0;
    for (const auto& r : results) {
        std::cout << subdiv::summary_line(r) << "\n";
        if (!r.passed) {
            std::cout << "      " << subdiv::dump_json(r.detail, -1) << "\n";
            ++failed;
        }
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
    return failed == 0 ? 0 : 1;
}
