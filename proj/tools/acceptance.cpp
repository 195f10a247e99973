#include <cstdio>
#include <cstdlib>

#include "suite.hpp"

using namespace uqeps::acceptance;

int main(int argc, char** argv) {
    const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : kDefaultSeed;
    const auto out = run_suite(seed, [](const Criterion& c) {
        std::printf("%2d %s  %-32s %s [%.1fs]\n", c.id, c.pass ? "PASS" : "FAIL", c.name.c_str(), c.summary.c_str(),
                    c.seconds);
        std::fflush(stdout);
    });
    int failed = 0;
    for (const auto& c : out) failed += !c.pass;
    std::printf("\n%d of %zu criteria pass (seed %llu)\n", static_cast<int>(out.size()) - failed, out.size(),
                static_cast<unsigned long long>(seed));
    for (const auto& c : out)
        if (!c.details.empty()) std::printf("\n--- %d %s ---\n%s", c.id, c.name.c_str(), c.details.c_str());
    return failed ? 1 : 0;
}
