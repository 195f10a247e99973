#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace uqeps::acceptance {

struct Criterion {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string summary;
    std::string details;
    double seconds = 0;
};

inline constexpr std::uint64_t kDefaultSeed = 20240611;

std::vector<Criterion> run_suite(std::uint64_t seed = kDefaultSeed,
                                 const std::function<void(const Criterion&)>& progress = {});

}  // namespace uqeps::acceptance
