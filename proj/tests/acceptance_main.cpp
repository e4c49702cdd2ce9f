// Acceptance gate: runs every criterion at its stated bound and prints one
// PASS/FAIL line per criterion. Exit status is nonzero when any fails.

#include <chrono>
#include <cstring>
#include <iostream>

#include "njcalc/acceptance.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 20240903;
    std::string only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) seed = std::strtoull(argv[++i], nullptr, 10);
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = argv[++i];
    }
    auto t0 = std::chrono::steady_clock::now();
    auto rep = njcalc::run_acceptance(seed, only);
    auto t1 = std::chrono::steady_clock::now();
    njcalc::print_report(rep, std::cout, false);
    std::cerr << "acceptance suite: " << std::chrono::duration<double>(t1 - t0).count() << " s\n";
    return rep.all_pass() ? 0 : 1;
}
