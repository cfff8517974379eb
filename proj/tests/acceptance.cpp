// Acceptance battery: runs every criterion with the independent
// quasi-inverse oracle injected and prints one pass/fail line per criterion.
// Exit code 0 iff all pass.

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "stonevn/verify.hpp"

int main(int argc, char** argv) {
    stonevn::AcceptanceOptions options;
    const std::vector<std::string> args(argv + 1, argv + argc);
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--seed" && i + 1 < args.size()) {
            options.seed = std::stoull(args[++i]);
        } else if (args[i] == "--tolerance" && i + 1 < args.size()) {
            options.tolerance = std::stod(args[++i]);
        } else {
            std::cerr << "usage: acceptance [--seed <u64>] [--tolerance <float>]\n";
            return 2;
        }
    }

    const auto criteria =
        stonevn::run_acceptance(options, oracles::componentwise_quasi_inverse);

    std::size_t failed = 0;
    for (const auto& c : criteria) {
        std::cout << "[" << std::setw(2) << c.number << "/" << criteria.size() << "] "
                  << (c.report.passed() ? "PASS" : "FAIL") << "  " << c.title << "\n";
        if (!c.report.passed()) {
            ++failed;
            for (const auto& sample : c.report.failure_samples)
                std::cout << "        " << sample << "\n";
        }
    }
    if (failed == 0) {
        std::cout << "acceptance: all " << criteria.size() << " criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << failed << " of " << criteria.size() << " criteria failed\n";
    return 1;
}
