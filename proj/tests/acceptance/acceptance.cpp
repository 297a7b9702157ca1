// Runs the thirteen primary criteria at full size and prints one line each.
// Exit status is zero only if every criterion passes within its time budget.
#include <cstdlib>
#include <iostream>
#include <string>

#include "hexmix/suite.hpp"

int main(int argc, char** argv) {
    hexmix::SuiteOptions opt;
    opt.seed = 7;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--seed" && i + 1 < argc) opt.seed = std::strtoull(argv[++i], nullptr, 10);
        else opt.only.push_back(std::atoi(argv[i]));
    }
    opt.on_result = [](const hexmix::CriterionResult& r) { std::cout << hexmix::result_line(r) << std::endl; };
    const auto results = hexmix::run_primary_suite(opt);
    int failed = 0;
    for (const auto& r : results) failed += !r.ok();
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed" << std::endl;
    return failed == 0 && !results.empty() ? 0 : 1;
}
