// Acceptance suite runner: one pass/fail line per criterion, nonzero exit on
// any failure. The same criteria back the CLI `suite` command.
#include <cstring>
#include <iostream>

#include "qcc/acceptance.hpp"

int main(int argc, char** argv) {
    qcc::acceptance::Options opts;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
            opts.seed = std::strtoull(argv[++i], nullptr, 10);
        } else if (std::strcmp(argv[i], "--criteria") == 0 && i + 1 < argc) {
            opts.criteria.clear();
            for (const char* c = argv[++i]; *c;) {
                opts.criteria.push_back(std::strtol(c, const_cast<char**>(&c), 10));
                if (*c == ',') ++c;
            }
        } else {
            std::cerr << "usage: qcc_acceptance [--seed N] [--criteria 1,2,...]\n";
            return 1;
        }
    }
    const auto results = qcc::acceptance::run(opts);
    qcc::acceptance::print(results, std::cout);
    return qcc::acceptance::all_pass(results) ? 0 : 3;
}
