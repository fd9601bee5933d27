#ifndef MC_VERIFY_HPP
#define MC_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mc/structure.hpp"

namespace mc {

/// Every labeled digraph of the given size (2^(size^2) of them).
std::vector<Digraph> all_digraphs(int size);

/// One representative per isomorphism class (lexicographically least edge
/// mask); 104 of them at size 3.
std::vector<Digraph> digraph_representatives(int size);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // counterexample or count summary
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool passed() const;
    std::string to_text() const;
};

std::vector<std::string> suite_names();

/// Runs one named suite ("all" composes every other one). Seed feeds the
/// randomized sentence portions. Unknown ids throw SemanticError.
SuiteReport run_suite(const std::string& id, std::uint64_t seed = 0);

}  // namespace mc

#endif
