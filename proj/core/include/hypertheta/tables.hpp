#pragma once

#include <functional>
#include <string>
#include <vector>

namespace hypertheta {

// A tabulated branch-point tensor S[I] as a function of the branch points in I.
struct PrintedSTable {
    std::string name;
    int genus = 0;
    int order = 0;
    int finite_size = 0;
    // Entry at a 1-based index (any order) for the given values of e over I.
    std::function<double(const std::vector<double>& e, std::vector<int> idx)> entry;
};

std::vector<PrintedSTable> printed_s_tables();

}  // namespace hypertheta
