#pragma once

#include <vector>

namespace hypertheta {

// Evenly spaced integer branch points -g, ..., g of the named sample curve of genus g (1..6).
std::vector<double> named_sample(int genus);
int max_named_genus();

}  // namespace hypertheta
