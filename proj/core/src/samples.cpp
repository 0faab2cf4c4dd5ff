#include "hypertheta/samples.hpp"

#include <string>

#include "hypertheta/error.hpp"

namespace hypertheta {

std::vector<double> named_sample(int genus) {
    if (genus < 1 || genus > max_named_genus()) {
        throw Error(ErrorCode::InvalidArgument, "no named sample for genus " + std::to_string(genus));
    }
    std::vector<double> pts;
    for (int i = -genus; i <= genus; ++i) pts.push_back(i);
    return pts;
}

int max_named_genus() { return 6; }

}  // namespace hypertheta
