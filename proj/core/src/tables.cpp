#include "hypertheta/tables.hpp"

#include <algorithm>
#include <map>

namespace hypertheta {

namespace {

using Poly = std::function<double(const std::vector<double>&)>;
using Sparse = std::map<std::vector<int>, Poly>;

Poly k(double c) {
    return [c](const std::vector<double>&) { return c; };
}
Poly e1(double c, int power) {
    return [c, power](const std::vector<double>& e) {
        double v = c;
        for (int i = 0; i < power; ++i) v *= e[0];
        return v;
    };
}

PrintedSTable sparse_table(std::string name, int genus, int order, int finite_size, Sparse entries) {
    PrintedSTable t{std::move(name), genus, order, finite_size, {}};
    t.entry = [entries = std::move(entries)](const std::vector<double>& e, std::vector<int> idx) {
        std::sort(idx.begin(), idx.end());
        const auto it = entries.find(idx);
        return it == entries.end() ? 0.0 : it->second(e);
    };
    return t;
}

}  // namespace

std::vector<PrintedSTable> printed_s_tables() {
    std::vector<PrintedSTable> out;

    out.push_back(sparse_table("g3-m2-{}", 3, 2, 0, {{{1, 3}, k(-1)}, {{2, 2}, k(2)}}));

    out.push_back(sparse_table("g4-m2-{i}", 4, 2, 1,
                               {{{1, 3}, k(-1)},
                                {{1, 4}, e1(1, 1)},
                                {{2, 2}, k(2)},
                                {{2, 3}, e1(-1, 1)},
                                {{2, 4}, e1(-1, 2)},
                                {{3, 3}, e1(2, 2)}}));

    out.push_back(sparse_table("g5-m2-{i}", 5, 2, 1,
                               {{{2, 4}, k(-1)},
                                {{2, 5}, e1(1, 1)},
                                {{3, 3}, k(2)},
                                {{3, 4}, e1(-1, 1)},
                                {{3, 5}, e1(-1, 2)},
                                {{4, 4}, e1(2, 2)}}));

    {
        auto s1 = [](const std::vector<double>& e) { return e[0] + e[1]; };
        auto s2 = [](const std::vector<double>& e) { return e[0] * e[1]; };
        Sparse m{{{1, 3}, k(-1)},
                 {{1, 4}, s1},
                 {{1, 5}, [s2](const std::vector<double>& e) { return -s2(e); }},
                 {{2, 2}, k(2)},
                 {{2, 3}, [s1](const std::vector<double>& e) { return -s1(e); }},
                 {{2, 4}, [](const std::vector<double>& e) { return -e[0] * e[0] - e[1] * e[1]; }},
                 {{2, 5}, [s1, s2](const std::vector<double>& e) { return s2(e) * s1(e); }},
                 {{3, 3},
                  [](const std::vector<double>& e) { return 2 * (e[0] * e[0] + e[0] * e[1] + e[1] * e[1]); }},
                 {{3, 4}, [s1, s2](const std::vector<double>& e) { return -s2(e) * s1(e); }},
                 {{3, 5}, [s2](const std::vector<double>& e) { return -s2(e) * s2(e); }},
                 {{4, 4}, [s2](const std::vector<double>& e) { return 2 * s2(e) * s2(e); }}};
        out.push_back(sparse_table("g5-m2-{i,k}", 5, 2, 2, std::move(m)));
    }

    out.push_back(sparse_table("g5-m3-{}", 5, 3, 0,
                               {{{1, 3, 5}, k(-1)},
                                {{1, 4, 4}, k(2)},
                                {{2, 2, 5}, k(2)},
                                {{2, 3, 4}, k(-2)},
                                {{3, 3, 3}, k(6)}}));

    out.push_back(sparse_table("g6-m3-{}", 6, 3, 0,
                               {{{2, 4, 6}, k(-1)},
                                {{2, 5, 5}, k(2)},
                                {{3, 3, 6}, k(2)},
                                {{3, 4, 5}, k(-2)},
                                {{4, 4, 4}, k(6)}}));

    out.push_back(sparse_table("g6-m3-{i}", 6, 3, 1,
                               {{{1, 3, 5}, k(-1)},
                                {{1, 4, 4}, k(2)},
                                {{2, 2, 5}, k(2)},
                                {{2, 3, 4}, k(-2)},
                                {{3, 3, 3}, k(6)},
                                {{1, 3, 6}, e1(1, 1)},
                                {{1, 4, 5}, e1(-1, 1)},
                                {{2, 2, 6}, e1(-2, 1)},
                                {{2, 3, 5}, e1(1, 1)},
                                {{2, 4, 4}, e1(2, 1)},
                                {{3, 3, 4}, e1(-2, 1)},
                                {{2, 3, 6}, e1(1, 2)},
                                {{1, 4, 6}, e1(-1, 2)},
                                {{1, 5, 5}, e1(2, 2)},
                                {{2, 4, 5}, e1(-1, 2)},
                                {{3, 3, 5}, e1(-2, 2)},
                                {{3, 4, 4}, e1(2, 2)},
                                {{2, 4, 6}, e1(1, 3)},
                                {{2, 5, 5}, e1(-2, 3)},
                                {{3, 3, 6}, e1(-2, 3)},
                                {{3, 4, 5}, e1(2, 3)},
                                {{4, 4, 4}, e1(-6, 3)}}));
    return out;
}

}  // namespace hypertheta
