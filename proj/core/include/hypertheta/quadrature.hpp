#pragma once

#include <functional>
#include <vector>

namespace hypertheta {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<long double> nodes;
    std::vector<long double> weights;
};

// Cached, thread-safe.
const GaussRule& gauss_legendre(int n);

struct QuadratureResult {
    std::vector<long double> values;
    std::vector<long double> abs_values;  // integrals of |f_c|, used as error scale
    long double max_rel_change = 0;       // last doubling change relative to abs_values
    int nodes = 0;
    bool converged = false;
};

using VectorIntegrand = std::function<void(long double t, std::vector<long double>& out)>;

// Integrates a vector-valued smooth function over [a, b], doubling the rule size from n0
// until every component changes by at most rtol times its absolute integral.
QuadratureResult integrate_doubling(const VectorIntegrand& f, std::size_t components, long double a,
                                    long double b, long double rtol, int n0 = 16, int nmax = 4096);

}  // namespace hypertheta
