#include "hypertheta/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace hypertheta {

namespace {

GaussRule build_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const long double pi = 3.141592653589793238462643383279502884L;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        long double x = std::cos(pi * (i + 0.75L) / (n + 0.5L));
        long double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            long double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1;
            dp = n * (x * p1 - p0) / (x * x - 1);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-19L) break;
        }
        {
            long double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1;
            dp = n * (x * p1 - p0) / (x * x - 1);
        }
        const long double w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GaussRule>(build_rule(n));
    return *slot;
}

QuadratureResult integrate_doubling(const VectorIntegrand& f, std::size_t components, long double a,
                                    long double b, long double rtol, int n0, int nmax) {
    QuadratureResult res;
    std::vector<long double> prev, buf(components);
    const long double mid = (a + b) / 2, half = (b - a) / 2;
    for (int n = n0; n <= nmax; n *= 2) {
        const GaussRule& rule = gauss_legendre(n);
        std::vector<long double> sum(components, 0), asum(components, 0);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            f(mid + half * rule.nodes[i], buf);
            for (std::size_t c = 0; c < components; ++c) {
                sum[c] += rule.weights[i] * buf[c];
                asum[c] += rule.weights[i] * std::fabs(buf[c]);
            }
        }
        for (std::size_t c = 0; c < components; ++c) {
            sum[c] *= half;
            asum[c] *= std::fabs(half);
        }
        res.values = sum;
        res.abs_values = asum;
        res.nodes = n;
        if (!prev.empty()) {
            long double worst = 0;
            for (std::size_t c = 0; c < components; ++c) {
                const long double scale = asum[c] > 0 ? asum[c] : 1;
                worst = std::max(worst, std::fabs(sum[c] - prev[c]) / scale);
            }
            res.max_rel_change = worst;
            if (worst <= rtol) {
                res.converged = true;
                return res;
            }
        }
        prev = sum;
    }
    return res;
}

}  // namespace hypertheta
