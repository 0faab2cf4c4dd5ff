#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

// Straightforward reference computations, kept independent of the library code paths.
namespace oracle {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Coefficients c_0..c_n of prod (x - r_i).
inline std::vector<double> expand_roots(const std::vector<double>& roots) {
    std::vector<double> c{1.0};
    for (double r : roots) {
        std::vector<double> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = next;
    }
    return c;
}

// s_0..s_n from prod (1 + x_i t).
inline std::vector<double> elementary(const std::vector<double>& xs) {
    std::vector<double> neg;
    for (double x : xs) neg.push_back(-x);
    const std::vector<double> c = expand_roots(neg);
    return std::vector<double>(c.rbegin(), c.rend());
}

inline double abs_discriminant(const std::vector<double>& xs) {
    double d = 1;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) d *= std::fabs(xs[j] - xs[i]);
    }
    return d;
}

inline double agm(double a, double b) {
    for (int i = 0; i < 64 && std::fabs(a - b) > 1e-16 * a; ++i) {
        const double m = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = m;
    }
    return a;
}

// Complete elliptic integral of the first kind, K(k) = pi / (2 agm(1, k')).
inline double elliptic_k(double k) { return kPi / (2 * agm(1.0, std::sqrt(1 - k * k))); }

// Riemann period of y^2 = (x - e1)(x - e2)(x - e3), e1 < e2 < e3.
inline cplx elliptic_tau(double e1, double e2, double e3) {
    const double k = std::sqrt((e2 - e1) / (e3 - e1));
    const double kp = std::sqrt((e3 - e2) / (e3 - e1));
    return cplx(0, elliptic_k(kp) / elliptic_k(k));
}

// theta[eps', eps](v) and derivatives by summing a cube of the lattice.
inline cplx theta(const Eigen::MatrixXcd& tau, const std::vector<int>& eps_prime, const std::vector<int>& eps,
                  const Eigen::VectorXcd& v, const std::vector<int>& directions = {}, int box = 7) {
    const int g = static_cast<int>(tau.rows());
    std::vector<int> n(static_cast<std::size_t>(g), -box);
    cplx sum = 0;
    const cplx I(0, 1);
    while (true) {
        Eigen::VectorXcd m(g);
        for (int i = 0; i < g; ++i) m(i) = n[static_cast<std::size_t>(i)] + 0.5 * eps_prime[static_cast<std::size_t>(i)];
        Eigen::VectorXcd arg(g);
        for (int i = 0; i < g; ++i) arg(i) = v(i) + 0.5 * eps[static_cast<std::size_t>(i)];
        cplx term = std::exp(I * kPi * m.dot(tau * m) + 2.0 * kPi * I * m.dot(arg));
        for (int d : directions) term *= 2.0 * kPi * I * m(d);
        sum += term;
        int i = 0;
        while (i < g && n[static_cast<std::size_t>(i)] == box) n[static_cast<std::size_t>(i++)] = -box;
        if (i == g) break;
        ++n[static_cast<std::size_t>(i)];
    }
    return sum;
}

}  // namespace oracle
