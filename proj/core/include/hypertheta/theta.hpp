#pragma once

#include <random>
#include <vector>

#include "hypertheta/characteristics.hpp"
#include "hypertheta/tensor.hpp"

namespace hypertheta {

// Riemann matrix with precomputed lattice geometry for truncated theta sums.
class ThetaContext {
public:
    explicit ThetaContext(const MatrixC& tau, double tol = 1e-12, double safety = 1.5);

    const MatrixC& tau() const { return tau_; }
    int genus() const { return static_cast<int>(tau_.rows()); }
    double tol() const { return tol_; }
    double safety() const { return safety_; }
    double min_eigenvalue() const { return lambda_min_; }

    // Radius R in units where the term magnitude relative to the peak is exp(-R^2).
    double radius(int order, const VectorC& v) const;

    // Visits n in Z^g with pi (n - c)^t Im(tau) (n - c) <= R^2 in a fixed order.
    template <class F>
    void for_each_point(const Eigen::VectorXd& center, double R, F&& visit) const;

    std::size_t count_points(const Eigen::VectorXd& center, double R) const;

private:
    double tail_bound(double R, int order, double shift) const;

    MatrixC tau_;
    MatrixR y_;
    MatrixR y_inv_;
    MatrixR upper_;  // Im tau = upper^t upper
    double tol_;
    double safety_;
    double lambda_min_ = 0;
    double lambda_max_ = 0;
    double det_y_ = 0;
};

cplx theta(const ThetaContext& ctx, const VectorC& v);
cplx theta_char(const ThetaContext& ctx, const Characteristic& c, const VectorC& v);

// Prefactor times plain theta at the shifted argument, the unshifted textbook form.
cplx theta_char_shifted_form(const ThetaContext& ctx, const Characteristic& c, const VectorC& v);

// Term-wise derivative along 0-based directions.
cplx theta_derivative(const ThetaContext& ctx, const Characteristic& c, const std::vector<int>& directions,
                      const VectorC& v);

// All derivatives of one order at v.
DerivativeTensor theta_derivative_tensor(const ThetaContext& ctx, const Characteristic& c, int order,
                                         const VectorC& v);

// Order-m derivative theta constants of the partition characteristic at v = 0.
DerivativeTensor derivative_theta_constants(const ThetaContext& ctx, const Partition& p);

// Smallest order whose derivatives at 0 exceed threshold in magnitude.
int vanishing_order(const ThetaContext& ctx, const Characteristic& c, int max_order, double threshold = 1e-6);

// Parity from theta[c](-v) versus theta[c](v) at a random v.
Parity operational_parity(const ThetaContext& ctx, const Characteristic& c, std::mt19937_64& rng);

// (1/C) exp(-(omega eps + omega' eps')^t (eta eps + eta' eps') / 8) theta[I](0)
cplx sigma_at_halfperiod(const PeriodMatrices& pm, const ThetaContext& ctx, const Partition& p, cplx cg);

template <class F>
void ThetaContext::for_each_point(const Eigen::VectorXd& center, double R, F&& visit) const {
    const int g = genus();
    const double bound = R * R / 3.141592653589793238462643383279502884;
    Eigen::VectorXd n(g);
    Eigen::VectorXd x(g);
    // level i fixes n_i given n_{i+1..g-1}
    auto recurse = [&](auto&& self, int i, double used) -> void {
        if (i < 0) {
            visit(static_cast<const Eigen::VectorXd&>(n));
            return;
        }
        double s = 0;
        for (int j = i + 1; j < g; ++j) s += upper_(i, j) * x(j);
        const double uii = upper_(i, i);
        const double room = bound - used;
        if (room < 0) return;
        const double half = std::sqrt(room) / uii;
        const double mid = center(i) - s / uii;
        const long lo = static_cast<long>(std::ceil(mid - half));
        const long hi = static_cast<long>(std::floor(mid + half));
        for (long k = lo; k <= hi; ++k) {
            n(i) = static_cast<double>(k);
            x(i) = n(i) - center(i);
            const double r = uii * x(i) + s;
            self(self, i - 1, used + r * r);
        }
    };
    recurse(recurse, g - 1, 0.0);
}

}  // namespace hypertheta
