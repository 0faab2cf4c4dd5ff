#pragma once

#include <complex>
#include <span>
#include <vector>

#include "hypertheta/error.hpp"

namespace hypertheta {

using cplx = std::complex<double>;

// y^2 = (x - e_1)...(x - e_{2g+1}) with real ascending branch points; e_{2g+2} is infinity.
class Curve {
public:
    int genus() const { return genus_; }
    const std::vector<double>& branch_points() const { return points_; }
    // 1-based branch point index, finite points only.
    double e(int k) const { return points_.at(static_cast<std::size_t>(k - 1)); }
    int finite_count() const { return 2 * genus_ + 1; }
    int infinity_index() const { return 2 * genus_ + 2; }

    // lambda_w for even Sato weight w in 0..4g+2; lambda_0 = 1.
    double lambda(int weight) const;
    const std::vector<double>& lambdas() const { return lambda_; }

    // Spread max - min of the branch points.
    double scale() const { return points_.back() - points_.front(); }

    // Coefficients of x^0..x^{2g+1} of the monic polynomial.
    std::vector<double> polynomial() const;

private:
    friend Curve make_curve(std::span<const double> points);
    int genus_ = 0;
    std::vector<double> points_;
    std::vector<double> lambda_;  // lambda_[w/2]
};

// Sorts the points; throws EvenCount, TooFewPoints or DegenerateCurve.
Curve make_curve(std::span<const double> points);
inline Curve make_curve(const std::vector<double>& points) {
    return make_curve(std::span<const double>(points.data(), points.size()));
}

// prod_j (x - e_j)
cplx eval_poly(const Curve& curve, cplx x);
long double eval_poly(const Curve& curve, long double x);

// -y^2 + prod_j (x - e_j)
cplx eval_f(const Curve& curve, cplx x, cplx y);

// d/dx prod_j (x - e_j) evaluated at x
cplx eval_poly_derivative(const Curve& curve, cplx x);

bool on_curve(const Curve& curve, cplx x, cplx y);

// x^{g-n} / (-2y)
cplx first_kind_integrand(const Curve& curve, int n, cplx x, cplx y);

// sum_{k=1}^{2n-1} k lambda_{4n-2k-2} x^{g-n+k} / (-2y)
cplx second_kind_integrand(const Curve& curve, int n, cplx x, cplx y);

// Numerators of the two densities (without the 1/(-2y) factor).
long double first_kind_numerator(const Curve& curve, int n, long double x);
long double second_kind_numerator(const Curve& curve, int n, long double x);
cplx second_kind_numerator(const Curve& curve, int n, cplx x);

}  // namespace hypertheta
