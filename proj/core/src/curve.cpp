#include "hypertheta/curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hypertheta {

double Curve::lambda(int weight) const {
    if (weight < 0 || weight % 2 != 0 || weight > 4 * genus_ + 2) {
        throw Error(ErrorCode::InvalidArgument, "lambda weight " + std::to_string(weight));
    }
    return lambda_[static_cast<std::size_t>(weight / 2)];
}

std::vector<double> Curve::polynomial() const {
    // x^i has coefficient lambda_{4g+2-2i}
    const int deg = 2 * genus_ + 1;
    std::vector<double> c(static_cast<std::size_t>(deg + 1));
    for (int i = 0; i <= deg; ++i) c[static_cast<std::size_t>(i)] = lambda_[static_cast<std::size_t>(deg - i)];
    return c;
}

Curve make_curve(std::span<const double> points) {
    if (points.size() % 2 == 0) {
        throw Error(ErrorCode::EvenCount,
                    "expected an odd number of finite branch points, got " + std::to_string(points.size()));
    }
    if (points.size() < 3) throw Error(ErrorCode::TooFewPoints, "need at least 3 branch points");
    std::vector<double> pts(points.begin(), points.end());
    for (double p : pts) {
        if (!std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, "branch points must be finite reals");
    }
    std::sort(pts.begin(), pts.end());
    const double spread = pts.back() - pts.front();
    const double tol = 1e-10 * std::max(spread, 1e-300);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i] - pts[i - 1] <= tol) {
            throw Error(ErrorCode::DegenerateCurve, "branch points " + std::to_string(pts[i - 1]) + " and " +
                                                        std::to_string(pts[i]) + " coincide");
        }
    }

    Curve c;
    c.genus_ = static_cast<int>((pts.size() - 1) / 2);
    c.points_ = pts;

    // Expand prod (x - e_j); coef[i] multiplies x^i.
    std::vector<long double> coef{1.0L};
    for (double e : pts) {
        std::vector<long double> next(coef.size() + 1, 0.0L);
        for (std::size_t i = 0; i < coef.size(); ++i) {
            next[i + 1] += coef[i];
            next[i] -= static_cast<long double>(e) * coef[i];
        }
        coef.swap(next);
    }
    const std::size_t deg = pts.size();
    c.lambda_.resize(deg + 1);
    for (std::size_t i = 0; i <= deg; ++i) c.lambda_[deg - i] = static_cast<double>(coef[i]);
    return c;
}

cplx eval_poly(const Curve& curve, cplx x) {
    cplx p = 1.0;
    for (double e : curve.branch_points()) p *= (x - e);
    return p;
}

long double eval_poly(const Curve& curve, long double x) {
    long double p = 1.0L;
    for (double e : curve.branch_points()) p *= (x - static_cast<long double>(e));
    return p;
}

cplx eval_f(const Curve& curve, cplx x, cplx y) { return -y * y + eval_poly(curve, x); }

cplx eval_poly_derivative(const Curve& curve, cplx x) {
    const auto& pts = curve.branch_points();
    cplx sum = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        cplx p = 1.0;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j != i) p *= (x - pts[j]);
        }
        sum += p;
    }
    return sum;
}

bool on_curve(const Curve& curve, cplx x, cplx y) {
    const double bound = 1e-9 * std::pow(1.0 + std::abs(x), curve.finite_count());
    return std::abs(eval_f(curve, x, y)) <= bound;
}

namespace {

void check_density_args(const Curve& curve, int n, cplx x, cplx y) {
    if (n < 1 || n > curve.genus()) {
        throw Error(ErrorCode::InvalidArgument, "differential index " + std::to_string(n) + " out of range");
    }
    const double ytol = 1e-12 * std::pow(1.0 + std::abs(x) + curve.scale(), curve.genus() + 0.5);
    if (std::abs(y) <= ytol) throw Error(ErrorCode::AtBranchPoint, "density is singular at y = 0");
    if (!on_curve(curve, x, y)) throw Error(ErrorCode::NotOnCurve, "point is not on the curve");
}

cplx ipow(cplx x, int k) {
    cplx r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

}  // namespace

long double first_kind_numerator(const Curve& curve, int n, long double x) {
    long double p = 1.0L;
    for (int i = 0; i < curve.genus() - n; ++i) p *= x;
    return p;
}

long double second_kind_numerator(const Curve& curve, int n, long double x) {
    const int g = curve.genus();
    long double sum = 0.0L;
    for (int k = 1; k <= 2 * n - 1; ++k) {
        const int exponent = g - n + k;
        long double xp = 1.0L;
        for (int i = 0; i < exponent; ++i) xp *= x;
        sum += static_cast<long double>(k) * static_cast<long double>(curve.lambda(4 * n - 2 * k - 2)) * xp;
    }
    return sum;
}

cplx second_kind_numerator(const Curve& curve, int n, cplx x) {
    const int g = curve.genus();
    cplx sum = 0.0;
    for (int k = 1; k <= 2 * n - 1; ++k) {
        sum += static_cast<double>(k) * curve.lambda(4 * n - 2 * k - 2) * ipow(x, g - n + k);
    }
    return sum;
}

cplx first_kind_integrand(const Curve& curve, int n, cplx x, cplx y) {
    check_density_args(curve, n, x, y);
    return ipow(x, curve.genus() - n) / (-2.0 * y);
}

cplx second_kind_integrand(const Curve& curve, int n, cplx x, cplx y) {
    check_density_args(curve, n, x, y);
    return second_kind_numerator(curve, n, x) / (-2.0 * y);
}

}  // namespace hypertheta
