#include "hypertheta/quotients.hpp"

#include "hypertheta/thomae.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hypertheta {

namespace {

cplx ipow(cplx x, int n) {
    cplx r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

void check_divisor(const Curve& curve, const std::vector<CurvePoint>& divisor) {
    if (static_cast<int>(divisor.size()) != curve.genus()) {
        throw Error(ErrorCode::InvalidArgument, "divisor must have g points");
    }
}

void check_k_set(const Curve& curve, const std::vector<int>& k_set, std::size_t min_size) {
    if (k_set.size() < min_size || static_cast<int>(k_set.size()) > curve.genus()) {
        throw Error(ErrorCode::BadKSize, "K has unsupported size " + std::to_string(k_set.size()));
    }
    for (int k : k_set) {
        if (k < 1 || k > curve.finite_count()) {
            throw Error(ErrorCode::InvalidArgument, "K must contain finite branch indices");
        }
    }
}

Characteristic sum_characteristic(int g, const std::vector<int>& k_set) {
    Characteristic c(g);
    for (int k : k_set) c = c + branch_point_characteristic(g, k);
    return c;
}

cplx descending_vandermonde(const std::vector<CurvePoint>& divisor) {
    const int g = static_cast<int>(divisor.size());
    MatrixC v(g, g);
    for (int r = 0; r < g; ++r) {
        for (int c = 0; c < g; ++c) v(r, c) = ipow(divisor[static_cast<std::size_t>(r)].x, g - 1 - c);
    }
    return v.determinant();
}

cplx phi(const Curve& curve, const std::vector<int>& idx, cplx x) {
    cplx p = 1.0;
    for (int i : idx) p *= x - curve.e(i);
    return p;
}

std::vector<int> finite_complement(const Curve& curve, const std::vector<int>& k_set) {
    std::vector<int> out;
    for (int i = 1; i <= curve.finite_count(); ++i) {
        if (std::find(k_set.begin(), k_set.end(), i) == k_set.end()) out.push_back(i);
    }
    return out;
}

}  // namespace

std::vector<CurvePoint> random_divisor(const Curve& curve, std::mt19937_64& rng) {
    const int g = curve.genus();
    const double scale = std::max(1.0, curve.scale());
    std::uniform_int_distribution<int> gap(1, 2 * g);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::bernoulli_distribution sheet(0.5);
    std::vector<CurvePoint> out;
    int attempts = 0;
    while (static_cast<int>(out.size()) < g) {
        if (++attempts > 100000) throw Error(ErrorCode::InvalidArgument, "could not draw a divisor");
        const int j = gap(rng);
        const double a = curve.e(j), b = curve.e(j + 1);
        const double x = a + (b - a) * (0.05 + 0.9 * unit(rng));
        const cplx y = upper_sheet_y(curve, x);
        if (std::abs(y) < 1e-3 * scale) continue;
        bool distinct = true;
        for (const auto& p : out) distinct = distinct && std::fabs(p.x.real() - x) > 1e-3 * (b - a);
        if (!distinct) continue;
        out.push_back(CurvePoint{cplx(x, 0), sheet(rng) ? y : -y});
    }
    std::sort(out.begin(), out.end(), [](const CurvePoint& p, const CurvePoint& q) { return p.x.real() < q.x.real(); });
    return out;
}

const char* quotient_identity_name(QuotientIdentity q) {
    switch (q) {
        case QuotientIdentity::Lemma: return "branch-point-square";
        case QuotientIdentity::Multiple: return "multiple";
        case QuotientIdentity::Subset: return "subset";
    }
    return "?";
}

VectorC shifted_abel_image(const Curve& curve, const PeriodMatrices& pm, const std::vector<CurvePoint>& divisor) {
    std::vector<DivisorPoint> pts(divisor.begin(), divisor.end());
    return abel_map(curve, pm, pts) + half_period(riemann_constant_characteristic(curve.genus()), pm);
}

void require_nonspecial(const ThetaContext& ctx, const VectorC& w) {
    const MatrixR Y = ctx.tau().imag();
    const Eigen::VectorXd b = Y.ldlt().solve(w.imag());
    const double peak = std::exp(std::numbers::pi * w.imag().dot(b));
    if (std::abs(theta(ctx, w)) < 1e-10 * peak) {
        throw Error(ErrorCode::SpecialDivisor, "theta vanishes at the divisor image");
    }
}

QuotientSample lemma_quotient(const ThetaContext& ctx, const Curve& curve, const PeriodMatrices&,
                              const std::vector<CurvePoint>& divisor, const VectorC& w, int k) {
    check_divisor(curve, divisor);
    check_k_set(curve, {k}, 1);
    const int g = curve.genus();
    const cplx t0 = theta(ctx, w);
    const cplx tk = theta_char(ctx, branch_point_characteristic(g, k), w);
    QuotientSample s;
    s.identity = QuotientIdentity::Lemma;
    s.k_set = {k};
    s.lhs = (tk * tk) / (t0 * t0);
    cplx prod = 1.0;
    for (const auto& p : divisor) prod *= curve.e(k) - p.x;
    s.rhs = prod / std::sqrt(eval_poly_derivative(curve, cplx(curve.e(k), 0)));
    return s;
}

QuotientSample multiple_quotient(const ThetaContext& ctx, const Curve& curve, const PeriodMatrices&,
                                 const std::vector<CurvePoint>& divisor, const VectorC& w,
                                 const std::vector<int>& k_set) {
    check_divisor(curve, divisor);
    check_k_set(curve, k_set, 2);
    const int g = curve.genus();
    const int kk = static_cast<int>(k_set.size());
    const cplx t0 = theta(ctx, w);
    cplx den = 1.0;
    for (int k : k_set) den *= theta_char(ctx, branch_point_characteristic(g, k), w);
    QuotientSample s;
    s.identity = QuotientIdentity::Multiple;
    s.k_set = k_set;
    s.lhs = theta_char(ctx, sum_characteristic(g, k_set), w) * ipow(t0, kk - 1) / den;

    const int ell = kk / 2 - 1;
    const int nn = g - 1 - kk / 2;
    MatrixC m(g, g);
    for (int r = 0; r < g; ++r) {
        const CurvePoint& p = divisor[static_cast<std::size_t>(r)];
        const cplx yk = p.y / phi(curve, k_set, p.x);
        int c = 0;
        for (int e = ell; e >= 0; --e) m(r, c++) = yk * ipow(p.x, e);
        for (int e = nn; e >= 0; --e) m(r, c++) = ipow(p.x, e);
    }
    std::vector<int> sorted = k_set;
    std::sort(sorted.begin(), sorted.end());
    s.rhs = std::sqrt(vandermonde(curve, sorted)) * m.determinant() / descending_vandermonde(divisor);
    return s;
}

QuotientSample subset_quotient(const ThetaContext& ctx, const Curve& curve, const PeriodMatrices&,
                               const std::vector<CurvePoint>& divisor, const VectorC& w,
                               const std::vector<int>& k_set) {
    check_divisor(curve, divisor);
    check_k_set(curve, k_set, 1);
    const int g = curve.genus();
    const int kk = static_cast<int>(k_set.size());
    const std::vector<int> star = finite_complement(curve, k_set);
    QuotientSample s;
    s.identity = QuotientIdentity::Subset;
    s.k_set = k_set;
    s.lhs = theta_char(ctx, sum_characteristic(g, k_set), w) / theta(ctx, w);

    const int ell = kk / 2 - 1;
    const int nn = g - 1 - kk / 2;
    MatrixC m(g, g);
    for (int r = 0; r < g; ++r) {
        const CurvePoint& p = divisor[static_cast<std::size_t>(r)];
        const cplx sk = std::sqrt(phi(curve, k_set, p.x));
        const cplx sstar = p.y / sk;
        int c = 0;
        for (int e = ell; e >= 0; --e) m(r, c++) = sstar * ipow(p.x, e);
        for (int e = nn; e >= 0; --e) m(r, c++) = sk * ipow(p.x, e);
    }
    double cross = 1.0;
    for (int k : k_set) {
        for (int j : star) cross *= curve.e(k) - curve.e(j);
    }
    s.rhs = m.determinant() / descending_vandermonde(divisor) / std::pow(cplx(cross, 0), 0.25);
    return s;
}

}  // namespace hypertheta
