#include "hypertheta/theta.hpp"

#include <cmath>
#include <numbers>

namespace hypertheta {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0, 1);

Eigen::VectorXd bits(const std::vector<std::uint8_t>& b) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i) out(static_cast<Eigen::Index>(i)) = b[i];
    return out;
}

// Shifted lattice sum over m = n + eps'/2 of exp(i pi m^t tau m + 2 pi i m^t (v + eps/2)),
// each term weighted by prod_k 2 pi i m_{key_k} for every key.
std::vector<cplx> lattice_sum(const ThetaContext& ctx, const Characteristic& c, const VectorC& v, int order,
                              const std::vector<std::vector<int>>& keys) {
    const int g = ctx.genus();
    if (v.size() != g || c.genus() != g) throw Error(ErrorCode::InvalidArgument, "genus mismatch in theta");
    const Eigen::VectorXd half_ep = bits(c.eps_prime()) / 2.0;
    const VectorC shift = v + bits(c.eps()).cast<cplx>() / 2.0;
    const MatrixR Y = ctx.tau().imag();
    const Eigen::VectorXd peak = -Y.ldlt().solve(v.imag());
    const Eigen::VectorXd center = peak - half_ep;
    const double R = ctx.radius(order, v);

    std::vector<cplx> sums(keys.size(), cplx(0, 0));
    VectorC mc(g);
    std::vector<cplx> w(static_cast<std::size_t>(g));
    ctx.for_each_point(center, R, [&](const Eigen::VectorXd& n) {
        const Eigen::VectorXd m = n + half_ep;
        mc = m.cast<cplx>();
        const cplx quad = mc.dot(ctx.tau() * mc);  // dot conjugates the first argument; m is real
        const cplx lin = mc.dot(shift);
        const cplx term = std::exp(kI * kPi * quad + 2.0 * kPi * kI * lin);
        if (order == 0) {
            sums[0] += term;
            return;
        }
        for (int j = 0; j < g; ++j) w[static_cast<std::size_t>(j)] = 2.0 * kPi * kI * m(j);
        for (std::size_t k = 0; k < keys.size(); ++k) {
            cplx t = term;
            for (int d : keys[k]) t *= w[static_cast<std::size_t>(d)];
            sums[k] += t;
        }
    });
    return sums;
}

}  // namespace

ThetaContext::ThetaContext(const MatrixC& tau, double tol, double safety)
    : tau_(tau), tol_(tol), safety_(safety) {
    const int g = static_cast<int>(tau.rows());
    if (g < 1 || tau.cols() != g) throw Error(ErrorCode::InvalidArgument, "tau must be square");
    const double asym = (tau - tau.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-6 * std::max(1.0, tau.cwiseAbs().maxCoeff())) {
        throw Error(ErrorCode::TauNotSiegel, "tau is not symmetric");
    }
    y_ = tau.imag();
    y_ = (y_ + y_.transpose()) / 2;
    Eigen::SelfAdjointEigenSolver<MatrixR> es(y_, Eigen::EigenvaluesOnly);
    lambda_min_ = es.eigenvalues().minCoeff();
    lambda_max_ = es.eigenvalues().maxCoeff();
    if (lambda_min_ <= 0) throw Error(ErrorCode::TauNotSiegel, "Im tau is not positive definite");
    Eigen::LLT<MatrixR> llt(y_);
    upper_ = llt.matrixU();
    y_inv_ = y_.inverse();
    det_y_ = y_.determinant();
}

double ThetaContext::tail_bound(double R, int order, double shift) const {
    const int g = genus();
    const double rho = std::sqrt(kPi * g * lambda_max_) / 2;
    const double gamma = std::tgamma(g / 2.0 + 1);
    const double dscale = 1 / std::sqrt(kPi * lambda_min_);
    double total = 0;
    for (int k = 0; k < 200; ++k) {
        const double r0 = R + k, r1 = R + k + 1;
        const double count = std::pow(r1 + rho, g) / (gamma * std::sqrt(det_y_));
        const double deriv = std::pow(2 * kPi * (shift + 1 + r1 * dscale), order);
        const double term = std::exp(-r0 * r0) * count * deriv;
        total += term;
        if (term < 1e-40) break;
    }
    return total;
}

double ThetaContext::radius(int order, const VectorC& v) const {
    const Eigen::VectorXd peak = -y_inv_ * v.imag();
    const double shift = peak.cwiseAbs().maxCoeff();
    // absolute target relative to the peak term exp(pi Im v^t Y^{-1} Im v)
    const double log_peak = kPi * v.imag().dot(y_inv_ * v.imag());
    const double target = tol_ * std::exp(-std::min(log_peak, 600.0));
    double R = 1.0;
    while (tail_bound(R, order, shift) > target && R < 60) R += 0.05;
    return R * safety_;
}

std::size_t ThetaContext::count_points(const Eigen::VectorXd& center, double R) const {
    std::size_t n = 0;
    for_each_point(center, R, [&](const Eigen::VectorXd&) { ++n; });
    return n;
}

cplx theta(const ThetaContext& ctx, const VectorC& v) {
    return theta_char(ctx, Characteristic(ctx.genus()), v);
}

cplx theta_char(const ThetaContext& ctx, const Characteristic& c, const VectorC& v) {
    return lattice_sum(ctx, c, v, 0, {{}})[0];
}

cplx theta_char_shifted_form(const ThetaContext& ctx, const Characteristic& c, const VectorC& v) {
    const VectorC e = bits(c.eps()).cast<cplx>();
    const VectorC ep = bits(c.eps_prime()).cast<cplx>();
    const cplx q = (ep / 2.0).dot(ctx.tau() * (ep / 2.0));
    const cplx l = (v + e / 2.0).cwiseProduct(ep / 2.0).sum();
    const cplx pref = std::exp(kI * kPi * q + 2.0 * kI * kPi * l);
    return pref * theta(ctx, v + e / 2.0 + ctx.tau() * ep / 2.0);
}

cplx theta_derivative(const ThetaContext& ctx, const Characteristic& c, const std::vector<int>& directions,
                      const VectorC& v) {
    for (int d : directions) {
        if (d < 0 || d >= ctx.genus()) throw Error(ErrorCode::InvalidArgument, "direction out of range");
    }
    return lattice_sum(ctx, c, v, static_cast<int>(directions.size()), {directions})[0];
}

DerivativeTensor theta_derivative_tensor(const ThetaContext& ctx, const Characteristic& c, int order,
                                         const VectorC& v) {
    DerivativeTensor t(ctx.genus(), order, TensorBasis::V);
    t.values() = lattice_sum(ctx, c, v, order, t.keys());
    return t;
}

DerivativeTensor derivative_theta_constants(const ThetaContext& ctx, const Partition& p) {
    return theta_derivative_tensor(ctx, partition_characteristic(p), p.multiplicity(),
                                   VectorC::Zero(ctx.genus()));
}

int vanishing_order(const ThetaContext& ctx, const Characteristic& c, int max_order, double threshold) {
    for (int k = 0; k <= max_order; ++k) {
        if (theta_derivative_tensor(ctx, c, k, VectorC::Zero(ctx.genus())).max_abs() > threshold) return k;
    }
    return max_order + 1;
}

Parity operational_parity(const ThetaContext& ctx, const Characteristic& c, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(-0.2, 0.2);
    VectorC v(ctx.genus());
    for (int i = 0; i < ctx.genus(); ++i) v(i) = cplx(re(rng), im(rng));
    const cplx a = theta_char(ctx, c, v), b = theta_char(ctx, c, -v);
    return std::abs(a - b) <= std::abs(a + b) ? Parity::Even : Parity::Odd;
}

cplx sigma_at_halfperiod(const PeriodMatrices& pm, const ThetaContext& ctx, const Partition& p, cplx cg) {
    const Characteristic c = partition_characteristic(p);
    const VectorC e = bits(c.eps()).cast<cplx>();
    const VectorC ep = bits(c.eps_prime()).cast<cplx>();
    const VectorC a = pm.omega * e + pm.omega_prime * ep;
    const VectorC b = pm.eta * e + pm.eta_prime * ep;
    const cplx form = a.cwiseProduct(b).sum();
    const cplx th = theta_char(ctx, c, VectorC::Zero(ctx.genus()));
    return std::exp(-form / 8.0) * th / cg;
}

}  // namespace hypertheta
