#include <doctest.h>

#include <random>

#include "hypertheta/characteristics.hpp"
#include "hypertheta/samples.hpp"
#include "hypertheta/tensor.hpp"
#include "hypertheta/theta.hpp"
#include "oracles.hpp"

using namespace hypertheta;

namespace {

std::vector<int> bits(const std::vector<std::uint8_t>& b) { return std::vector<int>(b.begin(), b.end()); }

VectorC random_v(int g, std::mt19937_64& rng, double im = 0.3) {
    std::uniform_real_distribution<double> u(-1, 1);
    VectorC v(g);
    for (int i = 0; i < g; ++i) v(i) = cplx(u(rng), im * u(rng));
    return v;
}

}  // namespace

TEST_SUITE("theta") {
    TEST_CASE("lattice sum against a brute-force cube") {
        std::mt19937_64 rng(11);
        for (int g = 1; g <= 3; ++g) {
            const PeriodMatrices pm = period_matrices(make_curve(named_sample(g)));
            const ThetaContext ctx(pm.tau);
            for (const char* text : {"000/000", "100/010", "011/110", "111/111"}) {
                const std::string s(text);
                const Characteristic c = Characteristic::from_string(s.substr(0, static_cast<std::size_t>(g)) + "/" +
                                                                     s.substr(4, static_cast<std::size_t>(g)));
                const VectorC v = random_v(g, rng);
                const cplx ref = oracle::theta(pm.tau, bits(c.eps_prime()), bits(c.eps()), v);
                CAPTURE(c.to_string());
                CHECK(std::abs(theta_char(ctx, c, v) - ref) < 1e-12 * std::max(1.0, std::abs(ref)));
                CHECK(std::abs(theta_char_shifted_form(ctx, c, v) - ref) < 1e-11 * std::max(1.0, std::abs(ref)));
                for (int d = 0; d < g; ++d) {
                    const cplx dref = oracle::theta(pm.tau, bits(c.eps_prime()), bits(c.eps()), v, {d, 0});
                    CHECK(std::abs(theta_derivative(ctx, c, {d, 0}, v) - dref) < 1e-11 * std::max(1.0, std::abs(dref)));
                }
            }
            CHECK(std::abs(theta(ctx, VectorC::Zero(g)) - oracle::theta(pm.tau, std::vector<int>(static_cast<std::size_t>(g), 0),
                                                                  std::vector<int>(static_cast<std::size_t>(g), 0),
                                                                  VectorC::Zero(g))) < 1e-12);
        }
    }

    TEST_CASE("quasi-periodicity") {
        const PeriodMatrices pm = period_matrices(make_curve(named_sample(3)));
        const ThetaContext ctx(pm.tau);
        std::mt19937_64 rng(3);
        const VectorC v = random_v(3, rng);
        const cplx base = theta(ctx, v);
        const cplx I(0, 1);
        for (int j = 0; j < 3; ++j) {
            CHECK(std::abs(theta(ctx, v + VectorC::Unit(3, j)) - base) < 1e-12 * std::abs(base));
            const cplx shifted = theta(ctx, v + pm.tau.col(j));
            const cplx factor = std::exp(-I * oracle::kPi * pm.tau(j, j) - 2.0 * oracle::kPi * I * v(j));
            CHECK(std::abs(shifted - factor * base) < 1e-10 * std::abs(factor * base));
        }
    }

    TEST_CASE("derivatives against finite differences") {
        const PeriodMatrices pm = period_matrices(make_curve(named_sample(2)));
        const ThetaContext ctx(pm.tau);
        const Characteristic c = Characteristic::from_string("10/11");
        std::mt19937_64 rng(5);
        const VectorC v = random_v(2, rng);
        const DerivativeTensor t2 = theta_derivative_tensor(ctx, c, 2, v);
        const double h = 1e-4;
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                const VectorC ea = h * VectorC::Unit(2, a);
                const cplx fd = (theta_derivative(ctx, c, {b}, v + ea) - theta_derivative(ctx, c, {b}, v - ea)) / (2 * h);
                CHECK(std::abs(fd - t2.at({a, b})) < 1e-6 * t2.max_abs());
            }
        }
    }

    TEST_CASE("radius doubling leaves values unchanged") {
        const PeriodMatrices pm = period_matrices(make_curve(named_sample(4)));
        const ThetaContext a(pm.tau), b(pm.tau, 1e-12, 3.0);
        const Characteristic c = Characteristic::from_string("1010/0110");
        const VectorC v = VectorC::Constant(4, cplx(0.1, 0.05));
        const DerivativeTensor ta = theta_derivative_tensor(a, c, 2, v);
        const DerivativeTensor tb = theta_derivative_tensor(b, c, 2, v);
        for (std::size_t i = 0; i < ta.values().size(); ++i) {
            CHECK(std::abs(ta.values()[i] - tb.values()[i]) < 1e-12 * tb.max_abs());
        }
        CHECK(b.count_points(Eigen::VectorXd::Zero(4), b.radius(0, v)) >=
              a.count_points(Eigen::VectorXd::Zero(4), a.radius(0, v)));
    }

    TEST_CASE("symmetric tensor storage") {
        DerivativeTensor t(3, 2, TensorBasis::V);
        CHECK(t.keys().size() == 6);
        t.at({2, 0}) = cplx(1, 2);
        CHECK(t.at({0, 2}) == cplx(1, 2));
        CHECK(t.argmax() == 2);
        CHECK(sorted_multi_indices(4, 3).size() == 20);
        CHECK(direction_label(TensorBasis::U, {0, 2}) == "u1,u5");
        CHECK(direction_label(TensorBasis::V, {1}) == "v2");
        const DerivativeTensor same = contract_all(t, MatrixC::Identity(3, 3), TensorBasis::V);
        CHECK(same.at({0, 2}) == cplx(1, 2));
        MatrixC m = MatrixC::Zero(3, 3);
        m(0, 1) = 2.0;
        m(2, 2) = 1.0;
        CHECK(std::abs(contract_all(t, m, TensorBasis::U).at({1, 2}) - cplx(2, 4)) < 1e-15);
    }

    TEST_CASE("u-basis chain rule") {
        const PeriodMatrices pm = period_matrices(make_curve(named_sample(2)));
        const ThetaContext ctx(pm.tau);
        const Characteristic c = Characteristic::from_string("11/10");
        const DerivativeTensor tv = theta_derivative_tensor(ctx, c, 1, VectorC::Zero(2));
        const DerivativeTensor tu = to_u_basis(tv, pm);
        const MatrixC winv = pm.omega.inverse();
        for (int a = 0; a < 2; ++a) {
            const cplx ref = tv.at({0}) * winv(0, a) + tv.at({1}) * winv(1, a);
            CHECK(std::abs(tu.at({a}) - ref) < 1e-14 * tv.max_abs());
        }
        CHECK(tu.basis() == TensorBasis::U);
    }
}
