#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "hypertheta/samples.hpp"
#include "hypertheta/tables.hpp"
#include "hypertheta/theta.hpp"
#include "hypertheta/thomae.hpp"
#include "hypertheta/verify.hpp"
#include "oracles.hpp"

using namespace hypertheta;

namespace {

std::vector<double> points_of(const Curve& c, const std::vector<int>& idx) {
    std::vector<double> out;
    for (int i : idx) out.push_back(c.e(i));
    return out;
}

const std::vector<double> kGeneric3{-2.7, -1.9, -0.4, 0.35, 1.2, 2.05, 3.6};
const std::vector<double> kGeneric4{-3.1, -2.2, -1.35, -0.4, 0.3, 1.15, 2.4, 3.05, 4.2};

}  // namespace

TEST_SUITE("thomae") {
    TEST_CASE("elementary symmetric functions and Vandermonde products") {
        const std::vector<double> xs{-1.5, 0.25, 2, 3.5};
        const std::vector<double> s = elementary_symmetric_values(xs);
        const std::vector<double> ref = oracle::elementary(xs);
        REQUIRE(s.size() == ref.size());
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i] == doctest::Approx(ref[i]).epsilon(1e-14));
        const Curve c = make_curve(kGeneric3);
        const SymmetricTable t = elementary_symmetric(c, {2, 5, 8});
        CHECK(t.s(0) == 1);
        CHECK(t.s(1) == doctest::Approx(c.e(2) + c.e(5)));
        CHECK(t.s(3) == 0);
        CHECK(t.s(-1) == 0);
        CHECK(std::fabs(vandermonde(c, {1, 3, 4})) ==
              doctest::Approx(oracle::abs_discriminant(points_of(c, {1, 3, 4}))).epsilon(1e-14));
        CHECK(vandermonde(c, {1, 3, 8}) == doctest::Approx(c.e(3) - c.e(1)));
    }

    TEST_CASE("first formula against a brute-force theta") {
        const Curve c = make_curve(std::vector<double>{-2.2, -0.7, 0.4, 1.9, 3.3});
        const PeriodMatrices pm = period_matrices(c);
        const double det = std::abs(pm.omega.determinant()) / (oracle::kPi * oracle::kPi);
        for (const Partition& p : enumerate_partitions(2, 0)) {
            const Characteristic ch = partition_characteristic(p);
            const std::vector<int> ep(ch.eps_prime().begin(), ch.eps_prime().end());
            const std::vector<int> e(ch.eps().begin(), ch.eps().end());
            const cplx th = oracle::theta(pm.tau, ep, e, VectorC::Zero(2));
            const double ref = std::sqrt(det) * std::pow(oracle::abs_discriminant(points_of(c, p.finite_indices())) *
                                                             oracle::abs_discriminant(points_of(c, p.complement_finite())),
                                                         0.25);
            CAPTURE(p.to_string());
            CHECK(std::abs(th) == doctest::Approx(ref).epsilon(1e-10));
            const cplx ratio = th / first_thomae_rhs(p, pm, c);
            CHECK(std::abs(std::pow(ratio, 8) - 1.0) < 1e-10);
        }
        CHECK_THROWS_AS((void)first_thomae_rhs(Partition::parse(2, "{1}"), pm, c), Error);
    }

    TEST_CASE("second formula gradient is the coefficient vector of the finite part") {
        const Curve c = make_curve(kGeneric3);
        const PeriodMatrices pm = period_matrices(c);
        const ThetaContext ctx(pm.tau);
        for (const Partition& p : enumerate_partitions(3, 1)) {
            const DerivativeTensor tu = to_u_basis(derivative_theta_constants(ctx, p), pm);
            std::vector<double> desc = oracle::expand_roots(points_of(c, p.finite_indices()));
            std::reverse(desc.begin(), desc.end());
            VectorC ref = VectorC::Zero(3);
            for (std::size_t i = 0; i < desc.size(); ++i) ref(static_cast<Eigen::Index>(i) + p.dropped() - 1) = desc[i];
            VectorC got(3);
            for (int i = 0; i < 3; ++i) got(i) = tu.at({i});
            const cplx scale = got.dot(ref) / ref.squaredNorm();
            CAPTURE(p.to_string());
            CHECK((got - scale * ref).norm() < 1e-9 * got.norm());
            CHECK(std::abs(std::abs(scale) - std::abs(thomae_prefactor(c, pm, p))) < 1e-9 * std::abs(scale));
        }
    }

    TEST_CASE("admissible sets") {
        const Partition p = Partition::parse(4, "{2}");
        REQUIRE(p.dropped() == 3);
        const auto ks = admissible_k_sets(p);
        CHECK(ks.size() == static_cast<std::size_t>(oracle::binomial(8, 3)));
        CHECK(ks.front() == std::vector<int>{1, 3, 4});
        CHECK(default_k_set(p) == ks.front());
        const auto both = admissible_k_sets(p, true);
        CHECK(both.size() == static_cast<std::size_t>(oracle::binomial(8, 3) + oracle::binomial(8, 4)));
        const Curve c = make_curve(kGeneric4);
        CHECK_THROWS_AS((void)general_thomae_sum(c, MatrixC::Identity(4, 4), p, {1, 2, 3}), Error);
        CHECK_THROWS_AS((void)general_thomae_sum(c, MatrixC::Identity(4, 4), p, {1, 3}), Error);
    }

    TEST_CASE("general sum is independent of K and equals the contracted S tensor") {
        const Curve c = make_curve(kGeneric4);
        const PeriodMatrices pm = period_matrices(c);
        for (const char* text : {"{}", "{3}", "{1,7}"}) {
            const Partition p = Partition::parse(4, text);
            const auto ks = admissible_k_sets(p);
            const DerivativeTensor base = general_thomae_sum(c, pm.omega, p, ks.front());
            const DerivativeTensor s = s_structure_v(p, c, pm.omega);
            for (std::size_t i = 0; i < base.values().size(); ++i) {
                CHECK(std::abs(base.values()[i] - s.values()[i]) < 1e-9 * base.max_abs());
            }
            for (std::size_t k = 1; k < ks.size(); ++k) {
                const DerivativeTensor other = general_thomae_sum(c, pm.omega, p, ks[k]);
                for (std::size_t i = 0; i < base.values().size(); ++i) {
                    CHECK(std::abs(other.values()[i] - base.values()[i]) < 1e-9 * base.max_abs());
                }
            }
        }
    }

    TEST_CASE("general formula at multiplicity two") {
        const Curve c = make_curve(kGeneric4);
        const PeriodMatrices pm = period_matrices(c);
        const ThetaContext ctx(pm.tau);
        for (const char* text : {"{}", "{5}", "{8}"}) {
            const Partition p = Partition::parse(4, text);
            REQUIRE(p.multiplicity() == 2);
            const DerivativeTensor lhs = derivative_theta_constants(ctx, p);
            const DerivativeTensor rhs = general_thomae(c, pm, p, default_k_set(p)).value();
            const PhaseComparison cmp = compare_common_phase(lhs.values(), rhs.values());
            CAPTURE(text);
            CHECK(cmp.modulus_error < 1e-9);
            CHECK(cmp.eighth_error < 1e-9);
            CHECK(cmp.max_rel_err < 1e-9);
            const auto idx = lhs.keys()[lhs.argmax()];
            CHECK(std::abs(general_thomae_rhs(p, default_k_set(p), idx, pm, c) - rhs.at(idx)) < 1e-12 * rhs.max_abs());
        }
    }

    TEST_CASE("S matrix is symmetric with the expected rank") {
        const Curve c = make_curve(kGeneric4);
        for (const Partition& p : enumerate_partitions(4, 2)) {
            const MatrixR s = s_matrix(p, c);
            CHECK((s - s.transpose()).cwiseAbs().maxCoeff() == 0);
            Eigen::JacobiSVD<MatrixR> svd(s);
            const Eigen::VectorXd sv = svd.singularValues();
            CHECK(sv(3) < 1e-10 * sv(0));
            CHECK(sv(2) > 1e-6 * sv(0));
        }
    }

    TEST_CASE("tabulated S tensors match the closed forms") {
        std::set<int> genera;
        for (const PrintedSTable& t : printed_s_tables()) genera.insert(t.genus);
        CHECK(genera == std::set<int>{3, 4, 5, 6});
        for (int g : genera) {
            for (const CheckResult& r : check_s_tables(make_curve(named_sample(g)), Tolerances{})) {
                CAPTURE(r.name);
                CHECK(r.passed);
            }
        }
    }

    TEST_CASE("theta product") {
        for (int g = 2; g <= 3; ++g) {
            const Curve c = make_curve(g == 2 ? std::vector<double>{-2.2, -0.7, 0.4, 1.9, 3.3} : kGeneric3);
            const PeriodMatrices pm = period_matrices(c);
            const ThetaContext ctx(pm.tau);
            double log_lhs = 0;
            for (const Partition& p : enumerate_partitions(g, 0)) {
                log_lhs += std::log(std::abs(derivative_theta_constants(ctx, p).scalar()));
            }
            CHECK(log_lhs == doctest::Approx(log_abs_theta_product_rhs(c, pm)).epsilon(1e-10));
            CHECK(std::log(std::abs(theta_product_rhs(c, pm))) == doctest::Approx(log_abs_theta_product_rhs(c, pm)));
        }
    }
}
