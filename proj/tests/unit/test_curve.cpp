#include <doctest.h>

#include "hypertheta/periods.hpp"
#include "hypertheta/samples.hpp"
#include "oracles.hpp"

using namespace hypertheta;

TEST_SUITE("curve") {
    TEST_CASE("branch points are sorted and counted") {
        const Curve c = make_curve(std::vector<double>{3, -1, 0, 2, 1});
        CHECK(c.genus() == 2);
        CHECK(c.finite_count() == 5);
        CHECK(c.infinity_index() == 6);
        CHECK(c.e(1) == -1);
        CHECK(c.e(5) == 3);
        CHECK(c.scale() == 4);
    }

    TEST_CASE("invalid point sets are rejected") {
        auto code_of = [](std::vector<double> pts) {
            try {
                (void)make_curve(pts);
            } catch (const Error& e) {
                return e.code();
            }
            return ErrorCode::InvalidArgument;
        };
        CHECK(code_of({0, 1, 2, 3}) == ErrorCode::EvenCount);
        CHECK(code_of({0}) == ErrorCode::TooFewPoints);
        CHECK(code_of({0, 1, 1}) == ErrorCode::DegenerateCurve);
        CHECK_THROWS_AS((void)make_curve(std::vector<double>{0, 1, std::nan("")}), Error);
    }

    TEST_CASE("lambda coefficients follow the weight convention") {
        const std::vector<double> pts{-2.5, -1, 0.25, 1.5, 3, 4.75, 6};
        const Curve c = make_curve(pts);
        const std::vector<double> ref = oracle::expand_roots(pts);
        const int g = c.genus();
        for (int i = 0; i <= 2 * g + 1; ++i) {
            CHECK(c.lambda(4 * g + 2 - 2 * i) == doctest::Approx(ref[static_cast<std::size_t>(i)]).epsilon(1e-14));
            CHECK(c.polynomial()[static_cast<std::size_t>(i)] == doctest::Approx(ref[static_cast<std::size_t>(i)]));
        }
        CHECK(c.lambda(0) == 1.0);
        CHECK_THROWS_AS((void)c.lambda(3), Error);
        CHECK_THROWS_AS((void)c.lambda(4 * g + 4), Error);
    }

    TEST_CASE("upper bank values lie on the curve") {
        const Curve c = make_curve(named_sample(3));
        for (double x : {-3.5, -2.5, -0.3, 0.7, 2.2, 5.0}) {
            const cplx y = upper_sheet_y(c, x);
            CHECK(on_curve(c, x, y));
            CHECK(std::abs(y * y - eval_poly(c, cplx(x, 0))) < 1e-10 * std::abs(eval_poly(c, cplx(x, 0))) + 1e-12);
        }
        CHECK_FALSE(on_curve(c, 0.5, 1.0));
    }

    TEST_CASE("polynomial derivative matches a central difference") {
        const Curve c = make_curve(std::vector<double>{-1.2, 0.1, 0.9, 2.4, 3.3});
        const double x = 0.37, h = 1e-5;
        const cplx fd = (eval_poly(c, cplx(x + h, 0)) - eval_poly(c, cplx(x - h, 0))) / (2 * h);
        CHECK(std::abs(eval_poly_derivative(c, x) - fd) < 1e-8);
    }

    TEST_CASE("genus one differentials") {
        const Curve c = make_curve(std::vector<double>{-1, 0, 1});
        const cplx x(0.3, 0);
        const cplx y = upper_sheet_y(c, 0.3);
        CHECK(std::abs(first_kind_integrand(c, 1, x, y) - 1.0 / (-2.0 * y)) < 1e-15);
        CHECK(std::abs(second_kind_integrand(c, 1, x, y) - x / (-2.0 * y)) < 1e-15);
    }

    TEST_CASE("named samples") {
        CHECK(max_named_genus() == 6);
        for (int g = 1; g <= max_named_genus(); ++g) {
            const Curve c = make_curve(named_sample(g));
            CHECK(c.genus() == g);
            CHECK(c.e(1) == -g);
        }
    }
}
