#include <doctest.h>

#include <random>

#include "hypertheta/quotients.hpp"
#include "hypertheta/samples.hpp"

using namespace hypertheta;

TEST_SUITE("quotients") {
    TEST_CASE("random divisors") {
        const Curve c = make_curve(named_sample(3));
        std::mt19937_64 rng(2);
        for (int trial = 0; trial < 10; ++trial) {
            const std::vector<CurvePoint> d = random_divisor(c, rng);
            REQUIRE(d.size() == 3);
            for (std::size_t i = 0; i < d.size(); ++i) {
                CHECK(on_curve(c, d[i].x, d[i].y));
                CHECK(std::abs(d[i].y) >= 1e-3);
                CHECK(d[i].x.imag() == 0);
                if (i > 0) CHECK(d[i].x.real() > d[i - 1].x.real());
            }
        }
    }

    TEST_CASE("identities hold in modulus") {
        for (int g = 2; g <= 3; ++g) {
            const Curve c = make_curve(named_sample(g));
            const PeriodMatrices pm = period_matrices(c);
            const ThetaContext ctx(pm.tau);
            std::mt19937_64 rng(40 + g);
            for (int trial = 0; trial < 4; ++trial) {
                const std::vector<CurvePoint> d = random_divisor(c, rng);
                const VectorC w = shifted_abel_image(c, pm, d);
                require_nonspecial(ctx, w);
                for (int k = 1; k <= c.finite_count(); ++k) {
                    CHECK(lemma_quotient(ctx, c, pm, d, w, k).modulus_error() < 1e-8);
                }
                const std::vector<int> pair{1, 2 * g};
                const QuotientSample mult = multiple_quotient(ctx, c, pm, d, w, pair);
                CHECK(mult.identity == QuotientIdentity::Multiple);
                CHECK(mult.modulus_error() < 1e-8);
                for (const std::vector<int>& ks : {std::vector<int>{2}, std::vector<int>{1, 3}, pair}) {
                    CHECK(subset_quotient(ctx, c, pm, d, w, ks).modulus_error() < 1e-8);
                }
            }
        }
        CHECK(std::string(quotient_identity_name(QuotientIdentity::Subset)) == "subset");
    }

    TEST_CASE("odd half-periods are special") {
        const PeriodMatrices pm = period_matrices(make_curve(named_sample(2)));
        const ThetaContext ctx(pm.tau);
        const VectorC w = half_period(Characteristic::from_string("10/10"), pm);
        try {
            require_nonspecial(ctx, w);
            FAIL("expected a special divisor");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::SpecialDivisor);
        }
    }
}
