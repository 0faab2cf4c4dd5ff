#include <doctest.h>

#include <nlohmann/json.hpp>
#include <random>

#include "hypertheta/report.hpp"
#include "hypertheta/samples.hpp"
#include "hypertheta/verify.hpp"
#include "oracles.hpp"

using namespace hypertheta;

namespace {

SuiteConfig genus2_config() {
    SuiteConfig cfg;
    cfg.branch_points = named_sample(2);
    cfg.label = "unit";
    cfg.quotient_divisors = 3;
    return cfg;
}

}  // namespace

TEST_SUITE("verify") {
    TEST_CASE("common phase") {
        const cplx root = std::polar(1.0, 3 * oracle::kPi / 4);
        const std::vector<cplx> rhs{{1, 2}, {-3, 0.5}, {0.1, 0}};
        std::vector<cplx> lhs;
        for (const cplx& z : rhs) lhs.push_back(root * z);
        const PhaseComparison c = compare_common_phase(lhs, rhs);
        CHECK(std::abs(c.ratio - root) < 1e-15);
        CHECK(c.modulus_error < 1e-15);
        CHECK(c.eighth_error < 1e-14);
        CHECK(c.max_rel_err < 1e-15);
        lhs[2] *= 2.0;
        CHECK(compare_common_phase(lhs, rhs).max_rel_err > 1e-3);
    }

    TEST_CASE("arithmetic-geometric mean oracle") {
        CHECK(std::abs(agm_tau({-1, 0, 1}) - cplx(0, 1)) < 1e-14);
        CHECK(std::abs(agm_tau({-2, 0.5, 3}) - oracle::elliptic_tau(-2, 0.5, 3)) < 1e-12);
    }

    TEST_CASE("partition selection") {
        SuiteConfig cfg;
        std::mt19937_64 a(9), b(9);
        cfg.sampling = PartitionSampling::Random;
        cfg.random_count = 7;
        const auto pa = select_partitions(4, 1, cfg, a);
        CHECK(pa.size() == 7);
        CHECK(pa == select_partitions(4, 1, cfg, b));
        cfg.sampling = PartitionSampling::Listed;
        cfg.listed = {"{1,2,3}", "{3,2,1}", "{4}"};
        std::mt19937_64 c(1);
        CHECK(select_partitions(4, 1, cfg, c).size() == 1);
        CHECK(select_partitions(4, 2, cfg, c).size() == 1);
    }

    TEST_CASE("suite on the genus two sample") {
        SuiteConfig cfg = genus2_config();
        const SuiteReport r = run_suite(cfg);
        CHECK(r.genus == 2);
        CHECK(r.summary.failed == 0);
        CHECK(r.summary.total == static_cast<int>(r.checks.size()));
        CHECK(r.summary.total > 20);
        int thomae = 0;
        for (const CheckResult& c : r.checks) {
            CAPTURE(c.name);
            CHECK(c.passed);
            if (c.name.rfind("thomae.", 0) == 0) {
                ++thomae;
                CHECK(c.ratio_is_8th_root);
            }
        }
        CHECK(thomae == 16);
    }

    TEST_CASE("results do not depend on the thread count") {
        SuiteConfig one = genus2_config();
        one.threads = 1;
        SuiteConfig four = genus2_config();
        four.threads = 4;
        const SuiteReport a = run_suite(one), b = run_suite(four);
        REQUIRE(a.checks.size() == b.checks.size());
        for (std::size_t i = 0; i < a.checks.size(); ++i) {
            CHECK(a.checks[i].name == b.checks[i].name);
            CHECK(a.checks[i].max_rel_err == b.checks[i].max_rel_err);
        }
        CHECK(format_report(a, OutputFormat::Structured, false) == format_report(b, OutputFormat::Structured, false));
    }

    TEST_CASE("tight tolerances fail") {
        SuiteConfig cfg = genus2_config();
        cfg.quotients = false;
        cfg.hygiene = false;
        cfg.tol.periods = 0;
        const SuiteReport r = run_suite(cfg);
        CHECK(r.summary.failed >= 1);
        bool periods_failed = false;
        for (const CheckResult& c : r.checks) periods_failed = periods_failed || (c.name == "periods" && !c.passed);
        CHECK(periods_failed);
    }

    TEST_CASE("explicit K policy and multiplicities") {
        SuiteConfig cfg;
        cfg.branch_points = named_sample(3);
        cfg.multiplicities = {2};
        cfg.k_policy = KPolicy::All;
        cfg.quotients = cfg.hygiene = cfg.bolza = cfg.constant = cfg.product = false;
        const SuiteReport r = run_suite(cfg);
        CHECK(r.summary.failed == 0);
        int seen = 0;
        for (const CheckResult& c : r.checks) {
            if (c.name != "thomae.m2") continue;
            ++seen;
            CHECK(c.metric("k_spread", 1) < 1e-6);
            CHECK(c.metric("other_size_k_sets") > 0);
        }
        CHECK(seen == static_cast<int>(oracle::binomial(8, 0)));
    }

    TEST_CASE("sampled partitions still cover every Bolza family") {
        SuiteConfig cfg;
        cfg.branch_points = named_sample(5);
        cfg.multiplicities = {2};
        cfg.sampling = PartitionSampling::Random;
        cfg.random_count = 4;
        cfg.seed = 7;
        cfg.quotients = cfg.hygiene = cfg.constant = cfg.product = cfg.s_structure = false;
        const SuiteReport r = run_suite(cfg);
        CHECK(r.summary.failed == 0);
        bool single = false;
        for (const CheckResult& c : r.checks) {
            if (c.name != "bolza.g5-single-m2") continue;
            single = true;
            CHECK(c.metric("partitions") >= 1);
        }
        CHECK(single);
    }

    TEST_CASE("exploratory sum structure fit") {
        std::mt19937_64 rng(5);
        const CheckResult r = check_sum_structure(3, 2, rng, Tolerances{});
        CHECK(r.metric("monomials") == 3);
        CHECK(r.max_rel_err >= 0);
    }

    TEST_CASE("report formats") {
        SuiteConfig cfg = genus2_config();
        cfg.quotient_divisors = 1;
        const SuiteReport r = run_suite(cfg);
        const auto j = nlohmann::json::parse(format_report(r, OutputFormat::Structured, false));
        CHECK(j["genus"] == 2);
        CHECK(j["summary"]["failed"] == 0);
        CHECK_FALSE(j.contains("runtime_ms"));
        CHECK_FALSE(j["checks"][0].contains("runtime_ms"));
        const auto jt = nlohmann::json::parse(format_report(r, OutputFormat::Structured, true));
        CHECK(jt.contains("runtime_ms"));
        const std::string tsv = format_report(r, OutputFormat::Tabular, false);
        CHECK(tsv.rfind("name\tpartition\tmultiplicity\tmax_rel_err\ttolerance\tratio_phase\tpassed\n", 0) == 0);
        CHECK(std::count(tsv.begin(), tsv.end(), '\n') == static_cast<long>(r.checks.size()) + 1);

        const auto chars = nlohmann::json::parse(format_characteristics(2, OutputFormat::Structured));
        CHECK(chars["total"] == 16);
        CHECK(chars["branch_points"][0]["characteristic"] == "10/00");
        const Curve c = make_curve(named_sample(2));
        const PeriodMatrices pm = period_matrices(c);
        const auto per = nlohmann::json::parse(format_periods(c, pm, OutputFormat::Structured));
        CHECK(per["tau"].size() == 2);
        CHECK(per["hash"] == curve_hash(c));
    }
}
