#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hypertheta/quotients.hpp"
#include "hypertheta/theta.hpp"

namespace hypertheta {

struct Tolerances {
    double thomae = 1e-5;
    double phase = 1e-4;
    double k_spread = 1e-6;
    double bolza = 1e-5;
    double constant = 1e-5;
    double product = 1e-4;
    double periods = 1e-8;
    double half_period = 1e-7;
    double s_structure = 1e-9;
    double quotient = 1e-5;
    double rank_low = 1e-7;
    double rank_high = 1e-4;
    double radius = 1e-12;
    double finite_difference = 1e-6;
    double jacobian = 1e-5;
};

struct CheckResult {
    std::string name;
    std::optional<Partition> partition;
    int multiplicity = -1;
    cplx lhs{};
    cplx rhs{};
    cplx ratio{};
    bool phase_checked = false;
    bool ratio_is_8th_root = false;
    double max_rel_err = 0;
    double tolerance = 0;
    bool passed = false;
    double runtime_ms = 0;
    std::vector<std::pair<std::string, double>> metrics;
    std::string note;

    double metric(const std::string& key, double fallback = 0) const;
};

enum class PartitionSampling { All, Random, Listed };
enum class KPolicy { Default, All };

struct SuiteConfig {
    std::vector<double> branch_points;
    std::string label = "curve";
    // Multiplicities of the Thomae checks; empty means 0..min(3, max).
    std::vector<int> multiplicities;
    PartitionSampling sampling = PartitionSampling::All;
    int random_count = 100;
    std::vector<std::string> listed;
    KPolicy k_policy = KPolicy::Default;
    Tolerances tol;
    std::uint64_t seed = 1;

    bool periods = true;
    bool characteristics = true;
    bool thomae = true;
    bool s_structure = true;
    bool hessian = true;
    bool bolza = true;
    bool constant = true;
    bool product = true;
    bool quotients = true;
    int quotient_divisors = 20;
    bool hygiene = true;
    bool explore = false;

    int threads = 0;  // 0: hardware concurrency
    bool timings = false;
    std::string period_cache;  // empty: no cache
};

struct SuiteSummary {
    int total = 0;
    int passed = 0;
    int failed = 0;
    double worst_rel_err = 0;  // of the check closest to (or furthest past) its tolerance
    double worst_ratio = 0;    // max_rel_err / tolerance of that check
    std::string worst_check;
};

struct SuiteReport {
    std::string suite;
    std::vector<double> curve;
    int genus = 0;
    std::uint64_t seed = 0;
    PeriodMatrices periods;
    std::vector<CheckResult> checks;
    SuiteSummary summary;
    double runtime_ms = 0;
};

// Common eighth root of unity from the largest-magnitude entry of lhs, applied to every entry.
struct PhaseComparison {
    cplx ratio;
    cplx lhs;
    cplx rhs;
    double modulus_error = 0;  // | |ratio| - 1 |
    double eighth_error = 0;   // | ratio^8 - 1 |
    double max_rel_err = 0;    // max_i |lhs_i - ratio rhs_i| / max |lhs|
};
PhaseComparison compare_common_phase(const std::vector<cplx>& lhs, const std::vector<cplx>& rhs);

// Elliptic-curve oracle: i K(k') / K(k), k^2 = (e_2 - e_1)/(e_3 - e_1).
cplx agm_tau(const std::vector<double>& e);

// Partitions of one multiplicity selected by the configuration.
std::vector<Partition> select_partitions(int genus, int m, const SuiteConfig& cfg, std::mt19937_64& rng);

// Thread-safe memo of derivative theta constants keyed by partition.
class TensorCache {
public:
    explicit TensorCache(const ThetaContext& ctx);
    ~TensorCache();
    TensorCache(const TensorCache&) = delete;
    TensorCache& operator=(const TensorCache&) = delete;
    const DerivativeTensor& get(const Partition& p);

private:
    struct Impl;
    Impl* impl_;
};

CheckResult check_periods(const Curve& curve, const PeriodMatrices& pm, const Tolerances& tol);
CheckResult check_agm(const Curve& curve, const PeriodMatrices& pm, const Tolerances& tol);
CheckResult check_half_periods(const Curve& curve, const PeriodMatrices& pm, const Tolerances& tol);
CheckResult check_characteristic_counts(int genus);
CheckResult check_thomae(const Curve& curve, const PeriodMatrices& pm, TensorCache& cache, const Partition& p,
                         const SuiteConfig& cfg);
CheckResult check_s_structure(const Curve& curve, const PeriodMatrices& pm, const Partition& p,
                              const Tolerances& tol);
// Tabulated S tensors of the genus against the closed forms, at three scalings of the branch points.
std::vector<CheckResult> check_s_tables(const Curve& curve, const Tolerances& tol);
CheckResult check_hessian_rank(const Curve& curve, TensorCache& cache, const Partition& p, const Tolerances& tol);
std::vector<CheckResult> check_bolza_roundtrip(const Curve& curve, const PeriodMatrices& pm, TensorCache& cache,
                                               const SuiteConfig& cfg);
CheckResult check_theta_quotient(const Curve& curve, const PeriodMatrices& pm, const ThetaContext& ctx,
                                 const std::vector<CurvePoint>& divisor, const std::vector<std::vector<int>>& k_sets,
                                 const std::string& label, const Tolerances& tol);
CheckResult check_constant_consistency(const Curve& curve, const PeriodMatrices& pm, TensorCache& cache,
                                       const Tolerances& tol);
CheckResult check_theta_product(const Curve& curve, const PeriodMatrices& pm, TensorCache& cache,
                                const Tolerances& tol);
CheckResult check_radius_doubling(const ThetaContext& ctx, std::mt19937_64& rng, const Tolerances& tol);
CheckResult check_finite_differences(const ThetaContext& ctx, std::mt19937_64& rng, const Tolerances& tol);
CheckResult check_abel_jacobian(const Curve& curve, const PeriodMatrices& pm, std::mt19937_64& rng,
                                const Tolerances& tol);
// Fits the u-basis combinatorial sum by products of s_{j-k+d} with sum d = m(m-1) on random curves.
CheckResult check_sum_structure(int genus, int m, std::mt19937_64& rng, const Tolerances& tol);

// One recovered symmetric function per formula and partition.
struct BolzaRow {
    std::string family;
    std::string formula;
    Partition partition;
    int degree = 1;
    double target = 0;
    cplx estimate;  // NaN when the denominator vanishes
    double rel_err = 0;
    bool degenerate = false;  // checked in cross-multiplied form
};
std::vector<BolzaRow> bolza_rows(const Curve& curve, const PeriodMatrices& pm, TensorCache& cache);

// Periods from the cache when configured, computed (and stored) otherwise.
PeriodMatrices suite_periods(const Curve& curve, const SuiteConfig& cfg);

SuiteReport run_suite(const SuiteConfig& cfg);

}  // namespace hypertheta
