#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/oracles.hpp"
#include "hypertheta/bolza.hpp"
#include "hypertheta/samples.hpp"
#include "hypertheta/tables.hpp"
#include "hypertheta/thomae.hpp"
#include "hypertheta/verify.hpp"

namespace {

using namespace hypertheta;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool passed = true;
    std::string detail;
};

// Accumulates a criterion verdict; the first failures are kept for the report line.
class Tally {
public:
    void require(bool ok, const std::string& what) {
        if (ok) return;
        passed_ = false;
        if (failures_.size() < 3) failures_.push_back(what);
    }
    void require(const CheckResult& r) {
        require(r.passed, r.name + (r.partition ? " " + r.partition->to_string() : "") +
                              (r.note.empty() ? "" : " (" + r.note + ")"));
        worst_ = std::max(worst_, r.max_rel_err);
        ++checks_;
    }
    void note(double err) { worst_ = std::max(worst_, err); }
    Outcome outcome(const std::string& summary) const {
        std::ostringstream os;
        os << summary << "; checks " << checks_ << ", worst error " << worst_;
        for (const auto& f : failures_) os << "; failed: " << f;
        return {passed_, os.str()};
    }

private:
    bool passed_ = true;
    int checks_ = 0;
    double worst_ = 0;
    std::vector<std::string> failures_;
};

struct Sample {
    Curve curve;
    PeriodMatrices pm;
    std::unique_ptr<ThetaContext> ctx;
    std::unique_ptr<TensorCache> cache;
};

std::map<std::string, std::unique_ptr<Sample>> samples;

Sample& sample(const std::vector<double>& points, const std::string& key) {
    auto& slot = samples[key];
    if (!slot) {
        slot = std::make_unique<Sample>();
        slot->curve = make_curve(points);
        slot->pm = period_matrices(slot->curve);
        slot->ctx = std::make_unique<ThetaContext>(slot->pm.tau);
        slot->cache = std::make_unique<TensorCache>(*slot->ctx);
    }
    return *slot;
}

Sample& named(int g) { return sample(named_sample(g), "named" + std::to_string(g)); }

// Irregularly spaced points, free of the symmetry of the named samples.
std::vector<double> generic_points(int g) {
    std::vector<double> pts;
    for (int i = 0; i < 2 * g + 1; ++i) pts.push_back(-g + i + 0.13 * i * i / (2 * g + 1) + 0.07 * (i % 3));
    return pts;
}

Sample& generic(int g) { return sample(generic_points(g), "generic" + std::to_string(g)); }

double asymmetry(const MatrixC& m) { return (m - m.transpose()).cwiseAbs().maxCoeff(); }

Outcome criterion_period_quality() {
    Tally t;
    double slowest = 0;
    for (int g = 2; g <= 6; ++g) {
        const auto t0 = Clock::now();
        const Curve c = make_curve(named_sample(g));
        const PeriodMatrices pm = period_matrices(c);
        const double elapsed = seconds_since(t0);
        slowest = std::max(slowest, elapsed);
        MatrixC J = MatrixC::Zero(2 * g, 2 * g);
        J.topRightCorner(g, g) = MatrixC::Identity(g, g);
        J.bottomLeftCorner(g, g) = -MatrixC::Identity(g, g);
        MatrixC big(2 * g, 2 * g);
        big << pm.omega, pm.omega_prime, pm.eta, pm.eta_prime;
        const double legendre = (big * J * big.transpose() - cplx(0, 2 * oracle::kPi) * J).cwiseAbs().maxCoeff();
        const std::string tag = "genus " + std::to_string(g);
        t.require(legendre <= 1e-8, tag + " Legendre residual");
        t.require(asymmetry(pm.tau) <= 1e-8, tag + " tau asymmetry");
        t.require(Eigen::LLT<MatrixR>(pm.tau.imag()).info() == Eigen::Success, tag + " Im tau not definite");
        t.require(elapsed < 30, tag + " runtime");
        t.require(check_periods(c, pm, Tolerances{}));
        t.note(legendre);
    }
    const PeriodMatrices pm1 = period_matrices(make_curve(std::vector<double>{-1, 0, 1}));
    const double agm_err = std::abs(pm1.tau(0, 0) - oracle::elliptic_tau(-1, 0, 1));
    t.require(agm_err <= 1e-8 && std::abs(pm1.tau(0, 0) - cplx(0, 1)) <= 1e-8, "genus 1 tau");
    t.note(agm_err);
    std::ostringstream os;
    os << "genus 2-6 Riemann relations, genus 1 tau = i (err " << agm_err << "), slowest " << slowest << " s";
    return t.outcome(os.str());
}

Outcome criterion_characteristic_table() {
    Tally t;
    for (int g = 2; g <= 5; ++g) {
        Sample& s = named(g);
        t.require(check_half_periods(s.curve, s.pm, Tolerances{}));
        long long total = 0;
        std::set<Characteristic> seen;
        for (int m = 0; m <= max_multiplicity(g); ++m) {
            const long long expected = m == 0   ? oracle::binomial(2 * g + 1, g)
                                       : m == 1 ? oracle::binomial(2 * g + 2, g - 1)
                                                : oracle::binomial(2 * g + 2, g + 1 - 2 * m);
            const auto ps = enumerate_partitions(g, m);
            t.require(static_cast<long long>(ps.size()) == expected,
                      "genus " + std::to_string(g) + " m=" + std::to_string(m) + " count");
            for (const Partition& p : ps) seen.insert(partition_characteristic(p));
            total += static_cast<long long>(ps.size());
        }
        t.require(total == (1LL << (2 * g)) && static_cast<long long>(seen.size()) == total,
                  "genus " + std::to_string(g) + " total");
    }
    return t.outcome("half-periods of e_k and partition counts, genus 2-5");
}

SuiteConfig default_config() {
    SuiteConfig cfg;
    cfg.seed = 20240601;
    return cfg;
}

Outcome criterion_first_thomae() {
    Tally t;
    const SuiteConfig cfg = default_config();
    double g4_time = 0;
    for (int g = 2; g <= 4; ++g) {
        Sample& s = named(g);
        const auto t0 = Clock::now();
        for (const Partition& p : enumerate_partitions(g, 0)) t.require(check_thomae(s.curve, s.pm, *s.cache, p, cfg));
        if (g == 4) g4_time = seconds_since(t0);
    }
    t.require(g4_time < 600, "genus 4 sweep runtime");
    Sample& s5 = named(5);
    SuiteConfig random = cfg;
    random.sampling = PartitionSampling::Random;
    random.random_count = 100;
    std::mt19937_64 rng(cfg.seed);
    const auto picked = select_partitions(5, 0, random, rng);
    t.require(picked.size() == 100, "genus 5 sample size");
    for (const Partition& p : picked) t.require(check_thomae(s5.curve, s5.pm, *s5.cache, p, cfg));
    std::ostringstream os;
    os << "all m=0 partitions genus 2-4, 100 random genus 5, genus 4 sweep " << g4_time << " s";
    return t.outcome(os.str());
}

Outcome criterion_second_thomae() {
    Tally t;
    const SuiteConfig cfg = default_config();
    double forms = 0;
    for (int g = 2; g <= 4; ++g) {
        Sample& s = named(g);
        for (const Partition& p : enumerate_partitions(g, 1)) {
            const CheckResult r = check_thomae(s.curve, s.pm, *s.cache, p, cfg);
            t.require(r);
            const double d = r.metric("general_vs_specialized", 1);
            forms = std::max(forms, d);
            t.require(d <= 1e-5, "specialized and general forms differ at " + p.to_string());
        }
    }
    std::ostringstream os;
    os << "all m=1 partitions genus 2-4, both forms (max difference " << forms << ")";
    return t.outcome(os.str());
}

Outcome criterion_general_thomae() {
    Tally t;
    const SuiteConfig cfg = default_config();
    std::map<int, std::set<int>> sizes;
    double spread = 0;
    int k_sets = 0;
    auto sweep = [&](int g, int m) {
        Sample& s = named(g);
        for (const Partition& p : enumerate_partitions(g, m)) {
            const CheckResult r = check_thomae(s.curve, s.pm, *s.cache, p, cfg);
            t.require(r);
            const double k = r.metric("k_spread", 1);
            t.require(k < 1e-6, "K dependence at " + p.to_string());
            spread = std::max(spread, k);
            k_sets += static_cast<int>(r.metric("k_sets"));
            sizes[m].insert(p.dropped());
        }
    };
    for (int g = 3; g <= 5; ++g) sweep(g, 2);
    for (int g = 5; g <= 6; ++g) sweep(g, 3);
    for (int m : {2, 3}) t.require(sizes[m] == std::set<int>{2 * m - 1, 2 * m}, "K sizes for m=" + std::to_string(m));
    std::ostringstream os;
    os << "m=2 genus 3-5, m=3 genus 5-6; " << k_sets << " K sets of sizes 2m-1 and 2m, cross-K spread " << spread;
    return t.outcome(os.str());
}

Outcome criterion_s_structure() {
    Tally t;
    auto sweep = [&](int g, int m) {
        Sample& s = named(g);
        for (const Partition& p : enumerate_partitions(g, m)) t.require(check_s_structure(s.curve, s.pm, p, Tolerances{}));
    };
    for (int g = 3; g <= 5; ++g) sweep(g, 2);
    for (int g = 5; g <= 6; ++g) sweep(g, 3);
    int tables = 0;
    for (int g = 3; g <= 6; ++g) {
        for (const CheckResult& r : check_s_tables(named(g).curve, Tolerances{})) {
            t.require(r);
            ++tables;
        }
    }
    t.require(tables == static_cast<int>(printed_s_tables().size()), "not every printed table was checked");
    return t.outcome("general sum vs contracted S (m=2 genus 3-5, m=3 genus 5-6), " + std::to_string(tables) +
                     " printed tables at 3 scalings");
}

Outcome criterion_hessian_rank() {
    Tally t;
    double worst4 = 0, best3 = 1;
    for (int g = 3; g <= 5; ++g) {
        Sample& s = named(g);
        for (const Partition& p : enumerate_partitions(g, 2)) {
            const CheckResult r = check_hessian_rank(s.curve, *s.cache, p, Tolerances{});
            t.require(r);
            if (g >= 4) worst4 = std::max(worst4, r.metric("sigma4_over_sigma1"));
            best3 = std::min(best3, r.metric("sigma3_over_sigma1"));
        }
    }
    std::ostringstream os;
    os << "every m=2 partition genus 3-5; max sigma4/sigma1 " << worst4 << ", min sigma3/sigma1 " << best3;
    return t.outcome(os.str());
}

Outcome criterion_bolza_roundtrips() {
    Tally t;
    const std::map<int, std::vector<int>> ms{{2, {1}}, {3, {1, 2}}, {4, {1, 2}}, {5, {1, 2, 3}}, {6, {3}}};
    std::set<std::string> families;
    double g4_spread = 0;
    int degenerate = 0;
    for (const auto& [g, mult] : ms) {
        for (bool sym : {true, false}) {
            Sample& s = sym ? named(g) : generic(g);
            SuiteConfig cfg = default_config();
            cfg.multiplicities = mult;
            for (const CheckResult& r : check_bolza_roundtrip(s.curve, s.pm, *s.cache, cfg)) {
                t.require(r);
                families.insert(r.name);
                degenerate += static_cast<int>(r.metric("vanishing_denominators"));
                if (r.name == "bolza.g4-single-m2") {
                    t.require(r.metric("formulas") == 8, "genus 4 ratio count");
                    t.require(r.metric("pairwise_spread", 1) <= 1e-5, "genus 4 pairwise spread");
                    if (!sym) t.require(r.metric("vanishing_denominators") == 0, "generic genus 4 denominators");
                    g4_spread = std::max(g4_spread, r.metric("pairwise_spread"));
                }
            }
        }
    }
    std::set<std::string> tabulated;
    for (const BolzaFormula& f : bolza_formulas()) tabulated.insert("bolza." + f.family);
    for (const std::string& f : tabulated) t.require(families.count(f) == 1, f + " not exercised");
    std::ostringstream os;
    os << families.size() << " families on named and generic curves genus 2-6, genus 4 pairwise spread " << g4_spread
       << ", " << degenerate << " symmetric-curve ratios checked cross-multiplied";
    return t.outcome(os.str());
}

Outcome criterion_constant_cg() {
    Tally t;
    for (int g = 2; g <= 5; ++g) {
        Sample& s = named(g);
        t.require(check_constant_consistency(s.curve, s.pm, *s.cache, Tolerances{}));
    }
    Sample& s = named(5);
    const DerivativeTensor tu = to_u_basis(s.cache->get(Partition::from_indices(5, {})), s.pm);
    std::vector<cplx> values;
    for (const ConstantFormula& f : constant_formulas(5)) values.push_back(evaluate_terms(tu, f.terms));
    t.require(values.size() == 5, "five genus 5 expressions");
    double mutual = 0;
    for (std::size_t a = 0; a < values.size(); ++a) {
        for (std::size_t b = a + 1; b < values.size(); ++b) {
            mutual = std::max(mutual, std::fabs(std::abs(values[a] / values[b]) - 1));
        }
    }
    t.require(mutual <= 1e-5, "genus 5 expressions disagree");
    t.note(mutual);
    std::ostringstream os;
    os << "definition, m=0 expressions and directional derivative genus 2-5; genus 5 mutual spread " << mutual;
    return t.outcome(os.str());
}

Outcome criterion_theta_product() {
    Tally t;
    for (int g = 2; g <= 3; ++g) {
        Sample& s = named(g);
        const CheckResult r = check_theta_product(s.curve, s.pm, *s.cache, Tolerances{});
        t.require(r);
        t.require(r.metric("constants") == oracle::binomial(2 * g + 1, g), "constant count");
    }
    return t.outcome("product of 10 and 35 even theta constants");
}

Outcome criterion_theta_quotients() {
    Tally t;
    int divisors = 0;
    for (int g = 2; g <= 4; ++g) {
        SuiteConfig cfg = default_config();
        cfg.branch_points = named_sample(g);
        cfg.periods = cfg.characteristics = cfg.thomae = cfg.s_structure = cfg.hessian = false;
        cfg.bolza = cfg.constant = cfg.product = cfg.hygiene = false;
        cfg.quotient_divisors = 20;
        const SuiteReport r = run_suite(cfg);
        int n = 0;
        for (const CheckResult& c : r.checks) {
            t.require(c);
            n += c.name.rfind("theta-quotient.", 0) == 0 ? 1 : 0;
        }
        t.require(n == 20, "genus " + std::to_string(g) + " divisor count");
        divisors += n;
    }
    return t.outcome(std::to_string(divisors) + " random divisors, all three identities");
}

Outcome criterion_hygiene() {
    Tally t;
    for (int g = 2; g <= 5; ++g) {
        Sample& s = named(g);
        std::mt19937_64 rng(1000 + g);
        t.require(check_radius_doubling(*s.ctx, rng, Tolerances{}));
        t.require(check_finite_differences(*s.ctx, rng, Tolerances{}));
        t.require(check_abel_jacobian(s.curve, s.pm, rng, Tolerances{}));
    }
    return t.outcome("radius doubling, finite differences, Abel Jacobian, genus 2-5");
}

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "period quality", criterion_period_quality},
        {2, "characteristic table", criterion_characteristic_table},
        {3, "first Thomae formula", criterion_first_thomae},
        {4, "second Thomae formula", criterion_second_thomae},
        {5, "general Thomae formula", criterion_general_thomae},
        {6, "S-structure equivalence", criterion_s_structure},
        {7, "Hessian rank", criterion_hessian_rank},
        {8, "Bolza round trips", criterion_bolza_roundtrips},
        {9, "constant C_g", criterion_constant_cg},
        {10, "theta-constant product", criterion_theta_product},
        {11, "theta quotients", criterion_theta_quotients},
        {12, "numerical hygiene", criterion_hygiene},
    };
    int passed = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %2d %-26s %6.1fs  %s\n", o.passed ? "PASS" : "FAIL", c.id, c.title, seconds_since(t0),
                    o.detail.c_str());
        std::fflush(stdout);
        passed += o.passed ? 1 : 0;
    }
    std::printf("%d/%zu criteria passed\n", passed, criteria.size());
    return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
