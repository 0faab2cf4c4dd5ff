#include "hypertheta/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

#include "hypertheta/bolza.hpp"
#include "hypertheta/tables.hpp"
#include "hypertheta/thomae.hpp"

namespace hypertheta {

namespace {

constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

CheckResult make_result(std::string name, std::optional<Partition> p = std::nullopt) {
    CheckResult r;
    r.name = std::move(name);
    if (p) {
        r.multiplicity = p->multiplicity();
        r.partition = std::move(p);
    }
    return r;
}

CheckResult failed_result(std::string name, std::optional<Partition> p, const std::string& why) {
    CheckResult r = make_result(std::move(name), std::move(p));
    r.passed = false;
    r.max_rel_err = std::numeric_limits<double>::infinity();
    r.note = why;
    return r;
}

void apply_phase(CheckResult& r, const PhaseComparison& c, const Tolerances& tol) {
    r.lhs = c.lhs;
    r.rhs = c.rhs;
    r.ratio = c.ratio;
    r.phase_checked = true;
    r.ratio_is_8th_root = c.modulus_error <= tol.thomae && c.eighth_error <= tol.phase;
    r.metrics.emplace_back("modulus_error", c.modulus_error);
    r.metrics.emplace_back("eighth_power_error", c.eighth_error);
    r.metrics.emplace_back("phase_eighths", std::arg(c.ratio) / (kPi / 4));
}

// Observed eighth roots other than +-1 are flagged for real branch points.
void flag_phase(CheckResult& r) {
    if (std::abs(r.ratio.imag()) > 1e-3 * std::abs(r.ratio)) {
        if (!r.note.empty()) r.note += "; ";
        r.note += "phase is not +-1";
    }
}

std::vector<int> finite_range(const Curve& curve) {
    std::vector<int> all;
    for (int i = 1; i <= curve.finite_count(); ++i) all.push_back(i);
    return all;
}

struct BolzaEstimate {
    cplx value;
    double rel_err = 0;
    bool degenerate = false;
};

// A denominator that vanishes identically (e.g. by a symmetry of the branch points) leaves the
// cross-multiplied identity factor * num = target * den, which is checked instead.
BolzaEstimate estimate_bolza(const BolzaFormula& f, const DerivativeTensor& tu, double target) {
    const cplx num = f.factor * evaluate_terms(tu, f.num);
    const cplx den = evaluate_terms(tu, f.den);
    const double scale = std::max(1.0, std::fabs(target));
    BolzaEstimate b;
    if (std::abs(den) < 1e-9 * tu.max_abs()) {
        b.degenerate = true;
        b.value = cplx(std::numeric_limits<double>::quiet_NaN(), 0);
        b.rel_err = std::abs(num - target * den) / (tu.max_abs() * scale);
        return b;
    }
    b.value = num / den;
    b.rel_err = std::abs(b.value - target) / scale;
    return b;
}

double max_abs(const std::vector<cplx>& v) {
    double m = 0;
    for (const cplx& z : v) m = std::max(m, std::abs(z));
    return m;
}

std::vector<int> default_multiplicities(int genus, const SuiteConfig& cfg) {
    if (!cfg.multiplicities.empty()) return cfg.multiplicities;
    const int top = cfg.explore ? max_multiplicity(genus) : std::min(3, max_multiplicity(genus));
    std::vector<int> out;
    for (int m = 0; m <= top; ++m) out.push_back(m);
    return out;
}

bool wants(const std::vector<int>& ms, int m) { return std::find(ms.begin(), ms.end(), m) != ms.end(); }

double complete_elliptic_k(double k) {
    double a = 1, b = std::sqrt(1 - k * k);
    for (int i = 0; i < 64 && std::fabs(a - b) > 1e-16 * a; ++i) {
        const double an = (a + b) / 2;
        b = std::sqrt(a * b);
        a = an;
    }
    return kPi / (2 * a);
}

VectorC random_argument(const ThetaContext& ctx, std::mt19937_64& rng) {
    const int g = ctx.genus();
    std::uniform_real_distribution<double> unit(-0.5, 0.5);
    Eigen::VectorXd a(g), b(g);
    for (int i = 0; i < g; ++i) {
        a(i) = unit(rng);
        b(i) = unit(rng);
    }
    return a.cast<cplx>() + ctx.tau() * b.cast<cplx>();
}

Characteristic random_characteristic(int g, std::mt19937_64& rng) {
    std::bernoulli_distribution bit(0.5);
    std::vector<std::uint8_t> e(static_cast<std::size_t>(g)), ep(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i) {
        e[static_cast<std::size_t>(i)] = bit(rng) ? 1 : 0;
        ep[static_cast<std::size_t>(i)] = bit(rng) ? 1 : 0;
    }
    return Characteristic(e, ep);
}

}  // namespace

double CheckResult::metric(const std::string& key, double fallback) const {
    for (const auto& [k, v] : metrics) {
        if (k == key) return v;
    }
    return fallback;
}

PhaseComparison compare_common_phase(const std::vector<cplx>& lhs, const std::vector<cplx>& rhs) {
    if (lhs.size() != rhs.size() || lhs.empty()) {
        throw Error(ErrorCode::InvalidArgument, "tensors of different shapes");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < lhs.size(); ++i) {
        if (std::abs(lhs[i]) > std::abs(lhs[best])) best = i;
    }
    PhaseComparison c;
    c.lhs = lhs[best];
    c.rhs = rhs[best];
    c.ratio = lhs[best] / rhs[best];
    c.modulus_error = std::fabs(std::abs(c.ratio) - 1);
    c.eighth_error = std::abs(std::pow(c.ratio, 8) - 1.0);
    const double scale = std::abs(lhs[best]);
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        c.max_rel_err = std::max(c.max_rel_err, std::abs(lhs[i] - c.ratio * rhs[i]) / scale);
    }
    return c;
}

cplx agm_tau(const std::vector<double>& e) {
    if (e.size() != 3) throw Error(ErrorCode::InvalidArgument, "the oracle needs three branch points");
    std::vector<double> s = e;
    std::sort(s.begin(), s.end());
    const double k2 = (s[1] - s[0]) / (s[2] - s[0]);
    const double k = std::sqrt(k2);
    const double kp = std::sqrt(1 - k2);
    return cplx(0, complete_elliptic_k(kp) / complete_elliptic_k(k));
}

std::vector<Partition> select_partitions(int genus, int m, const SuiteConfig& cfg, std::mt19937_64& rng) {
    std::vector<Partition> all = enumerate_partitions(genus, m);
    switch (cfg.sampling) {
        case PartitionSampling::All: return all;
        case PartitionSampling::Random: {
            if (cfg.random_count >= static_cast<int>(all.size())) return all;
            std::vector<Partition> out;
            std::sample(all.begin(), all.end(), std::back_inserter(out), static_cast<std::size_t>(cfg.random_count),
                        rng);
            return out;
        }
        case PartitionSampling::Listed: {
            std::vector<Partition> out;
            for (const std::string& text : cfg.listed) {
                Partition p = Partition::parse(genus, text);
                if (p.multiplicity() == m && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
            }
            return out;
        }
    }
    return all;
}

struct TensorCache::Impl {
    const ThetaContext& ctx;
    std::mutex mutex;
    std::map<Partition, std::shared_future<DerivativeTensor>> entries;
};

TensorCache::TensorCache(const ThetaContext& ctx) : impl_(new Impl{ctx, {}, {}}) {}
TensorCache::~TensorCache() { delete impl_; }

const DerivativeTensor& TensorCache::get(const Partition& p) {
    std::promise<DerivativeTensor> promise;
    std::shared_future<DerivativeTensor> future;
    bool owner = false;
    {
        std::lock_guard<std::mutex> lock(impl_->mutex);
        auto it = impl_->entries.find(p);
        if (it == impl_->entries.end()) {
            future = promise.get_future().share();
            impl_->entries.emplace(p, future);
            owner = true;
        } else {
            future = it->second;
        }
    }
    if (owner) {
        try {
            promise.set_value(derivative_theta_constants(impl_->ctx, p));
        } catch (...) {
            promise.set_exception(std::current_exception());
        }
    }
    // the map keeps the shared state alive, so the reference outlives this copy
    return future.get();
}

CheckResult check_periods(const Curve& curve, const PeriodMatrices& pm, const Tolerances& tol) {
    CheckResult r = make_result("periods");
    r.tolerance = tol.periods;
    r.max_rel_err = std::max(pm.legendre_residual, pm.tau_asym);
    r.metrics = {{"legendre_residual", pm.legendre_residual},
                 {"tau_asymmetry", pm.tau_asym},
                 {"tau_im_min_eigenvalue", pm.tau_im_min_eig},
                 {"kappa_asymmetry", pm.kappa_asym},
                 {"quadrature_error", pm.quadrature_error},
                 {"genus", curve.genus()}};
    r.passed = r.max_rel_err <= tol.periods && pm.tau_im_min_eig > 0;
    if (pm.b_cycles_flipped) r.note = "b-cycles reoriented";
    return r;
}

CheckResult check_agm(const Curve& curve, const PeriodMatrices& pm, const Tolerances& tol) {
    CheckResult r = make_result("periods.agm");
    r.tolerance = tol.periods;
    if (curve.genus() != 1) return failed_result(r.name, std::nullopt, "oracle applies to genus 1 only");
    r.lhs = pm.tau(0, 0);
    r.rhs = agm_tau(curve.branch_points());
    r.ratio = r.lhs / r.rhs;
    r.max_rel_err = std::abs(r.lhs - r.rhs) / std::abs(r.rhs);
    r.passed = r.max_rel_err <= tol.periods;
    return r;
}

CheckResult check_half_periods(const Curve& curve, const PeriodMatrices& pm, const Tolerances& tol) {
    CheckResult r = make_result("half-periods");
    r.tolerance = tol.half_period;
    const int g = curve.genus();
    auto lu = pm.omega.partialPivLu();
    double worst = 0;
    for (int k = 1; k <= curve.finite_count(); ++k) {
        const VectorC v = lu.solve(abel_integral_u(curve, BranchIndex{k}));
        const double d = lattice_distance(pm, v - half_period(branch_point_characteristic(g, k), pm));
        r.metrics.emplace_back("e" + std::to_string(k), d);
        worst = std::max(worst, d);
    }
    r.max_rel_err = worst;
    r.passed = worst <= tol.half_period;
    return r;
}

CheckResult check_characteristic_counts(int genus) {
    CheckResult r = make_result("characteristic-counts");
    long long total = 0;
    bool ok = true;
    std::vector<Characteristic> seen;
    for (int m = 0; m <= max_multiplicity(genus); ++m) {
        const std::vector<Partition> ps = enumerate_partitions(genus, m);
        const long long closed = binomial(2 * genus + 2, genus + 1 - 2 * m);
        const long long expected = (m == 0) ? binomial(2 * genus + 1, genus)
                                   : (m == 1) ? binomial(2 * genus + 2, genus - 1)
                                              : closed;
        r.metrics.emplace_back("m" + std::to_string(m), static_cast<double>(ps.size()));
        ok = ok && static_cast<long long>(ps.size()) == expected && partition_count(genus, m) == expected;
        if (m >= 1) ok = ok && expected == closed;
        total += static_cast<long long>(ps.size());
        for (const Partition& p : ps) {
            const Characteristic c = partition_characteristic(p);
            ok = ok && (parity(c) == Parity::Even) == (m % 2 == 0);
            seen.push_back(c);
        }
    }
    std::sort(seen.begin(), seen.end());
    const bool distinct = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
    const long long full = 1LL << (2 * genus);
    r.metrics.emplace_back("total", static_cast<double>(total));
    r.passed = ok && distinct && total == full;
    if (!distinct) r.note = "two partitions share a characteristic";
    r.max_rel_err = r.passed ? 0 : 1;
    return r;
}

CheckResult check_thomae(const Curve& curve, const PeriodMatrices& pm, TensorCache& cache, const Partition& p,
                         const SuiteConfig& cfg) {
    const int m = p.multiplicity();
    CheckResult r = make_result("thomae.m" + std::to_string(m), p);
    r.tolerance = cfg.tol.thomae;
    try {
        const DerivativeTensor& lhs = cache.get(p);
        std::vector<cplx> rhs;
        double spread = 0;
        if (m == 0) {
            rhs = {first_thomae_rhs(p, pm, curve)};
        } else {
            const std::vector<std::vector<int>> ks = admissible_k_sets(p);
            const ThomaeRhs base = general_thomae(curve, pm, p, ks.front());
            const DerivativeTensor general = base.value();
            if (m == 1) {
                const VectorC v = second_thomae_rhs(p, pm, curve);
                rhs.assign(v.data(), v.data() + v.size());
                double d = 0;
                for (int i = 0; i < v.size(); ++i) d = std::max(d, std::abs(v(i) - general.values()[static_cast<std::size_t>(i)]));
                r.metrics.emplace_back("general_vs_specialized", d / max_abs(rhs));
            } else {
                rhs = general.values();
            }
            const double scale = base.tensor_part.max_abs();
            for (std::size_t i = 1; i < ks.size(); ++i) {
                const DerivativeTensor other = general_thomae_sum(curve, pm.omega, p, ks[i]);
                for (std::size_t j = 0; j < other.values().size(); ++j) {
                    spread = std::max(spread, std::abs(other.values()[j] - base.tensor_part.values()[j]) / scale);
                }
            }
            r.metrics.emplace_back("k_sets", static_cast<double>(ks.size()));
            r.metrics.emplace_back("k_spread", spread);
            if (cfg.k_policy == KPolicy::All) {
                // sets of the other cardinality give a different tensor; reported, not asserted
                double other = 0;
                int n_other = 0;
                for (const auto& k : admissible_k_sets(p, true)) {
                    if (static_cast<int>(k.size()) == p.dropped()) continue;
                    const DerivativeTensor t = literal_thomae_sum(curve, pm.omega, p, k);
                    for (std::size_t j = 0; j < t.values().size(); ++j) {
                        other = std::max(other, std::abs(t.values()[j] - base.tensor_part.values()[j]) / scale);
                    }
                    ++n_other;
                }
                r.metrics.emplace_back("other_size_k_sets", n_other);
                r.metrics.emplace_back("other_size_spread", other);
            }
        }
        const PhaseComparison c = compare_common_phase(lhs.values(), rhs);
        apply_phase(r, c, cfg.tol);
        flag_phase(r);
        r.max_rel_err = std::max(c.max_rel_err, c.modulus_error);
        r.passed = r.ratio_is_8th_root && c.max_rel_err <= cfg.tol.thomae && spread <= cfg.tol.k_spread;
    } catch (const std::exception& e) {
        return failed_result(r.name, p, e.what());
    }
    return r;
}

CheckResult check_s_structure(const Curve& curve, const PeriodMatrices& pm, const Partition& p,
                              const Tolerances& tol) {
    const int m = p.multiplicity();
    CheckResult r = make_result("s-structure.m" + std::to_string(m), p);
    r.tolerance = tol.s_structure;
    try {
        const DerivativeTensor sum = general_thomae_sum(curve, pm.omega, p, default_k_set(p));
        const DerivativeTensor contracted = s_structure_v(p, curve, pm.omega);
        const double scale = std::max(sum.max_abs(), contracted.max_abs());
        double err = 0;
        for (std::size_t i = 0; i < sum.values().size(); ++i) {
            err = std::max(err, std::abs(sum.values()[i] - contracted.values()[i]) / scale);
        }
        const std::size_t a = sum.argmax();
        r.lhs = sum.values()[a];
        r.rhs = contracted.values()[a];
        r.ratio = r.lhs / r.rhs;
        r.max_rel_err = err;
        r.passed = err <= tol.s_structure;
    } catch (const std::exception& e) {
        return failed_result(r.name, p, e.what());
    }
    return r;
}

std::vector<CheckResult> check_s_tables(const Curve& curve, const Tolerances& tol) {
    std::vector<CheckResult> out;
    const int g = curve.genus();
    for (const PrintedSTable& t : printed_s_tables()) {
        if (t.genus != g) continue;
        CheckResult r = make_result("s-table." + t.name);
        r.tolerance = tol.s_structure;
        r.multiplicity = t.order;
        // branch points of I taken from the curve, then scaled
        std::vector<double> base;
        for (int i = 0; i < t.finite_size; ++i) base.push_back(curve.e(2 * i + 1));
        double worst = 0;
        for (double lambda : {1.0, 2.0, 3.0}) {
            std::vector<double> e;
            for (double x : base) e.push_back(lambda * x + 0.25 * lambda);
            const std::vector<double> s = elementary_symmetric_values(e);
            const DerivativeTensor st = s_structure_from(g, t.order, g - t.finite_size, s);
            for (const auto& key : st.keys()) {
                std::vector<int> idx = key;
                for (int& x : idx) x += 1;
                const double printed = t.entry(e, idx);
                const double computed = st.at(key).real();
                worst = std::max(worst, std::fabs(printed - computed) / std::max(1.0, std::fabs(printed)));
            }
        }
        r.max_rel_err = worst;
        r.passed = worst <= tol.s_structure;
        out.push_back(std::move(r));
    }
    return out;
}

CheckResult check_hessian_rank(const Curve& curve, TensorCache& cache, const Partition& p, const Tolerances& tol) {
    CheckResult r = make_result("hessian-rank", p);
    r.tolerance = tol.rank_low;
    const int g = curve.genus();
    try {
        if (p.multiplicity() != 2) throw Error(ErrorCode::WrongMultiplicity, "Hessian check needs multiplicity 2");
        const DerivativeTensor& t = cache.get(p);
        MatrixC h(g, g);
        for (int i = 0; i < g; ++i) {
            for (int j = 0; j < g; ++j) h(i, j) = t.at({i, j});
        }
        Eigen::JacobiSVD<MatrixC> svd(h);
        const Eigen::VectorXd sv = svd.singularValues();
        const double s1 = sv(0);
        const double r3 = sv(2) / s1;
        const double r4 = g >= 4 ? sv(3) / s1 : 0;
        r.metrics = {{"sigma3_over_sigma1", r3}, {"sigma4_over_sigma1", r4}};
        r.metrics.emplace_back("det_scaled", std::abs(h.determinant()) / std::pow(s1, g));
        r.lhs = cplx(r4, 0);
        r.max_rel_err = r4;
        r.passed = r3 > tol.rank_high && (g < 4 || r4 < tol.rank_low);
    } catch (const std::exception& e) {
        return failed_result(r.name, p, e.what());
    }
    return r;
}

std::vector<CheckResult> check_bolza_roundtrip(const Curve& curve, const PeriodMatrices& pm, TensorCache& cache,
                                               const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    const int g = curve.genus();
    if (g < 2) return out;
    const std::vector<int> ms = default_multiplicities(g, cfg);
    std::mt19937_64 rng(cfg.seed ^ 0xb017aULL);

    auto u_tensor = [&](const Partition& p) { return to_u_basis(cache.get(p), pm); };

    // tabulated families, grouped by name
    std::vector<BolzaFormula> formulas = bolza_formulas(g);
    std::vector<std::string> families;
    for (const auto& f : formulas) {
        if (std::find(families.begin(), families.end(), f.family) == families.end()) families.push_back(f.family);
    }
    for (const std::string& fam : families) {
        CheckResult r = make_result("bolza." + fam);
        r.tolerance = cfg.tol.bolza;
        std::vector<const BolzaFormula*> group;
        for (const auto& f : formulas) {
            if (f.family == fam) group.push_back(&f);
        }
        const int size = group.front()->finite_size;
        const int m = (g - size + 1) / 2;
        r.multiplicity = m;
        if (!wants(ms, m)) continue;
        double worst = 0, spread = 0;
        int count = 0, degenerate = 0;
        std::vector<Partition> parts;
        for (const Partition& p : select_partitions(g, m, cfg, rng)) {
            if (static_cast<int>(p.finite_indices().size()) == size) parts.push_back(p);
        }
        if (parts.empty()) {
            // listed partitions do not cover this family; sampled ones fall back to the first of the right size
            if (cfg.sampling == PartitionSampling::Listed) continue;
            for (const Partition& p : enumerate_partitions(g, m)) {
                if (static_cast<int>(p.finite_indices().size()) == size) {
                    parts.push_back(p);
                    break;
                }
            }
        }
        try {
            for (const Partition& p : parts) {
                const DerivativeTensor tu = u_tensor(p);
                std::vector<double> xs;
                for (int i : p.finite_indices()) xs.push_back(curve.e(i));
                const double target = elementary_symmetric_values(xs)[static_cast<std::size_t>(group.front()->target_degree)];
                std::vector<cplx> est;
                for (const BolzaFormula* f : group) {
                    const BolzaEstimate b = estimate_bolza(*f, tu, target);
                    if (b.degenerate) {
                        ++degenerate;
                    } else {
                        est.push_back(b.value);
                    }
                    const double err = b.rel_err;
                    if (err > worst) {
                        worst = err;
                        r.partition = p;
                        r.lhs = b.value;
                        r.rhs = target;
                    }
                }
                for (std::size_t a = 0; a < est.size(); ++a) {
                    for (std::size_t b = a + 1; b < est.size(); ++b) {
                        spread = std::max(spread, std::abs(est[a] - est[b]) / std::max(1.0, std::fabs(target)));
                    }
                }
                ++count;
            }
        } catch (const std::exception& e) {
            out.push_back(failed_result(r.name, r.partition, e.what()));
            continue;
        }
        r.metrics = {{"partitions", count},
                     {"formulas", static_cast<double>(group.size())},
                     {"pairwise_spread", spread},
                     {"vanishing_denominators", degenerate}};
        r.max_rel_err = std::max(worst, spread);
        r.passed = count > 0 && worst <= cfg.tol.bolza && spread <= cfg.tol.bolza;
        if (count == 0) r.note = "no partitions selected";
        out.push_back(std::move(r));
    }

    // the general proposition for every multiplicity
    for (int m : ms) {
        if (m < 1) continue;
        CheckResult r = make_result("bolza.proposition.m" + std::to_string(m));
        r.multiplicity = m;
        r.tolerance = cfg.tol.bolza;
        double worst = 0;
        int count = 0;
        try {
            for (const Partition& p : select_partitions(g, m, cfg, rng)) {
                if (p.finite_indices().empty()) continue;
                const std::vector<cplx> est = bolza_symmetric(u_tensor(p), p);
                std::vector<double> xs;
                for (int i : p.finite_indices()) xs.push_back(curve.e(i));
                const std::vector<double> s = elementary_symmetric_values(xs);
                for (std::size_t j = 0; j < est.size(); ++j) {
                    const double err = std::abs(est[j] - s[j + 1]) / std::max(1.0, std::fabs(s[j + 1]));
                    if (err > worst) {
                        worst = err;
                        r.partition = p;
                        r.lhs = est[j];
                        r.rhs = s[j + 1];
                    }
                }
                ++count;
            }
        } catch (const std::exception& e) {
            out.push_back(failed_result(r.name, r.partition, e.what()));
            continue;
        }
        if (count == 0) continue;
        r.metrics = {{"partitions", count}};
        r.max_rel_err = worst;
        r.passed = worst <= cfg.tol.bolza;
        out.push_back(std::move(r));
    }
    return out;
}

CheckResult check_theta_quotient(const Curve& curve, const PeriodMatrices& pm, const ThetaContext& ctx,
                                 const std::vector<CurvePoint>& divisor, const std::vector<std::vector<int>>& k_sets,
                                 const std::string& label, const Tolerances& tol) {
    CheckResult r = make_result("theta-quotient." + label);
    r.tolerance = tol.quotient;
    try {
        const VectorC w = shifted_abel_image(curve, pm, divisor);
        require_nonspecial(ctx, w);
        std::vector<QuotientSample> samples;
        for (int k = 1; k <= curve.finite_count(); ++k) samples.push_back(lemma_quotient(ctx, curve, pm, divisor, w, k));
        for (const auto& ks : k_sets) {
            samples.push_back(subset_quotient(ctx, curve, pm, divisor, w, ks));
            if (ks.size() >= 2) samples.push_back(multiple_quotient(ctx, curve, pm, divisor, w, ks));
        }
        double worst[3] = {0, 0, 0};
        for (const auto& s : samples) {
            const double e = s.modulus_error();
            double& slot = worst[static_cast<int>(s.identity)];
            if (e >= slot) {
                slot = e;
            }
            if (e >= r.max_rel_err) {
                r.max_rel_err = e;
                r.lhs = s.lhs;
                r.rhs = s.rhs;
                r.ratio = s.lhs / s.rhs;
            }
        }
        for (auto q : {QuotientIdentity::Lemma, QuotientIdentity::Multiple, QuotientIdentity::Subset}) {
            r.metrics.emplace_back(quotient_identity_name(q), worst[static_cast<int>(q)]);
        }
        r.metrics.emplace_back("identities", static_cast<double>(samples.size()));
        r.passed = r.max_rel_err <= tol.quotient;
    } catch (const std::exception& e) {
        return failed_result(r.name, std::nullopt, e.what());
    }
    return r;
}

CheckResult check_constant_consistency(const Curve& curve, const PeriodMatrices& pm, TensorCache& cache,
                                       const Tolerances& tol) {
    CheckResult r = make_result("constant");
    r.tolerance = tol.constant;
    const int g = curve.genus();
    try {
        const cplx c_def = curve_constant(curve, pm);
        r.rhs = c_def;
        double worst_mod = 0, worst_phase = 0;
        auto account = [&](const std::string& key, cplx value) {
            const cplx ratio = value / c_def;
            const double mod = std::fabs(std::abs(ratio) - 1);
            const double ph = std::abs(std::pow(ratio, 8) - 1.0);
            r.metrics.emplace_back(key, mod);
            if (mod >= worst_mod) {
                worst_mod = mod;
                r.lhs = value;
                r.ratio = ratio;
            }
            worst_phase = std::max(worst_phase, ph);
        };
        // m = 0 partition expressions
        double spread_lo = std::numeric_limits<double>::infinity(), spread_hi = 0;
        for (const Partition& p : enumerate_partitions(g, 0)) {
            double cross = 1;
            for (int i : p.finite_indices()) {
                for (int j : p.complement_finite()) cross *= curve.e(i) - curve.e(j);
            }
            const cplx value = cache.get(p).scalar() * std::pow(cplx(cross, 0), 0.25);
            spread_lo = std::min(spread_lo, std::abs(value));
            spread_hi = std::max(spread_hi, std::abs(value));
            const cplx ratio = value / c_def;
            worst_mod = std::max(worst_mod, std::fabs(std::abs(ratio) - 1));
            worst_phase = std::max(worst_phase, std::abs(std::pow(ratio, 8) - 1.0));
        }
        r.metrics.emplace_back("partition_spread", (spread_hi - spread_lo) / spread_hi);
        // derivative expressions at the empty partition
        const Partition empty = Partition::from_indices(g, {});
        const DerivativeTensor tu = to_u_basis(cache.get(empty), pm);
        const ConstantFormula dir = directional_constant_formula(g);
        account("directional" + dir.name, evaluate_terms(tu, dir.terms));
        for (const ConstantFormula& f : constant_formulas(g)) account(f.name, evaluate_terms(tu, f.terms));
        r.phase_checked = true;
        r.ratio_is_8th_root = worst_phase <= tol.phase;
        r.metrics.emplace_back("eighth_power_error", worst_phase);
        r.max_rel_err = worst_mod;
        r.passed = worst_mod <= tol.constant && r.ratio_is_8th_root &&
                   (spread_hi - spread_lo) / spread_hi <= tol.k_spread;
    } catch (const std::exception& e) {
        return failed_result(r.name, std::nullopt, e.what());
    }
    return r;
}

CheckResult check_theta_product(const Curve& curve, const PeriodMatrices& pm, TensorCache& cache,
                                const Tolerances& tol) {
    CheckResult r = make_result("theta-product");
    r.tolerance = tol.product;
    try {
        double log_lhs = 0;
        int count = 0;
        for (const Partition& p : enumerate_partitions(curve.genus(), 0)) {
            log_lhs += std::log(std::abs(cache.get(p).scalar()));
            ++count;
        }
        const double log_rhs = log_abs_theta_product_rhs(curve, pm);
        r.lhs = log_lhs;
        r.rhs = log_rhs;
        r.ratio = std::exp(log_lhs - log_rhs);
        r.max_rel_err = std::fabs(std::expm1(log_lhs - log_rhs));
        r.metrics = {{"constants", count}, {"log_lhs", log_lhs}, {"log_rhs", log_rhs}};
        r.passed = r.max_rel_err <= tol.product;
    } catch (const std::exception& e) {
        return failed_result(r.name, std::nullopt, e.what());
    }
    return r;
}

CheckResult check_radius_doubling(const ThetaContext& ctx, std::mt19937_64& rng, const Tolerances& tol) {
    CheckResult r = make_result("hygiene.radius");
    r.tolerance = tol.radius;
    const ThetaContext wide(ctx.tau(), ctx.tol(), 2 * ctx.safety());
    const int g = ctx.genus();
    const MatrixR Y = ctx.tau().imag();
    double worst = 0;
    for (int trial = 0; trial < 4; ++trial) {
        const VectorC v = trial == 0 ? VectorC::Zero(g).eval() : random_argument(ctx, rng);
        const Characteristic c = random_characteristic(g, rng);
        const double peak = std::exp(kPi * v.imag().dot(Y.ldlt().solve(v.imag())));
        for (int order = 0; order <= 2; ++order) {
            const DerivativeTensor a = theta_derivative_tensor(ctx, c, order, v);
            const DerivativeTensor b = theta_derivative_tensor(wide, c, order, v);
            const double scale = std::max(b.max_abs(), peak);
            for (std::size_t i = 0; i < a.values().size(); ++i) {
                worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]) / scale);
            }
        }
    }
    r.max_rel_err = worst;
    r.passed = worst <= tol.radius;
    return r;
}

CheckResult check_finite_differences(const ThetaContext& ctx, std::mt19937_64& rng, const Tolerances& tol) {
    CheckResult r = make_result("hygiene.finite-differences");
    r.tolerance = tol.finite_difference;
    const int g = ctx.genus();
    const double h = 1e-3;
    double worst = 0;
    for (int trial = 0; trial < 2; ++trial) {
        const VectorC v = random_argument(ctx, rng);
        const Characteristic c = random_characteristic(g, rng);
        const DerivativeTensor d1 = theta_derivative_tensor(ctx, c, 1, v);
        const DerivativeTensor d2 = theta_derivative_tensor(ctx, c, 2, v);
        auto stencil = [&](auto&& f, int dir) {
            VectorC e = VectorC::Zero(g);
            e(dir) = h;
            return (-f(v + 2.0 * e) + 8.0 * f(v + e) - 8.0 * f(v - e) + f(v - 2.0 * e)) / (12.0 * h);
        };
        for (int a = 0; a < g; ++a) {
            const cplx fd = stencil([&](const VectorC& x) { return theta_char(ctx, c, x); }, a);
            worst = std::max(worst, std::abs(fd - d1.at({a})) / d1.max_abs());
            for (int b = a; b < g; ++b) {
                const cplx fd2 = stencil([&](const VectorC& x) { return theta_derivative(ctx, c, {b}, x); }, a);
                worst = std::max(worst, std::abs(fd2 - d2.at({a, b})) / d2.max_abs());
            }
        }
    }
    r.max_rel_err = worst;
    r.passed = worst <= tol.finite_difference;
    return r;
}

CheckResult check_abel_jacobian(const Curve& curve, const PeriodMatrices& pm, std::mt19937_64& rng,
                                const Tolerances& tol) {
    CheckResult r = make_result("hygiene.abel-jacobian");
    r.tolerance = tol.jacobian;
    try {
        const int g = curve.genus();
        const std::vector<CurvePoint> divisor = random_divisor(curve, rng);
        const MatrixC jac = abel_jacobian(curve, pm, divisor);
        auto lu = pm.omega.partialPivLu();
        MatrixC dvdx(g, g);
        for (int p = 0; p < g; ++p) {
            const CurvePoint& P = divisor[static_cast<std::size_t>(p)];
            const double x = P.x.real();
            const cplx sheet = P.y / upper_sheet_y(curve, x);
            int j = 1;
            while (j < curve.finite_count() && curve.e(j + 1) < x) ++j;
            const double h = 1e-4 * (curve.e(j + 1) - curve.e(j));
            auto v_at = [&](double t) {
                return VectorC(lu.solve(abel_integral_u(curve, CurvePoint{cplx(t, 0), sheet * upper_sheet_y(curve, t)})));
            };
            dvdx.col(p) = (-v_at(x + 2 * h) + 8.0 * v_at(x + h) - 8.0 * v_at(x - h) + v_at(x - 2 * h)) / (12.0 * h);
        }
        const MatrixC fd = dvdx.inverse();
        const double scale = jac.cwiseAbs().maxCoeff();
        r.max_rel_err = (fd - jac).cwiseAbs().maxCoeff() / scale;
        r.passed = r.max_rel_err <= tol.jacobian;
    } catch (const std::exception& e) {
        return failed_result(r.name, std::nullopt, e.what());
    }
    return r;
}

CheckResult check_sum_structure(int genus, int m, std::mt19937_64& rng, const Tolerances& tol) {
    CheckResult r = make_result("explore.sum-structure.m" + std::to_string(m));
    r.multiplicity = m;
    r.tolerance = 1e-8;
    (void)tol;
    try {
        if (m < 1 || m > max_multiplicity(genus)) throw Error(ErrorCode::MultiplicityOutOfRange, "no partitions");
        const int total = m * (m - 1);
        // ordered shift tuples with the conjectured total
        std::vector<std::vector<int>> shifts;
        std::vector<int> cur(static_cast<std::size_t>(m));
        auto build = [&](auto&& self, int i, int left) -> void {
            if (i == m - 1) {
                cur[static_cast<std::size_t>(i)] = left;
                shifts.push_back(cur);
                return;
            }
            for (int d = 0; d <= left; ++d) {
                cur[static_cast<std::size_t>(i)] = d;
                self(self, i + 1, left - d);
            }
        };
        build(build, 0, total);
        const std::vector<Partition> parts = enumerate_partitions(genus, m);
        std::uniform_real_distribution<double> unit(-3.0, 3.0);
        std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1);
        std::vector<std::vector<double>> rows;
        std::vector<double> rhs;
        const MatrixC id = MatrixC::Identity(genus, genus);
        for (int sample = 0; sample < 12; ++sample) {
            std::vector<double> pts;
            while (static_cast<int>(pts.size()) < 2 * genus + 1) {
                const double x = unit(rng);
                bool ok = true;
                for (double y : pts) ok = ok && std::fabs(x - y) > 0.1;
                if (ok) pts.push_back(x);
            }
            const Curve curve = make_curve(pts);
            const Partition p = parts[pick(rng)];
            const std::vector<std::vector<int>> ks = admissible_k_sets(p);
            std::uniform_int_distribution<std::size_t> kpick(0, ks.size() - 1);
            const DerivativeTensor t = general_thomae_sum(curve, id, p, ks[kpick(rng)]);
            std::vector<double> xs;
            for (int i : p.finite_indices()) xs.push_back(curve.e(i));
            const std::vector<double> s = elementary_symmetric_values(xs);
            auto f = [&](int l) { return (l < 0 || l >= static_cast<int>(s.size())) ? 0.0 : s[static_cast<std::size_t>(l)]; };
            const int k = p.dropped();
            for (std::size_t key = 0; key < t.keys().size(); ++key) {
                std::vector<int> j = t.keys()[key];
                int sum_j = 0;
                for (int& x : j) sum_j += ++x;
                const double sign = ((sum_j - m * k) % 2 == 0) ? 1.0 : -1.0;
                std::vector<double> row;
                for (const auto& d : shifts) {
                    // symmetrized over the slots of the multi-index
                    std::vector<int> perm(static_cast<std::size_t>(m));
                    for (int i = 0; i < m; ++i) perm[static_cast<std::size_t>(i)] = i;
                    double acc = 0;
                    int n = 0;
                    do {
                        double prod = sign;
                        for (int i = 0; i < m; ++i) {
                            prod *= f(j[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] - k +
                                      d[static_cast<std::size_t>(i)]);
                        }
                        acc += prod;
                        ++n;
                    } while (std::next_permutation(perm.begin(), perm.end()));
                    row.push_back(acc / n);
                }
                rows.push_back(row);
                rhs.push_back(t.values()[key].real());
            }
        }
        MatrixR a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(shifts.size()));
        Eigen::VectorXd b(static_cast<Eigen::Index>(rhs.size()));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (std::size_t c = 0; c < shifts.size(); ++c) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = rows[i][c];
            b(static_cast<Eigen::Index>(i)) = rhs[i];
        }
        const Eigen::VectorXd coef = a.completeOrthogonalDecomposition().solve(b);
        const double residual = (a * coef - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
        r.metrics = {{"monomials", static_cast<double>(shifts.size())}, {"samples", static_cast<double>(rows.size())}};
        r.max_rel_err = residual;
        r.passed = residual <= r.tolerance;
    } catch (const std::exception& e) {
        return failed_result(r.name, std::nullopt, e.what());
    }
    return r;
}

std::vector<BolzaRow> bolza_rows(const Curve& curve, const PeriodMatrices& pm, TensorCache& cache) {
    std::vector<BolzaRow> rows;
    const int g = curve.genus();
    auto push = [&](const std::string& family, const std::string& formula, const Partition& p, int degree,
                    cplx estimate) {
        std::vector<double> xs;
        for (int i : p.finite_indices()) xs.push_back(curve.e(i));
        const double target = elementary_symmetric_values(xs)[static_cast<std::size_t>(degree)];
        rows.push_back({family, formula, p, degree, target, estimate,
                        std::abs(estimate - target) / std::max(1.0, std::fabs(target))});
    };
    for (const BolzaFormula& f : bolza_formulas(g)) {
        const int m = (g - f.finite_size + 1) / 2;
        for (const Partition& p : enumerate_partitions(g, m)) {
            if (static_cast<int>(p.finite_indices().size()) != f.finite_size) continue;
            std::vector<double> xs;
            for (int i : p.finite_indices()) xs.push_back(curve.e(i));
            const double target = elementary_symmetric_values(xs)[static_cast<std::size_t>(f.target_degree)];
            const BolzaEstimate b = estimate_bolza(f, to_u_basis(cache.get(p), pm), target);
            rows.push_back({f.family, f.text, p, f.target_degree, target, b.value, b.rel_err, b.degenerate});
        }
    }
    for (int m = 1; m <= max_multiplicity(g); ++m) {
        for (const Partition& p : enumerate_partitions(g, m)) {
            if (p.finite_indices().empty()) continue;
            const std::vector<cplx> est = bolza_symmetric(to_u_basis(cache.get(p), pm), p);
            for (std::size_t j = 0; j < est.size(); ++j) {
                push("proposition.m" + std::to_string(m), "s" + std::to_string(j + 1), p, static_cast<int>(j + 1),
                     est[j]);
            }
        }
    }
    return rows;
}

PeriodMatrices suite_periods(const Curve& curve, const SuiteConfig& cfg) {
    if (!cfg.period_cache.empty()) {
        if (auto cached = load_period_cache(cfg.period_cache, curve)) return *cached;
    }
    PeriodMatrices pm = period_matrices(curve);
    if (!cfg.period_cache.empty()) save_period_cache(cfg.period_cache, curve, pm);
    return pm;
}

SuiteReport run_suite(const SuiteConfig& cfg) {
    const auto t0 = Clock::now();
    SuiteReport report;
    report.suite = cfg.label;
    report.curve = cfg.branch_points;
    report.seed = cfg.seed;
    const Curve curve = make_curve(cfg.branch_points);
    const int g = curve.genus();
    report.genus = g;
    report.curve = curve.branch_points();

    PeriodMatrices pm;
    try {
        pm = suite_periods(curve, cfg);
    } catch (const PeriodError& e) {
        report.periods = e.matrices;
        CheckResult r = failed_result("periods", std::nullopt, e.what());
        report.checks.push_back(r);
        report.summary = {1, 0, 1, r.max_rel_err, r.max_rel_err, r.name};
        return report;
    }
    report.periods = pm;
    const ThetaContext ctx(pm.tau);
    TensorCache cache(ctx);
    std::mt19937_64 rng(cfg.seed);
    const std::vector<int> ms = default_multiplicities(g, cfg);

    using Task = std::function<std::vector<CheckResult>()>;
    std::vector<Task> tasks;
    auto single = [](auto fn) { return Task([fn]() { return std::vector<CheckResult>{fn()}; }); };

    // partition selections and random draws are fixed before any task runs
    std::map<int, std::vector<Partition>> selected;
    for (int m : ms) {
        if (m < 0 || m > max_multiplicity(g)) continue;
        selected[m] = select_partitions(g, m, cfg, rng);
    }

    // heavy tensor work first
    if (cfg.thomae) {
        for (auto it = selected.rbegin(); it != selected.rend(); ++it) {
            for (const Partition& p : it->second) {
                tasks.push_back(single([&, p]() { return check_thomae(curve, pm, cache, p, cfg); }));
            }
        }
    }
    if (cfg.hessian && g >= 3 && selected.count(2)) {
        for (const Partition& p : selected[2]) {
            tasks.push_back(single([&, p]() { return check_hessian_rank(curve, cache, p, cfg.tol); }));
        }
    }
    if (cfg.bolza) tasks.push_back([&]() { return check_bolza_roundtrip(curve, pm, cache, cfg); });
    if (cfg.constant && g >= 2) tasks.push_back(single([&]() { return check_constant_consistency(curve, pm, cache, cfg.tol); }));
    if (cfg.product) tasks.push_back(single([&]() { return check_theta_product(curve, pm, cache, cfg.tol); }));
    if (cfg.s_structure) {
        for (const auto& [m, parts] : selected) {
            if (m < 2) continue;
            for (const Partition& p : parts) {
                tasks.push_back(single([&, p]() { return check_s_structure(curve, pm, p, cfg.tol); }));
            }
        }
        tasks.push_back([&]() { return check_s_tables(curve, cfg.tol); });
    }
    if (cfg.quotients && g >= 1) {
        for (int i = 0; i < cfg.quotient_divisors; ++i) {
            const std::vector<CurvePoint> divisor = random_divisor(curve, rng);
            std::vector<std::vector<int>> ks;
            for (int size = 1; size <= g; ++size) {
                std::vector<int> all = finite_range(curve);
                std::shuffle(all.begin(), all.end(), rng);
                std::vector<int> k(all.begin(), all.begin() + size);
                std::sort(k.begin(), k.end());
                ks.push_back(k);
            }
            char label[16];
            std::snprintf(label, sizeof label, "d%02d", i + 1);
            tasks.push_back(single([&, divisor, ks, name = std::string(label)]() {
                return check_theta_quotient(curve, pm, ctx, divisor, ks, name, cfg.tol);
            }));
        }
    }
    if (cfg.hygiene) {
        const std::uint64_t s1 = rng(), s2 = rng(), s3 = rng();
        tasks.push_back(single([&, s1]() {
            std::mt19937_64 local(s1);
            return check_radius_doubling(ctx, local, cfg.tol);
        }));
        tasks.push_back(single([&, s2]() {
            std::mt19937_64 local(s2);
            return check_finite_differences(ctx, local, cfg.tol);
        }));
        if (g >= 1) {
            tasks.push_back(single([&, s3]() {
                std::mt19937_64 local(s3);
                return check_abel_jacobian(curve, pm, local, cfg.tol);
            }));
        }
    }
    if (cfg.explore) {
        for (int m = 2; m <= std::min(3, max_multiplicity(g)); ++m) {
            const std::uint64_t s = rng();
            tasks.push_back(single([&, s, m]() {
                std::mt19937_64 local(s);
                return check_sum_structure(g, m, local, cfg.tol);
            }));
        }
    }
    if (cfg.periods) {
        tasks.push_back(single([&]() { return check_periods(curve, pm, cfg.tol); }));
        if (g == 1) tasks.push_back(single([&]() { return check_agm(curve, pm, cfg.tol); }));
        tasks.push_back(single([&]() { return check_half_periods(curve, pm, cfg.tol); }));
    }
    if (cfg.characteristics) tasks.push_back(single([&]() { return check_characteristic_counts(g); }));

    std::vector<std::vector<CheckResult>> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const auto start = Clock::now();
            try {
                results[i] = tasks[i]();
            } catch (const std::exception& e) {
                results[i] = {failed_result("task", std::nullopt, e.what())};
            }
            const double ms_taken = elapsed_ms(start);
            for (CheckResult& r : results[i]) {
                if (r.runtime_ms == 0) r.runtime_ms = ms_taken;
            }
        }
    };
    int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
    std::vector<std::thread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (auto& batch : results) {
        for (auto& r : batch) report.checks.push_back(std::move(r));
    }
    std::stable_sort(report.checks.begin(), report.checks.end(), [](const CheckResult& a, const CheckResult& b) {
        if (a.name != b.name) return a.name < b.name;
        return a.partition < b.partition;
    });
    SuiteSummary& s = report.summary;
    for (const CheckResult& r : report.checks) {
        ++s.total;
        if (r.passed) {
            ++s.passed;
        } else {
            ++s.failed;
        }
        const double rel = r.tolerance > 0 ? r.max_rel_err / r.tolerance : r.max_rel_err;
        if (s.worst_check.empty() || rel > s.worst_ratio) {
            s.worst_ratio = rel;
            s.worst_rel_err = r.max_rel_err;
            s.worst_check = r.name + (r.partition ? " " + r.partition->to_string() : "");
        }
    }
    report.runtime_ms = elapsed_ms(t0);
    return report;
}

}  // namespace hypertheta
