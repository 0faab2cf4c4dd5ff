#include "hypertheta/report.hpp"

#include <cmath>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <numbers>
#include <sstream>

namespace hypertheta {

namespace {

using json = nlohmann::ordered_json;

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const MatrixC& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

std::string partition_text(const std::optional<Partition>& p) { return p ? p->to_string() : "-"; }

double phase_eighths(cplx ratio) {
    return ratio == cplx(0, 0) ? 0.0 : std::arg(ratio) / (std::numbers::pi / 4);
}

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(6) << x;
    return os.str();
}

std::string cnum(cplx z) {
    std::ostringstream os;
    os << std::setprecision(12) << z.real() << (z.imag() < 0 ? "-" : "+") << std::fabs(z.imag()) << "i";
    return os.str();
}

json check_json(const CheckResult& r, bool timings) {
    json j;
    j["name"] = r.name;
    j["partition"] = r.partition ? json(r.partition->to_string()) : json(nullptr);
    j["multiplicity"] = r.multiplicity >= 0 ? json(r.multiplicity) : json(nullptr);
    j["lhs"] = complex_json(r.lhs);
    j["rhs"] = complex_json(r.rhs);
    j["ratio"] = complex_json(r.ratio);
    j["phase_checked"] = r.phase_checked;
    j["ratio_is_8th_root"] = r.ratio_is_8th_root;
    j["max_rel_err"] = r.max_rel_err;
    j["tolerance"] = r.tolerance;
    j["passed"] = r.passed;
    json metrics = json::object();
    for (const auto& [k, v] : r.metrics) metrics[k] = v;
    j["metrics"] = metrics;
    if (!r.note.empty()) j["note"] = r.note;
    if (timings) j["runtime_ms"] = r.runtime_ms;
    return j;
}

}  // namespace

std::string format_report(const SuiteReport& report, OutputFormat format, bool timings) {
    if (format == OutputFormat::Tabular) {
        std::ostringstream os;
        os << "name\tpartition\tmultiplicity\tmax_rel_err\ttolerance\tratio_phase\tpassed";
        if (timings) os << "\truntime_ms";
        os << "\n";
        for (const CheckResult& r : report.checks) {
            os << r.name << "\t" << partition_text(r.partition) << "\t"
               << (r.multiplicity >= 0 ? std::to_string(r.multiplicity) : "-") << "\t" << num(r.max_rel_err) << "\t"
               << num(r.tolerance) << "\t" << num(phase_eighths(r.ratio)) << "\t" << (r.passed ? "yes" : "no");
            if (timings) os << "\t" << num(r.runtime_ms);
            os << "\n";
        }
        return os.str();
    }
    json j;
    j["suite"] = report.suite;
    j["curve"] = report.curve;
    j["genus"] = report.genus;
    j["seed"] = report.seed;
    j["periods"] = {{"legendre_residual", report.periods.legendre_residual},
                    {"tau_asymmetry", report.periods.tau_asym},
                    {"tau_im_min_eigenvalue", report.periods.tau_im_min_eig},
                    {"quadrature_error", report.periods.quadrature_error}};
    json checks = json::array();
    for (const CheckResult& r : report.checks) checks.push_back(check_json(r, timings));
    j["checks"] = checks;
    j["summary"] = {{"total", report.summary.total},
                    {"passed", report.summary.passed},
                    {"failed", report.summary.failed},
                    {"worst_check", report.summary.worst_check},
                    {"worst_rel_err", report.summary.worst_rel_err},
                    {"worst_ratio_to_tolerance", report.summary.worst_ratio}};
    if (timings) j["runtime_ms"] = report.runtime_ms;
    return j.dump(2) + "\n";
}

std::string format_periods(const Curve& curve, const PeriodMatrices& pm, OutputFormat format) {
    if (format == OutputFormat::Tabular) {
        std::ostringstream os;
        os << "matrix\trow\tcol\tre\tim\n";
        auto dump = [&](const char* name, const MatrixC& m) {
            for (Eigen::Index r = 0; r < m.rows(); ++r) {
                for (Eigen::Index c = 0; c < m.cols(); ++c) {
                    os << name << "\t" << r + 1 << "\t" << c + 1 << "\t" << std::setprecision(17) << m(r, c).real()
                       << "\t" << m(r, c).imag() << "\n";
                }
            }
        };
        dump("omega", pm.omega);
        dump("omega_prime", pm.omega_prime);
        dump("eta", pm.eta);
        dump("eta_prime", pm.eta_prime);
        dump("tau", pm.tau);
        dump("kappa", pm.kappa);
        os << "# legendre_residual\t" << num(pm.legendre_residual) << "\n";
        os << "# tau_asymmetry\t" << num(pm.tau_asym) << "\n";
        os << "# tau_im_min_eigenvalue\t" << num(pm.tau_im_min_eig) << "\n";
        return os.str();
    }
    json j;
    j["curve"] = curve.branch_points();
    j["genus"] = curve.genus();
    j["hash"] = curve_hash(curve);
    j["omega"] = matrix_json(pm.omega);
    j["omega_prime"] = matrix_json(pm.omega_prime);
    j["eta"] = matrix_json(pm.eta);
    j["eta_prime"] = matrix_json(pm.eta_prime);
    j["tau"] = matrix_json(pm.tau);
    j["kappa"] = matrix_json(pm.kappa);
    j["legendre_residual"] = pm.legendre_residual;
    j["tau_asymmetry"] = pm.tau_asym;
    j["tau_im_min_eigenvalue"] = pm.tau_im_min_eig;
    j["kappa_asymmetry"] = pm.kappa_asym;
    j["quadrature_error"] = pm.quadrature_error;
    j["b_cycles_flipped"] = pm.b_cycles_flipped;
    return j.dump(2) + "\n";
}

std::string format_characteristics(int genus, OutputFormat format) {
    const Characteristic k = riemann_constant_characteristic(genus);
    if (format == OutputFormat::Tabular) {
        std::ostringstream os;
        os << "kind\tlabel\tmultiplicity\tcharacteristic\tparity\n";
        for (int i = 1; i <= 2 * genus + 2; ++i) {
            const Characteristic c = branch_point_characteristic(genus, i);
            os << "branch\te" << i << "\t-\t" << c.to_string() << "\t" << parity_name(parity(c)) << "\n";
        }
        os << "riemann\tK\t-\t" << k.to_string() << "\t" << parity_name(parity(k)) << "\n";
        for (int m = 0; m <= max_multiplicity(genus); ++m) {
            for (const Partition& p : enumerate_partitions(genus, m)) {
                const Characteristic c = partition_characteristic(p);
                os << "partition\t" << p.to_string() << "\t" << m << "\t" << c.to_string() << "\t"
                   << parity_name(parity(c)) << "\n";
            }
        }
        return os.str();
    }
    json j;
    j["genus"] = genus;
    json branch = json::array();
    for (int i = 1; i <= 2 * genus + 2; ++i) {
        const Characteristic c = branch_point_characteristic(genus, i);
        branch.push_back({{"index", i}, {"characteristic", c.to_string()}, {"parity", parity_name(parity(c))}});
    }
    j["branch_points"] = branch;
    j["riemann_constant"] = k.to_string();
    json parts = json::array();
    json counts = json::object();
    long long total = 0;
    for (int m = 0; m <= max_multiplicity(genus); ++m) {
        const std::vector<Partition> ps = enumerate_partitions(genus, m);
        counts[std::to_string(m)] = ps.size();
        total += static_cast<long long>(ps.size());
        for (const Partition& p : ps) {
            const Characteristic c = partition_characteristic(p);
            parts.push_back({{"partition", p.to_string()},
                             {"multiplicity", m},
                             {"characteristic", c.to_string()},
                             {"parity", parity_name(parity(c))}});
        }
    }
    j["counts"] = counts;
    j["total"] = total;
    j["partitions"] = parts;
    return j.dump(2) + "\n";
}

std::string format_tensor(const DerivativeTensor& t, const Partition& p, const Characteristic& c,
                          OutputFormat format) {
    if (format == OutputFormat::Tabular) {
        std::ostringstream os;
        os << "# partition " << p.to_string() << " characteristic " << c.to_string() << " order " << t.order()
           << " basis " << basis_name(t.basis()) << "\n";
        if (t.order() == 2) {
            const int g = t.genus();
            for (int i = 0; i < g; ++i) {
                for (int j = 0; j < g; ++j) os << (j ? "\t" : "") << cnum(t.at({i, j}));
                os << "\n";
            }
            return os.str();
        }
        os << "index\tre\tim\n";
        for (std::size_t k = 0; k < t.keys().size(); ++k) {
            os << direction_label(t.basis(), t.keys()[k]) << "\t" << std::setprecision(17) << t.values()[k].real()
               << "\t" << t.values()[k].imag() << "\n";
        }
        return os.str();
    }
    json j;
    j["partition"] = p.to_string();
    j["characteristic"] = c.to_string();
    j["multiplicity"] = p.multiplicity();
    j["order"] = t.order();
    j["basis"] = basis_name(t.basis());
    json entries = json::array();
    for (std::size_t k = 0; k < t.keys().size(); ++k) {
        entries.push_back({{"index", direction_label(t.basis(), t.keys()[k])}, {"value", complex_json(t.values()[k])}});
    }
    j["entries"] = entries;
    if (t.order() == 2) {
        const int g = t.genus();
        MatrixC h(g, g);
        for (int a = 0; a < g; ++a) {
            for (int b = 0; b < g; ++b) h(a, b) = t.at({a, b});
        }
        j["matrix"] = matrix_json(h);
    }
    return j.dump(2) + "\n";
}

std::string format_bolza(const Curve& curve, const std::vector<BolzaRow>& rows, OutputFormat format) {
    if (format == OutputFormat::Tabular) {
        std::ostringstream os;
        os << "family\tformula\tpartition\tdegree\ttarget\testimate_re\testimate_im\trel_err\tcross_multiplied\n";
        for (const BolzaRow& r : rows) {
            os << r.family << "\t" << r.formula << "\t" << r.partition.to_string() << "\t" << r.degree << "\t"
               << std::setprecision(12) << r.target << "\t" << r.estimate.real() << "\t" << r.estimate.imag() << "\t"
               << num(r.rel_err) << "\t" << (r.degenerate ? "yes" : "no") << "\n";
        }
        return os.str();
    }
    json j;
    j["curve"] = curve.branch_points();
    json list = json::array();
    double worst = 0;
    for (const BolzaRow& r : rows) {
        worst = std::max(worst, r.rel_err);
        list.push_back({{"family", r.family},
                        {"formula", r.formula},
                        {"partition", r.partition.to_string()},
                        {"degree", r.degree},
                        {"target", r.target},
                        {"estimate", r.degenerate ? json(nullptr) : complex_json(r.estimate)},
                        {"rel_err", r.rel_err},
                        {"cross_multiplied", r.degenerate}});
    }
    j["rows"] = list;
    j["worst_rel_err"] = worst;
    return j.dump(2) + "\n";
}

}  // namespace hypertheta
