#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <map>

#include "hypertheta/report.hpp"
#include "hypertheta/samples.hpp"
#include "hypertheta/verify.hpp"

namespace ht = hypertheta;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitComputation = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CurveSource {
    std::string file;
    std::vector<double> points;
    int genus = 0;
};

struct OutputOptions {
    std::string format = "json";
    std::string path;
};

void add_curve_options(CLI::App* cmd, CurveSource& src) {
    auto* file = cmd->add_option("--curve-file", src.file, "JSON file holding an array of branch points");
    auto* pts = cmd->add_option("--points", src.points, "Branch points, comma separated")->delimiter(',');
    auto* genus = cmd->add_option("--genus", src.genus, "Named sample curve -g..g")->check(CLI::Range(1, 6));
    file->excludes(pts)->excludes(genus);
    pts->excludes(genus);
}

void add_output_options(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"json", "tsv"}));
    cmd->add_option("--output,-o", out.path, "Output file (default: stdout or $HYPERTHETA_OUTPUT_DIR)");
}

std::vector<double> load_points(const CurveSource& src) {
    if (!src.file.empty()) {
        std::ifstream in(src.file);
        if (!in) throw UsageError("cannot read curve file " + src.file);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const std::exception& e) {
            throw UsageError("curve file is not a JSON array: " + std::string(e.what()));
        }
        if (!j.is_array()) throw UsageError("curve file must hold a single array of numbers");
        std::vector<double> pts;
        for (const auto& x : j) {
            if (!x.is_number()) throw UsageError("curve file must hold only numbers");
            pts.push_back(x.get<double>());
        }
        return pts;
    }
    if (!src.points.empty()) return src.points;
    if (src.genus > 0) return ht::named_sample(src.genus);
    throw UsageError("one curve source is required: --curve-file, --points or --genus");
}

ht::OutputFormat output_format(const OutputOptions& out) {
    return out.format == "tsv" ? ht::OutputFormat::Tabular : ht::OutputFormat::Structured;
}

void emit(const std::string& text, const OutputOptions& out, const std::string& command) {
    std::string path = out.path;
    if (path.empty()) {
        if (const char* dir = std::getenv("HYPERTHETA_OUTPUT_DIR"); dir && *dir) {
            std::filesystem::create_directories(dir);
            path = (std::filesystem::path(dir) / (command + (out.format == "tsv" ? ".tsv" : ".json"))).string();
        }
    }
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write " + path);
    f << text;
    std::cerr << "wrote " << path << "\n";
}

void apply_tolerance(ht::Tolerances& tol, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw UsageError("tolerance override must be name=value: " + spec);
    const std::string key = spec.substr(0, eq);
    double value = 0;
    try {
        value = std::stod(spec.substr(eq + 1));
    } catch (const std::exception&) {
        throw UsageError("bad tolerance value in " + spec);
    }
    const std::map<std::string, double*> fields{{"thomae", &tol.thomae},
                                                {"phase", &tol.phase},
                                                {"k-spread", &tol.k_spread},
                                                {"bolza", &tol.bolza},
                                                {"constant", &tol.constant},
                                                {"product", &tol.product},
                                                {"periods", &tol.periods},
                                                {"half-period", &tol.half_period},
                                                {"s-structure", &tol.s_structure},
                                                {"quotient", &tol.quotient},
                                                {"rank-low", &tol.rank_low},
                                                {"rank-high", &tol.rank_high},
                                                {"radius", &tol.radius},
                                                {"finite-difference", &tol.finite_difference},
                                                {"jacobian", &tol.jacobian}};
    const auto it = fields.find(key);
    if (it == fields.end()) throw UsageError("unknown tolerance " + key);
    *it->second = value;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Period matrices, theta constants and Thomae-type identities of hyperelliptic curves"};
    app.require_subcommand(1);

    CurveSource src;
    OutputOptions out;

    auto* periods = app.add_subcommand("periods", "Print period matrices and their residuals");
    add_curve_options(periods, src);
    add_output_options(periods, out);
    std::string cache_path;
    periods->add_option("--cache", cache_path, "Period cache file (read if valid, written otherwise)");

    auto* chars = app.add_subcommand("characteristics", "Print the characteristic table and partition map");
    add_curve_options(chars, src);
    add_output_options(chars, out);

    auto* theta_const = app.add_subcommand("theta-const", "Print derivative theta constants of a partition");
    add_curve_options(theta_const, src);
    add_output_options(theta_const, out);
    std::string partition_text;
    std::string basis = "v";
    theta_const->add_option("--partition", partition_text, "Finite indices, e.g. {1,4}")->required();
    theta_const->add_option("--basis", basis, "Derivative variables")->check(CLI::IsMember({"u", "v"}));

    auto* verify = app.add_subcommand("verify", "Run the verification suite");
    add_curve_options(verify, src);
    add_output_options(verify, out);
    ht::SuiteConfig cfg;
    std::vector<std::string> tol_overrides;
    int random_partitions = 0;
    bool all_k = false;
    bool no_quotients = false, no_hygiene = false;
    verify->add_option("--multiplicity,-m", cfg.multiplicities, "Multiplicities to check (repeatable)")
        ->check(CLI::Range(0, 6));
    verify->add_option("--partition", cfg.listed, "Only these partitions (repeatable)");
    verify->add_option("--random", random_partitions, "Random partitions per multiplicity")->check(CLI::PositiveNumber);
    verify->add_flag("--all-k", all_k, "Also evaluate K-sets of the other cardinality");
    verify->add_option("--tol", tol_overrides, "Tolerance override name=value (repeatable)");
    verify->add_option("--seed", cfg.seed, "Random seed");
    verify->add_option("--divisors", cfg.quotient_divisors, "Random divisors for theta quotients")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--threads", cfg.threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
    verify->add_option("--period-cache", cfg.period_cache, "Period cache file");
    verify->add_flag("--timings", cfg.timings, "Include runtimes in the report");
    verify->add_flag("--explore", cfg.explore, "Enable exploratory structure checks");
    verify->add_flag("--no-quotients", no_quotients, "Skip theta quotient checks");
    verify->add_flag("--no-hygiene", no_hygiene, "Skip numerical hygiene checks");

    auto* bolza = app.add_subcommand("bolza", "Recover branch points and symmetric functions from theta constants");
    add_curve_options(bolza, src);
    add_output_options(bolza, out);
    double bolza_tol = 1e-5;
    bolza->add_option("--tol", bolza_tol, "Relative tolerance for the exit status");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        const auto fmt = output_format(out);
        if (chars->parsed()) {
            int g = src.genus;
            if (g == 0) g = ht::make_curve(load_points(src)).genus();
            emit(ht::format_characteristics(g, fmt), out, "characteristics");
            return kExitOk;
        }
        const ht::Curve curve = ht::make_curve(load_points(src));
        if (periods->parsed()) {
            ht::SuiteConfig pc;
            pc.period_cache = cache_path;
            const ht::PeriodMatrices pm = ht::suite_periods(curve, pc);
            emit(ht::format_periods(curve, pm, fmt), out, "periods");
            return kExitOk;
        }
        if (theta_const->parsed()) {
            ht::Partition p;
            try {
                p = ht::Partition::parse(curve.genus(), partition_text);
            } catch (const ht::Error& e) {
                throw UsageError(e.what());
            }
            const ht::PeriodMatrices pm = ht::period_matrices(curve);
            const ht::ThetaContext ctx(pm.tau);
            ht::DerivativeTensor t = ht::derivative_theta_constants(ctx, p);
            if (basis == "u") t = ht::to_u_basis(t, pm);
            emit(ht::format_tensor(t, p, ht::partition_characteristic(p), fmt), out, "theta-const");
            return kExitOk;
        }
        if (verify->parsed()) {
            cfg.branch_points = curve.branch_points();
            cfg.label = src.genus > 0 ? "sample-g" + std::to_string(src.genus)
                        : !src.file.empty() ? std::filesystem::path(src.file).filename().string()
                                            : "inline";
            for (const auto& t : tol_overrides) apply_tolerance(cfg.tol, t);
            for (int m : cfg.multiplicities) {
                if (m > ht::max_multiplicity(curve.genus())) {
                    throw UsageError("multiplicity " + std::to_string(m) + " exceeds the maximum for genus " +
                                     std::to_string(curve.genus()));
                }
            }
            if (!cfg.listed.empty()) {
                for (const auto& text : cfg.listed) {
                    try {
                        (void)ht::Partition::parse(curve.genus(), text);
                    } catch (const ht::Error& e) {
                        throw UsageError(e.what());
                    }
                }
                cfg.sampling = ht::PartitionSampling::Listed;
            } else if (random_partitions > 0) {
                cfg.sampling = ht::PartitionSampling::Random;
                cfg.random_count = random_partitions;
            }
            if (all_k) cfg.k_policy = ht::KPolicy::All;
            cfg.quotients = !no_quotients;
            cfg.hygiene = !no_hygiene;
            const ht::SuiteReport report = ht::run_suite(cfg);
            emit(ht::format_report(report, fmt, cfg.timings), out, "verify");
            std::cerr << report.summary.passed << "/" << report.summary.total << " checks passed\n";
            return report.summary.failed == 0 ? kExitOk : kExitFailed;
        }
        if (bolza->parsed()) {
            const ht::PeriodMatrices pm = ht::period_matrices(curve);
            const ht::ThetaContext ctx(pm.tau);
            ht::TensorCache cache(ctx);
            const std::vector<ht::BolzaRow> rows = ht::bolza_rows(curve, pm, cache);
            emit(ht::format_bolza(curve, rows, fmt), out, "bolza");
            for (const auto& r : rows) {
                if (r.rel_err > bolza_tol) return kExitFailed;
            }
            return kExitOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ht::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    }
    return kExitUsage;
}
