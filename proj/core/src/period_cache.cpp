#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

#include "hypertheta/periods.hpp"

namespace hypertheta {

namespace {

using nlohmann::json;

constexpr int kCacheVersion = 1;

json encode(const MatrixC& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(row);
    }
    return rows;
}

MatrixC decode(const json& rows, int g) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != g) throw std::runtime_error("bad matrix shape");
    MatrixC m(g, g);
    for (int r = 0; r < g; ++r) {
        const json& row = rows.at(static_cast<std::size_t>(r));
        if (!row.is_array() || static_cast<int>(row.size()) != g) throw std::runtime_error("bad matrix shape");
        for (int c = 0; c < g; ++c) {
            const json& z = row.at(static_cast<std::size_t>(c));
            m(r, c) = cplx(z.at(0).get<double>(), z.at(1).get<double>());
        }
    }
    return m;
}

}  // namespace

std::string curve_hash(const Curve& curve) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (double e : curve.branch_points()) {
        const auto bits = std::bit_cast<std::uint64_t>(e);
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void save_period_cache(const std::string& path, const Curve& curve, const PeriodMatrices& pm) {
    json j;
    j["version"] = kCacheVersion;
    j["hash"] = curve_hash(curve);
    j["branch_points"] = curve.branch_points();
    j["omega"] = encode(pm.omega);
    j["omega_prime"] = encode(pm.omega_prime);
    j["eta"] = encode(pm.eta);
    j["eta_prime"] = encode(pm.eta_prime);
    j["quadrature_error"] = pm.quadrature_error;
    j["legendre_residual"] = pm.legendre_residual;
    j["tau_asymmetry"] = pm.tau_asym;
    j["tau_im_min_eigenvalue"] = pm.tau_im_min_eig;
    j["b_cycles_flipped"] = pm.b_cycles_flipped;
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write cache file " + path);
    // shortest round-trip form of each double, so values reload bit-exact
    out << j.dump(1) << "\n";
}

std::optional<PeriodMatrices> load_period_cache(const std::string& path, const Curve& curve) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
        const json j = json::parse(in);
        if (j.at("version").get<int>() != kCacheVersion) return std::nullopt;
        if (j.at("hash").get<std::string>() != curve_hash(curve)) return std::nullopt;
        if (j.at("branch_points").get<std::vector<double>>() != curve.branch_points()) return std::nullopt;
        const int g = curve.genus();
        PeriodMatrices pm;
        pm.omega = decode(j.at("omega"), g);
        pm.omega_prime = decode(j.at("omega_prime"), g);
        pm.eta = decode(j.at("eta"), g);
        pm.eta_prime = decode(j.at("eta_prime"), g);
        pm.quadrature_error = j.at("quadrature_error").get<double>();
        pm.b_cycles_flipped = j.at("b_cycles_flipped").get<bool>();
        fill_quality(pm);
        return pm;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace hypertheta
