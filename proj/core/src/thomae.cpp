#include "hypertheta/thomae.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace hypertheta {

namespace {

std::vector<int> finite_only(const Curve& curve, std::vector<int> indices) {
    std::vector<int> out;
    for (int i : indices) {
        if (i == curve.infinity_index()) continue;
        if (i < 1 || i > curve.finite_count()) {
            throw Error(ErrorCode::InvalidArgument, "branch index " + std::to_string(i) + " out of range");
        }
        out.push_back(i);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double sign_pow(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

void require_multiplicity(const Partition& p, int m) {
    if (p.multiplicity() != m) {
        throw Error(ErrorCode::WrongMultiplicity, "partition " + p.to_string() + " has multiplicity " +
                                                      std::to_string(p.multiplicity()) + ", expected " +
                                                      std::to_string(m));
    }
}

void subsets(const std::vector<int>& pool, int k, std::size_t start, std::vector<int>& cur,
             std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
        cur.push_back(pool[i]);
        subsets(pool, k, i + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<double> elementary_symmetric_values(const std::vector<double>& xs) {
    std::vector<double> s{1.0};
    for (double x : xs) {
        s.push_back(0.0);
        for (std::size_t i = s.size() - 1; i >= 1; --i) s[i] += x * s[i - 1];
    }
    return s;
}

SymmetricTable elementary_symmetric(const Curve& curve, const std::vector<int>& indices) {
    SymmetricTable t;
    t.source = finite_only(curve, indices);
    std::vector<double> xs;
    for (int i : t.source) xs.push_back(curve.e(i));
    t.values = elementary_symmetric_values(xs);
    return t;
}

double vandermonde(const Curve& curve, const std::vector<int>& indices) {
    const std::vector<int> idx = finite_only(curve, indices);
    double d = 1.0;
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a + 1; b < idx.size(); ++b) d *= curve.e(idx[b]) - curve.e(idx[a]);
    }
    return d;
}

cplx det_factor(const PeriodMatrices& pm) {
    const cplx det = pm.omega.determinant();
    return std::sqrt(det / std::pow(std::numbers::pi, pm.genus()));
}

cplx curve_constant(const Curve& curve, const PeriodMatrices& pm) {
    std::vector<int> all;
    for (int i = 1; i <= curve.finite_count(); ++i) all.push_back(i);
    return det_factor(pm) * std::pow(vandermonde(curve, all), 0.25);
}

cplx thomae_prefactor(const Curve& curve, const PeriodMatrices& pm, const Partition& p) {
    const double di = vandermonde(curve, p.finite_indices());
    const double dj = vandermonde(curve, p.complement_finite());
    return det_factor(pm) * std::pow(di, 0.25) * std::pow(dj, 0.25);
}

cplx first_thomae_rhs(const Partition& p, const PeriodMatrices& pm, const Curve& curve) {
    require_multiplicity(p, 0);
    return thomae_prefactor(curve, pm, p);
}

VectorC second_thomae_rhs(const Partition& p, const PeriodMatrices& pm, const Curve& curve) {
    require_multiplicity(p, 1);
    const int g = curve.genus();
    const SymmetricTable s = elementary_symmetric(curve, p.finite_indices());
    const int k = p.dropped();  // 1: finite form, 2: infinity form
    VectorC vec(g);
    for (int j = 1; j <= g; ++j) vec(j - 1) = sign_pow(j - k) * s.s(j - k);
    return thomae_prefactor(curve, pm, p) * (pm.omega.transpose() * vec);
}

std::vector<std::vector<int>> admissible_k_sets(const Partition& p, bool both_sizes) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    subsets(p.complement_finite(), p.dropped(), 0, cur, out);
    if (both_sizes && p.multiplicity() >= 1) {
        const int other = (p.dropped() % 2 == 1) ? p.dropped() + 1 : p.dropped() - 1;
        if (other >= p.multiplicity() && other <= static_cast<int>(p.complement_finite().size())) {
            subsets(p.complement_finite(), other, 0, cur, out);
        }
    }
    return out;
}

std::vector<int> default_k_set(const Partition& p) { return admissible_k_sets(p).front(); }

DerivativeTensor general_thomae_sum(const Curve& curve, const MatrixC& omega, const Partition& p,
                                    const std::vector<int>& k_set) {
    if (static_cast<int>(k_set.size()) != p.dropped()) {
        throw Error(ErrorCode::BadKSize, "K has " + std::to_string(k_set.size()) + " elements, partition " +
                                             p.to_string() + " needs " + std::to_string(p.dropped()));
    }
    return literal_thomae_sum(curve, omega, p, k_set);
}

DerivativeTensor literal_thomae_sum(const Curve& curve, const MatrixC& omega, const Partition& p,
                                    const std::vector<int>& k_set) {
    const int g = curve.genus();
    const int m = p.multiplicity();
    const int ksize = static_cast<int>(k_set.size());
    if (ksize != 2 * m - 1 && ksize != 2 * m && !(m == 0 && ksize == 0)) {
        throw Error(ErrorCode::BadKSize, "K must have 2m-1 or 2m elements");
    }
    const std::vector<int> jfin = p.complement_finite();
    std::set<int> seen;
    for (int k : k_set) {
        if (!std::binary_search(jfin.begin(), jfin.end(), k)) {
            throw Error(ErrorCode::KNotInJ, "index " + std::to_string(k) + " is not a finite index of J");
        }
        if (!seen.insert(k).second) throw Error(ErrorCode::BadKSize, "K has repeated indices");
    }
    DerivativeTensor out(g, m, TensorBasis::V);
    const std::size_t kk = k_set.size();
    // a[p](n) = sum_j (-1)^{j-1} s_{j-1}(I u K \ {p}) omega_{j n}, accumulated in long double
    using cld = std::complex<long double>;
    std::vector<std::vector<cld>> a(kk, std::vector<cld>(static_cast<std::size_t>(g)));
    for (std::size_t q = 0; q < kk; ++q) {
        std::vector<int> set = p.finite_indices();
        for (std::size_t r = 0; r < kk; ++r) {
            if (r != q) set.push_back(k_set[r]);
        }
        const SymmetricTable s = elementary_symmetric(curve, set);
        for (int n = 0; n < g; ++n) {
            cld sum = 0;
            for (int j = 1; j <= g; ++j) {
                sum += static_cast<long double>(sign_pow(j - 1) * s.s(j - 1)) * cld(omega(j - 1, n));
            }
            a[q][static_cast<std::size_t>(n)] = sum;
        }
    }
    std::vector<cld> acc(out.keys().size(), cld(0));
    // ordered tuples of distinct positions in K
    std::vector<std::size_t> tuple;
    std::vector<bool> used(kk, false);
    std::vector<long double> factor(static_cast<std::size_t>(m));
    auto visit = [&]() {
        for (int i = 0; i < m; ++i) {
            const std::size_t pi = tuple[static_cast<std::size_t>(i)];
            long double den = 1.0L;
            for (std::size_t r = 0; r < kk; ++r) {
                if (!used[r]) den *= static_cast<long double>(curve.e(k_set[pi])) - curve.e(k_set[r]);
            }
            factor[static_cast<std::size_t>(i)] = 1.0L / den;
        }
        for (std::size_t key = 0; key < out.keys().size(); ++key) {
            const auto& n = out.keys()[key];
            cld t = 1.0L;
            for (int i = 0; i < m; ++i) {
                t *= a[tuple[static_cast<std::size_t>(i)]][static_cast<std::size_t>(n[static_cast<std::size_t>(i)])] *
                     factor[static_cast<std::size_t>(i)];
            }
            acc[key] += t;
        }
    };
    auto recurse = [&](auto&& self, int depth) -> void {
        if (depth == m) {
            visit();
            return;
        }
        for (std::size_t q = 0; q < kk; ++q) {
            if (used[q]) continue;
            used[q] = true;
            tuple.push_back(q);
            self(self, depth + 1);
            tuple.pop_back();
            used[q] = false;
        }
    };
    recurse(recurse, 0);
    for (std::size_t key = 0; key < acc.size(); ++key) out.values()[key] = cplx(acc[key]);
    return out;
}

DerivativeTensor ThomaeRhs::value() const {
    DerivativeTensor t = tensor_part;
    for (cplx& z : t.values()) z *= scalar_prefactor;
    return t;
}

ThomaeRhs general_thomae(const Curve& curve, const PeriodMatrices& pm, const Partition& p,
                         const std::vector<int>& k_set) {
    ThomaeRhs r;
    r.scalar_prefactor = thomae_prefactor(curve, pm, p);
    r.tensor_part = general_thomae_sum(curve, pm.omega, p, k_set);
    r.k_set = k_set;
    return r;
}

cplx general_thomae_rhs(const Partition& p, const std::vector<int>& k_set, const std::vector<int>& multi_index,
                        const PeriodMatrices& pm, const Curve& curve) {
    if (static_cast<int>(multi_index.size()) != p.multiplicity()) {
        throw Error(ErrorCode::InvalidArgument, "multi-index length must equal the multiplicity");
    }
    return general_thomae(curve, pm, p, k_set).value().at(multi_index);
}

DerivativeTensor s_structure_from(int genus, int order, int k, const std::vector<double>& s) {
    auto f = [&](int l) {
        return (l < 0 || l >= static_cast<int>(s.size())) ? 0.0 : s[static_cast<std::size_t>(l)];
    };
    DerivativeTensor t(genus, order, TensorBasis::U);
    for (std::size_t key = 0; key < t.keys().size(); ++key) {
        std::vector<int> j = t.keys()[key];
        for (int& x : j) x += 1;  // 1-based
        double val = 0;
        switch (order) {
            case 0: val = 1; break;
            case 1: val = sign_pow(j[0] - k) * f(j[0] - k); break;
            case 2: {
                const int a = j[0], b = j[1];
                val = sign_pow(a + b) *
                      (2 * f(a - k + 1) * f(b - k + 1) - f(a - k + 2) * f(b - k) - f(a - k) * f(b - k + 2));
                break;
            }
            case 3: {
                auto brace = [&](std::array<int, 3> d) {
                    std::sort(d.begin(), d.end());
                    double sum = 0;
                    do {
                        sum += f(j[0] - k + d[0]) * f(j[1] - k + d[1]) * f(j[2] - k + d[2]);
                    } while (std::next_permutation(d.begin(), d.end()));
                    return sum;
                };
                val = sign_pow(j[0] + j[1] + j[2] - 3 * k) *
                      (6 * f(j[0] - k + 2) * f(j[1] - k + 2) * f(j[2] - k + 2) - 2 * brace({3, 2, 1}) +
                       2 * brace({0, 3, 3}) + 2 * brace({1, 1, 4}) - brace({0, 2, 4}));
                break;
            }
            default:
                throw Error(ErrorCode::MultiplicityOutOfRange, "closed-form S tensors exist for orders 0..3");
        }
        t.values()[key] = val;
    }
    return t;
}

DerivativeTensor s_structure(const Partition& p, const Curve& curve) {
    const SymmetricTable s = elementary_symmetric(curve, p.finite_indices());
    return s_structure_from(curve.genus(), p.multiplicity(), p.dropped(), s.values);
}

MatrixR s_matrix(const Partition& p, const Curve& curve) {
    require_multiplicity(p, 2);
    const DerivativeTensor t = s_structure(p, curve);
    const int g = curve.genus();
    MatrixR m(g, g);
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) m(i, j) = t.at({i, j}).real();
    }
    return m;
}

DerivativeTensor s_tensor(const Partition& p, const Curve& curve) {
    require_multiplicity(p, 3);
    return s_structure(p, curve);
}

DerivativeTensor s_structure_v(const Partition& p, const Curve& curve, const MatrixC& omega) {
    DerivativeTensor t = s_structure(p, curve);
    return contract_all(t, omega, TensorBasis::V);
}

cplx theta_product_rhs(const Curve& curve, const PeriodMatrices& pm) {
    const int g = curve.genus();
    std::vector<int> all;
    for (int i = 1; i <= curve.finite_count(); ++i) all.push_back(i);
    const double delta = vandermonde(curve, all);
    const long long count = binomial(2 * g + 1, g);
    const double dexp = (binomial(2 * g - 1, g) + binomial(2 * g - 1, g + 1)) / 4.0;
    const cplx df = det_factor(pm);
    // (principal sqrt)^count keeps the branch consistent with the single-constant formula
    const cplx pow_det = std::exp(static_cast<double>(count) * std::log(df));
    return pow_det * std::exp(dexp * std::log(delta));
}

double log_abs_theta_product_rhs(const Curve& curve, const PeriodMatrices& pm) {
    const int g = curve.genus();
    std::vector<int> all;
    for (int i = 1; i <= curve.finite_count(); ++i) all.push_back(i);
    const double dexp = (binomial(2 * g - 1, g) + binomial(2 * g - 1, g + 1)) / 4.0;
    return static_cast<double>(binomial(2 * g + 1, g)) * std::log(std::abs(det_factor(pm))) +
           dexp * std::log(vandermonde(curve, all));
}

std::vector<cplx> bolza_symmetric(const DerivativeTensor& tu, const Partition& p) {
    const int m = p.multiplicity();
    const int k = p.dropped();
    if (tu.basis() != TensorBasis::U || tu.order() != m) {
        throw Error(ErrorCode::InvalidArgument, "bolza_symmetric needs the u-basis tensor of order m");
    }
    if (m == 0) throw Error(ErrorCode::WrongMultiplicity, "no Bolza formula for multiplicity 0");
    std::vector<int> fixed;
    for (int c = k - 2 * m + 2; c <= k - 2; c += 2) fixed.push_back(c - 1);  // 0-based components
    std::vector<int> den_idx = fixed;
    den_idx.push_back(k - 1);
    const cplx den = tu.at(den_idx);
    if (std::abs(den) < 1e-9 * tu.max_abs()) {
        throw Error(ErrorCode::SmallDenominator, "reference derivative vanishes for " + p.to_string());
    }
    std::vector<cplx> out;
    const int n = static_cast<int>(p.finite_indices().size());
    for (int j = 1; j <= n; ++j) {
        std::vector<int> num_idx = fixed;
        num_idx.push_back(k + j - 1);
        out.push_back(sign_pow(j) * tu.at(num_idx) / den);
    }
    return out;
}

}  // namespace hypertheta
