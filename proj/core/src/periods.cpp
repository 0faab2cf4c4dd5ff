#include "hypertheta/periods.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hypertheta/characteristics.hpp"
#include "hypertheta/quadrature.hpp"

namespace hypertheta {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;
constexpr long double kQuadTarget = 1e-14L;
constexpr double kQuadAccept = 1e-10;

cplx i_power(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

// Number of finite branch points below x; x lies in region j between e_j and e_{j+1}.
int region_of(const Curve& curve, double x) {
    int j = 0;
    for (double e : curve.branch_points()) {
        if (e < x) ++j;
    }
    return j;
}

// Y = phase * prod sqrt|x - e_l| on the upper bank of region j.
cplx region_phase(const Curve& curve, int j) { return i_power(curve.finite_count() - j); }

struct Numerators {
    const Curve& curve;
    bool second;
    std::size_t size() const { return static_cast<std::size_t>(second ? 2 * curve.genus() : curve.genus()); }
    void eval(long double x, long double factor, std::vector<long double>& out) const {
        const int g = curve.genus();
        long double xp = 1;
        for (int n = g; n >= 1; --n) {
            out[static_cast<std::size_t>(n - 1)] = xp * factor;
            xp *= x;
        }
        if (second) {
            for (int n = 1; n <= g; ++n) {
                out[static_cast<std::size_t>(g + n - 1)] = second_kind_numerator(curve, n, x) * factor;
            }
        }
    }
};

// 1 / prod_{l not in skip} sqrt|x - e_l|
long double inv_sqrt_product(const Curve& curve, long double x, int skip_a, int skip_b) {
    long double p = 1;
    const auto& pts = curve.branch_points();
    for (std::size_t l = 0; l < pts.size(); ++l) {
        const int idx = static_cast<int>(l) + 1;
        if (idx == skip_a || idx == skip_b) continue;
        p *= std::fabs(x - static_cast<long double>(pts[l]));
    }
    return 1 / std::sqrt(p);
}

struct RealIntegral {
    std::vector<long double> values;
    double error = 0;
    int nodes = 0;
};

RealIntegral finish(const QuadratureResult& q, const char* what) {
    if (!q.converged && q.max_rel_change > kQuadAccept) {
        throw Error(ErrorCode::QuadratureNotConverged,
                    std::string(what) + " reached relative change " + std::to_string(double(q.max_rel_change)));
    }
    return {q.values, static_cast<double>(q.max_rel_change), q.nodes};
}

// Integral over [a, b] of num(x) / prod_l sqrt|x - e_l|; ia, ib are branch indices of the
// endpoints (0 for a regular endpoint).
RealIntegral real_interval(const Numerators& num, long double a, int ia, long double b, int ib) {
    const Curve& curve = num.curve;
    const std::size_t nc = num.size();
    VectorIntegrand f;
    long double lo = -1, hi = 1;
    if (ia && ib) {
        const long double mid = (a + b) / 2, half = (b - a) / 2;
        f = [&, mid, half](long double t, std::vector<long double>& out) {
            const long double th = kPi * (t + 1) / 2;
            const long double x = mid - half * std::cos(th);
            num.eval(x, inv_sqrt_product(curve, x, ia, ib) * (kPi / 2), out);
        };
    } else if (ia) {
        const long double len = b - a;
        lo = 0;
        f = [&, len](long double t, std::vector<long double>& out) {
            const long double x = a + len * t * t;
            num.eval(x, 2 * std::sqrt(len) * inv_sqrt_product(curve, x, ia, 0), out);
        };
    } else if (ib) {
        const long double len = b - a;
        lo = 0;
        f = [&, len](long double t, std::vector<long double>& out) {
            const long double x = b - len * t * t;
            num.eval(x, 2 * std::sqrt(len) * inv_sqrt_product(curve, x, ib, 0), out);
        };
    } else {
        lo = a;
        hi = b;
        f = [&](long double x, std::vector<long double>& out) {
            num.eval(x, inv_sqrt_product(curve, x, 0, 0), out);
        };
    }
    return finish(integrate_doubling(f, nc, lo, hi, kQuadTarget), "segment quadrature");
}

// Integral over [c, inf) of the first-kind numerators; ic is the branch index of c or 0.
RealIntegral real_tail(const Numerators& num, long double c, int ic) {
    const Curve& curve = num.curve;
    const long double len = std::max<long double>({1.0L, curve.scale(), std::fabs(c)});
    VectorIntegrand f = [&, len](long double t, std::vector<long double>& out) {
        const long double psi = kPi / 4 * (t + 1);
        const long double tn = std::tan(psi);
        const long double sec2 = 1 + tn * tn;
        const long double x = c + len * tn * tn;
        long double factor;
        if (ic) {
            factor = 2 * std::sqrt(len) * sec2 * inv_sqrt_product(curve, x, ic, 0);
        } else {
            factor = 2 * len * tn * sec2 * inv_sqrt_product(curve, x, 0, 0);
        }
        num.eval(x, factor * (kPi / 4), out);
    };
    return finish(integrate_doubling(f, num.size(), -1, 1, kQuadTarget), "tail quadrature");
}

}  // namespace

HomologyBasis build_homology(const Curve& curve) {
    const int g = curve.genus();
    HomologyBasis basis;
    for (int k = 1; k <= g; ++k) {
        Cycle a;
        a.terms.push_back({{curve.e(2 * k - 1), curve.e(2 * k), 1}, 2 * k - 1, 2.0});
        basis.a_cycles.push_back(a);
        Cycle b;
        for (int l = k; l <= g; ++l) {
            b.terms.push_back({{curve.e(2 * l), curve.e(2 * l + 1), 1}, 2 * l, 2.0});
        }
        basis.b_cycles.push_back(b);
    }
    return basis;
}

SegmentTable segment_integral_table(const Curve& curve) {
    const int g = curve.genus();
    SegmentTable table;
    table.first = MatrixC::Zero(2 * g, g);
    table.second = MatrixC::Zero(2 * g, g);
    Numerators num{curve, true};
    for (int j = 1; j <= 2 * g; ++j) {
        RealIntegral r = real_interval(num, curve.e(j), j, curve.e(j + 1), j + 1);
        const cplx scale = 1.0 / (-2.0 * region_phase(curve, j));
        for (int n = 1; n <= g; ++n) {
            table.first(j - 1, n - 1) = scale * static_cast<double>(r.values[static_cast<std::size_t>(n - 1)]);
            table.second(j - 1, n - 1) =
                scale * static_cast<double>(r.values[static_cast<std::size_t>(g + n - 1)]);
        }
        table.max_error = std::max(table.max_error, r.error);
        table.max_nodes = std::max(table.max_nodes, r.nodes);
    }
    return table;
}

MatrixC segment_integrals(const Curve& curve, DifferentialKind kind) {
    SegmentTable t = segment_integral_table(curve);
    return kind == DifferentialKind::First ? t.first : t.second;
}

PeriodMatrices assemble_periods(const Curve& curve, const HomologyBasis& basis, const SegmentTable& table) {
    const int g = curve.genus();
    PeriodMatrices pm;
    pm.omega = MatrixC::Zero(g, g);
    pm.omega_prime = MatrixC::Zero(g, g);
    pm.eta = MatrixC::Zero(g, g);
    pm.eta_prime = MatrixC::Zero(g, g);
    auto accumulate = [&](const Cycle& cycle, int col, MatrixC& w, MatrixC& h) {
        for (const CycleTerm& term : cycle.terms) {
            for (int n = 0; n < g; ++n) {
                w(n, col) += term.coefficient * table.first(term.segment_index - 1, n);
                h(n, col) += term.coefficient * table.second(term.segment_index - 1, n);
            }
        }
    };
    for (int k = 0; k < g; ++k) {
        accumulate(basis.a_cycles[static_cast<std::size_t>(k)], k, pm.omega, pm.eta);
        accumulate(basis.b_cycles[static_cast<std::size_t>(k)], k, pm.omega_prime, pm.eta_prime);
    }
    pm.quadrature_error = table.max_error;
    fill_quality(pm);
    return pm;
}

double legendre_residual(const PeriodMatrices& pm) {
    const int g = pm.genus();
    MatrixC big(2 * g, 2 * g);
    big << pm.omega, pm.omega_prime, pm.eta, pm.eta_prime;
    MatrixC J = MatrixC::Zero(2 * g, 2 * g);
    J.topRightCorner(g, g) = MatrixC::Identity(g, g);
    J.bottomLeftCorner(g, g) = -MatrixC::Identity(g, g);
    const cplx two_pi_i(0, 2 * std::numbers::pi);
    MatrixC r = big * J * big.transpose() - two_pi_i * J;
    return r.cwiseAbs().maxCoeff();
}

void fill_quality(PeriodMatrices& pm) {
    pm.tau = pm.omega.partialPivLu().solve(pm.omega_prime);
    pm.kappa = pm.omega.transpose().partialPivLu().solve(pm.eta.transpose()).transpose();
    pm.tau_asym = (pm.tau - pm.tau.transpose()).cwiseAbs().maxCoeff();
    pm.kappa_asym = (pm.kappa - pm.kappa.transpose()).cwiseAbs().maxCoeff();
    MatrixR im = pm.tau.imag();
    im = (im + im.transpose()) / 2;
    Eigen::SelfAdjointEigenSolver<MatrixR> es(im, Eigen::EigenvaluesOnly);
    pm.tau_im_min_eig = es.eigenvalues().minCoeff();
    pm.legendre_residual = legendre_residual(pm);
}

PeriodMatrices period_matrices(const Curve& curve) {
    HomologyBasis basis = build_homology(curve);
    SegmentTable table = segment_integral_table(curve);
    PeriodMatrices pm = assemble_periods(curve, basis, table);
    if (pm.tau_im_min_eig <= 0) {
        for (Cycle& b : basis.b_cycles) {
            for (CycleTerm& t : b.terms) t.coefficient = -t.coefficient;
        }
        pm = assemble_periods(curve, basis, table);
        pm.b_cycles_flipped = true;
    }
    if (pm.tau_im_min_eig <= 0) {
        throw PeriodError(ErrorCode::TauNotSiegel,
                          "Im tau min eigenvalue " + std::to_string(pm.tau_im_min_eig), pm);
    }
    if (pm.legendre_residual > 1e-8 || pm.tau_asym > 1e-8) {
        throw PeriodError(ErrorCode::LegendreCheckFailed,
                          "Legendre residual " + std::to_string(pm.legendre_residual) + ", tau asymmetry " +
                              std::to_string(pm.tau_asym),
                          pm);
    }
    return pm;
}

cplx upper_sheet_y(const Curve& curve, double x) {
    const int j = region_of(curve, x);
    long double p = 1;
    for (double e : curve.branch_points()) p *= std::fabs(static_cast<long double>(x) - e);
    return region_phase(curve, j) * static_cast<double>(std::sqrt(p));
}

VectorC abel_integral_u(const Curve& curve, const DivisorPoint& point) {
    const int g = curve.genus();
    Numerators num{curve, false};
    VectorC u = VectorC::Zero(g);
    // u = -(integral from the point to infinity)
    auto add_segments_from = [&](int first_segment) {
        for (int s = first_segment; s <= 2 * g; ++s) {
            RealIntegral r = real_interval(num, curve.e(s), s, curve.e(s + 1), s + 1);
            const cplx scale = 1.0 / (-2.0 * region_phase(curve, s));
            for (int n = 0; n < g; ++n) u(n) -= scale * static_cast<double>(r.values[static_cast<std::size_t>(n)]);
        }
    };
    auto add_tail = [&](long double c, int ic) {
        RealIntegral r = real_tail(num, c, ic);
        for (int n = 0; n < g; ++n) u(n) -= static_cast<double>(r.values[static_cast<std::size_t>(n)]) / -2.0;
    };

    if (const auto* b = std::get_if<BranchIndex>(&point)) {
        if (b->k < 1 || b->k > curve.infinity_index()) {
            throw Error(ErrorCode::InvalidArgument, "branch index " + std::to_string(b->k));
        }
        if (b->k == curve.infinity_index()) return u;
        add_segments_from(b->k);
        add_tail(curve.e(curve.finite_count()), curve.finite_count());
        return u;
    }

    const CurvePoint& p = std::get<CurvePoint>(point);
    const double tol = 1e-12 * std::max(1.0, curve.scale());
    if (std::fabs(p.x.imag()) > tol) {
        throw Error(ErrorCode::InvalidArgument, "only points with real x are supported");
    }
    const double x = p.x.real();
    for (double e : curve.branch_points()) {
        if (std::fabs(x - e) <= tol) {
            throw Error(ErrorCode::PathThroughBranchPoint, "point lies on branch point " + std::to_string(e));
        }
    }
    const cplx yu = upper_sheet_y(curve, x);
    const cplx ratio = p.y / yu;
    double sigma;
    if (std::abs(ratio - 1.0) < 1e-6) {
        sigma = 1;
    } else if (std::abs(ratio + 1.0) < 1e-6) {
        sigma = -1;
    } else {
        throw Error(ErrorCode::NotOnCurve, "y does not match either sheet at x = " + std::to_string(x));
    }
    const int j = region_of(curve, x);
    if (j == curve.finite_count()) {
        add_tail(x, 0);
    } else {
        RealIntegral r = real_interval(num, x, 0, curve.e(j + 1), j + 1);
        const cplx scale = 1.0 / (-2.0 * region_phase(curve, j));
        for (int n = 0; n < g; ++n) u(n) -= scale * static_cast<double>(r.values[static_cast<std::size_t>(n)]);
        add_segments_from(j + 1);
        add_tail(curve.e(curve.finite_count()), curve.finite_count());
    }
    return sigma * u;
}

double lattice_distance(const PeriodMatrices& pm, const VectorC& w) {
    const MatrixR Y = pm.tau.imag();
    const Eigen::VectorXd b = Y.partialPivLu().solve(w.imag());
    const Eigen::VectorXd a = w.real() - pm.tau.real() * b;
    double d = 0;
    for (int i = 0; i < b.size(); ++i) {
        d = std::max(d, std::fabs(b(i) - std::round(b(i))));
        d = std::max(d, std::fabs(a(i) - std::round(a(i))));
    }
    return d;
}

VectorC abel_map(const Curve& curve, const PeriodMatrices& pm, const std::vector<DivisorPoint>& divisor) {
    const int g = curve.genus();
    VectorC v = VectorC::Zero(g);
    auto lu = pm.omega.partialPivLu();
    for (const DivisorPoint& p : divisor) {
        VectorC vi = lu.solve(abel_integral_u(curve, p));
        if (const auto* b = std::get_if<BranchIndex>(&p)) {
            const VectorC hp = half_period(branch_point_characteristic(g, b->k), pm);
            const double d = lattice_distance(pm, vi - hp);
            if (d > 1e-7) {
                throw Error(ErrorCode::HalfPeriodMismatch, "branch point " + std::to_string(b->k) +
                                                               " integral misses its half-period by " +
                                                               std::to_string(d));
            }
            vi = hp;
        }
        v += vi;
    }
    return v;
}

MatrixC abel_jacobian(const Curve& curve, const PeriodMatrices& pm, const std::vector<CurvePoint>& divisor) {
    const int g = curve.genus();
    if (static_cast<int>(divisor.size()) != g) {
        throw Error(ErrorCode::InvalidArgument, "abel_jacobian needs exactly g points");
    }
    const double tol = 1e-12 * std::max(1.0, curve.scale());
    for (int p = 0; p < g; ++p) {
        for (int l = p + 1; l < g; ++l) {
            if (std::abs(divisor[static_cast<std::size_t>(p)].x - divisor[static_cast<std::size_t>(l)].x) <= tol) {
                throw Error(ErrorCode::RepeatedSupport, "divisor points share an x-coordinate");
            }
        }
    }
    MatrixC jac(g, g);
    for (int p = 0; p < g; ++p) {
        const CurvePoint& P = divisor[static_cast<std::size_t>(p)];
        // elementary symmetric polynomials of the other x's
        std::vector<cplx> s{1.0};
        cplx denom = 1.0;
        for (int l = 0; l < g; ++l) {
            if (l == p) continue;
            const cplx xl = divisor[static_cast<std::size_t>(l)].x;
            s.push_back(0.0);
            for (std::size_t i = s.size() - 1; i >= 1; --i) s[i] += xl * s[i - 1];
            denom *= (P.x - xl);
        }
        for (int n = 0; n < g; ++n) {
            cplx sum = 0.0;
            for (int j = 1; j <= g; ++j) {
                const double sign = (j % 2 == 1) ? 1.0 : -1.0;
                sum += sign * s[static_cast<std::size_t>(j - 1)] * pm.omega(j - 1, n);
            }
            jac(p, n) = -2.0 * P.y * sum / denom;
        }
    }
    return jac;
}

}  // namespace hypertheta
