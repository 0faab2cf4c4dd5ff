#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hypertheta/curve.hpp"

namespace hypertheta {

using MatrixC = Eigen::MatrixXcd;
using VectorC = Eigen::VectorXcd;
using MatrixR = Eigen::MatrixXd;

// Piece of the real axis carrying a fixed branch of y; side +1 is the upper bank.
struct PathSegment {
    double start = 0;
    double end = 0;
    int side = 1;
};

struct CycleTerm {
    PathSegment segment;
    int segment_index = 0;  // elementary segment (e_j, e_{j+1}), 1-based
    double coefficient = 0;
};

struct Cycle {
    std::vector<CycleTerm> terms;
};

struct HomologyBasis {
    std::vector<Cycle> a_cycles;
    std::vector<Cycle> b_cycles;
};

HomologyBasis build_homology(const Curve& curve);

enum class DifferentialKind { First, Second };

// Row j-1 holds the integrals over (e_j, e_{j+1}), column n-1 the differential index n.
struct SegmentTable {
    MatrixC first;
    MatrixC second;
    double max_error = 0;  // achieved relative change under quadrature doubling
    int max_nodes = 0;
};

SegmentTable segment_integral_table(const Curve& curve);
MatrixC segment_integrals(const Curve& curve, DifferentialKind kind);

struct PeriodMatrices {
    MatrixC omega, omega_prime, eta, eta_prime;
    MatrixC tau, kappa;
    double legendre_residual = 0;
    double tau_asym = 0;
    double tau_im_min_eig = 0;
    double kappa_asym = 0;
    double quadrature_error = 0;
    bool b_cycles_flipped = false;

    int genus() const { return static_cast<int>(omega.rows()); }
};

class PeriodError : public Error {
public:
    PeriodError(ErrorCode code, const std::string& what, PeriodMatrices pm)
        : Error(code, what), matrices(std::move(pm)) {}
    PeriodMatrices matrices;
};

// Residual fields and orientation are filled in; throws PeriodError when an invariant fails.
PeriodMatrices period_matrices(const Curve& curve);

// Assembles matrices from a homology basis and segment table without checks.
PeriodMatrices assemble_periods(const Curve& curve, const HomologyBasis& basis, const SegmentTable& table);
void fill_quality(PeriodMatrices& pm);

// Max entry of Omega J Omega^t - 2 pi i J.
double legendre_residual(const PeriodMatrices& pm);

struct CurvePoint {
    cplx x;
    cplx y;
};

struct BranchIndex {
    int k;  // 1..2g+2
};

using DivisorPoint = std::variant<CurvePoint, BranchIndex>;

// Value of y on the upper bank at real x, prod_j sqrt(x - e_j + i0).
cplx upper_sheet_y(const Curve& curve, double x);

// Integral of du from infinity to the point along the upper bank, before normalization.
VectorC abel_integral_u(const Curve& curve, const DivisorPoint& point);

// Sum of normalized integrals v = omega^{-1} u. Branch indices return the exact half-period
// of their characteristic after checking it against the integral.
VectorC abel_map(const Curve& curve, const PeriodMatrices& pm, const std::vector<DivisorPoint>& divisor);

// Distance of w from the lattice Z^g + tau Z^g (max over real coordinates).
double lattice_distance(const PeriodMatrices& pm, const VectorC& w);

// d x_p / d v_n for g finite points with distinct x.
MatrixC abel_jacobian(const Curve& curve, const PeriodMatrices& pm, const std::vector<CurvePoint>& divisor);

// Content hash of the branch points (hex FNV-1a over the IEEE bytes).
std::string curve_hash(const Curve& curve);

void save_period_cache(const std::string& path, const Curve& curve, const PeriodMatrices& pm);
std::optional<PeriodMatrices> load_period_cache(const std::string& path, const Curve& curve);

}  // namespace hypertheta
