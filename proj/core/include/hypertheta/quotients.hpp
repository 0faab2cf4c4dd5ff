#pragma once

#include <random>
#include <string>
#include <vector>

#include "hypertheta/theta.hpp"

namespace hypertheta {

// g finite points with distinct real x in the gaps between branch points, |y| >= 1e-3 scale,
// each on a random sheet.
std::vector<CurvePoint> random_divisor(const Curve& curve, std::mt19937_64& rng);

enum class QuotientIdentity { Lemma, Multiple, Subset };
const char* quotient_identity_name(QuotientIdentity q);

struct QuotientSample {
    QuotientIdentity identity = QuotientIdentity::Lemma;
    std::vector<int> k_set;
    cplx lhs;
    cplx rhs;
    // | |lhs / rhs| - 1 |
    double modulus_error() const { return std::abs(std::abs(lhs / rhs) - 1.0); }
};

// Abel image of the divisor shifted by the Riemann constant vector.
VectorC shifted_abel_image(const Curve& curve, const PeriodMatrices& pm, const std::vector<CurvePoint>& divisor);

// theta[eps_k]^2 / theta^2 against prod (e_k - x_i) / sqrt(f'(e_k)).
QuotientSample lemma_quotient(const ThetaContext& ctx, const Curve& curve, const PeriodMatrices& pm,
                              const std::vector<CurvePoint>& divisor, const VectorC& w, int k);

// theta[sum eps_kappa] theta^{k-1} / prod theta[eps_kappa] against the y / phi_K determinant form, |K| >= 2.
QuotientSample multiple_quotient(const ThetaContext& ctx, const Curve& curve, const PeriodMatrices& pm,
                                 const std::vector<CurvePoint>& divisor, const VectorC& w,
                                 const std::vector<int>& k_set);

// theta[sum eps_kappa] / theta against Phi_K / Delta[x] / (prod (e_kappa - e_j))^{1/4}, 1 <= |K| <= g.
QuotientSample subset_quotient(const ThetaContext& ctx, const Curve& curve, const PeriodMatrices& pm,
                               const std::vector<CurvePoint>& divisor, const VectorC& w,
                               const std::vector<int>& k_set);

// Throws SpecialDivisor when theta at the shifted image is negligible against its dominant term.
void require_nonspecial(const ThetaContext& ctx, const VectorC& w);

}  // namespace hypertheta
