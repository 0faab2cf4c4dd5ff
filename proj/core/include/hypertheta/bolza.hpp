#pragma once

#include <string>
#include <vector>

#include "hypertheta/tensor.hpp"

namespace hypertheta {

// coef * d^m theta / du_{l_1} ... du_{l_m}, labels odd (u_1, u_3, ...).
struct DerivTerm {
    double coef = 1.0;
    std::vector<int> labels;
};

// factor * (sum num) / (sum den), evaluated on the u-basis derivative tensor of theta[I].
struct BolzaFormula {
    std::string family;
    int genus = 0;
    int finite_size = 0;    // |I| over finite indices
    int target_degree = 1;  // recovers s_{target_degree}(I)
    double factor = 1.0;
    std::vector<DerivTerm> num;
    std::vector<DerivTerm> den;
    std::string text;
};

cplx evaluate_terms(const DerivativeTensor& tu, const std::vector<DerivTerm>& terms);
cplx evaluate_bolza(const BolzaFormula& f, const DerivativeTensor& tu);

// Closed-form ratio families for the given genus (all tabulated families when genus is 0).
std::vector<BolzaFormula> bolza_formulas(int genus = 0);

// Expressions of C_g (up to an eighth root) in derivatives of theta[{}] at zero.
struct ConstantFormula {
    std::string name;
    int genus = 0;
    std::vector<DerivTerm> terms;
};

std::vector<ConstantFormula> constant_formulas(int genus);
// The single directional derivative along u_{2c-1}, c = 1 or 2 step 2, floor((g+1)/2) slots.
ConstantFormula directional_constant_formula(int genus);

}  // namespace hypertheta
