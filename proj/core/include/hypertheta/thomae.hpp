#pragma once

#include <vector>

#include "hypertheta/characteristics.hpp"
#include "hypertheta/tensor.hpp"

namespace hypertheta {

// s_0..s_n of a set of branch points; s_l = 0 outside 0..n.
struct SymmetricTable {
    std::vector<int> source;
    std::vector<double> values;
    double s(int l) const {
        return (l < 0 || l >= static_cast<int>(values.size())) ? 0.0 : values[static_cast<std::size_t>(l)];
    }
};

std::vector<double> elementary_symmetric_values(const std::vector<double>& xs);
// Infinity is skipped.
SymmetricTable elementary_symmetric(const Curve& curve, const std::vector<int>& indices);

// prod_{i>l} (e_i - e_l) over ascending indices; infinity is skipped.
double vandermonde(const Curve& curve, const std::vector<int>& indices);

// Principal (det omega / pi^g)^{1/2}.
cplx det_factor(const PeriodMatrices& pm);

// (det omega / pi^g)^{1/2} Delta^{1/4}
cplx curve_constant(const Curve& curve, const PeriodMatrices& pm);

// (det omega / pi^g)^{1/2} Delta(I)^{1/4} Delta(J)^{1/4}
cplx thomae_prefactor(const Curve& curve, const PeriodMatrices& pm, const Partition& p);

cplx first_thomae_rhs(const Partition& p, const PeriodMatrices& pm, const Curve& curve);
VectorC second_thomae_rhs(const Partition& p, const PeriodMatrices& pm, const Curve& curve);

// K-sets of the size k = g - |I| drawn from the finite part of J, lexicographic; with both_sizes
// also the sets of the other cardinality among 2m-1, 2m.
std::vector<std::vector<int>> admissible_k_sets(const Partition& p, bool both_sizes = false);
std::vector<int> default_k_set(const Partition& p);

// Combinatorial sum of the general formula for every sorted multi-index, without prefactor.
DerivativeTensor general_thomae_sum(const Curve& curve, const MatrixC& omega, const Partition& p,
                                    const std::vector<int>& k_set);

// The same sum for any K in J of size 2m-1 or 2m, without the size rule tied to the partition.
DerivativeTensor literal_thomae_sum(const Curve& curve, const MatrixC& omega, const Partition& p,
                                    const std::vector<int>& k_set);

struct ThomaeRhs {
    cplx scalar_prefactor;
    DerivativeTensor tensor_part;
    std::vector<int> k_set;
    DerivativeTensor value() const;
};

ThomaeRhs general_thomae(const Curve& curve, const PeriodMatrices& pm, const Partition& p,
                         const std::vector<int>& k_set);
cplx general_thomae_rhs(const Partition& p, const std::vector<int>& k_set, const std::vector<int>& multi_index,
                        const PeriodMatrices& pm, const Curve& curve);

// Branch-point tensor S of order m in u-basis: m=0 scalar 1, m=1 the second-formula vector,
// m=2 the S matrix, m=3 the S tensor.
DerivativeTensor s_structure(const Partition& p, const Curve& curve);
MatrixR s_matrix(const Partition& p, const Curve& curve);
DerivativeTensor s_tensor(const Partition& p, const Curve& curve);

// Same tensors from explicit values of s_l and k, independent of a curve.
DerivativeTensor s_structure_from(int genus, int order, int dropped, const std::vector<double>& s);

// Contraction S -> omega^t S omega (each slot).
DerivativeTensor s_structure_v(const Partition& p, const Curve& curve, const MatrixC& omega);

cplx theta_product_rhs(const Curve& curve, const PeriodMatrices& pm);
// log |theta_product_rhs|, safe from overflow in higher genus.
double log_abs_theta_product_rhs(const Curve& curve, const PeriodMatrices& pm);

// Estimates of s_1..s_{|I|} from a u-basis derivative tensor of order m.
std::vector<cplx> bolza_symmetric(const DerivativeTensor& tu, const Partition& p);

}  // namespace hypertheta
