#pragma once

#include <complex>
#include <vector>

#include "hypertheta/periods.hpp"

namespace hypertheta {

enum class TensorBasis { V, U };
const char* basis_name(TensorBasis b);

// Non-decreasing multi-indices of length m over 0..g-1, in lexicographic order.
std::vector<std::vector<int>> sorted_multi_indices(int genus, int order);

// Fully symmetric tensor stored by sorted multi-index (0-based directions).
class DerivativeTensor {
public:
    DerivativeTensor() = default;
    DerivativeTensor(int genus, int order, TensorBasis basis);

    int genus() const { return genus_; }
    int order() const { return order_; }
    TensorBasis basis() const { return basis_; }
    const std::vector<std::vector<int>>& keys() const { return keys_; }
    std::vector<cplx>& values() { return values_; }
    const std::vector<cplx>& values() const { return values_; }

    // Any permutation of a key addresses the same entry.
    cplx& at(const std::vector<int>& idx);
    cplx at(const std::vector<int>& idx) const;
    // Scalar of an order-0 tensor.
    cplx scalar() const { return values_.at(0); }

    double max_abs() const;
    std::size_t argmax() const;

private:
    std::size_t position(const std::vector<int>& idx) const;

    int genus_ = 0;
    int order_ = 0;
    TensorBasis basis_ = TensorBasis::V;
    std::vector<std::vector<int>> keys_;
    std::vector<cplx> values_;
    std::vector<std::size_t> dense_to_key_;
};

// T'[a_1..a_m] = sum_i T[i_1..i_m] prod_k M(i_k, a_k)
DerivativeTensor contract_all(const DerivativeTensor& t, const MatrixC& m, TensorBasis basis);

// Chain rule for v = omega^{-1} u on every slot.
DerivativeTensor to_u_basis(const DerivativeTensor& t, const PeriodMatrices& pm);
DerivativeTensor to_u_basis(const DerivativeTensor& t, const MatrixC& omega);

// Label of a direction: u_{2c+1} for 0-based component c.
std::string direction_label(TensorBasis basis, const std::vector<int>& idx);

}  // namespace hypertheta
