#include "hypertheta/tensor.hpp"

#include <algorithm>
#include <string>

namespace hypertheta {

const char* basis_name(TensorBasis b) { return b == TensorBasis::V ? "v" : "u"; }

std::vector<std::vector<int>> sorted_multi_indices(int genus, int order) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(order), 0);
    if (order == 0) {
        out.push_back({});
        return out;
    }
    while (true) {
        out.push_back(cur);
        int pos = order - 1;
        while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == genus - 1) --pos;
        if (pos < 0) break;
        const int next = cur[static_cast<std::size_t>(pos)] + 1;
        for (int i = pos; i < order; ++i) cur[static_cast<std::size_t>(i)] = next;
    }
    return out;
}

DerivativeTensor::DerivativeTensor(int genus, int order, TensorBasis basis)
    : genus_(genus), order_(order), basis_(basis), keys_(sorted_multi_indices(genus, order)) {
    values_.assign(keys_.size(), cplx(0, 0));
    std::size_t dense = 1;
    for (int i = 0; i < order; ++i) dense *= static_cast<std::size_t>(genus);
    dense_to_key_.assign(dense, 0);
    std::vector<int> idx(static_cast<std::size_t>(order));
    for (std::size_t d = 0; d < dense; ++d) {
        std::size_t rest = d;
        for (int i = order - 1; i >= 0; --i) {
            idx[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(genus));
            rest /= static_cast<std::size_t>(genus);
        }
        std::vector<int> sorted = idx;
        std::sort(sorted.begin(), sorted.end());
        dense_to_key_[d] = static_cast<std::size_t>(
            std::lower_bound(keys_.begin(), keys_.end(), sorted) - keys_.begin());
    }
}

std::size_t DerivativeTensor::position(const std::vector<int>& idx) const {
    if (static_cast<int>(idx.size()) != order_) {
        throw Error(ErrorCode::InvalidArgument, "multi-index length does not match tensor order");
    }
    std::size_t d = 0;
    for (int i : idx) {
        if (i < 0 || i >= genus_) throw Error(ErrorCode::InvalidArgument, "direction out of range");
        d = d * static_cast<std::size_t>(genus_) + static_cast<std::size_t>(i);
    }
    return dense_to_key_[d];
}

cplx& DerivativeTensor::at(const std::vector<int>& idx) { return values_[position(idx)]; }
cplx DerivativeTensor::at(const std::vector<int>& idx) const { return values_[position(idx)]; }

double DerivativeTensor::max_abs() const {
    double m = 0;
    for (const cplx& z : values_) m = std::max(m, std::abs(z));
    return m;
}

std::size_t DerivativeTensor::argmax() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values_.size(); ++i) {
        if (std::abs(values_[i]) > std::abs(values_[best])) best = i;
    }
    return best;
}

DerivativeTensor contract_all(const DerivativeTensor& t, const MatrixC& m, TensorBasis basis) {
    const int g = t.genus(), order = t.order();
    DerivativeTensor out(g, order, basis);
    // Full expansion of t, then one slot at a time.
    std::size_t dense = 1;
    for (int i = 0; i < order; ++i) dense *= static_cast<std::size_t>(g);
    std::vector<cplx> full(dense);
    std::vector<int> idx(static_cast<std::size_t>(order));
    auto unpack = [&](std::size_t d) {
        for (int i = order - 1; i >= 0; --i) {
            idx[static_cast<std::size_t>(i)] = static_cast<int>(d % static_cast<std::size_t>(g));
            d /= static_cast<std::size_t>(g);
        }
    };
    for (std::size_t d = 0; d < dense; ++d) {
        unpack(d);
        full[d] = t.at(idx);
    }
    std::size_t stride = 1;
    for (int slot = order - 1; slot >= 0; --slot) {
        std::vector<cplx> next(dense, cplx(0, 0));
        for (std::size_t d = 0; d < dense; ++d) {
            const int a = static_cast<int>((d / stride) % static_cast<std::size_t>(g));
            const std::size_t base = d - static_cast<std::size_t>(a) * stride;
            cplx s = 0;
            for (int i = 0; i < g; ++i) s += full[base + static_cast<std::size_t>(i) * stride] * m(i, a);
            next[d] = s;
        }
        full.swap(next);
        stride *= static_cast<std::size_t>(g);
    }
    for (std::size_t k = 0; k < out.keys().size(); ++k) {
        std::size_t d = 0;
        for (int i : out.keys()[k]) d = d * static_cast<std::size_t>(g) + static_cast<std::size_t>(i);
        out.values()[k] = full[d];
    }
    return out;
}

DerivativeTensor to_u_basis(const DerivativeTensor& t, const MatrixC& omega) {
    if (t.basis() != TensorBasis::V) throw Error(ErrorCode::InvalidArgument, "tensor is already in u-basis");
    const MatrixC inv = omega.inverse();
    return contract_all(t, inv, TensorBasis::U);
}

DerivativeTensor to_u_basis(const DerivativeTensor& t, const PeriodMatrices& pm) {
    return to_u_basis(t, pm.omega);
}

std::string direction_label(TensorBasis basis, const std::vector<int>& idx) {
    std::string s;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) s += ',';
        s += basis == TensorBasis::U ? "u" + std::to_string(2 * idx[i] + 1) : "v" + std::to_string(idx[i] + 1);
    }
    return s;
}

}  // namespace hypertheta
