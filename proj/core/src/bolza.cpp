#include "hypertheta/bolza.hpp"

#include "hypertheta/error.hpp"

namespace hypertheta {

namespace {

using T = std::vector<DerivTerm>;

DerivTerm d(std::vector<int> labels, double coef = 1.0) { return DerivTerm{coef, std::move(labels)}; }

BolzaFormula make(std::string family, int genus, int finite_size, int degree, double factor, T num, T den,
                  std::string text) {
    return BolzaFormula{std::move(family), genus, finite_size, degree, factor, std::move(num), std::move(den),
                        std::move(text)};
}

std::vector<BolzaFormula> table() {
    std::vector<BolzaFormula> t;
    // genus 2, I = {i}
    t.push_back(make("g2-single", 2, 1, 1, -1, {d({3})}, {d({1})}, "-[3]/[1]"));
    // genus 3, I = {i} with infinity
    t.push_back(make("g3-single", 3, 1, 1, -1, {d({5})}, {d({3})}, "-[5]/[3]"));
    // genus 3, I = {i,k}
    t.push_back(make("g3-pair-sum", 3, 2, 1, -1, {d({3})}, {d({1})}, "-[3]/[1]"));
    t.push_back(make("g3-pair-product", 3, 2, 2, 1, {d({5})}, {d({1})}, "[5]/[1]"));
    // genus 4, I = {i,k} with infinity
    t.push_back(make("g4-pair-sum", 4, 2, 1, -1, {d({5})}, {d({3})}, "-[5]/[3]"));
    t.push_back(make("g4-pair-product", 4, 2, 2, 1, {d({7})}, {d({3})}, "[7]/[3]"));

    // genus 4, I = {i}, second derivatives
    const std::string g4 = "g4-single-m2";
    t.push_back(make(g4, 4, 1, 1, -1, {d({1, 7})}, {d({1, 5})}, "-[1,7]/[1,5]"));
    t.push_back(make(g4, 4, 1, 1, 1, {d({3, 5})}, {d({1, 5})}, "[3,5]/[1,5]"));
    t.push_back(make(g4, 4, 1, 1, -2, {d({3, 5})}, {d({3, 3})}, "-2[3,5]/[3,3]"));
    t.push_back(make(g4, 4, 1, 1, 2, {d({1, 7})}, {d({3, 3})}, "2[1,7]/[3,3]"));
    t.push_back(make(g4, 4, 1, 1, -1, {d({3, 7})}, {d({1, 7})}, "-[3,7]/[1,7]"));
    t.push_back(make(g4, 4, 1, 1, 1, {d({3, 7})}, {d({3, 5})}, "[3,7]/[3,5]"));
    t.push_back(make(g4, 4, 1, 1, -0.5, {d({5, 5})}, {d({3, 5})}, "-1/2[5,5]/[3,5]"));
    t.push_back(make(g4, 4, 1, 1, 0.5, {d({5, 5})}, {d({1, 7})}, "1/2[5,5]/[1,7]"));

    // genus 5, I = {i} with infinity, second derivatives
    const std::string g5 = "g5-single-m2";
    t.push_back(make(g5, 5, 1, 1, -1, {d({3, 9})}, {d({3, 7})}, "-[3,9]/[3,7]"));
    t.push_back(make(g5, 5, 1, 1, 1, {d({5, 7})}, {d({3, 7})}, "[5,7]/[3,7]"));
    t.push_back(make(g5, 5, 1, 1, -2, {d({5, 7})}, {d({5, 5})}, "-2[5,7]/[5,5]"));
    t.push_back(make(g5, 5, 1, 1, 2, {d({3, 9})}, {d({5, 5})}, "2[3,9]/[5,5]"));
    t.push_back(make(g5, 5, 1, 1, -1, {d({5, 9})}, {d({3, 9})}, "-[5,9]/[3,9]"));
    t.push_back(make(g5, 5, 1, 1, 1, {d({5, 9})}, {d({5, 7})}, "[5,9]/[5,7]"));
    t.push_back(make(g5, 5, 1, 1, -0.5, {d({7, 7})}, {d({5, 7})}, "-1/2[7,7]/[5,7]"));
    t.push_back(make(g5, 5, 1, 1, 0.5, {d({7, 7})}, {d({3, 9})}, "1/2[7,7]/[3,9]"));

    // genus 5, I = {i,k}, sum
    const std::string g5s = "g5-pair-sum-m2";
    t.push_back(make(g5s, 5, 2, 1, -1, {d({1, 7})}, {d({1, 5})}, "-[1,7]/[1,5]"));
    t.push_back(make(g5s, 5, 2, 1, 2, {d({1, 7})}, {d({3, 3})}, "2[1,7]/[3,3]"));
    t.push_back(make(g5s, 5, 2, 1, 1, {d({3, 5})}, {d({1, 5})}, "[3,5]/[1,5]"));
    t.push_back(make(g5s, 5, 2, 1, -2, {d({3, 5})}, {d({3, 3})}, "-2[3,5]/[3,3]"));
    t.push_back(make(g5s, 5, 2, 1, 1, {d({5, 5}), d({3, 7})}, {d({1, 7})}, "([5,5]+[3,7])/[1,7]"));
    t.push_back(make(g5s, 5, 2, 1, -1, {d({5, 5}), d({3, 7})}, {d({3, 5})}, "-([5,5]+[3,7])/[3,5]"));
    t.push_back(make(g5s, 5, 2, 1, -1, {d({3, 9})}, {d({1, 9})}, "-[3,9]/[1,9]"));
    t.push_back(make(g5s, 5, 2, 1, 1, {d({5, 7})}, {d({1, 9})}, "[5,7]/[1,9]"));

    // genus 5, I = {i,k}, product
    const std::string g5p = "g5-pair-product-m2";
    t.push_back(make(g5p, 5, 2, 2, 1, {d({1, 9})}, {d({1, 5})}, "[1,9]/[1,5]"));
    t.push_back(make(g5p, 5, 2, 2, -2, {d({1, 9})}, {d({3, 3})}, "-2[1,9]/[3,3]"));
    t.push_back(make(g5p, 5, 2, 2, -0.5, {d({5, 5}), d({3, 7}, 2)}, {d({1, 5})}, "-([5,5]+2[3,7])/(2[1,5])"));
    t.push_back(make(g5p, 5, 2, 2, 1, {d({5, 5}), d({3, 7}, 2)}, {d({3, 3})}, "([5,5]+2[3,7])/[3,3]"));
    t.push_back(make(g5p, 5, 2, 2, 1, {d({3, 9})}, {d({1, 7})}, "[3,9]/[1,7]"));
    t.push_back(make(g5p, 5, 2, 2, -1, {d({3, 9})}, {d({3, 5})}, "-[3,9]/[3,5]"));
    t.push_back(make(g5p, 5, 2, 2, -1, {d({5, 7})}, {d({1, 7})}, "-[5,7]/[1,7]"));
    t.push_back(make(g5p, 5, 2, 2, 1, {d({5, 7})}, {d({3, 5})}, "[5,7]/[3,5]"));
    t.push_back(make(g5p, 5, 2, 2, 1, {d({5, 9})}, {d({1, 9})}, "[5,9]/[1,9]"));
    t.push_back(make(g5p, 5, 2, 2, -0.5, {d({7, 7})}, {d({1, 9})}, "-[7,7]/(2[1,9])"));
    t.push_back(make(g5p, 5, 2, 2, -2, {d({5, 9})}, {d({5, 5}), d({3, 7}, 2)}, "-2[5,9]/([5,5]+2[3,7])"));
    t.push_back(make(g5p, 5, 2, 2, 1, {d({7, 7})}, {d({5, 5}), d({3, 7}, 2)}, "[7,7]/([5,5]+2[3,7])"));

    // genus 6, I = {i}, third derivatives
    t.push_back(make("g6-single-m3", 6, 1, 1, -1, {d({1, 5, 11})}, {d({1, 5, 9})}, "-[1,5,11]/[1,5,9]"));
    return t;
}

}  // namespace

cplx evaluate_terms(const DerivativeTensor& tu, const std::vector<DerivTerm>& terms) {
    cplx sum = 0;
    for (const auto& term : terms) {
        if (static_cast<int>(term.labels.size()) != tu.order()) {
            throw Error(ErrorCode::InvalidArgument, "derivative term order does not match the tensor");
        }
        std::vector<int> idx;
        for (int l : term.labels) idx.push_back((l - 1) / 2);
        sum += term.coef * tu.at(idx);
    }
    return sum;
}

cplx evaluate_bolza(const BolzaFormula& f, const DerivativeTensor& tu) {
    const cplx den = evaluate_terms(tu, f.den);
    if (std::abs(den) < 1e-9 * tu.max_abs()) {
        throw Error(ErrorCode::SmallDenominator, "denominator of " + f.text + " vanishes");
    }
    return f.factor * evaluate_terms(tu, f.num) / den;
}

std::vector<BolzaFormula> bolza_formulas(int genus) {
    std::vector<BolzaFormula> out;
    for (auto& f : table()) {
        if (genus == 0 || f.genus == genus) out.push_back(std::move(f));
    }
    return out;
}

std::vector<ConstantFormula> constant_formulas(int genus) {
    std::vector<ConstantFormula> out;
    switch (genus) {
        case 2: out.push_back({"-[3]", 2, {d({3}, -1)}}); break;
        case 3:
            out.push_back({"[1,5]", 3, {d({1, 5})}});
            out.push_back({"-1/2[3,3]", 3, {d({3, 3}, -0.5)}});
            break;
        case 4:
            out.push_back({"[3,7]", 4, {d({3, 7})}});
            out.push_back({"-1/2[5,5]", 4, {d({5, 5}, -0.5)}});
            break;
        case 5:
            out.push_back({"[1,5,9]", 5, {d({1, 5, 9})}});
            out.push_back({"-1/2[1,7,7]", 5, {d({1, 7, 7}, -0.5)}});
            out.push_back({"-1/2[3,3,9]", 5, {d({3, 3, 9}, -0.5)}});
            out.push_back({"1/2[3,5,7]", 5, {d({3, 5, 7}, 0.5)}});
            out.push_back({"-1/6[5,5,5]", 5, {d({5, 5, 5}, -1.0 / 6.0)}});
            break;
        default: out.push_back(directional_constant_formula(genus)); break;
    }
    return out;
}

ConstantFormula directional_constant_formula(int genus) {
    if (genus < 1) throw Error(ErrorCode::InvalidArgument, "genus must be positive");
    ConstantFormula f;
    f.genus = genus;
    DerivTerm term;
    const int count = (genus + 1) / 2;
    int c = (genus % 2 == 1) ? 1 : 2;
    for (int i = 0; i < count; ++i, c += 2) term.labels.push_back(2 * c - 1);
    f.name = "[";
    for (std::size_t i = 0; i < term.labels.size(); ++i) {
        f.name += (i ? "," : "") + std::to_string(term.labels[i]);
    }
    f.name += "]";
    f.terms.push_back(term);
    return f;
}

}  // namespace hypertheta
