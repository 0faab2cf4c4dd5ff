#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypertheta/periods.hpp"

namespace hypertheta {

// Half-integer characteristic [eps' ; eps] with entries in {0,1}.
class Characteristic {
public:
    Characteristic() = default;
    explicit Characteristic(int genus);
    Characteristic(std::vector<std::uint8_t> eps, std::vector<std::uint8_t> eps_prime);

    int genus() const { return static_cast<int>(eps_.size()); }
    const std::vector<std::uint8_t>& eps() const { return eps_; }
    const std::vector<std::uint8_t>& eps_prime() const { return eps_prime_; }
    bool is_zero() const;

    // eps^t eps' mod 2
    int dot() const;

    // Two rows of bits, top eps'^t, bottom eps^t, e.g. "10/00".
    std::string to_string() const;
    static Characteristic from_string(const std::string& text);

    Characteristic operator+(const Characteristic& other) const;
    bool operator==(const Characteristic& other) const = default;
    auto operator<=>(const Characteristic& other) const = default;

private:
    std::vector<std::uint8_t> eps_;
    std::vector<std::uint8_t> eps_prime_;
};

enum class Parity { Even, Odd };
const char* parity_name(Parity p);

// Even iff eps^t eps' is even; calibrated against the symmetry of the theta series.
Parity parity(const Characteristic& c);

Characteristic branch_point_characteristic(int genus, int k);
Characteristic riemann_constant_characteristic(int genus);

// Partition of the branch point indices {1..2g+2}, stored through its finite part F with
// |F| <= g; the part I that carries the formulas is F, plus infinity when g - |F| is even.
class Partition {
public:
    Partition() = default;
    // Accepts any subset of {1..2g+2} and canonicalizes it.
    static Partition from_indices(int genus, std::vector<int> indices);
    static Partition parse(int genus, const std::string& text);

    int genus() const { return genus_; }
    const std::vector<int>& finite_indices() const { return finite_; }
    // Finite indices of the complementary part J.
    std::vector<int> complement_finite() const;
    bool infinity_in_i() const { return dropped() % 2 == 0; }
    // Number of indices dropped from a g-set, k = g - |F|.
    int dropped() const { return genus_ - static_cast<int>(finite_.size()); }
    int multiplicity() const { return (dropped() + 1) / 2; }

    std::string to_string() const;  // "{1,4}"
    bool operator==(const Partition& other) const = default;
    auto operator<=>(const Partition& other) const = default;

private:
    int genus_ = 0;
    std::vector<int> finite_;
};

Characteristic partition_characteristic(const Partition& p);

int max_multiplicity(int genus);
std::vector<Partition> enumerate_partitions(int genus, int multiplicity);
// Closed-form counts C(2g+1,g), C(2g+2,g-1), C(2g+2,g+1-2m).
long long partition_count(int genus, int multiplicity);
long long binomial(int n, int k);

// eps/2 + tau eps'/2
VectorC half_period(const Characteristic& c, const PeriodMatrices& pm);

}  // namespace hypertheta
