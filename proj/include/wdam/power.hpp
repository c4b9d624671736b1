#pragma once

#include "wdam/rational.hpp"

#include <utility>
#include <vector>

namespace wdam {

// Exact product of rational powers:  prod_k base_k ^ e_k  with base_k > 0 and
// e_k rational. Comparisons between two such products are decided by raising
// both sides to the lcm of all exponent denominators, which turns every
// exponent into an integer and reduces the question to a rational comparison.
// This is the single comparison rule used for every inequality involving
// 4^(m/d), q^tau, or Q^(a_i - 1).
class PowerProduct {
public:
    PowerProduct() = default;

    static PowerProduct one() { return PowerProduct{}; }

    static PowerProduct of(const Rat& base, const Rat& exponent) {
        PowerProduct p;
        p.mul(base, exponent);
        return p;
    }

    static PowerProduct from_rational(const Rat& value) {
        return of(value, Rat(1));
    }

    PowerProduct& mul(const Rat& base, const Rat& exponent) {
        if (base <= 0) throw std::domain_error("PowerProduct base must be positive");
        if (base != 1 && exponent != 0) factors_.emplace_back(base, exponent);
        return *this;
    }

    PowerProduct& mul(const PowerProduct& other) {
        for (const auto& [b, e] : other.factors_) mul(b, e);
        return *this;
    }

    PowerProduct& mul_inverse(const PowerProduct& other) {
        for (const auto& [b, e] : other.factors_) mul(b, -e);
        return *this;
    }

    // Three-way comparison: -1, 0, +1 for <, =, >.
    int compare(const PowerProduct& other) const;

    int compare(const Rat& value) const {
        if (value <= 0) return 1;  // the product is always positive
        return compare(from_rational(value));
    }

    bool operator<(const PowerProduct& o) const { return compare(o) < 0; }
    bool operator<=(const PowerProduct& o) const { return compare(o) <= 0; }
    bool less_than(const Rat& v) const { return compare(v) < 0; }
    bool greater_than(const Rat& v) const { return compare(v) > 0; }

    // Rational enclosure [lower_bound, upper_bound] of the exact value,
    // used only to seed integer candidate windows that are then verified
    // with exact comparisons.
    Rat upper_bound() const;
    Rat lower_bound() const;

    // Exact rational value when all exponents are integers; nullopt otherwise.
    std::optional<Rat> as_rational() const;

private:
    // Raises the product to the power raise_to (which must clear all exponent
    // denominators) and returns the resulting exact rational.
    Rat raised(const Int& raise_to) const;

    Int exponent_denominator_lcm() const;

    std::vector<std::pair<Rat, Rat>> factors_;
};

}  // namespace wdam
