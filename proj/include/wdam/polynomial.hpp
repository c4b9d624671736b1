#pragma once

#include "wdam/box.hpp"
#include "wdam/rational.hpp"

#include <map>
#include <vector>

namespace wdam {

// Multivariate polynomial with exact rational coefficients, stored sparsely
// as exponent-multi-index -> coefficient.
class Polynomial {
public:
    using MultiIndex = std::vector<unsigned>;

    explicit Polynomial(unsigned nvars) : nvars_(nvars) {}

    static Polynomial constant(unsigned nvars, const Rat& c) {
        Polynomial p(nvars);
        p.add_term(c, MultiIndex(nvars, 0));
        return p;
    }

    unsigned nvars() const { return nvars_; }

    void add_term(const Rat& coeff, const MultiIndex& exponents);

    const std::map<MultiIndex, Rat>& terms() const { return terms_; }

    unsigned total_degree() const;

    Rat eval(const std::vector<Rat>& x) const;

    Polynomial partial(unsigned var) const;

    // Upper bound for sup_{x in box} |p(x)| via interval arithmetic.
    // Over-approximation is fine for every caller.
    Rat abs_bound_on(const RationalBox& box) const;

    // Integer-scaled evaluation at the rational point (p_1/q, ..., p_d/q):
    // returns N with  poly(p/q) = N / (coeff_denominator_lcm() * q^scale_degree)
    // where scale_degree >= total_degree(). Hot path of the witness scan.
    Int eval_scaled(const std::vector<Int>& p, const Int& q, unsigned scale_degree) const;

    // lcm of all coefficient denominators.
    Int coeff_denominator_lcm() const;

private:
    unsigned nvars_;
    std::map<MultiIndex, Rat> terms_;
};

}  // namespace wdam
