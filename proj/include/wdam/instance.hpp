#pragma once

#include "wdam/box.hpp"
#include "wdam/polynomial.hpp"
#include "wdam/rational.hpp"

#include <vector>

namespace wdam {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OrderingViolated : ValidationError {
    using ValidationError::ValidationError;
};
struct TailSumTooLarge : ValidationError {
    using ValidationError::ValidationError;
};
struct NonPositiveWeight : ValidationError {
    using ValidationError::ValidationError;
};
struct OutOfDomain : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Weight vector tau split into d manifold coordinates and m codimension
// coordinates, n = d + m. Construction goes through validate_weights.
struct WeightVector {
    unsigned d = 0;
    unsigned m = 0;
    std::vector<Rat> taus;  // size n, tau_1 ... tau_n

    unsigned n() const { return d + m; }

    const Rat& tau(unsigned i) const { return taus.at(i - 1); }  // 1-based

    Rat tail_sum() const {
        Rat s(0);
        for (unsigned j = 1; j <= m; ++j) s += taus[d + j - 1];
        return s;
    }

    Rat total_sum() const {
        Rat s(0);
        for (const auto& t : taus) s += t;
        return s;
    }
};

// Checks positivity, weak decrease on the first d weights with tau_d
// dominating the tail, and tail sum < 1.
WeightVector validate_weights(const std::vector<Rat>& taus, unsigned d, unsigned m);

// Monge-parameterized manifold {(x, f(x)) : x in domain} with polynomial f.
struct ManifoldSpec {
    unsigned d = 0;
    unsigned m = 0;
    RationalBox domain;                 // subset of R^d
    std::vector<Polynomial> components; // f_1 ... f_m, each in d variables
};

struct DerivativeBounds {
    Rat C;  // >= sup of all |second partials| over the domain
    Rat D;  // >= sup of all |first partials| over the domain
};

// Exact evaluation f(x); throws OutOfDomain when x is outside the box.
std::vector<Rat> eval_f(const ManifoldSpec& spec, const std::vector<Rat>& x);

// First partials: [j][i] = d f_j / d x_i.
std::vector<std::vector<Polynomial>> first_partials(const ManifoldSpec& spec);

// Second partials: [j][i][k] = d^2 f_j / (d x_i d x_k).
std::vector<std::vector<std::vector<Polynomial>>> second_partials(const ManifoldSpec& spec);

// (C, D) via interval arithmetic over the domain box.
DerivativeBounds derivative_bounds(const ManifoldSpec& spec);

}  // namespace wdam
