#pragma once

#include "wdam/instance.hpp"
#include "wdam/power.hpp"

#include <optional>
#include <vector>

namespace wdam {

struct PointOnBoundary : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integer tuple (p_1,...,p_n, q) certifying the weighted Dirichlet systems.
struct DirichletWitness {
    std::vector<Int> p;  // size n = d + m
    Int q;
};

struct SearchBudget {
    Int Q;      // Dirichlet horizon for the one-shot system
    Int q_max;  // scan limit for the infinitude variant
};

// Certificate that every integer Q >= Q0 satisfies
//   max_i 4^(m/d) / Q^(a_i - 1)  <  min{ 1, r, (1/(2 C d^2))^(1/2) }.
// The square root never materializes: the threshold is kept squared and the
// comparison is performed on squares.
struct QSetCertificate {
    Int Q0;
    Rat r;             // distance from x to the boundary of the domain box
    Rat threshold_sq;  // min{1, r^2, 1/(2 C d^2)} (last term absent when C = 0)
};

QSetCertificate q0_bound(const ManifoldSpec& spec, const std::vector<Rat>& x,
                         const std::vector<Rat>& a);

// Exhaustive search for the smallest witness (in (q, lexicographic p) order)
// of the one-shot Dirichlet system at horizon Q. nullopt = NotFound.
std::optional<DirichletWitness> find_witness(const ManifoldSpec& spec,
                                             const std::vector<Rat>& x,
                                             const WeightVector& w,
                                             const std::vector<Rat>& a, const Int& Q);

// All witnesses of the infinitude-variant system with q <= q_max, sorted by
// (q, lexicographic p).
std::vector<DirichletWitness> enumerate_witnesses(const ManifoldSpec& spec,
                                                  const std::vector<Rat>& x,
                                                  const WeightVector& w,
                                                  const std::vector<Rat>& a,
                                                  const Int& q_max);

// Re-derives every inequality of the one-shot system from scratch for an
// alleged witness; used as the independent soundness check.
bool verify_witness(const ManifoldSpec& spec, const std::vector<Rat>& x,
                    const WeightVector& w, const std::vector<Rat>& a, const Int& Q,
                    const DirichletWitness& wit);

// Q^e with rational e; the 4-powers of the Minkowski right-hand-side product
// cancel exactly, so only a power of Q survives.
struct SymbolicPower {
    Int base;
    Rat exponent;

    bool is_one() const { return base == 1 || exponent == 0; }

    // Exact rational value when it exists (integer exponent, base 1, or an
    // exact root); nullopt when the value is irrational.
    std::optional<Rat> as_rational() const;
};

// Product of the right-hand sides of the Minkowski system times Q,
// computed symbolically: equals Q^(1 - sum(a_i - 1) - tail sum).
SymbolicPower minkowski_product(const WeightVector& w, const std::vector<Rat>& a,
                                const Int& Q);

// Determinant of the (n+1)x(n+1) Minkowski matrix at x; throws if |det| != 1.
Int minkowski_matrix_det(const ManifoldSpec& spec, const std::vector<Rat>& x);

// Lagrange-form Taylor remainder estimate:
// |f_j(x') - f_j(x) - grad f_j(x).(x'-x)| <= C d^2 (max_i |x'_i - x_i|)^2 / 2.
bool taylor_remainder_check(const ManifoldSpec& spec, const std::vector<Rat>& x,
                            const std::vector<Rat>& x_prime, const Rat& C);

}  // namespace wdam
