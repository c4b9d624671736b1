#pragma once

#include "wdam/dirichlet.hpp"
#include "wdam/instance.hpp"
#include "wdam/power.hpp"

#include <cstdint>
#include <vector>

namespace wdam {

struct PreconditionViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MisalignedGrid : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GridTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One rational center p/q of a rectangle; p has d coordinates.
struct WitnessEntry {
    std::vector<Int> p;
    Int q;
};

// N(f, tau): rational points p/q in the domain with ||q f_j(p/q)|| below the
// per-component nearest-integer threshold 1/(2 q^tau_{d+j}).
struct WitnessSet {
    Int horizon;
    std::vector<WitnessEntry> entries;  // sorted by (q, lexicographic p)
};

WitnessSet build_witness_set(const ManifoldSpec& spec, const WeightVector& w, const Int& Q);

// Membership re-check for a single candidate entry, via the plain mpq path
// rather than the scaled-integer scan.
bool witness_set_member(const ManifoldSpec& spec, const WeightVector& w,
                        const WitnessEntry& entry);

struct CPrimeCertificate {
    Rat c_prime;
    Int q_min;
};

// c' = 1/(8 D d) when D > 0 (else 1); q_min = least q with
// C c'^2 d^2 / 2 < q^(1+tau_d) / 4.
CPrimeCertificate choose_c_prime(const DerivativeBounds& bounds, unsigned d, const Rat& tau_d);

// Checks ||q f_j(x)|| < q^(-tau_{d+j}) for all j, given that x lies in the
// shrunken rectangle of the entry and q >= q_min. A false return on valid
// input falsifies the containment chain and must be surfaced by the caller.
bool verify_containment_sample(const ManifoldSpec& spec, const WeightVector& w,
                               const CPrimeCertificate& cert, const WitnessEntry& entry,
                               const std::vector<Rat>& x);

enum class RectangleKind {
    DirichletC,   // half-sides 4^(m/d) / q^(a_i)
    TargetCPrime  // half-sides c' / q^(1 + tau_i)
};

// Family of aligned rectangles centered at witness entries, clipped to the
// domain box when counted. Half-sides are kept symbolic:
//   scale * 4^(four_exponent) / q^(axis_exponents[i]).
struct RectangleFamily {
    RectangleKind kind;
    RationalBox domain;
    Rat scale;
    Rat four_exponent;
    std::vector<Rat> axis_exponents;
    std::vector<WitnessEntry> rectangles;

    PowerProduct half_side(size_t axis, const Int& q) const {
        PowerProduct h = PowerProduct::of(scale, Rat(1));
        if (four_exponent != 0) h.mul(Rat(4), four_exponent);
        h.mul(Rat(q), -axis_exponents[axis]);
        return h;
    }
};

RectangleFamily make_dirichlet_family(const ManifoldSpec& spec, const std::vector<Rat>& a,
                                      const WitnessSet& ws);

RectangleFamily make_target_family(const ManifoldSpec& spec, const WeightVector& w,
                                   const Rat& c_prime, const WitnessSet& ws);

struct CoverageReport {
    Rat delta;
    Rat fraction;  // exact
    Int horizon;
};

inline constexpr std::uint64_t kDefaultCellBudget = 1u << 27;

// Fraction of delta-grid cells of the domain whose interior meets the union
// of (clipped) rectangles. delta must divide every side length evenly.
CoverageReport coverage_fraction(const RectangleFamily& family, const Rat& delta,
                                 const Int& horizon,
                                 std::uint64_t cell_budget = kDefaultCellBudget);

// Number of delta-cells meeting the union.
std::uint64_t box_count(const RectangleFamily& family, const Rat& delta,
                        std::uint64_t cell_budget = kDefaultCellBudget);

struct DimensionEstimate {
    double slope;
    double residual_norm;
    // Box-count slopes converge slowly; this is a diagnostic, not a certified
    // dimension value.
    static constexpr const char* kCaveat = "heuristic - slow convergence expected";
};

// Least-squares slope of log N against log(1/delta); needs >= 3 distinct deltas.
DimensionEstimate dimension_estimate(const std::vector<std::pair<Rat, std::uint64_t>>& counts);

// Graph lift x -> (x, f(x)) and the projection back onto the first d coords.
std::vector<Rat> lift_to_manifold(const ManifoldSpec& spec, const std::vector<Rat>& x);
std::vector<Rat> project_to_base(const ManifoldSpec& spec, const std::vector<Rat>& point);

}  // namespace wdam
