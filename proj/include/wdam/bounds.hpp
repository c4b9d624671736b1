#pragma once

#include "wdam/instance.hpp"
#include "wdam/mtp.hpp"

#include <optional>

namespace wdam {

struct IndexOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CaseTag { Case1, Case2, TrivialRegime };

// The MTP exponent choice for a weight vector: either the uniform Case 1
// exponents, or the Case 2 exponents with threshold index K, or the trivial
// regime (sum of all weights <= 1) where no exponents with min a_i > 1 exist.
struct ExponentSelection {
    CaseTag case_tag = CaseTag::TrivialRegime;
    unsigned K = 0;  // meaningful only for Case 2
    std::vector<Rat> a;
    std::vector<Rat> t;
    Rat quotient;  // (1 - tail - (tau_{K+1}+...+tau_d))/K in Case 2, (1 - tail)/d in Case 1

    bool trivial() const { return case_tag == CaseTag::TrivialRegime; }

    ExponentPair exponent_pair() const { return ExponentPair::make(a, t); }

    // Indices i whose level 1 + tau_i carries the closed-form minimand:
    // 1..d in Case 1, 1..K in Case 2.
    unsigned active_index_count(unsigned d) const {
        return case_tag == CaseTag::Case2 ? K : d;
    }
};

struct BoundReport {
    std::vector<Rat> per_index_values;
    Rat theorem_min;
    Rat effective_bound;  // min(d, theorem_min)
    Rat mtp_min;
    std::optional<Rat> mtp_argmin_level;
    bool trivial_regime = false;
    bool blw_condition_holds = false;
    bool improvement_flag = false;  // valid here but outside the BLW condition
    ExponentSelection selection;
};

// (n+1+sum_{k=i}^{n}(tau_i - tau_k))/(tau_i + 1) - m for 1 <= i <= d.
Rat theorem1_per_index(const WeightVector& w, unsigned i);

struct Theorem1Bound {
    Rat theorem_min;
    Rat effective_bound;
    bool trivial_regime;
};

Theorem1Bound theorem1_bound(const WeightVector& w);

// tau_d >= max{ tail weights, (1 - tail sum)/d } ?
bool blw_condition_holds(const WeightVector& w);

ExponentSelection select_exponents(const WeightVector& w);

BoundReport full_report(const WeightVector& w);

}  // namespace wdam
