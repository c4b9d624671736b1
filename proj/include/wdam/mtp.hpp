#pragma once

#include "wdam/rational.hpp"

#include <set>
#include <vector>

namespace wdam {

struct LevelNotInCandidateSet : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The (a, t) exponent input of the rectangles-to-rectangles mass transference
// bound: a_k > 0, t_k >= 0, kappa coordinates.
struct ExponentPair {
    std::vector<Rat> a;
    std::vector<Rat> t;

    unsigned kappa() const { return static_cast<unsigned>(a.size()); }

    static ExponentPair make(std::vector<Rat> a, std::vector<Rat> t);
};

// Partition of {1,...,kappa} at level A:
//   K1 = {k : a_k >= A},  K2 = {k : a_k + t_k <= A} \ K1,  K3 = rest.
struct LevelPartition {
    Rat level;
    std::vector<unsigned> k1, k2, k3;  // 1-based indices
};

// Distinct values of {a_k} union {a_k + t_k}, descending.
std::vector<Rat> candidate_levels(const ExponentPair& ep);

LevelPartition partition(const ExponentPair& ep, const Rat& level);

// |K1| + |K2| + (sum_{K3} a_k - sum_{K2} t_k) / A, exact.
Rat dimension_number(const ExponentPair& ep, const Rat& level);

struct MtpBound {
    Rat value;
    Rat argmin_level;  // largest level attaining the minimum
};

// Minimum of dimension_number over all candidate levels.
MtpBound mtp_lower_bound(const ExponentPair& ep);

}  // namespace wdam
