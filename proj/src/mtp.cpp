#include "wdam/mtp.hpp"

#include <algorithm>

namespace wdam {

ExponentPair ExponentPair::make(std::vector<Rat> a, std::vector<Rat> t) {
    if (a.empty() || a.size() != t.size())
        throw std::invalid_argument("a and t must be non-empty and equally sized");
    for (const auto& v : a)
        if (v <= 0) throw std::invalid_argument("every a_k must be positive");
    for (const auto& v : t)
        if (v < 0) throw std::invalid_argument("every t_k must be non-negative");
    return ExponentPair{std::move(a), std::move(t)};
}

std::vector<Rat> candidate_levels(const ExponentPair& ep) {
    std::set<Rat> levels;
    for (unsigned k = 0; k < ep.kappa(); ++k) {
        levels.insert(ep.a[k]);
        levels.insert(ep.a[k] + ep.t[k]);
    }
    return {levels.rbegin(), levels.rend()};
}

namespace {

void require_candidate(const ExponentPair& ep, const Rat& level) {
    auto levels = candidate_levels(ep);
    if (std::find(levels.begin(), levels.end(), level) == levels.end())
        throw LevelNotInCandidateSet("level " + to_fraction_string(level) +
                                     " is not a candidate level");
}

}  // namespace

LevelPartition partition(const ExponentPair& ep, const Rat& level) {
    require_candidate(ep, level);
    LevelPartition lp;
    lp.level = level;
    for (unsigned k = 1; k <= ep.kappa(); ++k) {
        const Rat& a = ep.a[k - 1];
        const Rat& t = ep.t[k - 1];
        if (a >= level)
            lp.k1.push_back(k);
        else if (a + t <= level)
            lp.k2.push_back(k);
        else
            lp.k3.push_back(k);
    }
    return lp;
}

Rat dimension_number(const ExponentPair& ep, const Rat& level) {
    LevelPartition lp = partition(ep, level);
    Rat a3(0), t2(0);
    for (unsigned k : lp.k3) a3 += ep.a[k - 1];
    for (unsigned k : lp.k2) t2 += ep.t[k - 1];
    return Rat(static_cast<unsigned long>(lp.k1.size() + lp.k2.size())) + (a3 - t2) / level;
}

MtpBound mtp_lower_bound(const ExponentPair& ep) {
    MtpBound best;
    bool first = true;
    // Levels are scanned in descending order, so the first minimizer seen is
    // the largest one; strict improvement keeps the tie-break deterministic.
    for (const Rat& level : candidate_levels(ep)) {
        Rat v = dimension_number(ep, level);
        if (first || v < best.value) {
            best = MtpBound{v, level};
            first = false;
        }
    }
    return best;
}

}  // namespace wdam
