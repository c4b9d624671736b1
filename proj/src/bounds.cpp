#include "wdam/bounds.hpp"

#include <algorithm>

namespace wdam {

Rat theorem1_per_index(const WeightVector& w, unsigned i) {
    if (i < 1 || i > w.d) throw IndexOutOfRange("index must lie in 1..d");
    unsigned n = w.n();
    Rat spread(0);
    for (unsigned k = i; k <= n; ++k) spread += w.tau(i) - w.tau(k);
    return (Rat(n + 1) + spread) / (w.tau(i) + 1) - Rat(w.m);
}

Theorem1Bound theorem1_bound(const WeightVector& w) {
    Rat mn = theorem1_per_index(w, 1);
    for (unsigned i = 2; i <= w.d; ++i) mn = std::min(mn, theorem1_per_index(w, i));
    Rat d(w.d);
    return Theorem1Bound{mn, std::min(d, mn), w.total_sum() <= 1};
}

bool blw_condition_holds(const WeightVector& w) {
    Rat tail_max = w.tau(w.d + 1);
    for (unsigned j = 2; j <= w.m; ++j) tail_max = std::max(tail_max, w.tau(w.d + j));
    Rat dirichlet = (1 - w.tail_sum()) / Rat(w.d);
    return w.tau(w.d) >= std::max(tail_max, dirichlet);
}

namespace {

void check_selection(const WeightVector& w, const ExponentSelection& sel) {
    Rat acc = w.tail_sum();
    for (unsigned i = 0; i < w.d; ++i) {
        if (sel.a[i] <= 1) throw std::logic_error("exponent selection: a_i <= 1");
        if (sel.t[i] < 0) throw std::logic_error("exponent selection: t_i < 0");
        if (sel.a[i] + sel.t[i] != 1 + w.taus[i])
            throw std::logic_error("exponent selection: a_i + t_i != 1 + tau_i");
        acc += sel.a[i] - 1;
    }
    if (acc != 1) throw std::logic_error("exponent selection: sum (a_i - 1) + tail != 1");
    if (sel.case_tag == CaseTag::Case2) {
        if (sel.quotient <= 0) throw std::logic_error("exponent selection: quotient <= 0");
        for (unsigned i = sel.K; i < w.d; ++i)
            if (sel.t[i] != 0) throw std::logic_error("exponent selection: t_i != 0 past K");
    }
}

}  // namespace

ExponentSelection select_exponents(const WeightVector& w) {
    ExponentSelection sel;
    if (w.total_sum() <= 1) return sel;  // TrivialRegime

    Rat tail = w.tail_sum();
    Rat dirichlet = (1 - tail) / Rat(w.d);

    if (w.tau(w.d) >= dirichlet) {
        sel.case_tag = CaseTag::Case1;
        sel.quotient = dirichlet;
        for (unsigned i = 1; i <= w.d; ++i) {
            sel.a.push_back(1 + dirichlet);
            sel.t.push_back(w.tau(i) - dirichlet);
        }
    } else {
        // Largest 1 <= K <= d with tau_K > (1 - tail - (tau_{K+1}+...+tau_d))/K.
        // K = 1 always works here since the total weight sum exceeds 1.
        Rat suffix(0);  // tau_{K+1} + ... + tau_d
        unsigned K = 0;
        Rat quotient;
        for (unsigned cand = w.d; cand >= 1; --cand) {
            Rat qv = (1 - tail - suffix) / Rat(cand);
            if (w.tau(cand) > qv) {
                K = cand;
                quotient = qv;
                break;
            }
            suffix += w.tau(cand);
        }
        if (K == 0) throw std::logic_error("Case 2 index K not found despite total sum > 1");
        sel.case_tag = CaseTag::Case2;
        sel.K = K;
        sel.quotient = quotient;
        for (unsigned i = 1; i <= w.d; ++i) {
            Rat a = i <= K ? quotient + 1 : w.tau(i) + 1;
            sel.a.push_back(a);
            sel.t.push_back(1 + w.tau(i) - a);
        }
    }
    check_selection(w, sel);
    return sel;
}

BoundReport full_report(const WeightVector& w) {
    BoundReport rep;
    for (unsigned i = 1; i <= w.d; ++i) rep.per_index_values.push_back(theorem1_per_index(w, i));
    Theorem1Bound tb = theorem1_bound(w);
    rep.theorem_min = tb.theorem_min;
    rep.effective_bound = tb.effective_bound;
    rep.trivial_regime = tb.trivial_regime;
    rep.blw_condition_holds = blw_condition_holds(w);
    rep.selection = select_exponents(w);
    if (rep.selection.trivial()) {
        rep.mtp_min = Rat(w.d);
    } else {
        MtpBound mb = mtp_lower_bound(rep.selection.exponent_pair());
        rep.mtp_min = mb.value;
        rep.mtp_argmin_level = mb.argmin_level;
    }
    if (rep.mtp_min < rep.effective_bound)
        throw std::logic_error("mtp minimum fell below the closed-form bound");
    rep.improvement_flag = !rep.blw_condition_holds && !rep.trivial_regime;
    return rep;
}

}  // namespace wdam
