#include "wdam/polynomial.hpp"

#include <algorithm>
#include <numeric>

namespace wdam {

namespace {

Interval interval_mul(const Interval& a, const Interval& b) {
    Rat c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
    return {std::min(std::min(c1, c2), std::min(c3, c4)),
            std::max(std::max(c1, c2), std::max(c3, c4))};
}

Interval interval_pow(const Interval& a, unsigned e) {
    if (e == 0) return {Rat(1), Rat(1)};
    Interval acc = a;
    for (unsigned i = 1; i < e; ++i) acc = interval_mul(acc, a);
    return acc;
}

}  // namespace

void Polynomial::add_term(const Rat& coeff, const MultiIndex& exponents) {
    if (exponents.size() != nvars_)
        throw std::invalid_argument("multi-index arity mismatch");
    if (coeff == 0) return;
    auto it = terms_.find(exponents);
    if (it == terms_.end()) {
        terms_.emplace(exponents, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

unsigned Polynomial::total_degree() const {
    unsigned deg = 0;
    for (const auto& [mi, c] : terms_) {
        unsigned s = std::accumulate(mi.begin(), mi.end(), 0u);
        deg = std::max(deg, s);
    }
    return deg;
}

Rat Polynomial::eval(const std::vector<Rat>& x) const {
    if (x.size() != nvars_) throw std::invalid_argument("point arity mismatch");
    Rat acc(0);
    for (const auto& [mi, c] : terms_) {
        Rat term = c;
        for (unsigned v = 0; v < nvars_; ++v)
            if (mi[v] > 0) term *= pow_rat(x[v], mi[v]);
        acc += term;
    }
    return acc;
}

Polynomial Polynomial::partial(unsigned var) const {
    if (var >= nvars_) throw std::invalid_argument("variable index out of range");
    Polynomial out(nvars_);
    for (const auto& [mi, c] : terms_) {
        if (mi[var] == 0) continue;
        MultiIndex d = mi;
        d[var] -= 1;
        out.add_term(c * Rat(mi[var]), d);
    }
    return out;
}

Rat Polynomial::abs_bound_on(const RationalBox& box) const {
    if (box.dim() != nvars_) throw std::invalid_argument("box arity mismatch");
    Interval acc{Rat(0), Rat(0)};
    for (const auto& [mi, c] : terms_) {
        Interval term{c, c};
        for (unsigned v = 0; v < nvars_; ++v)
            if (mi[v] > 0) term = interval_mul(term, interval_pow(box.axis(v), mi[v]));
        acc.lo += term.lo;
        acc.hi += term.hi;
    }
    Rat a = abs(acc.lo), b = abs(acc.hi);
    return a > b ? a : b;
}

Int Polynomial::coeff_denominator_lcm() const {
    Int l = 1;
    for (const auto& [mi, c] : terms_) {
        Int d = c.get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    return l;
}

Int Polynomial::eval_scaled(const std::vector<Int>& p, const Int& q, unsigned scale_degree) const {
    if (p.size() != nvars_) throw std::invalid_argument("point arity mismatch");
    if (scale_degree < total_degree())
        throw std::invalid_argument("scale degree below total degree");
    Int lcm = coeff_denominator_lcm();
    Int acc = 0, term, pw;
    for (const auto& [mi, c] : terms_) {
        unsigned s = std::accumulate(mi.begin(), mi.end(), 0u);
        Rat scaled_coeff = Rat(lcm) * c;  // integral: lcm clears the denominator
        term = scaled_coeff.get_num();
        for (unsigned v = 0; v < nvars_; ++v) {
            if (mi[v] == 0) continue;
            mpz_pow_ui(pw.get_mpz_t(), p[v].get_mpz_t(), mi[v]);
            term *= pw;
        }
        mpz_pow_ui(pw.get_mpz_t(), q.get_mpz_t(), scale_degree - s);
        term *= pw;
        acc += term;
    }
    return acc;
}

}  // namespace wdam
