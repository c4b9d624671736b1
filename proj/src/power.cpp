#include "wdam/power.hpp"

namespace wdam {

Int PowerProduct::exponent_denominator_lcm() const {
    Int l = 1;
    for (const auto& [b, e] : factors_) {
        Int d = e.get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    return l;
}

Rat PowerProduct::raised(const Int& raise_to) const {
    Rat out(1);
    for (const auto& [b, e] : factors_) {
        Rat ie = Rat(raise_to) * e;
        if (ie.get_den() != 1)
            throw std::logic_error("PowerProduct::raised: exponent not cleared");
        if (!ie.get_num().fits_slong_p())
            throw std::overflow_error("PowerProduct exponent too large");
        out *= pow_rat(b, ie.get_num().get_si());
    }
    return out;
}

int PowerProduct::compare(const PowerProduct& other) const {
    Int l = exponent_denominator_lcm();
    Int lo = other.exponent_denominator_lcm();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), lo.get_mpz_t());
    Rat lhs = raised(l);
    Rat rhs = other.raised(l);
    return cmp(lhs, rhs);
}

namespace {

// v^(1/k) enclosed between iroot(floor(v * S^k), k) / S and
// (iroot(ceil(v * S^k), k) + 1) / S with S = 2^64, giving ~64 bits of slack.
constexpr unsigned long kRootScaleBits = 64;

Int scaled_root_floor(const Rat& v, unsigned long k) {
    Int num = v.get_num() << (kRootScaleBits * k);
    Int scaled;
    mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), v.get_den().get_mpz_t());
    return iroot(scaled, k);
}

Int scaled_root_ceil(const Rat& v, unsigned long k) {
    Int num = v.get_num() << (kRootScaleBits * k);
    Int scaled;
    mpz_cdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), v.get_den().get_mpz_t());
    return iroot(scaled, k) + 1;
}

}  // namespace

Rat PowerProduct::upper_bound() const {
    Int l = exponent_denominator_lcm();
    if (!l.fits_ulong_p()) throw std::overflow_error("PowerProduct lcm too large");
    Rat v = raised(l);
    unsigned long k = l.get_ui();
    Rat out(scaled_root_ceil(v, k), Int(1) << kRootScaleBits);
    out.canonicalize();
    return out;
}

Rat PowerProduct::lower_bound() const {
    Int l = exponent_denominator_lcm();
    if (!l.fits_ulong_p()) throw std::overflow_error("PowerProduct lcm too large");
    Rat v = raised(l);
    unsigned long k = l.get_ui();
    Rat out(scaled_root_floor(v, k), Int(1) << kRootScaleBits);
    out.canonicalize();
    return out;
}

std::optional<Rat> PowerProduct::as_rational() const {
    for (const auto& [b, e] : factors_)
        if (e.get_den() != 1) return std::nullopt;
    return raised(Int(1));
}

}  // namespace wdam
