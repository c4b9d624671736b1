#include "wdam/rational.hpp"

#include <cctype>
#include <cstdio>

namespace wdam {

Rat parse_rational(const std::string& text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    if (s.empty()) throw ParseError("empty rational literal");

    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = (s[0] == '-');
        s = s.substr(1);
        if (s.empty()) throw ParseError("sign without digits: '" + text + "'");
    }

    Rat out;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        if (dot != std::string::npos) throw ParseError("mixed decimal/fraction: '" + text + "'");
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (num.empty() || den.empty()) throw ParseError("malformed fraction: '" + text + "'");
        Int n, d;
        if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0)
            throw ParseError("malformed fraction: '" + text + "'");
        if (d <= 0) throw ParseError("non-positive denominator: '" + text + "'");
        out = Rat(n, d);
    } else if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot);
        std::string fp = s.substr(dot + 1);
        if (ip.empty() && fp.empty()) throw ParseError("malformed decimal: '" + text + "'");
        for (char c : ip + fp)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw ParseError("malformed decimal: '" + text + "'");
        Int n;
        if (n.set_str(ip.empty() ? fp : ip + fp, 10) != 0)
            throw ParseError("malformed decimal: '" + text + "'");
        Int d = 1;
        for (size_t i = 0; i < fp.size(); ++i) d *= 10;
        out = Rat(n, d);
    } else {
        Int n;
        if (n.set_str(s, 10) != 0) throw ParseError("malformed integer: '" + text + "'");
        out = Rat(n);
    }
    out.canonicalize();
    if (negative) out = -out;
    return out;
}

std::string to_fraction_string(const Rat& value) {
    Rat v = value;
    v.canonicalize();  // callers may hand in raw p/q constructions
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string to_decimal_string(const Rat& value) {
    // 64 decimal digits of working precision is plenty for a 12-digit render.
    mpf_class f(value, 256);
    mp_exp_t exp;
    std::string digits = f.get_str(exp, 10, 12);
    if (digits.empty() || digits == "-") return "0";
    bool neg = digits[0] == '-';
    if (neg) digits = digits.substr(1);
    std::string mantissa = digits.substr(0, 1);
    if (digits.size() > 1) mantissa += "." + digits.substr(1);
    std::string out = (neg ? "-" : "") + mantissa;
    if (exp != 1) out += "e" + std::to_string(static_cast<long>(exp) - 1);
    return out;
}

Int floor_rat(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

Int ceil_rat(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

Int round_rat(const Rat& r) {
    // floor(r + 1/2); exact half rounds down.
    Rat shifted = r + Rat(1, 2);
    Int f = floor_rat(shifted);
    if (Rat(f) == shifted) return f - 1;
    return f;
}

Rat nearest_integer_distance(const Rat& r) {
    Int f = floor_rat(r);
    Rat frac = r - Rat(f);
    Rat other = 1 - frac;
    return frac <= other ? frac : other;
}

Rat pow_rat(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    bool invert = e < 0;
    unsigned long ue = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    if (invert && base == 0) throw std::domain_error("0 raised to a negative power");
    Int n, d;
    mpz_pow_ui(n.get_mpz_t(), base.get_num().get_mpz_t(), ue);
    mpz_pow_ui(d.get_mpz_t(), base.get_den().get_mpz_t(), ue);
    Rat out = invert ? Rat(d, n) : Rat(n, d);
    out.canonicalize();
    return out;
}

Int iroot(const Int& v, unsigned long k) {
    if (v < 0) throw std::domain_error("iroot of negative value");
    Int r;
    mpz_root(r.get_mpz_t(), v.get_mpz_t(), k);
    return r;
}

}  // namespace wdam
