#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wdam {

using Int = mpz_class;
using Rat = mpq_class;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses "p/q", "p", or a plain decimal like "-0.125" into an exact rational.
Rat parse_rational(const std::string& text);

// Canonical "p/q" form ("p" when the denominator is 1).
std::string to_fraction_string(const Rat& value);

// 12-significant-digit decimal rendering, advisory only.
std::string to_decimal_string(const Rat& value);

inline Int numer(const Rat& r) { return r.get_num(); }
inline Int denom(const Rat& r) { return r.get_den(); }

inline int sign(const Rat& r) { return sgn(r); }

// floor(num/den) for a rational, exact.
Int floor_rat(const Rat& r);
Int ceil_rat(const Rat& r);

// Nearest integer to r; on a tie (r = k + 1/2) returns the lower integer,
// and callers that care about ties must also probe the neighbour.
Int round_rat(const Rat& r);

// Distance from r to the nearest integer (the ||.|| norm), exact.
Rat nearest_integer_distance(const Rat& r);

// base^e for integer e (e may be negative; base must be nonzero then).
Rat pow_rat(const Rat& base, long e);

// Truncated integer k-th root.
Int iroot(const Int& v, unsigned long k);

}  // namespace wdam
