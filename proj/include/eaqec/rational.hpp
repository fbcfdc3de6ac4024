#pragma once

#include <gmpxx.h>

#include <string>

namespace eaqec {

using Int = mpz_class;
using Rat = mpq_class;

// C(n, k); 0 whenever k < 0 or k > n or n < 0. Values are memoized per row.
Int binomial(long n, long k);

Int pow_int(unsigned long base, unsigned long exp);
inline Int pow2(unsigned long e) { return pow_int(2, e); }
inline Int pow3(unsigned long e) { return pow_int(3, e); }
inline Int pow4(unsigned long e) { return pow_int(4, e); }

// Canonical num/den rational (the raw two-argument mpq_class constructor
// does not reduce).
inline Rat frac(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}
inline Rat frac(long num, long den) { return frac(Int(num), Int(den)); }

// Generalized binomial C(x, k) = x(x-1)...(x-k+1)/k! for rational x, k >= 0.
Rat binomial_rat(const Rat& x, long k);

// Largest rational p/2^bits with p/2^bits <= 4^a.  Exact when 2a is an
// integer.  Used for grid searches over real exponents: any positive value
// is an admissible substitute, so a one-sided approximation keeps every
// derived bound certified.
Rat pow4_lower(const Rat& a, unsigned bits = 96);

double to_double(const Rat& v);

// Decimal rendering with the given number of significant digits
// (round-to-nearest).  Display only; never fed back into computation.
std::string decimal_string(const Rat& v, int significant_digits = 6);

// log2 of a positive rational, as a double (non-certified display value).
double log2_approx(const Rat& v);

}  // namespace eaqec
