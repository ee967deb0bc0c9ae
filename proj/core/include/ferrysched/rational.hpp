#ifndef FERRYSCHED_RATIONAL_HPP
#define FERRYSCHED_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

namespace ferrysched {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline bool is_integral(const Rational& r) { return denominator(r) == 1; }

// "7", "-4.25", "1/6"; exact, throws SchemaError on anything else
Rational parse_rational(const std::string& text);

// "p" or "p/q", always exact
std::string render_exact(const Rational& r);

// Decimal rendering for solver-facing text formats.  Exact when the
// denominator is of the form 2^a 5^b and the result fits max_chars;
// otherwise rounded to the longest decimal that fits.
std::string render_decimal(const Rational& r, int max_chars = 12);

long long to_int64(const Rational& r);
double to_double(const Rational& r);

Rational rational_floor(const Rational& r);
Rational rational_ceil(const Rational& r);

std::uint64_t fnv1a64(const std::string& text);
std::string hex64(std::uint64_t v);

}  // namespace ferrysched

#endif
