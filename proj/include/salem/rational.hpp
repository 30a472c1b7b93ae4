#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <iosfwd>
#include <string>
#include <vector>
#include <string_view>

namespace salem {

/// Arbitrary-precision integers and rationals (GMP-backed).
using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Parses "p/q", "p" or "-p/q". Throws FormatError on malformed input or q == 0.
Rational parse_rational(std::string_view text);

/// Always "p/q", reduced, with q > 0 (integers print as "p/1").
std::string to_pq_string(const Rational& value);

/// Largest integer <= value.
BigInt floor_of(const Rational& value);

/// value - floor(value), in [0, 1).
Rational fractional_part(const Rational& value);

double to_double(const Rational& value);

/// Point-list text format: one rational per line; blank lines and lines
/// starting with '#' are skipped.
std::vector<Rational> read_points(std::istream& in);
std::vector<Rational> load_points(const std::string& path);
void write_points(std::ostream& out, const std::vector<Rational>& points);
std::string format_points(const std::vector<Rational>& points);

}  // namespace salem
