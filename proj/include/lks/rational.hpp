#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

namespace lks {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

Rational parse_rational(const std::string& text);

// Always "p/q", denominator 1 included, so ledgers compare as strings.
std::string to_string(const Rational& r);

Rational make_rational(std::int64_t p, std::int64_t q = 1);

std::int64_t floor_int(const Rational& r);
std::int64_t ceil_int(const Rational& r);
double to_double(const Rational& r);

// Smallest p / 2^16 whose square is at least x (x >= 0).
Rational sqrt_upper(const Rational& x);

}  // namespace lks
