#ifndef LATVA_RATIONAL_HPP
#define LATVA_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>

namespace latva {

using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// gmpxx has no long long constructors; lossless on LP64.
inline Rational to_rational(long long v) { return Rational(static_cast<long>(v)); }
inline Integer to_integer(long long v) { return Integer(static_cast<long>(v)); }

// Floor of a rational, as an Integer.
Integer rational_floor(const Rational& q);

// Fractional part in [0, 1).
Rational fractional_part(const Rational& q);

// "3", "-3/2"
std::string rational_to_string(const Rational& q);
std::optional<Rational> rational_from_string(const std::string& s);

} // namespace latva

#endif
