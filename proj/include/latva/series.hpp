#ifndef LATVA_SERIES_HPP
#define LATVA_SERIES_HPP

#include <map>
#include <optional>
#include <string>

#include "latva/errors.hpp"
#include "latva/scalar.hpp"

namespace latva {

// Laurent series with exact coefficients, known only below a truncation
// exponent.  Coefficients at exponents >= trunc are unknown, never zero by
// default; every operation propagates the bound pessimistically and an
// operation that cannot certify a requested coefficient throws
// TruncationError instead of guessing.
class LaurentSeries {
 public:
  explicit LaurentSeries(RingHandle ring, long trunc)
      : ring_(std::move(ring)), trunc_(trunc) {}

  static LaurentSeries zero(RingHandle ring, long trunc) { return LaurentSeries(std::move(ring), trunc); }
  static LaurentSeries constant(RingHandle ring, const Rational& q, long trunc);
  static LaurentSeries monomial(RingHandle ring, long exp, const Scalar& coeff, long trunc);
  // t^k with coefficient 1.
  static LaurentSeries power_of_t(RingHandle ring, long k, long trunc);

  const RingHandle& ring() const { return ring_; }
  long trunc() const { return trunc_; }
  const std::map<long, Scalar>& coeffs() const { return coeffs_; }

  // Least stored exponent; trunc() for the (known-)zero series.
  long floor_exp() const { return coeffs_.empty() ? trunc_ : coeffs_.begin()->first; }
  bool known_zero() const { return coeffs_.empty(); }

  // Numerical valuation: least exponent whose coefficient has a nonzero
  // rational constant term.  Undefined when every known coefficient is
  // nilpotent.
  std::optional<long> val() const;
  bool invertible() const { return val().has_value(); }

  Scalar coeff(long e) const; // throws TruncationError for e >= trunc
  void set_coeff(long e, const Scalar& c);
  void add_coeff(long e, const Scalar& c);

  // Drops stored coefficients at exponents >= new_trunc (never raises the bound).
  LaurentSeries truncated(long new_trunc) const;

  LaurentSeries operator-() const;
  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  LaurentSeries& operator+=(const LaurentSeries& o) { return *this = *this + o; }
  LaurentSeries& operator-=(const LaurentSeries& o) { return *this = *this - o; }
  LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }

  LaurentSeries scaled(const Scalar& s) const;
  LaurentSeries scaled(const Rational& q) const;
  LaurentSeries shifted(long k) const; // multiply by t^k

  // Equality of all coefficients below min(trunc, o.trunc).
  bool agrees_with(const LaurentSeries& o) const;

  std::string to_string() const;

 private:
  void check_same_ring(const LaurentSeries& o) const;

  RingHandle ring_;
  std::map<long, Scalar> coeffs_;
  long trunc_;
};

LaurentSeries derivative(const LaurentSeries& f);

// Multiplicative inverse; requires a defined valuation.
LaurentSeries inverse(const LaurentSeries& f);

// f'/f, the coefficient series of d log f = (f'/f) dt.
LaurentSeries dlog(const LaurentSeries& f);

// log(1 + x) for x with nilpotent coefficients at exponents <= 0; mutually
// inverse with exp0 up to truncation.
LaurentSeries log1(const LaurentSeries& u);
LaurentSeries exp0(const LaurentSeries& x);

// Res(f dg): the t^{-1} dt coefficient of f dg, certified exact.
Scalar residue_pairing(const LaurentSeries& f, const LaurentSeries& g);

// Literal syntax: "3/2*t^-2 + t + e1*t^3".
LaurentSeries parse_series(const RingHandle& ring, const std::string& text, long trunc);

} // namespace latva

#endif
