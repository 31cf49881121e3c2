#ifndef LATVA_SCALAR_HPP
#define LATVA_SCALAR_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "latva/rational.hpp"

namespace latva {

// Coefficient ring for all series arithmetic: exact rationals extended by
// finitely many nilpotent symbols e1, e2, ... with e_i^{d_i} = 0.  The plain
// rational field is the ring with no symbols.  Elements are kept in reduced
// normal form (no stored monomial contains e_i^k with k >= d_i), so equality
// is map equality.
class ScalarRing {
 public:
  ScalarRing(); // the rationals
  ScalarRing(std::vector<std::string> names, std::vector<int> orders);

  int generators() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[i]; }
  int order(int i) const { return orders_[i]; }
  int index_of(const std::string& name) const; // -1 if absent

  // Largest total degree a nonzero product of nilpotents can have.
  int nilpotency_degree() const;

  bool operator==(const ScalarRing& o) const {
    return names_ == o.names_ && orders_ == o.orders_;
  }
  bool operator!=(const ScalarRing& o) const { return !(*this == o); }

  std::string describe() const;

 private:
  std::vector<std::string> names_;
  std::vector<int> orders_;
};

using RingHandle = std::shared_ptr<const ScalarRing>;
RingHandle rational_ring();
RingHandle make_ring(std::vector<std::string> names, std::vector<int> orders);

// Exponent vector over the ring's generators.
using Monomial = std::vector<int>;

class Scalar {
 public:
  Scalar() : ring_(rational_ring()) {}
  explicit Scalar(RingHandle ring) : ring_(std::move(ring)) {}
  Scalar(RingHandle ring, const Rational& constant);

  static Scalar constant(RingHandle ring, const Rational& q) { return Scalar(std::move(ring), q); }
  static Scalar generator(RingHandle ring, int i, int power = 1);

  const RingHandle& ring() const { return ring_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  // Unit iff the constant rational term is nonzero.
  bool is_unit() const;
  bool is_nilpotent() const; // constant term zero
  Rational constant_term() const;
  // Kill all nilpotent symbols.
  Rational augment() const { return constant_term(); }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator*=(const Rational& q);
  friend Scalar operator*(Scalar a, const Rational& q) { return a *= q; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar inverse() const;       // throws std::invalid_argument on non-units
  Scalar pow(long e) const;     // negative e via inverse
  Scalar exp_nilpotent() const; // throws unless argument is nilpotent

  // Adds q * mono, reducing mod the nilpotency orders.
  void add_term(const Monomial& mono, const Rational& q);

  std::string to_string() const;

 private:
  void check_same_ring(const Scalar& o) const;

  RingHandle ring_;
  std::map<Monomial, Rational> terms_;
};

// Literal syntax shared with series: "3/2", "-e1*e2^2", "1 - e1".
Scalar parse_scalar(const RingHandle& ring, const std::string& text);

} // namespace latva

#endif
