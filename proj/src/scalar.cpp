#include "latva/scalar.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace latva {

Integer rational_floor(const Rational& q) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return fl;
}

Rational fractional_part(const Rational& q) {
  Rational r = q - Rational(rational_floor(q));
  r.canonicalize();
  return r;
}

std::string rational_to_string(const Rational& q) {
  std::ostringstream os;
  os << q.get_num();
  if (q.get_den() != 1) os << "/" << q.get_den();
  return os.str();
}

std::optional<Rational> rational_from_string(const std::string& s) {
  if (s.empty()) return std::nullopt;
  try {
    Rational q(s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

ScalarRing::ScalarRing() = default;

ScalarRing::ScalarRing(std::vector<std::string> names, std::vector<int> orders)
    : names_(std::move(names)), orders_(std::move(orders)) {
  if (names_.size() != orders_.size())
    throw std::invalid_argument("ScalarRing: names/orders size mismatch");
  for (int d : orders_)
    if (d < 1) throw std::invalid_argument("ScalarRing: nilpotency order must be >= 1");
  for (size_t i = 0; i < names_.size(); ++i)
    for (size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j])
        throw std::invalid_argument("ScalarRing: duplicate generator name " + names_[i]);
}

int ScalarRing::index_of(const std::string& name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

int ScalarRing::nilpotency_degree() const {
  int d = 0;
  for (int o : orders_) d += o - 1;
  return d;
}

std::string ScalarRing::describe() const {
  if (names_.empty()) return "Q";
  std::ostringstream os;
  os << "Q[";
  for (size_t i = 0; i < names_.size(); ++i) {
    if (i) os << ",";
    os << names_[i] << "^" << orders_[i] << "=0";
  }
  os << "]";
  return os.str();
}

RingHandle rational_ring() {
  static const RingHandle q = std::make_shared<const ScalarRing>();
  return q;
}

RingHandle make_ring(std::vector<std::string> names, std::vector<int> orders) {
  return std::make_shared<const ScalarRing>(std::move(names), std::move(orders));
}

Scalar::Scalar(RingHandle ring, const Rational& constant) : ring_(std::move(ring)) {
  if (!latva::is_zero(constant)) terms_[Monomial(ring_->generators(), 0)] = constant;
}

Scalar Scalar::generator(RingHandle ring, int i, int power) {
  if (i < 0 || i >= ring->generators())
    throw std::invalid_argument("Scalar::generator: index out of range");
  Scalar s(ring);
  if (power < ring->order(i)) {
    Monomial m(ring->generators(), 0);
    m[i] = power;
    s.terms_[m] = 1;
  }
  return s;
}

bool Scalar::is_unit() const { return !latva::is_zero(constant_term()); }

bool Scalar::is_nilpotent() const { return latva::is_zero(constant_term()); }

Rational Scalar::constant_term() const {
  Monomial zero(ring_->generators(), 0);
  auto it = terms_.find(zero);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Scalar::check_same_ring(const Scalar& o) const {
  if (*ring_ != *o.ring_)
    throw std::invalid_argument("scalar ring mismatch: " + ring_->describe() + " vs " +
                                o.ring_->describe());
}

void Scalar::add_term(const Monomial& mono, const Rational& q) {
  if (latva::is_zero(q)) return;
  for (int i = 0; i < ring_->generators(); ++i)
    if (mono[i] >= ring_->order(i)) return; // reduced away
  auto it = terms_.find(mono);
  if (it == terms_.end()) {
    it = terms_.emplace(mono, q).first;
    it->second.canonicalize();
  } else {
    it->second += q;
    it->second.canonicalize();
    if (latva::is_zero(it->second)) terms_.erase(it);
  }
}

Scalar Scalar::operator-() const {
  Scalar r(ring_);
  for (const auto& [m, q] : terms_) r.terms_[m] = -q;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same_ring(o);
  for (const auto& [m, q] : o.terms_) add_term(m, q);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same_ring(o);
  for (const auto& [m, q] : o.terms_) add_term(m, -q);
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  a.check_same_ring(b);
  Scalar r(a.ring_);
  const int n = a.ring_->generators();
  Monomial m(n, 0);
  for (const auto& [ma, qa] : a.terms_)
    for (const auto& [mb, qb] : b.terms_) {
      bool dead = false;
      for (int i = 0; i < n; ++i) {
        m[i] = ma[i] + mb[i];
        if (m[i] >= a.ring_->order(i)) { dead = true; break; }
      }
      if (!dead) r.add_term(m, qa * qb);
    }
  return r;
}

Scalar& Scalar::operator*=(const Rational& q) {
  if (latva::is_zero(q)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= q;
  return *this;
}

bool Scalar::operator==(const Scalar& o) const {
  check_same_ring(o);
  return terms_ == o.terms_;
}

Scalar Scalar::inverse() const {
  Rational c = constant_term();
  if (latva::is_zero(c)) throw std::invalid_argument("Scalar::inverse: not a unit");
  // s = c (1 + n/c), inverse = c^{-1} sum (-n/c)^k; n nilpotent.
  Scalar n = *this;
  n.add_term(Monomial(ring_->generators(), 0), -c);
  n *= Rational(-1) / c;
  Scalar acc = Scalar::constant(ring_, 1);
  Scalar power = Scalar::constant(ring_, 1);
  const int bound = ring_->nilpotency_degree();
  for (int k = 1; k <= bound; ++k) {
    power = power * n;
    if (power.is_zero()) break;
    acc += power;
  }
  acc *= Rational(1) / c;
  return acc;
}

Scalar Scalar::pow(long e) const {
  Scalar base = e < 0 ? inverse() : *this;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Scalar acc = Scalar::constant(ring_, 1);
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

Scalar Scalar::exp_nilpotent() const {
  if (!is_nilpotent())
    throw std::invalid_argument("Scalar::exp_nilpotent: argument has nonzero constant term");
  Scalar acc = Scalar::constant(ring_, 1);
  Scalar power = Scalar::constant(ring_, 1);
  Rational fact = 1;
  const int bound = ring_->nilpotency_degree();
  for (int k = 1; k <= bound; ++k) {
    power = power * (*this);
    if (power.is_zero()) break;
    fact *= k;
    Scalar term = power;
    term *= Rational(1) / fact;
    acc += term;
  }
  return acc;
}

std::string Scalar::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, q] : terms_) {
    Rational a = q;
    if (first) {
      if (sgn(a) < 0) { os << "-"; a = -a; }
    } else {
      os << (sgn(a) < 0 ? " - " : " + ");
      if (sgn(a) < 0) a = -a;
    }
    first = false;
    bool has_mono = std::any_of(m.begin(), m.end(), [](int e) { return e > 0; });
    if (!has_mono) {
      os << rational_to_string(a);
      continue;
    }
    bool printed = false;
    if (a != 1) {
      os << rational_to_string(a);
      printed = true;
    }
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (printed) os << "*";
      os << ring_->name(i);
      if (m[i] > 1) os << "^" << m[i];
      printed = true;
    }
  }
  return os.str();
}

} // namespace latva
