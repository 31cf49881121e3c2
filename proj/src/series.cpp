#include "latva/series.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace latva {

namespace {

// Truncation bound used for exactly-known (polynomial) intermediates.  Large
// enough to dominate every desk-scale window, small enough that sums of two
// bounds never overflow long.
constexpr long kExactTrunc = 1L << 40;

Scalar zero_scalar(const RingHandle& ring) { return Scalar(ring); }

} // namespace

LaurentSeries LaurentSeries::constant(RingHandle ring, const Rational& q, long trunc) {
  LaurentSeries s(std::move(ring), trunc);
  if (!latva::is_zero(q)) s.set_coeff(0, Scalar::constant(s.ring_, q));
  return s;
}

LaurentSeries LaurentSeries::monomial(RingHandle ring, long exp, const Scalar& coeff, long trunc) {
  LaurentSeries s(std::move(ring), trunc);
  if (!coeff.is_zero()) s.set_coeff(exp, coeff);
  return s;
}

LaurentSeries LaurentSeries::power_of_t(RingHandle ring, long k, long trunc) {
  LaurentSeries s(std::move(ring), trunc);
  s.set_coeff(k, Scalar::constant(s.ring_, 1));
  return s;
}

std::optional<long> LaurentSeries::val() const {
  for (const auto& [e, c] : coeffs_)
    if (!latva::is_zero(c.constant_term())) return e;
  return std::nullopt;
}

Scalar LaurentSeries::coeff(long e) const {
  if (e >= trunc_)
    throw TruncationError("coefficient at t^" + std::to_string(e) +
                          " not certified (trunc=" + std::to_string(trunc_) + ")");
  auto it = coeffs_.find(e);
  return it == coeffs_.end() ? zero_scalar(ring_) : it->second;
}

void LaurentSeries::set_coeff(long e, const Scalar& c) {
  if (e >= trunc_)
    throw std::invalid_argument("set_coeff beyond truncation bound");
  if (c.is_zero())
    coeffs_.erase(e);
  else
    coeffs_[e] = c;
}

void LaurentSeries::add_coeff(long e, const Scalar& c) {
  if (c.is_zero()) return;
  if (e >= trunc_) throw std::invalid_argument("add_coeff beyond truncation bound");
  auto it = coeffs_.find(e);
  if (it == coeffs_.end()) {
    coeffs_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

LaurentSeries LaurentSeries::truncated(long new_trunc) const {
  LaurentSeries r(ring_, std::min(trunc_, new_trunc));
  for (const auto& [e, c] : coeffs_)
    if (e < r.trunc_) r.coeffs_.emplace(e, c);
  return r;
}

void LaurentSeries::check_same_ring(const LaurentSeries& o) const {
  if (*ring_ != *o.ring_)
    throw std::invalid_argument("series ring mismatch: " + ring_->describe() + " vs " +
                                o.ring_->describe());
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r(ring_, trunc_);
  for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e, -c);
  return r;
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  a.check_same_ring(b);
  LaurentSeries r(a.ring_, std::min(a.trunc_, b.trunc_));
  for (const auto& [e, c] : a.coeffs_)
    if (e < r.trunc_) r.add_coeff(e, c);
  for (const auto& [e, c] : b.coeffs_)
    if (e < r.trunc_) r.add_coeff(e, c);
  return r;
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
  return a + (-b);
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  a.check_same_ring(b);
  long t = std::min(a.trunc_ + b.floor_exp(), b.trunc_ + a.floor_exp());
  t = std::min(t, kExactTrunc * 4);
  LaurentSeries r(a.ring_, t);
  for (const auto& [ea, ca] : a.coeffs_)
    for (const auto& [eb, cb] : b.coeffs_) {
      long e = ea + eb;
      if (e < t) r.add_coeff(e, ca * cb);
    }
  return r;
}

LaurentSeries LaurentSeries::scaled(const Scalar& s) const {
  LaurentSeries r(ring_, trunc_);
  for (const auto& [e, c] : coeffs_) {
    Scalar p = c * s;
    if (!p.is_zero()) r.coeffs_.emplace(e, p);
  }
  return r;
}

LaurentSeries LaurentSeries::scaled(const Rational& q) const {
  return scaled(Scalar::constant(ring_, q));
}

LaurentSeries LaurentSeries::shifted(long k) const {
  LaurentSeries r(ring_, trunc_ + k);
  for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e + k, c);
  return r;
}

bool LaurentSeries::agrees_with(const LaurentSeries& o) const {
  check_same_ring(o);
  long t = std::min(trunc_, o.trunc_);
  for (const auto& [e, c] : coeffs_)
    if (e < t && !(coeff(e) == o.coeff(e))) return false;
  for (const auto& [e, c] : o.coeffs_)
    if (e < t && !(coeff(e) == o.coeff(e))) return false;
  return true;
}

LaurentSeries derivative(const LaurentSeries& f) {
  LaurentSeries r(f.ring(), f.trunc() - 1);
  for (const auto& [e, c] : f.coeffs()) {
    if (e == 0) continue;
    Scalar d = c;
    d *= Rational(e);
    if (e - 1 < r.trunc()) r.add_coeff(e - 1, d);
  }
  return r;
}

namespace {

// Sums coefficient-wise images of powers of x, all arithmetic on the exact
// known support; the caller supplies the certified bound for the result.
// term_coeff(k) multiplies x^k.
LaurentSeries power_sum(const LaurentSeries& x, long certified_trunc,
                        const std::function<Rational(int)>& term_coeff, bool include_unit) {
  const RingHandle& ring = x.ring();
  LaurentSeries acc(ring, certified_trunc);
  if (include_unit && certified_trunc > 0)
    acc.set_coeff(0, Scalar::constant(ring, term_coeff(0)));
  // exact-mode copy of the known support
  LaurentSeries xe(ring, kExactTrunc);
  for (const auto& [e, c] : x.coeffs()) xe.set_coeff(e, c);
  const int D = ring->nilpotency_degree();
  const long M = std::max<long>(0, -std::min<long>(0, x.known_zero() ? 0 : x.floor_exp()));
  const long kmax = std::max<long>(D + 1, certified_trunc + D * (1 + M) + 1);
  LaurentSeries power(ring, kExactTrunc);
  power.set_coeff(0, Scalar::constant(ring, 1));
  for (long k = 1; k <= kmax; ++k) {
    power = power * xe;
    if (power.known_zero()) break;
    if (k > D && power.floor_exp() >= certified_trunc) break;
    Rational c = term_coeff(static_cast<int>(k));
    if (latva::is_zero(c)) continue;
    for (const auto& [e, pc] : power.coeffs()) {
      if (e >= certified_trunc) continue;
      Scalar s = pc;
      s *= c;
      acc.add_coeff(e, s);
    }
  }
  return acc;
}

void require_lower_part_nilpotent(const LaurentSeries& x, const char* who) {
  for (const auto& [e, c] : x.coeffs())
    if (e <= 0 && !c.is_nilpotent())
      throw std::invalid_argument(std::string(who) +
                                  ": coefficient at t^" + std::to_string(e) +
                                  " is neither topologically nilpotent nor nilpotent");
}

} // namespace

LaurentSeries inverse(const LaurentSeries& f) {
  auto v = f.val();
  if (!v) throw std::invalid_argument("inverse: series is not invertible (no unit leading coefficient)");
  Scalar lead = f.coeff(*v);
  LaurentSeries u = f.shifted(-*v).scaled(lead.inverse());
  LaurentSeries x = u;
  x.add_coeff(0, Scalar::constant(f.ring(), -1));
  const int D = f.ring()->nilpotency_degree();
  const long M = x.known_zero() ? 0 : std::max<long>(0, -x.floor_exp());
  const long certified = (f.trunc() - *v) - static_cast<long>(D) * M;
  if (certified <= -M * (D + 1) - 1)
    throw TruncationError("inverse: truncation too low to certify any coefficient");
  LaurentSeries g = power_sum(x, certified, [](int k) { return Rational(k % 2 ? -1 : 1); }, true);
  return g.shifted(-*v).scaled(lead.inverse());
}

LaurentSeries dlog(const LaurentSeries& f) {
  return derivative(f) * inverse(f);
}

LaurentSeries log1(const LaurentSeries& u) {
  LaurentSeries x = u;
  x.add_coeff(0, Scalar::constant(u.ring(), -1));
  require_lower_part_nilpotent(x, "log1");
  const int D = u.ring()->nilpotency_degree();
  const long M = x.known_zero() ? 0 : std::max<long>(0, -x.floor_exp());
  const long certified = u.trunc() - static_cast<long>(D) * M;
  return power_sum(
      x, certified,
      [](int k) { return k == 0 ? Rational(0) : Rational(k % 2 ? 1 : -1) / k; }, false);
}

LaurentSeries exp0(const LaurentSeries& x) {
  require_lower_part_nilpotent(x, "exp0");
  const int D = x.ring()->nilpotency_degree();
  const long M = x.known_zero() ? 0 : std::max<long>(0, -x.floor_exp());
  const long certified = x.trunc() - static_cast<long>(D) * M;
  Rational fact = 1;
  std::vector<Rational> inv_fact{Rational(1)};
  return power_sum(
      x, certified,
      [fact, inv_fact](int k) mutable {
        while (static_cast<int>(inv_fact.size()) <= k) {
          fact *= static_cast<long>(inv_fact.size());
          inv_fact.push_back(Rational(1) / fact);
        }
        return inv_fact[k];
      },
      true);
}

Scalar residue_pairing(const LaurentSeries& f, const LaurentSeries& g) {
  LaurentSeries h = f * derivative(g);
  if (h.trunc() <= -1)
    throw TruncationError("residue_pairing: truncation too low to determine Res(f dg)");
  return h.coeff(-1);
}

std::string LaurentSeries::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : coeffs_) {
    std::string cs = c.to_string();
    bool negated = false;
    if (c.terms().size() == 1 && cs.size() && cs[0] == '-') {
      negated = true;
      cs = cs.substr(1);
    }
    if (first) {
      if (negated) os << "-";
    } else {
      os << (negated ? " - " : " + ");
    }
    first = false;
    bool needs_parens = c.terms().size() > 1;
    if (e == 0) {
      os << (needs_parens ? "(" + c.to_string() + ")" : cs);
      continue;
    }
    if (needs_parens) {
      os << "(" << c.to_string() << ")*";
    } else if (cs != "1") {
      os << cs << "*";
    }
    os << "t";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

namespace {

struct Parser {
  const RingHandle& ring;
  const std::string& s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) { ++i; return true; }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("parse error at position " + std::to_string(i) + ": " + msg);
  }

  long parse_int() {
    skip_ws();
    bool neg = eat('-');
    if (!neg) eat('+');
    skip_ws();
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected integer");
    long v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i] - '0');
      ++i;
    }
    return neg ? -v : v;
  }

  // factor := rational | name['^'int] | 't'['^'int]
  // Returns (scalar factor, power of t).
  std::pair<Scalar, long> parse_factor() {
    skip_ws();
    if (i >= s.size()) fail("expected factor");
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long num = parse_int();
      Rational q(num);
      if (eat('/')) q /= Rational(parse_int());
      q.canonicalize();
      return {Scalar::constant(ring, q), 0};
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string name = s.substr(start, i - start);
      long p = 1;
      if (eat('^')) p = parse_int();
      if (name == "t") return {Scalar::constant(ring, 1), p};
      int gi = ring->index_of(name);
      if (gi < 0) fail("unknown symbol '" + name + "' in ring " + ring->describe());
      if (p < 0) fail("negative power of nilpotent symbol");
      return {Scalar::generator(ring, gi, static_cast<int>(p)), 0};
    }
    fail("unexpected character");
  }

  // term := factor ('*' factor)*
  std::pair<Scalar, long> parse_term() {
    auto [sc, tp] = parse_factor();
    while (true) {
      skip_ws();
      if (!eat('*')) break;
      auto [sc2, tp2] = parse_factor();
      sc = sc * sc2;
      tp += tp2;
    }
    return {sc, tp};
  }

  LaurentSeries parse_expr(long trunc) {
    LaurentSeries out(ring, trunc);
    bool first = true;
    while (true) {
      skip_ws();
      if (i >= s.size()) {
        if (first) fail("empty series literal");
        break;
      }
      bool neg = false;
      if (!first || s[i] == '+' || s[i] == '-') {
        if (eat('-')) neg = true;
        else if (!eat('+') && !first) fail("expected '+' or '-'");
      }
      auto [sc, tp] = parse_term();
      if (neg) sc = -sc;
      if (tp >= trunc)
        throw std::invalid_argument("series literal has a term at t^" + std::to_string(tp) +
                                    " at or beyond trunc " + std::to_string(trunc));
      out.add_coeff(tp, sc);
      first = false;
      skip_ws();
      if (i >= s.size()) break;
    }
    return out;
  }
};

} // namespace

LaurentSeries parse_series(const RingHandle& ring, const std::string& text, long trunc) {
  if (text == "0") return LaurentSeries::zero(ring, trunc);
  Parser p{ring, text};
  return p.parse_expr(trunc);
}

Scalar parse_scalar(const RingHandle& ring, const std::string& text) {
  LaurentSeries s = parse_series(ring, text, 1L << 40);
  for (const auto& [e, c] : s.coeffs())
    if (e != 0) throw std::invalid_argument("scalar literal contains t");
  return s.known_zero() ? Scalar(ring) : s.coeffs().begin()->second;
}

} // namespace latva
