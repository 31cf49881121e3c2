#include "latva/fock.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace latva {

int Ket::offset_cmp(const Ket& o) const {
  // Empty offset is the zero offset.
  size_t n = std::max(offset.size(), o.offset.size());
  for (size_t i = 0; i < n; ++i) {
    Rational a = i < offset.size() ? offset[i] : Rational(0);
    Rational b = i < o.offset.size() ? o.offset[i] : Rational(0);
    int c = cmp(a, b);
    if (c != 0) return c;
  }
  return 0;
}

long Ket::mode_weight() const {
  long w = 0;
  for (const auto& [n, i] : modes) w += n;
  return w;
}

std::string Ket::to_string() const {
  std::ostringstream os;
  for (const auto& [n, i] : modes) os << "h[" << i + 1 << "]_{-" << n << "} ";
  os << "|";
  for (size_t i = 0; i < charge.size(); ++i) os << (i ? "," : "") << charge[i];
  bool any_offset = false;
  for (const auto& q : offset)
    if (!latva::is_zero(q)) any_offset = true;
  if (any_offset) {
    os << ";";
    for (size_t i = 0; i < offset.size(); ++i)
      os << (i ? "," : "") << rational_to_string(offset[i]);
  }
  os << ">";
  return os.str();
}

Ket make_vacuum(const LatticeVector& charge, Covector offset) {
  return Ket{{}, charge, std::move(offset)};
}

FockVector FockVector::single(Ket k, Rational coeff) {
  FockVector v;
  v.add(k, coeff);
  return v;
}

void FockVector::add(const Ket& k, const Rational& coeff) {
  if (latva::is_zero(coeff)) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    it = terms_.emplace(k, coeff).first;
    it->second.canonicalize();
  } else {
    it->second += coeff;
    it->second.canonicalize();
    if (latva::is_zero(it->second)) terms_.erase(it);
  }
}

void FockVector::add(const FockVector& v, const Rational& scale) {
  if (latva::is_zero(scale)) return;
  for (const auto& [k, c] : v.terms_) add(k, c * scale);
}

FockVector FockVector::operator-() const {
  FockVector r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

FockVector FockVector::scaled(const Rational& q) const {
  FockVector r;
  if (latva::is_zero(q)) return r;
  for (const auto& [k, c] : terms_) {
    auto it = r.terms_.emplace(k, c * q).first;
    it->second.canonicalize();
  }
  return r;
}

std::optional<Rational> FockVector::ratio_to(const FockVector& o) const {
  if (is_zero()) return Rational(0);
  if (o.is_zero()) return std::nullopt;
  if (terms_.size() != o.terms_.size()) return std::nullopt;
  auto it = terms_.begin();
  auto jt = o.terms_.begin();
  Rational ratio = it->second / jt->second;
  for (; it != terms_.end(); ++it, ++jt) {
    if (!(it->first == jt->first)) return std::nullopt;
    if (it->second != ratio * jt->second) return std::nullopt;
  }
  return ratio;
}

std::string FockVector::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    Rational a = c;
    if (!first) {
      os << (sgn(a) < 0 ? " - " : " + ");
      if (sgn(a) < 0) a = -a;
    }
    first = false;
    if (a != 1) os << rational_to_string(a) << "*";
    os << k.to_string();
  }
  return os.str();
}

FockSpace::FockSpace(LatticeLevel level, Rational weight_cutoff)
    : level_(std::move(level)), cutoff_(std::move(weight_cutoff)) {
  if (level_.nondegenerate()) {
    for (int i = 0; i < level_.rank(); ++i) {
      Covector e(level_.rank(), Rational(0));
      e[i] = 1;
      dual_basis_.push_back(level_.gram_inverse_times(e));
    }
  }
}

const Covector& FockSpace::dual_basis(int i) const {
  if (dual_basis_.empty())
    throw std::invalid_argument("dual basis requires a nondegenerate level");
  return dual_basis_[i];
}

void FockSpace::check_rank(size_t n, const char* who) const {
  if (n != static_cast<size_t>(level_.rank()))
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

Covector FockSpace::momentum(const Ket& k) const {
  check_rank(k.charge.size(), "momentum");
  auto cg = level_.gram_times(k.charge);
  Covector out(level_.rank());
  for (int i = 0; i < level_.rank(); ++i) {
    out[i] = to_rational(cg[i]);
    if (!k.offset.empty()) out[i] += k.offset[i];
  }
  return out;
}

Rational FockSpace::weight(const Ket& k) const {
  Covector mom = momentum(k);
  bool zero = std::all_of(mom.begin(), mom.end(), [](const Rational& q) { return latva::is_zero(q); });
  Rational quad = 0;
  if (!zero) {
    Covector inv = level_.gram_inverse_times(mom);
    for (int i = 0; i < level_.rank(); ++i) quad += mom[i] * inv[i];
    quad /= 2;
  }
  Rational w = quad + Rational(k.mode_weight());
  w.canonicalize();
  return w;
}

Rational FockSpace::max_weight(const FockVector& v) const {
  Rational m = 0;
  bool first = true;
  for (const auto& [k, c] : v.terms()) {
    Rational w = weight(k);
    if (first || w > m) m = w;
    first = false;
  }
  return m;
}

FockVector FockSpace::apply_h(const LatticeVector& alpha, int n, const FockVector& v) const {
  Covector a(alpha.size());
  for (size_t i = 0; i < alpha.size(); ++i) a[i] = to_rational(alpha[i]);
  return apply_h(a, n, v);
}

FockVector FockSpace::apply_h(const Covector& alpha, int n, const FockVector& v) const {
  check_rank(alpha.size(), "apply_h");
  FockVector out;
  // c(alpha, b_j) for each basis direction
  Covector galpha = level_.gram_times(alpha);
  for (const auto& [ket, coeff] : v.terms()) {
    if (n == 0) {
      Covector mom = momentum(ket);
      Rational e = 0;
      for (int i = 0; i < level_.rank(); ++i) e += alpha[i] * mom[i];
      out.add(ket, coeff * e);
      continue;
    }
    if (n > 0) {
      // contract away one mode (n, j); multiplicity is the multiset count
      for (int j = 0; j < level_.rank(); ++j) {
        if (latva::is_zero(galpha[j])) continue;
        auto it = std::find(ket.modes.begin(), ket.modes.end(), std::make_pair(n, j));
        if (it == ket.modes.end()) continue;
        long count = std::count(ket.modes.begin(), ket.modes.end(), std::make_pair(n, j));
        Ket k2 = ket;
        k2.modes.erase(k2.modes.begin() + (it - ket.modes.begin()));
        out.add(k2, coeff * galpha[j] * Rational(n) * Rational(count));
      }
      continue;
    }
    // n < 0: append a creation mode in each basis direction with weight alpha_i
    for (int i = 0; i < level_.rank(); ++i) {
      if (latva::is_zero(alpha[i])) continue;
      Ket k2 = ket;
      auto pos = std::lower_bound(k2.modes.begin(), k2.modes.end(), std::make_pair(-n, i));
      k2.modes.insert(pos, {-n, i});
      Rational w = weight(k2);
      if (w > cutoff_)
        throw TruncationError("apply_h: ket of weight " + rational_to_string(w) +
                              " exceeds cutoff " + rational_to_string(cutoff_));
      out.add(k2, coeff * alpha[i]);
    }
  }
  return out;
}

FockVector FockSpace::apply_shift(const LatticeVector& gamma, const FockVector& v,
                                  const SignCocycle& eps) const {
  check_rank(gamma.size(), "apply_shift");
  FockVector out;
  for (const auto& [ket, coeff] : v.terms()) {
    Ket k2 = ket;
    for (int i = 0; i < level_.rank(); ++i) k2.charge[i] += gamma[i];
    Rational w = weight(k2);
    if (w > cutoff_)
      throw TruncationError("apply_shift: ket of weight " + rational_to_string(w) +
                            " exceeds cutoff " + rational_to_string(cutoff_));
    int sign = eps.eval(gamma, ket.charge);
    out.add(k2, sign < 0 ? -coeff : coeff);
  }
  return out;
}

FockVector FockSpace::sugawara_L(int n, const FockVector& v) const {
  level_.require_nondegenerate("sugawara_L");
  FockVector out;
  for (const auto& [ket, coeff] : v.terms()) {
    FockVector src = FockVector::single(ket, coeff);
    int m = ket.max_mode();
    // nonzero normal-ordered pairs :h_k h_{n-k}: need max(k, n-k) <= m,
    // except that the h_0 slot contributes through the momentum.
    for (int k = n - m; k <= m; ++k) {
      int other = n - k;
      // direction of slot k is b_i, of slot n-k is the c-dual b_i*
      for (int i = 0; i < level_.rank(); ++i) {
        LatticeVector bi(level_.rank(), 0);
        bi[i] = 1;
        const Covector& bistar = dual_basis(i);
        FockVector mid, res;
        if (k >= other) {
          // h_k is the annihilation side: apply it first
          mid = apply_h(bi, k, src);
          if (mid.is_zero()) continue;
          res = apply_h(bistar, other, mid);
        } else {
          mid = apply_h(bistar, other, src);
          if (mid.is_zero()) continue;
          res = apply_h(bi, k, mid);
        }
        out.add(res, Rational(1, 2));
      }
    }
  }
  return out;
}

} // namespace latva
