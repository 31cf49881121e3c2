#include "latva/spectral.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace latva {

namespace {

bool covector_zero(const Covector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return latva::is_zero(q); });
}

std::string covector_str(const Covector& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << rational_to_string(v[i]);
  os << ")";
  return os.str();
}

} // namespace

Covector ConnectionJet::lambda(long n) const {
  auto it = polar.find(n);
  return it == polar.end() ? Covector(rank, Rational(0)) : it->second;
}

void ConnectionJet::set_lambda(long n, Covector v) {
  if (n < 0) throw std::invalid_argument("ConnectionJet: polar index must be >= 0");
  if (v.size() != static_cast<size_t>(rank))
    throw std::invalid_argument("ConnectionJet: covector dimension mismatch");
  if (covector_zero(v))
    polar.erase(n);
  else
    polar[n] = std::move(v);
}

bool ConnectionJet::is_zero() const { return polar.empty(); }

ConnectionJet ConnectionJet::operator+(const ConnectionJet& o) const {
  if (rank != o.rank) throw std::invalid_argument("ConnectionJet: rank mismatch");
  ConnectionJet out = *this;
  for (const auto& [n, v] : o.polar) {
    Covector s = out.lambda(n);
    for (int i = 0; i < rank; ++i) s[i] += v[i];
    out.set_lambda(n, s);
  }
  for (const auto& [m, v] : o.regular) {
    auto it = out.regular.find(m);
    if (it == out.regular.end()) {
      out.regular[m] = v;
    } else {
      for (int i = 0; i < rank; ++i) it->second[i] += v[i];
      if (covector_zero(it->second)) out.regular.erase(it);
    }
  }
  return out;
}

bool ConnectionJet::operator==(const ConnectionJet& o) const {
  return rank == o.rank && polar == o.polar;
}

bool SpectralPoint::operator==(const SpectralPoint& o) const {
  return irregular == o.irregular && residue_class == o.residue_class &&
         central_character == o.central_character;
}

std::string SpectralPoint::to_string() const {
  std::ostringstream os;
  os << "irregular{";
  bool first = true;
  for (const auto& [n, v] : irregular) {
    if (!first) os << ", ";
    first = false;
    os << n << ":" << covector_str(v);
  }
  os << "} residue_class " << covector_str(residue_class) << " character (";
  for (size_t i = 0; i < central_character.size(); ++i)
    os << (i ? "," : "") << central_character[i].get_str();
  os << ")";
  return os.str();
}

FockVector apply_h_twisted(const FockSpace& space, const ConnectionJet& nu, const Covector& alpha,
                           int n, const FockVector& v) {
  FockVector out = space.apply_h(alpha, n, v);
  if (n >= 0 && !nu.polar.empty()) {
    Covector ln = nu.lambda(n);
    Rational shift = 0;
    for (size_t i = 0; i < alpha.size(); ++i) shift += ln[i] * alpha[i];
    out.add(v, shift);
  }
  return out;
}

FockVector apply_h_twisted(const FockSpace& space, const ConnectionJet& nu,
                           const LatticeVector& alpha, int n, const FockVector& v) {
  Covector a(alpha.size());
  for (size_t i = 0; i < alpha.size(); ++i) a[i] = to_rational(alpha[i]);
  return apply_h_twisted(space, nu, a, n, v);
}

ConnectionJet apply_gauge(const LatticeVector& gamma_check, const LaurentSeries& unit,
                          const ConnectionJet& nu) {
  auto v = unit.val();
  if (!v || *v != 0)
    throw std::invalid_argument("apply_gauge: unit series must be invertible with u(0) a unit");
  ConnectionJet out = nu;
  if (gamma_check.size() != static_cast<size_t>(nu.rank))
    throw std::invalid_argument("apply_gauge: cocharacter dimension mismatch");
  // the element (t u)^{gamma_check}: dlog = gamma_check (x) (dt/t + dlog u)
  Covector res = out.lambda(0);
  for (int i = 0; i < nu.rank; ++i) res[i] += to_rational(gamma_check[i]);
  out.set_lambda(0, res);
  // polar part of dlog(u) (t^{-n-1} coefficients, n >= 0); regular parts die
  // in the quotient by omega(O).  For a unit power series over Q this is
  // empty, nonzero only through nilpotent tails which have no rational slot.
  LaurentSeries dl = dlog(unit);
  for (const auto& [e, c] : dl.coeffs()) {
    if (e >= 0) continue;
    Rational q = c.augment();
    if (latva::is_zero(q)) continue;
    long n = -e - 1;
    Covector ln = out.lambda(n);
    for (int i = 0; i < nu.rank; ++i) ln[i] += q * to_rational(gamma_check[i]);
    out.set_lambda(n, ln);
  }
  return out;
}

SpectralPoint support_of_module(const FockSpace& space, const ConnectionJet& nu,
                                const DualQuotient& dq, const FockVector& v) {
  if (v.is_zero()) throw std::invalid_argument("support_of_module: zero vector");
  int r = space.level().rank();
  long nmax = 0;
  for (const auto& [n, l] : nu.polar) nmax = std::max(nmax, n);
  for (const auto& [k, c] : v.terms()) nmax = std::max<long>(nmax, k.max_mode());

  SpectralPoint out;
  Covector residue(r, Rational(0));
  for (long n = 0; n <= nmax; ++n) {
    Covector ln(r, Rational(0));
    for (int i = 0; i < r; ++i) {
      LatticeVector bi(r, 0);
      bi[i] = 1;
      FockVector w = apply_h_twisted(space, nu, bi, static_cast<int>(n), v);
      auto ratio = w.ratio_to(v);
      if (!ratio)
        throw std::invalid_argument("support_of_module: not a joint eigenvector of h[" +
                                    std::to_string(i + 1) + "]_" + std::to_string(n));
      ln[i] = *ratio;
    }
    if (n == 0)
      residue = ln;
    else if (!covector_zero(ln))
      out.irregular[n] = ln;
  }
  out.residue = residue;
  out.residue_class.resize(r);
  for (int i = 0; i < r; ++i) out.residue_class[i] = fractional_part(residue[i]);

  // central character: class of the underlying ket momentum in Gamma^vee/c(Gamma)
  const Ket& k0 = v.terms().begin()->first;
  std::vector<long long> mom_int(r);
  Covector offs = k0.offset.empty() ? Covector(r, Rational(0)) : k0.offset;
  for (int i = 0; i < r; ++i) {
    if (!latva::is_integer(offs[i]))
      throw std::invalid_argument(
          "support_of_module: central character needs an integral module offset");
    mom_int[i] = offs[i].get_num().get_si();
  }
  out.central_character = dq.class_of(mom_int);
  return out;
}

TwistedModule sections_at_point(const InducedModule& m, const ConnectionJet& nu) {
  if (nu.rank != m.level.rank())
    throw std::invalid_argument("sections_at_point: rank mismatch");
  return TwistedModule{m, nu};
}

SpectralPoint spectral_class(const ConnectionJet& nu) {
  SpectralPoint out;
  for (const auto& [n, l] : nu.polar) {
    if (n == 0) continue;
    out.irregular[n] = l;
  }
  out.residue = nu.lambda(0);
  out.residue_class.resize(nu.rank);
  for (int i = 0; i < nu.rank; ++i) out.residue_class[i] = fractional_part(out.residue[i]);
  out.central_character.assign(nu.rank, Integer(0));
  return out;
}

SpectralPoint spectral_sum(const SpectralPoint& base, const ConnectionJet& nu) {
  SpectralPoint out = base;
  for (const auto& [n, l] : nu.polar) {
    if (n == 0) continue;
    auto it = out.irregular.find(n);
    if (it == out.irregular.end()) {
      out.irregular[n] = l;
    } else {
      for (int i = 0; i < nu.rank; ++i) it->second[i] += l[i];
      if (covector_zero(it->second)) out.irregular.erase(it);
    }
  }
  Covector res0 = nu.lambda(0);
  for (size_t i = 0; i < out.residue.size(); ++i) {
    out.residue[i] += res0[i];
    out.residue_class[i] = fractional_part(out.residue[i]);
  }
  return out;
}

} // namespace latva
