#ifndef LATVA_SPECTRAL_HPP
#define LATVA_SPECTRAL_HPP

#include <map>
#include <string>
#include <vector>

#include "latva/repmod.hpp"
#include "latva/series.hpp"

namespace latva {

// Polar jet of a t^vee-valued connection form: nu = sum_{n>=0} lambda_n
// t^{-n-1} dt modulo regular forms; pairing with a = alpha t^n in t(O) is
// Res(a nu) = <lambda_n, alpha>.  The optional regular part carries full
// C-elements (coefficients of t^m dt, m >= 0).
struct ConnectionJet {
  int rank = 0;
  std::map<long, Covector> polar;   // n >= 0 -> lambda_n
  std::map<long, Covector> regular; // m >= 0 -> coefficient of t^m dt

  static ConnectionJet zero(int rank) { return ConnectionJet{rank, {}, {}}; }
  Covector lambda(long n) const; // zero covector outside the support
  void set_lambda(long n, Covector v);
  bool is_zero() const;

  ConnectionJet operator+(const ConnectionJet& o) const;
  bool operator==(const ConnectionJet& o) const;
};

// Spectral parameter of a module: irregular polar part, residue with its
// class mod Gamma^vee, and the central character in Gamma^vee / c(Gamma).
struct SpectralPoint {
  std::map<long, Covector> irregular; // n >= 1
  Covector residue;
  Covector residue_class;             // fractional parts in [0,1)
  std::vector<Integer> central_character;

  bool operator==(const SpectralPoint& o) const;
  std::string to_string() const;
};

// nu-twisted Heisenberg action: h^alpha_n + <lambda_n, alpha> for n >= 0,
// unchanged for n < 0.
FockVector apply_h_twisted(const FockSpace& space, const ConnectionJet& nu, const Covector& alpha,
                           int n, const FockVector& v);
FockVector apply_h_twisted(const FockSpace& space, const ConnectionJet& nu,
                           const LatticeVector& alpha, int n, const FockVector& v);

// Gauge action nu + gamma_check dt/t + polar part of dlog(u); the regular
// part of dlog(u) dies in the quotient by omega(O).
ConnectionJet apply_gauge(const LatticeVector& gamma_check, const LaurentSeries& unit,
                          const ConnectionJet& nu);

// Reads off the spectral point of (the nu-twist of) a module from the joint
// eigenvalues of the annihilation operators on a generating vector.  Throws
// std::invalid_argument with a witness mode if v is not a joint eigenvector.
SpectralPoint support_of_module(const FockSpace& space, const ConnectionJet& nu,
                                const DualQuotient& dq, const FockVector& v);

// The module together with a twisted action; for nu = 0 this is the module
// itself.
struct TwistedModule {
  InducedModule module;
  ConnectionJet nu;

  FockVector apply_h(const FockSpace& space, const LatticeVector& alpha, int n,
                     const FockVector& v) const {
    return apply_h_twisted(space, nu, alpha, n, v);
  }
};

TwistedModule sections_at_point(const InducedModule& m, const ConnectionJet& nu);

// class(nu): expected support shift of a nu-twist.
SpectralPoint spectral_class(const ConnectionJet& nu);
SpectralPoint spectral_sum(const SpectralPoint& base, const ConnectionJet& nu);

} // namespace latva

#endif
