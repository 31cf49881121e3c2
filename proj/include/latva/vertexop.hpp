#ifndef LATVA_VERTEXOP_HPP
#define LATVA_VERTEXOP_HPP

#include <tuple>
#include <vector>

#include "latva/fock.hpp"

namespace latva {

// Truncated formal distribution: the z-coefficients of a vertex operator
// applied to a state.  Exponents in [window_lo, window_hi] are exact;
// exponents below zero_below are certified zero; anything else is unknown.
struct VertexExpansion {
  std::map<Rational, FockVector> terms;
  Rational window_lo, window_hi;
  Rational zero_below;

  FockVector coeff(const Rational& q) const; // throws TruncationError outside certified range
  bool is_zero_on_window() const;
  std::vector<Rational> support() const;
  // Least certified exponent with nonzero coefficient, if any in window.
  std::optional<Rational> leading() const;
};

struct VertexOptions {
  bool drop_creation_n1 = false; // negative control: corrupt exp(+) by dropping n = 1
  bool modified = false;         // compute the modified operator V-bar instead
};

// Coefficients of V^gamma(z) v on the window, per (3.5.2)-style factorization:
//   exp(sum_{n>0} h_{-n} z^n / n) tshift^gamma exp(-sum_{n>0} h_n z^{-n} / n)
//   kappa z^{<gamma, momentum>}
// with kappa the sign (-1)^{<gamma, momentum>} on integral momentum pairings.
VertexExpansion vertex_apply(const FockSpace& space, const LatticeVector& gamma,
                             const FockVector& v, const Rational& window_lo,
                             const Rational& window_hi, const SignCocycle& eps,
                             const VertexOptions& opts = {});

// Everything from the leading exponent up to window_hi.
VertexExpansion vertex_apply_full(const FockSpace& space, const LatticeVector& gamma,
                                  const FockVector& v, const Rational& window_hi,
                                  const SignCocycle& eps, const VertexOptions& opts = {});

// V-bar = exp(-sum_{n>0} h_{-n} z^n/n) V(z): the creation exponential cancels.
VertexExpansion modified_vertex_apply(const FockSpace& space, const LatticeVector& gamma,
                                      const FockVector& v, const Rational& window_lo,
                                      const Rational& window_hi, const SignCocycle& eps);

// Leading exponent and top coefficient of V^{g1}(z) e^{g2}; the exponent is
// c(g1, g2) and the coefficient lies on the e^{g1+g2} line.
std::pair<long long, FockVector> ope_leading(const LatticeLevel& level, const LatticeVector& g1,
                                             const LatticeVector& g2, const SignCocycle& eps);

// Left minus right side of the defining ODE
//   z d/dz V = sum_{n>0} h_{-n} V z^n + sum_{n>=0} V h_n z^{-n}
// on the window, evaluated on the test vector.
VertexExpansion ode_residual(const FockSpace& space, const LatticeVector& gamma,
                             const Rational& window_lo, const Rational& window_hi,
                             const SignCocycle& eps, const FockVector& test,
                             const VertexOptions& opts = {});

struct LocalityReport {
  long checked = 0; // certified monomials compared
  // nonzero residual entries (z_exp, w_exp, coefficient)
  std::vector<std::tuple<Rational, Rational, FockVector>> nonzero;
  bool zero() const { return nonzero.empty(); }
};

// Coefficients of (z-w)^N [ V^{g1}(z) V^{g2}(w) - kswap V^{g2}(w) V^{g1}(z) ]
// on a certified box of monomials, with the Koszul sign
// kswap = (-1)^{c(g1,g1) c(g2,g2)}.  `orders` controls the box depth past the
// leading total degree.
LocalityReport locality_residual(const FockSpace& space, const LatticeVector& g1,
                                 const LatticeVector& g2, int N, int orders,
                                 const SignCocycle& eps, const FockVector& v);

// Rebuilds the basis sign table from OPE top coefficients; per Lemma-3.7-style
// reconstruction this must reproduce eps exactly.
SignCocycle cocycle_roundtrip(const LatticeLevel& level, const SignCocycle& eps);

// Compares the reconstructed table against eps over a box and the commutator
// against the target pairing (-1)^{c(g1,g2)+c(g1,g1)c(g2,g2)}.  Empty string
// on success, witness description otherwise.
std::string roundtrip_check(const LatticeLevel& level, const SignCocycle& eps, int box);

} // namespace latva

#endif
