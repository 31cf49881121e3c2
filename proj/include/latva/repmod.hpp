#ifndef LATVA_REPMOD_HPP
#define LATVA_REPMOD_HPP

#include <map>
#include <string>
#include <vector>

#include "latva/vertexop.hpp"

namespace latva {

// Weight-truncated induced module attached to a character class chi of
// Gamma^vee / c(Gamma) through the section of the dual quotient: all kets
// carry the fixed momentum offset mu = s(chi).
struct InducedModule {
  LatticeLevel level;
  std::vector<Integer> chi;     // class label in Smith coordinates
  std::vector<long long> mu;    // section value in Gamma^vee
  Rational cutoff;              // weight cutoff W
  std::vector<Ket> basis;       // all kets of weight <= W, sorted
  std::map<Rational, long> graded_dims;

  Covector offset() const;
  FockVector generator() const; // the pure offset vacuum e^0 with offset mu
};

// Enumerates the basis through weight W.  Charge enumeration requires a
// positive-definite level (indefinite nondegenerate levels have infinite
// graded components).
InducedModule build_module(const LatticeLevel& level, const std::vector<long long>& chi_rep,
                           const Rational& cutoff);
InducedModule build_module_from_class(const LatticeLevel& level, const std::vector<Integer>& chi,
                                      const Rational& cutoff);
// Uses the given representative as the offset instead of the canonical
// section value (isomorphic module, shifted presentation).
InducedModule build_module_with_offset(const LatticeLevel& level, const std::vector<long long>& mu,
                                       const Rational& cutoff);

bool is_positive_definite(const LatticeLevel& level);

// Least k with (h^gamma_n)^k v = 0, up to the cutoff bound; -1 when no power
// kills it below the cutoff (creation directions).
struct NilpotencyEntry {
  Ket ket;
  int n;
  long index; // -1 = not nilpotent up to the cutoff
};
struct NilpotencyReport {
  std::vector<NilpotencyEntry> entries;
  long max_index = 0;
  bool all_within_bound = true; // index <= floor(mode_weight / n) + 1 everywhere
};
NilpotencyReport nilpotency_certificate(const InducedModule& m, const LatticeVector& gamma,
                                        int max_n);

// Exact h^alpha_0 eigenvalue multiset on the truncation, and the certificate
// that every eigenvalue lies in <alpha, s(chi)> + <alpha, c(Gamma)>.
struct SpectrumReport {
  std::map<Rational, long> eigenvalues;
  bool in_lattice_coset = true;
};
SpectrumReport h0_spectrum(const InducedModule& m, const LatticeVector& alpha);

// Checks the modified-operator identities on every basis ket of weight <= wmax:
// (i) [h^{g'}_n, Vbar] = 0 for n > 0, (ii) [h^{g'}_n, Vbar] = c(g,g') z^n Vbar
// for n <= 0, (iii) z d/dz Vbar = Vbar (sum_{n>=0} h_n z^{-n}).  Empty string
// on success, witness otherwise.
std::string check_modified_vertex(const InducedModule& m, const LatticeVector& gamma,
                                  const SignCocycle& eps, const Rational& wmax,
                                  const Rational& window_hi);

// Lemma-3.8-style shadow: rebuilds the shift action on pure kets from the
// modified operator's single certified term and compares with apply_shift.
std::string check_shift_reconstruction(const InducedModule& m, const LatticeVector& gamma,
                                       const SignCocycle& eps);

// Graded character (weight -> dimension), for section-independence tests.
std::map<Rational, long> graded_character(const InducedModule& m);

} // namespace latva

#endif
