#ifndef LATVA_LATTICE_HPP
#define LATVA_LATTICE_HPP

#include <string>
#include <vector>

#include "latva/rational.hpp"

namespace latva {

using LatticeVector = std::vector<long long>; // element of Gamma or Gamma^vee
using Covector = std::vector<Rational>;       // element of t^vee (x) Q

// Lattice Gamma = Z^r with an integral symmetric bilinear form c (the level).
class LatticeLevel {
 public:
  LatticeLevel(int rank, std::vector<long long> gram_row_major,
               std::vector<std::string> labels = {});

  int rank() const { return rank_; }
  long long gram(int i, int j) const { return gram_[i * rank_ + j]; }
  const std::vector<long long>& gram_flat() const { return gram_; }
  const std::string& label(int i) const { return labels_[i]; }

  long long pairing(const LatticeVector& g1, const LatticeVector& g2) const;
  int parity(const LatticeVector& g) const; // c(g,g) mod 2

  Integer det() const;
  bool nondegenerate() const { return det() != 0; }
  void require_nondegenerate(const char* who) const;

  // c(gamma) in Gamma^vee (dual-basis coordinates).
  std::vector<long long> gram_times(const LatticeVector& g) const;
  Covector gram_times(const Covector& g) const;
  // c^{-1} mu for mu in Gamma^vee (x) Q; requires nondegenerate c.
  Covector gram_inverse_times(const Covector& mu) const;

 private:
  int rank_;
  std::vector<long long> gram_;
  std::vector<std::string> labels_;
};

// U * G * V = D with U, V unimodular and D = diag(d_1 | d_2 | ...).
struct SmithNormalForm {
  int rank;
  std::vector<Integer> U, V, D; // row-major r x r
  Integer d(int i) const { return D[i * rank + i]; }
};

SmithNormalForm smith_normal_form(int rank, const std::vector<Integer>& mat);

// Dual data of the level map c : Gamma -> Gamma^vee.  Coset classes of
// Gamma^vee / c(Gamma) are labeled by their Smith coordinates
// (a_1, ..., a_r) with 0 <= a_i < d_i (a_i = 0 forced on zero diagonal
// entries only for vectors in the image; arbitrary integers otherwise).
class DualQuotient {
 public:
  explicit DualQuotient(const LatticeLevel& level);

  const SmithNormalForm& smith() const { return smith_; }
  // Invariant factors > 1; their product is |det gram| when nondegenerate.
  const std::vector<Integer>& coker_factors() const { return coker_factors_; }
  Integer num_classes() const; // throws for degenerate levels

  // Class label of mu in Smith coordinates.
  std::vector<Integer> class_of(const std::vector<long long>& mu) const;
  // Section: lexicographically least nonnegative representative in Smith
  // coordinates, mapped back to Gamma^vee.
  std::vector<long long> section(const std::vector<Integer>& cls) const;
  std::vector<std::vector<Integer>> enumerate_classes() const;
  bool in_image(const std::vector<long long>& mu) const;

 private:
  int rank_;
  SmithNormalForm smith_;
  std::vector<Integer> uinv_; // U^{-1}, row-major
  std::vector<Integer> coker_factors_;
  bool nondegenerate_;
};

// Bimultiplicative +-1-valued 2-cocycle on Gamma determined by its values on
// ordered basis pairs.  Stored as bits: sign(i,j) = -1 iff bit set.
class SignCocycle {
 public:
  SignCocycle(int rank, std::vector<int> eps_basis); // entries +-1, row-major

  int rank() const { return rank_; }
  int basis_sign(int i, int j) const { return eps_[i * rank_ + j]; }
  // epsilon(g1, g2) in {+1, -1}.
  int eval(const LatticeVector& g1, const LatticeVector& g2) const;
  // epsilon(g1,g2) * epsilon(g2,g1)^{-1}.
  int commutator(const LatticeVector& g1, const LatticeVector& g2) const;

  bool operator==(const SignCocycle& o) const { return rank_ == o.rank_ && eps_ == o.eps_; }

 private:
  int rank_;
  std::vector<int> eps_;
};

// Basis-ordered representative: eps(b_i, b_j) = (-1)^{c(ij) + c(ii) c(jj)}
// for i > j, trivial on i <= j.  Its commutator pairing is
// (-1)^{c(g1,g2) + c(g1,g1) c(g2,g2)}.
SignCocycle build_cocycle(const LatticeLevel& level);

// Pointwise product with the bimultiplicative correction making the result a
// valid cocycle for the level c + c'.
SignCocycle baer_sum(const LatticeLevel& l1, const SignCocycle& e1, const LatticeLevel& l2,
                     const SignCocycle& e2);

// Checks all three SignCocycle invariants for the given level over a box
// |gamma_i| <= box; returns an empty string on success, else a witness.
std::string check_cocycle(const LatticeLevel& level, const SignCocycle& eps, int box);

DualQuotient dual_quotient(const LatticeLevel& level);

} // namespace latva

#endif
