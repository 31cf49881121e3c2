#ifndef LATVA_CCSYMBOL_HPP
#define LATVA_CCSYMBOL_HPP

#include <vector>

#include "latva/series.hpp"

namespace latva {

class LatticeLevel;

// f = t^v * f0 * fplus * fminus with f0 a ring unit, fplus in 1 + t R[[t]]
// and fminus - 1 supported on negative exponents with nilpotent coefficients.
// Unique given these constraints.
struct UnitDecomposition {
  long v;
  Scalar f0;
  LaurentSeries fplus;
  LaurentSeries fminus;
};

UnitDecomposition decompose_unit(const LaurentSeries& f);

// Contou-Carrere symbol of invertible Laurent series, normalized so that over
// the rational field <t,t> = -1, <t,a> = a, <a,t> = 1/a for ring units a.
Scalar cc_symbol(const LaurentSeries& f, const LaurentSeries& g);

// Tame symbol of the nilpotent-free reductions: (-1)^{v(f)v(g)} lead(g)^{v(f)} / lead(f)^{v(g)}.
// Independent route used to cross-check cc_symbol after augmentation.
Rational tame_symbol(const LaurentSeries& f, const LaurentSeries& g);

// {f1, f2}^{-c(gamma1, gamma2)}, the level-c commutator pairing on lifts.
Scalar commutator_pairing(const std::vector<long long>& gamma1, const LaurentSeries& f1,
                          const std::vector<long long>& gamma2, const LaurentSeries& f2,
                          const LatticeLevel& level);

} // namespace latva

#endif
