#pragma once

#include "gadgetlab/hamiltonians.hpp"
#include "gadgetlab/operators.hpp"

namespace gadgetlab {

// Unitary W = exp(S) with W P W^dagger = Q and S anti-Hermitian, block off-diagonal.
struct DirectRotation {
  Operator W;
  Operator S;
};

DirectRotation direct_rotation(const Operator& p, const Operator& q);

struct DavisKahanResult {
  double lhs = 0;  // ||W - I||
  double rhs = 0;  // sqrt(2)/gap * ||(B - A) P_A||
  bool holds = false;
};

// Throws HypothesisViolation when the spectral window assumptions fail.
DavisKahanResult davis_kahan_check(const Operator& a, const Operator& b, const Operator& pa,
                                   const Operator& pb, double alpha, double beta, double gap);

struct CommutatorCheck {
  double commutator_norm = 0;
  double f = 0;  // distance of PQP from the nearest projector
  double residual = 0;
};

CommutatorCheck projector_commutator_check(const Operator& p, const Operator& q);

Operator ad_power(const Operator& s, const Operator& h, int k);

struct AdRemainder {
  double remainder = 0;
  double bound = 0;
};

// Remainder of the order-k expansion of exp(S) H exp(-S), k in [0, 6].
AdRemainder ad_remainder(const Operator& s, const Operator& h, int k);

struct LocalAdBound {
  double ad_norm = 0;
  double reference = 0;  // n * J_S^k * J_H
  double ratio = 0;
};

// S = i * generator.
LocalAdBound local_ad_bound_check(const LocalHamiltonian& generator, const LocalHamiltonian& h, int k);

}  // namespace gadgetlab
