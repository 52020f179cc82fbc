#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "gadgetlab/operators.hpp"

namespace gadgetlab {

struct Channel;

struct UnitaryConjugation {
  Operator U;
};

// Removes coherences between ancilla basis states; the ancilla is the last factor.
struct AncillaDephasing {
  int ancilla_dim = 2;
};

// rho -> (1 - p) rho + p tr(rho) I / d
struct Depolarizing {
  double p = 0.0;
};

// Stages are applied first to last.
struct Composition {
  std::vector<Channel> stages;
};

struct Channel {
  std::variant<UnitaryConjugation, AncillaDephasing, Depolarizing, Composition> kind;
};

Operator apply_channel(const Channel& c, const Operator& rho);

// Largest trace distance ||a(rho) - b(rho)||_1 over sampled pure states.
double estimate_one_to_one_distance(const Channel& a, const Channel& b, int dim, int samples,
                                    std::uint64_t seed);

}  // namespace gadgetlab
