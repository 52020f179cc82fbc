#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gadgetlab/operators.hpp"

namespace gadgetlab {

struct PauliTag {
  std::string letters;  // one letter per support site
  double coeff = 1.0;
};

struct LocalTerm {
  Operator op;  // tensor factors ordered as `support`
  std::vector<int> support;
  std::string label;
  std::optional<PauliTag> pauli;
};

class LocalHamiltonian {
 public:
  LocalHamiltonian() = default;
  explicit LocalHamiltonian(SiteLayout layout) : layout_(std::move(layout)) {}

  const SiteLayout& layout() const { return layout_; }
  const std::vector<LocalTerm>& terms() const { return terms_; }

  // Zero terms are dropped. Throws on non-Hermitian or misshapen operators.
  void add_term(Operator op, std::vector<int> support, std::string label = {});
  void add_term(LocalTerm term);
  void add_pauli(const PauliString& p, std::string label = {});

  Operator assemble() const;

 private:
  SiteLayout layout_;
  std::vector<LocalTerm> terms_;
};

LocalHamiltonian operator+(const LocalHamiltonian& a, const LocalHamiltonian& b);

struct InteractionHypergraph {
  int n_vertices = 0;
  std::vector<std::vector<int>> edges;
};

InteractionHypergraph hypergraph(const LocalHamiltonian& h);

struct HypergraphStats {
  int k = 0;     // largest support
  int d = 0;     // largest number of terms touching one site
  double J = 0;  // largest term operator norm
  int N = 0;     // number of terms
};

HypergraphStats hypergraph_stats(const LocalHamiltonian& h);

struct ChainParams {
  double zz = 1.0;
  double x = 1.0;
};

// sum zz Z_i Z_{i+1} + x X_i on m qubits.
LocalHamiltonian pauli_chain(int m, ChainParams params, bool periodic = false);

// Qutrit basis order: down, zero, up.
LocalHamiltonian qutrit_number_hamiltonian(int n);

Operator default_qutrit_isometry();

struct QutritEncoding {
  int n = 0;
  Operator isometry;  // single-site V : C^3 -> C^2 x C^2
  Operator encoder;   // V tensored n times
  LocalHamiltonian simulator;

  Operator encode_state(const Operator& rho) const;
  Operator encode_observable(const Operator& o) const;
};

// The simulator carries V P V^dagger on each qubit pair, so it agrees with
// encode_observable(H_n) on the encoded subspace.
QutritEncoding qutrit_to_qubit_simulator(int n, const std::optional<Operator>& isometry = std::nullopt);

}  // namespace gadgetlab
