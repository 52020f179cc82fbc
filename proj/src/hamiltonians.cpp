#include "gadgetlab/hamiltonians.hpp"

#include <algorithm>
#include <cmath>

#include "gadgetlab/errors.hpp"

namespace gadgetlab {

void LocalHamiltonian::add_term(Operator op, std::vector<int> support, std::string label) {
  add_term(LocalTerm{std::move(op), std::move(support), std::move(label), std::nullopt});
}

void LocalHamiltonian::add_term(LocalTerm term) {
  for (int s : term.support) {
    if (s < 0 || s >= layout_.size()) throw InvalidInput("term support outside layout");
  }
  const auto d = static_cast<Eigen::Index>(layout_.subsystem_dim(term.support));
  if (term.op.rows() != d || term.op.cols() != d) {
    throw InvalidInput("term '" + term.label + "' has the wrong shape for its support");
  }
  if (!is_hermitian(term.op)) throw InvalidInput("term '" + term.label + "' is not Hermitian");
  if (term.op.cwiseAbs().maxCoeff() == 0.0) return;
  terms_.push_back(std::move(term));
}

void LocalHamiltonian::add_pauli(const PauliString& p, std::string label) {
  if (p.coeff == 0.0) return;
  std::vector<int> support = p.support();
  Operator local = Operator::Identity(1, 1);
  std::string letters;
  for (const auto& [site, q] : p.ops) {
    if (site >= layout_.size() || layout_.dim(site) != 2) {
      throw InvalidInput("Pauli term on a non-qubit or missing site");
    }
    local = kron(local, pauli_matrix(q));
    letters.push_back(static_cast<char>(q));
  }
  if (label.empty()) label = p.letters();
  add_term(LocalTerm{p.coeff * local, std::move(support), std::move(label),
                     PauliTag{std::move(letters), p.coeff}});
}

Operator LocalHamiltonian::assemble() const {
  const auto n = static_cast<Eigen::Index>(layout_.total_dim());
  Operator h = Operator::Zero(n, n);
  for (const auto& t : terms_) {
    if (t.support.empty()) {
      h += t.op(0, 0) * Operator::Identity(n, n);
    } else {
      h += embed(t.op, t.support, layout_);
    }
  }
  return h;
}

LocalHamiltonian operator+(const LocalHamiltonian& a, const LocalHamiltonian& b) {
  if (!(a.layout() == b.layout())) throw InvalidInput("cannot add Hamiltonians on different layouts");
  LocalHamiltonian out = a;
  for (const auto& t : b.terms()) out.add_term(t);
  return out;
}

InteractionHypergraph hypergraph(const LocalHamiltonian& h) {
  InteractionHypergraph g;
  g.n_vertices = h.layout().size();
  for (const auto& t : h.terms()) {
    auto e = t.support;
    std::sort(e.begin(), e.end());
    g.edges.push_back(std::move(e));
  }
  return g;
}

HypergraphStats hypergraph_stats(const LocalHamiltonian& h) {
  HypergraphStats s;
  std::vector<int> degree(static_cast<std::size_t>(h.layout().size()), 0);
  for (const auto& t : h.terms()) {
    s.k = std::max(s.k, static_cast<int>(t.support.size()));
    s.J = std::max(s.J, op_norm(t.op));
    for (int v : t.support) ++degree[static_cast<std::size_t>(v)];
  }
  s.N = static_cast<int>(h.terms().size());
  if (!degree.empty()) s.d = *std::max_element(degree.begin(), degree.end());
  return s;
}

LocalHamiltonian pauli_chain(int m, ChainParams params, bool periodic) {
  if (m < 2) throw InvalidInput("pauli_chain needs at least 2 sites");
  LocalHamiltonian h(SiteLayout::qubits(m));
  const int bonds = periodic ? m : m - 1;
  for (int i = 0; i < bonds; ++i) {
    PauliString zz;
    zz.n_sites = m;
    zz.coeff = params.zz;
    zz.ops[i] = Pauli::Z;
    zz.ops[(i + 1) % m] = Pauli::Z;
    h.add_pauli(zz, "ZZ" + std::to_string(i));
  }
  for (int i = 0; i < m; ++i) {
    h.add_pauli(PauliString::single(m, i, Pauli::X, params.x), "X" + std::to_string(i));
  }
  return h;
}

LocalHamiltonian qutrit_number_hamiltonian(int n) {
  if (n < 1) throw InvalidInput("qutrit chain needs at least one site");
  LocalHamiltonian h(SiteLayout(std::vector<int>(static_cast<std::size_t>(n), 3)));
  Operator p = Operator::Zero(3, 3);
  p(1, 1) = 1.0;
  p(2, 2) = 1.0;
  for (int j = 0; j < n; ++j) h.add_term(p, {j}, "N" + std::to_string(j));
  return h;
}

Operator default_qutrit_isometry() {
  Operator v = Operator::Zero(4, 3);
  v(0, 0) = 1.0;  // down -> |00>
  v(1, 1) = 1.0;  // zero -> |01>
  v(2, 2) = 1.0;  // up   -> |10>
  return v;
}

Operator QutritEncoding::encode_state(const Operator& rho) const {
  return encoder * rho * encoder.adjoint();
}

Operator QutritEncoding::encode_observable(const Operator& o) const {
  return encoder * o * encoder.adjoint();
}

QutritEncoding qutrit_to_qubit_simulator(int n, const std::optional<Operator>& isometry) {
  if (n < 1) throw InvalidInput("qutrit chain needs at least one site");
  const Operator v = isometry.value_or(default_qutrit_isometry());
  if (v.rows() != 4 || v.cols() != 3) throw InvalidInput("isometry must map C^3 into C^2 x C^2");
  if ((v.adjoint() * v - identity(3)).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidInput("map is not an isometry");
  }
  const SiteLayout qubits = SiteLayout::qubits(2 * n);
  QutritEncoding enc;
  enc.n = n;
  enc.isometry = v;
  enc.encoder = Operator::Identity(1, 1);
  for (int j = 0; j < n; ++j) enc.encoder = kron(enc.encoder, v);

  const LocalHamiltonian target = qutrit_number_hamiltonian(n);
  enc.simulator = LocalHamiltonian(qubits);
  for (const auto& t : target.terms()) {
    const int j = t.support.front();
    enc.simulator.add_term(hermitian_part(v * t.op * v.adjoint()), {2 * j, 2 * j + 1}, t.label);
  }
  return enc;
}

}  // namespace gadgetlab
