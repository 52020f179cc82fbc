#include <map>
#include <random>

#include "doctest.h"
#include "gadgetlab/errors.hpp"
#include "gadgetlab/hamiltonians.hpp"
#include "gadgetlab/serialization.hpp"
#include "oracles.hpp"

using namespace gadgetlab;

namespace {

// Energy of a Z-only Pauli sum on a computational basis state (site 0 = high bit).
double z_energy(const std::vector<std::pair<std::vector<int>, double>>& terms, int n, int idx) {
  double e = 0.0;
  for (const auto& [sites, c] : terms) {
    int parity = 0;
    for (int s : sites) parity += (idx >> (n - 1 - s)) & 1;
    e += parity % 2 ? -c : c;
  }
  return e;
}

}  // namespace

TEST_CASE("two-bond Ising sum assembles to its basis-state energies") {
  LocalHamiltonian h(SiteLayout::qubits(3));
  h.add_pauli(PauliString::parse("ZZI"));
  h.add_pauli(PauliString::parse("IZZ"));
  const Operator m = h.assemble();
  for (int i = 0; i < 8; ++i) {
    CHECK(m(i, i).real() == z_energy({{{0, 1}, 1.0}, {{1, 2}, 1.0}}, 3, i));
  }
  CHECK(m.diagonal().real().transpose() == Eigen::RowVectorXd::Map(std::vector<double>{2, 0, -2, 0, 0, -2, 0, 2}.data(), 8));
  CHECK((m - Operator(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
  const HypergraphStats s = hypergraph_stats(h);
  CHECK(s.k == 2);
  CHECK(s.d == 2);
  CHECK(s.J == doctest::Approx(1.0));
  CHECK(s.N == 2);
}

TEST_CASE("zero terms are dropped") {
  LocalHamiltonian h(SiteLayout::qubits(2));
  h.add_pauli(PauliString::parse("ZZ", 0.0));
  h.add_term(Operator::Zero(2, 2), {1});
  CHECK(h.terms().empty());
  CHECK_THROWS_AS(h.add_term(Operator::Identity(4, 4), {0}), InvalidInput);
  Operator nonherm = Operator::Zero(2, 2);
  nonherm(0, 1) = 1.0;
  CHECK_THROWS_AS(h.add_term(nonherm, {0}), InvalidInput);
}

TEST_CASE("pauli_chain term counts") {
  CHECK(hypergraph_stats(pauli_chain(4, {1.0, 0.5}, false)).N == 7);
  CHECK(hypergraph_stats(pauli_chain(4, {1.0, 0.5}, true)).N == 8);
  CHECK_THROWS_AS(pauli_chain(1, {}, false), InvalidInput);
  const Operator h = pauli_chain(3, {0.7, -0.3}, false).assemble();
  const Operator want = 0.7 * (oracle::kron({oracle::Z(), oracle::Z(), oracle::I2()}) +
                               oracle::kron({oracle::I2(), oracle::Z(), oracle::Z()})) -
                        0.3 * (oracle::kron({oracle::X(), oracle::I2(), oracle::I2()}) +
                               oracle::kron({oracle::I2(), oracle::X(), oracle::I2()}) +
                               oracle::kron({oracle::I2(), oracle::I2(), oracle::X()}));
  CHECK((h - want).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("qutrit number Hamiltonian spectrum") {
  const Operator h1 = qutrit_number_hamiltonian(1).assemble();
  CHECK((h1 - Operator(Eigen::Vector3cd(0, 1, 1).asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
  const Eigen::VectorXd ev = herm_eig(qutrit_number_hamiltonian(3).assemble()).values;
  std::map<long, int> mult;
  for (Eigen::Index i = 0; i < ev.size(); ++i) ++mult[std::lround(ev(i))];
  CHECK(mult[0] == 1);
  CHECK(mult[1] == 6);
  CHECK(mult[2] == 12);
  CHECK(mult[3] == 8);
  CHECK_THROWS_AS(qutrit_number_hamiltonian(9), DimensionError);
}

TEST_CASE("qubit encoding of the qutrit chain reproduces its dynamics") {
  std::mt19937_64 rng(23);
  for (int n : {1, 2, 3}) {
    const QutritEncoding enc = qutrit_to_qubit_simulator(n);
    CHECK(hypergraph_stats(enc.simulator).k == 2);
    const Operator h = qutrit_number_hamiltonian(n).assemble();
    const Operator hs = enc.simulator.assemble();
    const int d = static_cast<int>(h.rows());
    for (int trial = 0; trial < 5; ++trial) {
      const oracle::Vec psi = oracle::random_state(d, rng);
      const Operator rho = psi * psi.adjoint();
      const double t = 0.37 * (trial + 1);
      const Operator u = oracle::expm(Complex(0, -t) * h);
      const Operator us = oracle::expm(Complex(0, -t) * hs);
      const Operator lhs = us * enc.encode_state(rho) * us.adjoint();
      const Operator rhs = enc.encode_state(u * rho * u.adjoint());
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
      const Operator obs = oracle::random_hermitian(d, rng);
      CHECK(std::abs((enc.encode_observable(obs) * enc.encode_state(rho)).trace() - (obs * rho).trace()) < 1e-12);
    }
  }
  Operator not_iso = Operator::Zero(4, 3);
  not_iso(0, 0) = not_iso(1, 1) = 1.0;
  not_iso(2, 2) = 0.5;
  CHECK_THROWS_AS(qutrit_to_qubit_simulator(1, not_iso), InvalidInput);
}

TEST_CASE("Hamiltonian JSON round trip") {
  std::mt19937_64 rng(29);
  LocalHamiltonian h(SiteLayout({2, 3, 2}));
  h.add_pauli([] {
    PauliString p;
    p.n_sites = 3;
    p.coeff = 0.25;
    p.ops[0] = Pauli::X;
    p.ops[2] = Pauli::Y;
    return p;
  }());
  h.add_term(oracle::random_hermitian(6, rng), {1, 2}, "dense");
  const LocalHamiltonian back = local_hamiltonian_from_json(nlohmann::json::parse(to_json(h).dump()));
  CHECK(back.layout() == h.layout());
  REQUIRE(back.terms().size() == h.terms().size());
  for (std::size_t i = 0; i < h.terms().size(); ++i) {
    CHECK((back.terms()[i].op - h.terms()[i].op).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(back.terms()[i].support == h.terms()[i].support);
    CHECK(back.terms()[i].label == h.terms()[i].label);
  }
}

TEST_CASE("Hamiltonian JSON rejects ambiguous and unknown fields") {
  const auto both = nlohmann::json::parse(
      R"({"dims":[2],"terms":[{"support":[0],"pauli":"Z","matrix":[[1,0],[0,0],[0,0],[-1,0]],"coeff":1,"label":"z"}]})");
  CHECK_THROWS_AS(local_hamiltonian_from_json(both), InvalidInput);
  const auto unknown = nlohmann::json::parse(R"({"dims":[2],"terms":[{"support":[0],"pauli":"Z","weight":2}]})");
  CHECK_THROWS_AS(local_hamiltonian_from_json(unknown), InvalidInput);
  const auto wrong_size = nlohmann::json::parse(R"({"dims":[2],"terms":[{"support":[0],"matrix":[[1,0]]}]})");
  CHECK_THROWS_AS(local_hamiltonian_from_json(wrong_size), InvalidInput);
  const auto ok = nlohmann::json::parse(R"({"dims":[2,2],"terms":[{"support":[0,1],"pauli":"ZZ","coeff":2}]})");
  CHECK(local_hamiltonian_from_json(ok).assemble()(0, 0) == Complex(2.0));
}
