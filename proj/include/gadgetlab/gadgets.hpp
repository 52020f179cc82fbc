#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gadgetlab/hamiltonians.hpp"
#include "gadgetlab/operators.hpp"

namespace gadgetlab {

// Target Hamiltonian H and gadget Hamiltonian H' on the target sites followed by
// the ancilla sites.
struct GadgetInstance {
  std::string kind;
  LocalHamiltonian target;
  LocalHamiltonian gadget;
  std::vector<int> ancilla_sites;
  double delta = 0.0;
  double condition_residual = 0.0;
  Operator ancilla_projector;
};

struct GadgetWitness {
  Operator P;        // on the ancillas
  Operator P_joint;  // U (I x P) U^dagger
  Operator U;
  Operator S;  // generator of U when U is a direct rotation, otherwise empty
  double eta = 0.0;
  double eps = 0.0;
  std::optional<double> delta;
};

// V_ab = (I x <a|) V (I x |b>) with the ancilla qubit last.
Operator ancilla_block(const Operator& v, int a, int b);

Operator default_ancilla_projector(int n_ancillas);

GadgetInstance first_order_gadget(const LocalHamiltonian& target, const Operator& v, double delta);
GadgetInstance second_order_gadget(const LocalHamiltonian& target, const Operator& v0, const Operator& v1,
                                   double delta);
GadgetInstance third_order_gadget(const LocalHamiltonian& target, const Operator& v0, const Operator& v1,
                                  const Operator& v2, double delta);

// A x B on two sites with one ancilla; all terms 2-local.
GadgetInstance subdivision_gadget(const Operator& a, const Operator& b, double delta);
// A x B x C on three sites with one ancilla; all terms 2-local.
GadgetInstance three_to_two_gadget(const Operator& a, const Operator& b, const Operator& c, double delta);

// Exact 2-local realisation of A x B x C for single-qubit A, B, C with one
// extra copy of the A qubit as ancilla. The known witness unitary is returned
// alongside; it has ||U - I|| = 2.
struct ExactGadget {
  GadgetInstance instance;
  Operator P_joint;
  Operator U;
};

ExactGadget exact_three_to_two(const Operator& a, const Operator& b, const Operator& c);

GadgetWitness witness_for_unitary(const GadgetInstance& g, const Operator& p, const Operator& u);
GadgetWitness verify_eta_eps(const GadgetInstance& g, const Operator& p, const Operator& p_joint);
// Throws RankMismatch when the low-energy space has the wrong dimension.
GadgetWitness verify_low_energy(const GadgetInstance& g, double threshold, const Operator& p);
GadgetWitness verify_low_energy(const GadgetInstance& g, double threshold);

struct GadgetPropertySample {
  std::vector<double> distances;
  std::vector<double> else_norms;
  double zeta_hat = 0.0;  // lower estimate
  double eps_hat = 0.0;
};

GadgetPropertySample sample_gadget_property(const GadgetInstance& g, const GadgetWitness& w,
                                            const std::vector<LocalHamiltonian>& environments);

// Random 1- and 2-local Pauli strings with strengths uniform in [0, j_max].
LocalHamiltonian random_environment(const SiteLayout& layout, int n_terms, double j_max, std::uint64_t seed);
// Single-site X, Y and Z terms of strength j_max on every target site.
std::vector<LocalHamiltonian> adversarial_environments(const SiteLayout& layout, double j_max);

struct PlacedGadget {
  GadgetInstance instance;
  GadgetWitness witness;
  std::vector<int> sites;  // instance target site j sits at sites[j]
};

struct CombinedGadget {
  LocalHamiltonian target;
  LocalHamiltonian gadget;
  std::vector<int> ancilla_sites;
  Operator P;
  Operator S;
  Operator U;
  double eta = 0.0;
  double eps = 0.0;

  int n_sites = 0;
  int n_gadgets = 0;
  double max_eps = 0.0;
  double max_eta = 0.0;
  double J = 0.0;
  double J_prime = 0.0;
  double J_prime_offdiag = 0.0;
  double sum_bound = 0.0;  // sum_i (eps_i + eta_i J)
  std::optional<double> delta;

  // n (eps + eta J + eta^3 J'_O + eta^4 J')
  double reference() const;
};

CombinedGadget combine_parallel(const std::vector<PlacedGadget>& parts, const SiteLayout& target_layout);

struct CombinedLowEnergy {
  bool condition_met = false;
  double required_delta = 0.0;
  bool rank_match = false;
  double eta = 0.0;
  double eps = 0.0;
};

CombinedLowEnergy combine_low_energy_check(const CombinedGadget& c, double delta_prime);

double gse_compare(const Operator& h, const Operator& h_prime);

struct EnergyBound {
  bool applicable = false;
  double norm = 0.0;           // ||H'||
  double rhs_proof = 0.0;      // (2^-k' J - eps) / (2 eta)
  double rhs_statement = 0.0;  // (2^-k' J - eps) / eta
  bool holds = false;          // against rhs_proof
};

EnergyBound energy_bound_check(double j, int k_prime, double eps, double eta, double norm_h_prime);
EnergyBound energy_bound_check(double j, const GadgetInstance& g, const GadgetWitness& w);

}  // namespace gadgetlab
