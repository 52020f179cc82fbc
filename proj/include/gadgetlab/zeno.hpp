#pragma once

#include <string>
#include <vector>

#include "gadgetlab/hamiltonians.hpp"
#include "gadgetlab/operators.hpp"

namespace gadgetlab {

// H' = H_I x I + H_X x X + H_P1 x |1><1| with one ancilla qubit appended and
// omega = 2 pi / delta_t.
struct ZenoSpec {
  LocalHamiltonian h_i;
  LocalHamiltonian h_x;
  LocalHamiltonian h_p1;
  double omega = 0.0;
  double delta_t = 0.0;

  const SiteLayout& layout() const { return h_i.layout(); }
};

// Requires H_P1^2 = omega^2 I to 1e-8 omega^2.
ZenoSpec make_zeno_spec(LocalHamiltonian h_i, LocalHamiltonian h_x, LocalHamiltonian h_p1, double delta_t);

// Realises A B C for pairwise commuting Pauli strings with unit coefficients.
ZenoSpec pauli_zeno_spec(const PauliString& a, const PauliString& b, const PauliString& c, double delta_t);

LocalHamiltonian zeno_gadget(const ZenoSpec& spec);
Operator zeno_hamiltonian(const ZenoSpec& spec);
// H_I - omega^-2 H_X H_P1 H_X
Operator effective_hamiltonian(const ZenoSpec& spec);

struct StepAmplitudes {
  double delta_t = 0.0;
  double err0 = 0.0;  // || <0| e^{-i dt (H' + H_else)} |psi,0> - e^{-i dt (H + H_else)} psi ||
  double amp1 = 0.0;  // || <1| e^{-i dt (H' + H_else)} |psi,0> ||
};

StepAmplitudes step_amplitudes(const ZenoSpec& spec, const State& psi);
StepAmplitudes step_amplitudes(const ZenoSpec& spec, const State& psi, const Operator& h_else);

struct Observable {
  std::string label;
  Operator op;  // unit operator norm, on the system
};

struct SimulationTask {
  std::vector<Observable> observables;
  double t_max = 1.0;
};

struct TrajectoryPoint {
  double t = 0.0;
  double leak_prob = 0.0;
  std::vector<double> values;
  std::vector<double> exact;
  std::vector<double> errors;
};

// Alternates exp(-i dt (H' + H_else)) with ancilla dephasing for floor(t_max/dt) steps.
std::vector<TrajectoryPoint> simulate_zeno(const ZenoSpec& spec, const Operator& h_else, const Operator& rho0,
                                           const SimulationTask& task);

// || e^{tA} e^{tB} - e^{t(A+B)} || for anti-Hermitian A, B.
double trotter_error(const Operator& a, const Operator& b, double t);

struct ConjugationDrift {
  double drift = 0.0;  // || e^{itH} A e^{-itH} - A ||
  double ratio = 0.0;  // drift / (||A|| t)
};

ConjugationDrift conjugation_drift(const LocalHamiltonian& h, const Operator& a, double t);

double noisy_error_budget(double eps, double d_state, double d_evo, double d_obs);

}  // namespace gadgetlab
