#include "gadgetlab/zeno.hpp"

#include <cmath>
#include <numbers>

#include "gadgetlab/channels.hpp"
#include "gadgetlab/errors.hpp"

namespace gadgetlab {

namespace {

Operator projector1() {
  Operator p = Operator::Zero(2, 2);
  p(1, 1) = 1.0;
  return p;
}

void append_with_ancilla(LocalHamiltonian& dst, const LocalHamiltonian& src, const Operator& anc) {
  const int a = dst.layout().size() - 1;
  for (const LocalTerm& t : src.terms()) {
    std::vector<int> support = t.support;
    support.push_back(a);
    dst.add_term(kron(t.op, anc), std::move(support), t.label);
  }
}

Operator system_part(const Operator& joint, int a) {
  const Eigen::Index d = joint.rows() / 2;
  Operator out(d, 1);
  for (Eigen::Index i = 0; i < d; ++i) out(i, 0) = joint(2 * i + a, 0);
  return out;
}

}  // namespace

ZenoSpec make_zeno_spec(LocalHamiltonian h_i, LocalHamiltonian h_x, LocalHamiltonian h_p1, double delta_t) {
  if (!(delta_t > 0.0)) throw InvalidInput("delta_t must be positive");
  if (!(h_i.layout() == h_x.layout()) || !(h_i.layout() == h_p1.layout())) {
    throw InvalidInput("Zeno pieces must share a layout");
  }
  ZenoSpec spec{std::move(h_i), std::move(h_x), std::move(h_p1), 2.0 * std::numbers::pi / delta_t, delta_t};
  const Operator p1 = spec.h_p1.assemble();
  const double w2 = spec.omega * spec.omega;
  const Operator residual = p1 * p1 - w2 * identity(spec.layout().total_dim());
  if (residual.cwiseAbs().maxCoeff() > 1e-8 * w2) throw InvalidInput("H_P1^2 must equal omega^2 I");
  return spec;
}

ZenoSpec pauli_zeno_spec(const PauliString& a, const PauliString& b, const PauliString& c, double delta_t) {
  for (const PauliString* p : {&a, &b, &c}) {
    if (std::abs(std::abs(p->coeff) - 1.0) > 1e-12) throw InvalidInput("Pauli factors need unit coefficients");
  }
  if (!a.commutes_with(b) || !a.commutes_with(c) || !b.commutes_with(c)) {
    throw InvalidInput("Pauli factors must commute pairwise");
  }
  const int n = std::max({a.n_sites, b.n_sites, c.n_sites});
  const SiteLayout layout = SiteLayout::qubits(n);
  const double omega = 2.0 * std::numbers::pi / delta_t;
  auto scaled = [](PauliString p, double f) {
    p.coeff *= f;
    return p;
  };
  LocalHamiltonian h_i(layout), h_x(layout), h_p1(layout);
  h_i.add_pauli(scaled(a, -1.0), "-A");
  h_x.add_pauli(scaled(b, std::sqrt(omega / 2.0)), "B");
  h_x.add_pauli(scaled(c, std::sqrt(omega / 2.0)), "C");
  h_p1.add_pauli(scaled(a, -omega), "-wA");
  return make_zeno_spec(std::move(h_i), std::move(h_x), std::move(h_p1), delta_t);
}

LocalHamiltonian zeno_gadget(const ZenoSpec& spec) {
  LocalHamiltonian g(spec.layout().with_extra_sites({2}));
  append_with_ancilla(g, spec.h_i, identity(2));
  append_with_ancilla(g, spec.h_x, pauli_matrix(Pauli::X));
  append_with_ancilla(g, spec.h_p1, projector1());
  return g;
}

Operator zeno_hamiltonian(const ZenoSpec& spec) { return zeno_gadget(spec).assemble(); }

Operator effective_hamiltonian(const ZenoSpec& spec) {
  const Operator hx = spec.h_x.assemble();
  return hermitian_part(spec.h_i.assemble() -
                        hx * spec.h_p1.assemble() * hx / (spec.omega * spec.omega));
}

StepAmplitudes step_amplitudes(const ZenoSpec& spec, const State& psi) {
  const auto d = static_cast<Eigen::Index>(spec.layout().total_dim());
  return step_amplitudes(spec, psi, Operator::Zero(d, d));
}

StepAmplitudes step_amplitudes(const ZenoSpec& spec, const State& psi, const Operator& h_else) {
  const auto d = static_cast<Eigen::Index>(spec.layout().total_dim());
  if (psi.size() != d || h_else.rows() != d) throw InvalidInput("state or environment has the wrong dimension");
  const double dt = spec.delta_t;
  State joint = State::Zero(2 * d);
  for (Eigen::Index i = 0; i < d; ++i) joint(2 * i) = psi(i);
  const State out = evolve(herm_eig(zeno_hamiltonian(spec) + kron(h_else, identity(2))), joint, dt);
  const State want = evolve(herm_eig(effective_hamiltonian(spec) + h_else), psi, dt);
  StepAmplitudes s;
  s.delta_t = dt;
  s.err0 = (system_part(out, 0) - want).norm();
  s.amp1 = system_part(out, 1).norm();
  return s;
}

std::vector<TrajectoryPoint> simulate_zeno(const ZenoSpec& spec, const Operator& h_else, const Operator& rho0,
                                           const SimulationTask& task) {
  const auto d = static_cast<Eigen::Index>(spec.layout().total_dim());
  if (rho0.rows() != d || h_else.rows() != d) throw InvalidInput("state or environment has the wrong dimension");
  if (!(task.t_max > 0.0)) throw InvalidInput("t_max must be positive");
  for (const Observable& o : task.observables) {
    if (o.op.rows() != d) throw InvalidInput("observable '" + o.label + "' has the wrong dimension");
    if (std::abs(op_norm(o.op) - 1.0) > 1e-9) throw InvalidInput("observable '" + o.label + "' is not normalised");
  }
  const Channel step{Composition{{
      Channel{UnitaryConjugation{expm_ih(zeno_hamiltonian(spec) + kron(h_else, identity(2)), spec.delta_t)}},
      Channel{AncillaDephasing{2}},
  }}};
  const Eigensystem target = herm_eig(effective_hamiltonian(spec) + h_else);
  Operator anc0 = Operator::Zero(2, 2);
  anc0(0, 0) = 1.0;
  const Operator leak = kron(identity(static_cast<std::size_t>(d)), projector1());

  const auto steps = static_cast<long>(std::floor(task.t_max / spec.delta_t + 1e-9));
  std::vector<TrajectoryPoint> out;
  out.reserve(static_cast<std::size_t>(steps));
  Operator rho = kron(rho0, anc0);
  for (long k = 1; k <= steps; ++k) {
    rho = apply_channel(step, rho);
    TrajectoryPoint pt;
    pt.t = static_cast<double>(k) * spec.delta_t;
    pt.leak_prob = (leak * rho).trace().real();
    const Operator u = expm_ih(target, pt.t);
    const Operator exact = u * rho0 * u.adjoint();
    for (const Observable& o : task.observables) {
      const double v = (kron(o.op, identity(2)) * rho).trace().real();
      const double e = (o.op * exact).trace().real();
      pt.values.push_back(v);
      pt.exact.push_back(e);
      pt.errors.push_back(std::abs(v - e));
    }
    out.push_back(std::move(pt));
  }
  return out;
}

double trotter_error(const Operator& a, const Operator& b, double t) {
  const Complex i(0.0, 1.0);
  const Operator ga = i * a;
  const Operator gb = i * b;
  if (!is_hermitian(ga, 1e-10) || !is_hermitian(gb, 1e-10)) throw InvalidInput("A and B must be anti-Hermitian");
  // e^{tA} = exp(-i t (iA))
  const Operator lhs = expm_ih(hermitian_part(ga), t) * expm_ih(hermitian_part(gb), t);
  return op_norm(lhs - expm_ih(hermitian_part(ga + gb), t));
}

ConjugationDrift conjugation_drift(const LocalHamiltonian& h, const Operator& a, double t) {
  const Operator u = expm_ih(h.assemble(), -t);  // e^{itH}
  ConjugationDrift r;
  r.drift = op_norm(u * a * u.adjoint() - a);
  const double na = op_norm(a);
  r.ratio = na > 0.0 && t != 0.0 ? r.drift / (na * std::abs(t)) : 0.0;
  return r;
}

double noisy_error_budget(double eps, double d_state, double d_evo, double d_obs) {
  if (eps < 0.0 || d_state < 0.0 || d_evo < 0.0 || d_obs < 0.0) {
    throw InvalidInput("error budget terms must be non-negative");
  }
  return eps + d_state + d_evo + d_obs;
}

}  // namespace gadgetlab
