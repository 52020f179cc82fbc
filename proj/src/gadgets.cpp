#include "gadgetlab/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gadgetlab/errors.hpp"
#include "gadgetlab/fit.hpp"
#include "gadgetlab/rotations.hpp"

namespace gadgetlab {

namespace {

Operator projector1() {
  Operator p = Operator::Zero(2, 2);
  p(1, 1) = 1.0;
  return p;
}

Operator projector0() {
  Operator p = Operator::Zero(2, 2);
  p(0, 0) = 1.0;
  return p;
}

void append_scaled(LocalHamiltonian& dst, const LocalHamiltonian& src, double factor) {
  for (LocalTerm t : src.terms()) {
    t.op *= factor;
    if (t.pauli) t.pauli->coeff *= factor;
    dst.add_term(std::move(t));
  }
}

std::vector<int> all_sites(const SiteLayout& layout) {
  std::vector<int> s(static_cast<std::size_t>(layout.size()));
  for (int i = 0; i < layout.size(); ++i) s[static_cast<std::size_t>(i)] = i;
  return s;
}

double zero_tolerance(const Operator& a, const Operator& b) {
  return 1e-10 * (1.0 + op_norm(a) + op_norm(b));
}

void require_zero(const Operator& block, const char* name, double tol) {
  if (block.size() > 0 && op_norm(block) > tol) {
    throw InvalidInput(std::string("gadget condition violated: ") + name + " must vanish");
  }
}

SiteLayout joint_layout(const LocalHamiltonian& target) { return target.layout().with_extra_sites({2}); }

LocalHamiltonian as_single_term(const SiteLayout& layout, const Operator& v, const std::string& label) {
  LocalHamiltonian h(layout);
  h.add_term(v, all_sites(layout), label);
  return h;
}

LocalHamiltonian h0_term(const SiteLayout& layout) {
  LocalHamiltonian h(layout);
  h.add_term(projector1(), {layout.size() - 1}, "H0");
  return h;
}

GadgetInstance make_instance(std::string kind, const LocalHamiltonian& target, double delta,
                             const std::vector<std::pair<LocalHamiltonian, double>>& parts) {
  GadgetInstance g;
  g.kind = std::move(kind);
  g.target = target;
  g.delta = delta;
  const SiteLayout layout = joint_layout(target);
  g.gadget = LocalHamiltonian(layout);
  for (const auto& [h, factor] : parts) append_scaled(g.gadget, h, factor);
  g.ancilla_sites = {layout.size() - 1};
  g.ancilla_projector = projector0();
  return g;
}

void require_positive(double delta) {
  if (!(delta > 0.0)) throw InvalidInput("gadget energy scale must be positive");
}

void require_joint_shape(const LocalHamiltonian& target, const Operator& v) {
  const auto d = static_cast<Eigen::Index>(2 * target.layout().total_dim());
  if (v.rows() != d || v.cols() != d) throw InvalidInput("perturbation has the wrong dimension");
}

GadgetInstance second_order_parts(std::string kind, const LocalHamiltonian& target, const LocalHamiltonian& v0,
                                  const LocalHamiltonian& v1, double delta) {
  require_positive(delta);
  const Operator dv0 = v0.assemble();
  const Operator dv1 = v1.assemble();
  const double tol = zero_tolerance(dv0, dv1);
  require_zero(ancilla_block(dv0, 1, 0), "V0_10", tol);
  require_zero(ancilla_block(dv0, 0, 1), "V0_01", tol);
  require_zero(ancilla_block(dv1, 0, 0), "V1_00", tol);
  GadgetInstance g = make_instance(std::move(kind), target, delta,
                                   {{h0_term(v0.layout()), delta}, {v1, std::sqrt(delta)}, {v0, 1.0}});
  g.condition_residual = op_norm(target.assemble() - ancilla_block(dv0, 0, 0) +
                                 ancilla_block(dv1, 0, 1) * ancilla_block(dv1, 1, 0));
  return g;
}

GadgetInstance third_order_parts(std::string kind, const LocalHamiltonian& target, const LocalHamiltonian& v0,
                                 const LocalHamiltonian& v1, const LocalHamiltonian& v2, double delta) {
  require_positive(delta);
  const Operator dv0 = v0.assemble();
  const Operator dv1 = v1.assemble();
  const Operator dv2 = v2.assemble();
  const double tol = zero_tolerance(dv0, dv1) + zero_tolerance(dv2, dv2);
  require_zero(ancilla_block(dv1, 1, 0), "V1_10", tol);
  require_zero(ancilla_block(dv1, 0, 1), "V1_01", tol);
  require_zero(ancilla_block(dv0, 1, 0), "V0_10", tol);
  require_zero(ancilla_block(dv0, 0, 1), "V0_01", tol);
  require_zero(ancilla_block(dv2, 0, 0), "V2_00", tol);
  const Operator v2_01 = ancilla_block(dv2, 0, 1);
  const Operator v2_10 = ancilla_block(dv2, 1, 0);
  require_zero(ancilla_block(dv1, 0, 0) - v2_01 * v2_10, "V1_00 - V2_01 V2_10", tol);
  GadgetInstance g = make_instance(
      std::move(kind), target, delta,
      {{h0_term(v0.layout()), delta}, {v2, std::pow(delta, 2.0 / 3.0)}, {v1, std::cbrt(delta)}, {v0, 1.0}});
  g.condition_residual =
      op_norm(target.assemble() - ancilla_block(dv0, 0, 0) - v2_01 * ancilla_block(dv2, 1, 1) * v2_10);
  return g;
}

void require_local_hermitian(const Operator& a, const char* name) {
  if (a.rows() < 2 || a.rows() != a.cols() || !is_hermitian(a)) {
    throw InvalidInput(std::string(name) + " must be a Hermitian operator on one site");
  }
}

}  // namespace

Operator ancilla_block(const Operator& v, int a, int b) {
  if (v.rows() % 2 != 0 || v.rows() != v.cols()) throw InvalidInput("no ancilla qubit to block on");
  const Eigen::Index d = v.rows() / 2;
  Operator out(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) out(i, j) = v(2 * i + a, 2 * j + b);
  }
  return out;
}

Operator default_ancilla_projector(int n_ancillas) {
  Operator p = Operator::Identity(1, 1);
  for (int i = 0; i < n_ancillas; ++i) p = kron(p, projector0());
  return p;
}

GadgetInstance first_order_gadget(const LocalHamiltonian& target, const Operator& v, double delta) {
  require_positive(delta);
  require_joint_shape(target, v);
  const SiteLayout layout = joint_layout(target);
  GadgetInstance g = make_instance("first-order", target, delta,
                                   {{h0_term(layout), delta}, {as_single_term(layout, v, "V"), 1.0}});
  g.condition_residual = op_norm(target.assemble() - ancilla_block(v, 0, 0));
  return g;
}

GadgetInstance second_order_gadget(const LocalHamiltonian& target, const Operator& v0, const Operator& v1,
                                   double delta) {
  require_joint_shape(target, v0);
  require_joint_shape(target, v1);
  const SiteLayout layout = joint_layout(target);
  return second_order_parts("second-order", target, as_single_term(layout, v0, "V0"),
                            as_single_term(layout, v1, "V1"), delta);
}

GadgetInstance third_order_gadget(const LocalHamiltonian& target, const Operator& v0, const Operator& v1,
                                  const Operator& v2, double delta) {
  require_joint_shape(target, v0);
  require_joint_shape(target, v1);
  require_joint_shape(target, v2);
  const SiteLayout layout = joint_layout(target);
  return third_order_parts("third-order", target, as_single_term(layout, v0, "V0"),
                           as_single_term(layout, v1, "V1"), as_single_term(layout, v2, "V2"), delta);
}

GadgetInstance subdivision_gadget(const Operator& a, const Operator& b, double delta) {
  require_local_hermitian(a, "A");
  require_local_hermitian(b, "B");
  const SiteLayout tl({static_cast<int>(a.rows()), static_cast<int>(b.rows())});
  LocalHamiltonian target(tl);
  target.add_term(kron(a, b), {0, 1}, "AB");

  const SiteLayout layout = tl.with_extra_sites({2});
  const Operator x = pauli_matrix(Pauli::X);
  const double r = 1.0 / std::sqrt(2.0);
  LocalHamiltonian v1(layout);
  v1.add_term(-r * kron(a, x), {0, 2}, "A.X");
  v1.add_term(r * kron(b, x), {1, 2}, "B.X");
  LocalHamiltonian v0(layout);
  v0.add_term(0.5 * a * a, {0}, "A^2");
  v0.add_term(0.5 * b * b, {1}, "B^2");
  return second_order_parts("subdivision", target, v0, v1, delta);
}

GadgetInstance three_to_two_gadget(const Operator& a, const Operator& b, const Operator& c, double delta) {
  require_local_hermitian(a, "A");
  require_local_hermitian(b, "B");
  require_local_hermitian(c, "C");
  const SiteLayout tl({static_cast<int>(a.rows()), static_cast<int>(b.rows()), static_cast<int>(c.rows())});
  LocalHamiltonian target(tl);
  target.add_term(kron(kron(a, b), c), {0, 1, 2}, "ABC");

  const SiteLayout layout = tl.with_extra_sites({2});
  const Operator x = pauli_matrix(Pauli::X);
  const double r = 1.0 / std::sqrt(2.0);
  LocalHamiltonian v2(layout);
  v2.add_term(-r * kron(a, x), {0, 3}, "A.X");
  v2.add_term(r * kron(b, x), {1, 3}, "B.X");
  v2.add_term(-kron(c, projector1()), {2, 3}, "C.P1");
  LocalHamiltonian v1(layout);
  v1.add_term(0.5 * a * a, {0}, "A^2");
  v1.add_term(0.5 * b * b, {1}, "B^2");
  v1.add_term(-kron(a, b), {0, 1}, "AB");
  LocalHamiltonian v0(layout);
  v0.add_term(0.5 * kron(a * a, c), {0, 2}, "A^2.C");
  v0.add_term(0.5 * kron(b * b, c), {1, 2}, "B^2.C");
  return third_order_parts("three-to-two", target, v0, v1, v2, delta);
}

ExactGadget exact_three_to_two(const Operator& a, const Operator& b, const Operator& c) {
  for (const auto* m : {&a, &b, &c}) {
    if (m->rows() != 2 || m->cols() != 2 || !is_hermitian(*m)) {
      throw InvalidInput("exact 3-to-2 gadget needs single-qubit Hermitian A, B, C");
    }
  }
  // Diagonal inputs keep the computational basis; others use their eigenbasis.
  auto eig2 = [](const Operator& m) -> Eigensystem {
    if (std::abs(m(0, 1)) == 0.0) {
      Eigensystem es;
      es.values = Eigen::Vector2d(m(0, 0).real(), m(1, 1).real());
      es.vectors = identity(2);
      return es;
    }
    return herm_eig(m);
  };
  const Eigensystem ea = eig2(a);
  const Eigensystem eb = eig2(b);
  const Operator ka0 = ea.vectors.col(0) * ea.vectors.col(0).adjoint();
  const Operator kb0 = eb.vectors.col(0) * eb.vectors.col(0).adjoint();
  const Operator kb1 = eb.vectors.col(1) * eb.vectors.col(1).adjoint();
  const double la0 = ea.values(0);
  const double lb0 = eb.values(0);
  const double lb1 = eb.values(1);
  const Operator shifted = hermitian_part(a - la0 * identity(2));

  // Sites: 0 = A, 1 = B, 2 = C, 3 = second copy of A (ancilla).
  const SiteLayout tl = SiteLayout::qubits(3);
  LocalHamiltonian target(tl);
  target.add_term(kron(kron(a, b), c), {0, 1, 2}, "ABC");
  const SiteLayout layout = SiteLayout::qubits(4);
  GadgetInstance g;
  g.kind = "exact-three-to-two";
  g.target = target;
  g.gadget = LocalHamiltonian(layout);
  g.gadget.add_term(lb0 * kron(shifted, c), {3, 2}, "A'.C");
  g.gadget.add_term(lb1 * kron(shifted, c), {0, 2}, "A.C");
  g.gadget.add_term(la0 * kron(b, c), {1, 2}, "B.C");
  g.ancilla_sites = {3};
  g.ancilla_projector = ka0;

  Operator swap = Operator::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
  const Operator id2 = identity(2);
  const std::vector<int> pair_b{3, 0, 1};
  ExactGadget out;
  out.instance = std::move(g);
  out.P_joint = embed(kron(kron(id2, ka0), kb0) + kron(kron(ka0, id2), kb1), pair_b, layout);
  out.U = embed(kron(swap, kb0) + kron(identity(4), kb1), pair_b, layout);
  return out;
}

GadgetWitness witness_for_unitary(const GadgetInstance& g, const Operator& p, const Operator& u) {
  const Operator h = g.target.assemble();
  const Operator hp = g.gadget.assemble();
  if (u.rows() != hp.rows()) throw InvalidInput("witness unitary has the wrong dimension");
  GadgetWitness w;
  w.P = p;
  w.U = u;
  w.P_joint = u * kron(identity(static_cast<std::size_t>(h.rows())), p) * u.adjoint();
  w.eta = op_norm(u - identity(static_cast<std::size_t>(u.rows())));
  w.eps = op_norm(w.P_joint * hp * w.P_joint - u * kron(h, p) * u.adjoint());
  return w;
}

GadgetWitness verify_eta_eps(const GadgetInstance& g, const Operator& p, const Operator& p_joint) {
  const Operator h = g.target.assemble();
  const Operator hp = g.gadget.assemble();
  const Operator lifted = kron(identity(static_cast<std::size_t>(h.rows())), p);
  if (lifted.rows() != hp.rows() || p_joint.rows() != hp.rows()) {
    throw InvalidInput("projector dimensions do not match the gadget");
  }
  const DirectRotation rot = direct_rotation(lifted, p_joint);
  GadgetWitness w;
  w.P = p;
  w.P_joint = p_joint;
  w.U = rot.W;
  w.S = rot.S;
  w.eta = op_norm(rot.W - identity(static_cast<std::size_t>(hp.rows())));
  w.eps = op_norm(p_joint * hp * p_joint - rot.W * kron(h, p) * rot.W.adjoint());
  return w;
}

GadgetWitness verify_low_energy(const GadgetInstance& g, double threshold, const Operator& p) {
  const Operator hp = g.gadget.assemble();
  const Operator low = low_energy_projector(hp, threshold);
  const int want = static_cast<int>(g.target.layout().total_dim()) * projector_rank(p);
  if (projector_rank(low) != want) {
    throw RankMismatch("low-energy space has rank " + std::to_string(projector_rank(low)) + ", expected " +
                       std::to_string(want));
  }
  GadgetWitness w = verify_eta_eps(g, p, low);
  w.delta = threshold;
  return w;
}

GadgetWitness verify_low_energy(const GadgetInstance& g, double threshold) {
  return verify_low_energy(g, threshold, g.ancilla_projector);
}

GadgetPropertySample sample_gadget_property(const GadgetInstance& g, const GadgetWitness& w,
                                            const std::vector<LocalHamiltonian>& environments) {
  const Operator h = g.target.assemble();
  const Operator hp = g.gadget.assemble();
  const Operator range = projector_range(w.P_joint);
  const int rank = projector_rank(w.P);
  const Operator anc_id = identity(static_cast<std::size_t>(w.P.rows()));
  GadgetPropertySample out;
  for (const LocalHamiltonian& env : environments) {
    if (!(env.layout() == g.target.layout())) throw InvalidInput("environment must act on the target sites");
    const Operator he = env.assemble();
    const Eigen::VectorXd got =
        herm_eig(hermitian_part(range.adjoint() * (hp + kron(he, anc_id)) * range)).values;
    const Eigen::VectorXd base = herm_eig(hermitian_part(h + he)).values;
    std::vector<double> want;
    for (Eigen::Index i = 0; i < base.size(); ++i) {
      for (int r = 0; r < rank; ++r) want.push_back(base(i));
    }
    std::sort(want.begin(), want.end());
    if (static_cast<Eigen::Index>(want.size()) != got.size()) throw RankMismatch("restricted dimensions differ");
    double d = 0.0;
    for (Eigen::Index i = 0; i < got.size(); ++i) {
      d = std::max(d, std::abs(got(i) - want[static_cast<std::size_t>(i)]));
    }
    out.distances.push_back(d);
    out.else_norms.push_back(op_norm(he));
  }
  if (out.distances.size() >= 3) {
    const LineFit f = fit_line(out.else_norms, out.distances);
    out.zeta_hat = f.slope;
    out.eps_hat = f.intercept;
  }
  return out;
}

LocalHamiltonian random_environment(const SiteLayout& layout, int n_terms, double j_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> strength(0.0, j_max);
  std::uniform_int_distribution<int> site(0, layout.size() - 1);
  std::uniform_int_distribution<int> letter(1, 3);
  const Pauli letters[] = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
  LocalHamiltonian h(layout);
  for (int t = 0; t < n_terms; ++t) {
    PauliString p;
    p.n_sites = layout.size();
    p.coeff = strength(rng);
    const int width = layout.size() > 1 ? 1 + t % 2 : 1;
    while (static_cast<int>(p.ops.size()) < width) {
      const int s = site(rng);
      const Pauli q = letters[letter(rng)];
      p.ops[s] = q;
    }
    h.add_pauli(p);
  }
  return h;
}

std::vector<LocalHamiltonian> adversarial_environments(const SiteLayout& layout, double j_max) {
  std::vector<LocalHamiltonian> out;
  for (int s = 0; s < layout.size(); ++s) {
    for (Pauli q : {Pauli::X, Pauli::Y, Pauli::Z}) {
      LocalHamiltonian h(layout);
      h.add_pauli(PauliString::single(layout.size(), s, q, j_max));
      out.push_back(std::move(h));
    }
  }
  return out;
}

double gse_compare(const Operator& h, const Operator& h_prime) {
  return std::abs(herm_eig(h).values(0) - herm_eig(h_prime).values(0));
}

EnergyBound energy_bound_check(double j, int k_prime, double eps, double eta, double norm_h_prime) {
  EnergyBound b;
  b.norm = norm_h_prime;
  const double gap = std::ldexp(j, -k_prime) - eps;
  b.applicable = gap > 0.0 && eta > 0.0;
  if (!b.applicable) return b;
  b.rhs_proof = gap / (2.0 * eta);
  b.rhs_statement = gap / eta;
  b.holds = b.norm >= b.rhs_proof;
  return b;
}

EnergyBound energy_bound_check(double j, const GadgetInstance& g, const GadgetWitness& w) {
  return energy_bound_check(j, hypergraph_stats(g.gadget).k, w.eps, w.eta, op_norm(g.gadget.assemble()));
}

}  // namespace gadgetlab
