#include <algorithm>
#include <cmath>

#include "gadgetlab/errors.hpp"
#include "gadgetlab/gadgets.hpp"
#include "gadgetlab/rotations.hpp"

namespace gadgetlab {

namespace {

// Maps an instance's local sites (targets, then ancillas) into the combined layout.
std::vector<int> site_map(const PlacedGadget& part, int first_ancilla) {
  const int n_target = part.instance.target.layout().size();
  if (static_cast<int>(part.sites.size()) != n_target) {
    throw InvalidInput("site map length differs from the gadget's target size");
  }
  std::vector<int> map = part.sites;
  for (std::size_t a = 0; a < part.instance.ancilla_sites.size(); ++a) {
    map.push_back(first_ancilla + static_cast<int>(a));
  }
  return map;
}

std::vector<int> remap(const std::vector<int>& support, const std::vector<int>& map) {
  std::vector<int> out;
  out.reserve(support.size());
  for (int s : support) out.push_back(map.at(static_cast<std::size_t>(s)));
  return out;
}

}  // namespace

double CombinedGadget::reference() const {
  return n_sites * (max_eps + max_eta * J + std::pow(max_eta, 3) * J_prime_offdiag +
                    std::pow(max_eta, 4) * J_prime);
}

CombinedGadget combine_parallel(const std::vector<PlacedGadget>& parts, const SiteLayout& target_layout) {
  if (parts.empty()) throw InvalidInput("nothing to combine");
  std::vector<int> ancilla_dims;
  for (const auto& part : parts) {
    if (part.witness.S.size() == 0) throw InvalidInput("combination needs direct-rotation witnesses");
    for (int s : part.instance.ancilla_sites) ancilla_dims.push_back(part.instance.gadget.layout().dim(s));
  }
  const SiteLayout layout = target_layout.with_extra_sites(ancilla_dims);
  const auto dim = static_cast<Eigen::Index>(layout.total_dim());

  CombinedGadget c;
  c.target = LocalHamiltonian(target_layout);
  c.gadget = LocalHamiltonian(layout);
  c.n_sites = target_layout.size();
  c.n_gadgets = static_cast<int>(parts.size());
  c.S = Operator::Zero(dim, dim);
  c.P = Operator::Identity(1, 1);
  for (int a = target_layout.size(); a < layout.size(); ++a) c.ancilla_sites.push_back(a);

  int next_ancilla = target_layout.size();
  for (const auto& part : parts) {
    const GadgetInstance& g = part.instance;
    const std::vector<int> map = site_map(part, next_ancilla);
    next_ancilla += static_cast<int>(g.ancilla_sites.size());
    for (LocalTerm t : g.target.terms()) {
      t.support = remap(t.support, map);
      c.target.add_term(std::move(t));
    }
    for (LocalTerm t : g.gadget.terms()) {
      t.support = remap(t.support, map);
      c.gadget.add_term(std::move(t));
    }
    c.S += embed(part.witness.S, map, layout);
    c.P = kron(c.P, part.witness.P);

    const Operator h = g.target.assemble();
    const Operator hp = g.gadget.assemble();
    const Operator lifted = kron(identity(static_cast<std::size_t>(h.rows())), part.witness.P);
    const Operator comp = identity(static_cast<std::size_t>(hp.rows())) - lifted;
    c.max_eps = std::max(c.max_eps, part.witness.eps);
    c.max_eta = std::max(c.max_eta, part.witness.eta);
    c.J = std::max(c.J, op_norm(h));
    c.J_prime = std::max(c.J_prime, op_norm(hp));
    c.J_prime_offdiag = std::max(c.J_prime_offdiag, op_norm(lifted * hp * comp));
    if (part.witness.delta) c.delta = c.delta ? std::min(*c.delta, *part.witness.delta) : *part.witness.delta;
  }
  for (const auto& part : parts) c.sum_bound += part.witness.eps + part.witness.eta * c.J;

  const Complex i(0.0, 1.0);
  c.U = expm_ih(hermitian_part(i * c.S), 1.0);  // exp(S)
  const Operator h = c.target.assemble();
  const Operator hp = c.gadget.assemble();
  const Operator lifted = kron(identity(static_cast<std::size_t>(h.rows())), c.P);
  c.eta = op_norm(c.U - identity(static_cast<std::size_t>(dim)));
  c.eps = op_norm(lifted * c.U.adjoint() * hp * c.U * lifted - kron(h, c.P));
  return c;
}

CombinedLowEnergy combine_low_energy_check(const CombinedGadget& c, double delta_prime) {
  CombinedLowEnergy r;
  const Operator h = c.target.assemble();
  const double delta = 2.0 * delta_prime;
  const double denom = 0.25 - 2.0 * c.max_eta;
  r.required_delta = denom > 0.0
                         ? (op_norm(h) + c.J + c.n_gadgets * (c.max_eps + 2.0 * c.J * c.max_eta)) / denom
                         : INFINITY;
  r.condition_met = delta >= r.required_delta;
  if (!r.condition_met) return r;

  const Operator hp = c.gadget.assemble();
  const Operator low = low_energy_projector(hp, delta_prime);
  const Operator lifted = kron(identity(static_cast<std::size_t>(h.rows())), c.P);
  r.rank_match = projector_rank(low) == projector_rank(lifted);
  if (!r.rank_match) return r;
  const DirectRotation rot = direct_rotation(lifted, low);
  r.eta = op_norm(rot.W - identity(static_cast<std::size_t>(hp.rows())));
  r.eps = op_norm(low * hp * low - rot.W * kron(h, c.P) * rot.W.adjoint());
  return r;
}

}  // namespace gadgetlab
