#include "gadgetlab/lightcone.hpp"

#include <cmath>

#include "gadgetlab/errors.hpp"
#include "gadgetlab/parallel.hpp"

namespace gadgetlab {

ChainBuilder pauli_chain_builder(ChainParams params) {
  return [params](int m) {
    if (m != 1) return pauli_chain(m, params, false);
    LocalHamiltonian h(SiteLayout::qubits(1));
    h.add_pauli(PauliString::single(1, 0, Pauli::X, params.x), "X0");
    return h;
  };
}

double truncated_expectation(const ChainBuilder& builder, int m, const Operator& o, const State& site_state,
                             double t) {
  if (site_state.size() != 2) throw InvalidInput("site state must be a qubit state");
  int width = 0;
  while ((Eigen::Index{1} << width) < o.rows()) ++width;
  if ((Eigen::Index{1} << width) != o.rows() || o.rows() != o.cols()) {
    throw InvalidInput("observable must act on whole qubits");
  }
  if (width > m) throw InvalidInput("observable does not fit inside the window");
  const LocalHamiltonian h = builder(m);
  if (h.layout().size() != m) throw InvalidInput("builder returned the wrong number of sites");

  State psi = State::Ones(1);
  const State unit = site_state.normalized();
  for (int s = 0; s < m; ++s) psi = kron(psi, unit);
  const State out = evolve(herm_eig(h.assemble()), psi, t);

  std::vector<int> support;
  for (int s = 0; s < width; ++s) support.push_back((m - width) / 2 + s);
  const Operator lifted = embed(o, support, h.layout());
  return (out.adjoint() * lifted * out)(0, 0).real();
}

WindowSweep window_sweep(const WindowExperiment& ex, int jobs) {
  if (ex.m_list.empty()) throw InvalidInput("empty window list");
  for (std::size_t i = 1; i < ex.m_list.size(); ++i) {
    if (ex.m_list[i] <= ex.m_list[i - 1]) throw InvalidInput("window sizes must increase strictly");
  }
  if (ex.m_list.back() > ex.n_full) throw InvalidInput("window larger than the reference chain");
  if (ex.n_full > 12) throw DimensionError("reference chain limited to 12 sites");

  // Slot 0 is the reference, slot 1 the n_full - 2 convergence check, then one per window.
  const std::size_t n_slots = ex.m_list.size() + 2;
  const std::vector<std::optional<double>> values = parallel_map(n_slots, jobs, [&](std::size_t i) {
    const int m = i == 0 ? ex.n_full : i == 1 ? ex.n_full - 2 : ex.m_list[i - 2];
    std::optional<double> v;
    if (i >= 2 && m == ex.n_full) return v;
    try {
      v = truncated_expectation(ex.builder, m, ex.observable, ex.site_state, ex.t);
    } catch (const InvalidInput&) {
      if (i != 1) throw;
    }
    return v;
  });

  WindowSweep sweep;
  sweep.reference = *values[0];
  sweep.convergence_gap = values[1] ? std::abs(sweep.reference - *values[1]) : 0.0;
  for (std::size_t i = 0; i < ex.m_list.size(); ++i) {
    WindowRow row;
    row.m = ex.m_list[i];
    row.reference = sweep.reference;
    row.value = values[i + 2].value_or(sweep.reference);
    row.abs_error = std::abs(row.value - row.reference);
    sweep.rows.push_back(row);
  }

  std::vector<double> xs, ys;
  for (const WindowRow& row : sweep.rows) {
    if (row.abs_error > 0.0) {
      xs.push_back(row.m);
      ys.push_back(std::log(row.abs_error));
    }
  }
  if (xs.size() > 4) {
    xs.erase(xs.begin(), xs.end() - 4);
    ys.erase(ys.begin(), ys.end() - 4);
  }
  if (xs.size() >= 3) sweep.tail = fit_line(xs, ys);
  return sweep;
}

}  // namespace gadgetlab
