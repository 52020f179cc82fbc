#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gadgetlab/fit.hpp"
#include "gadgetlab/hamiltonians.hpp"

namespace gadgetlab {

// Builds the open chain restricted to m sites; terms leaving the window are dropped.
using ChainBuilder = std::function<LocalHamiltonian(int m)>;

ChainBuilder pauli_chain_builder(ChainParams params);

// <O(t)> on an m-site window in the product state site_state^{x m}. O acts on a
// contiguous block of qubits placed at the centre of the window.
double truncated_expectation(const ChainBuilder& builder, int m, const Operator& o, const State& site_state,
                             double t);

struct WindowExperiment {
  ChainBuilder builder;
  int n_full = 11;
  std::vector<int> m_list;
  Operator observable;
  State site_state;
  double t = 0.5;
};

struct WindowRow {
  int m = 0;
  double value = 0.0;
  double reference = 0.0;
  double abs_error = 0.0;
};

struct WindowSweep {
  std::vector<WindowRow> rows;
  double reference = 0.0;
  double convergence_gap = 0.0;  // |<O>_{n_full} - <O>_{n_full - 2}|
  std::optional<LineFit> tail;   // log(abs_error) against m over the last 4 nonzero rows
};

// Window evaluations run on up to `jobs` threads; rows keep m_list order.
WindowSweep window_sweep(const WindowExperiment& experiment, int jobs = 1);

}  // namespace gadgetlab
