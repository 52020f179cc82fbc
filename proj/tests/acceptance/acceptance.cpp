// Runs every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status is non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gadgetlab/boolfun.hpp"
#include "gadgetlab/errors.hpp"
#include "gadgetlab/fit.hpp"
#include "gadgetlab/gadgets.hpp"
#include "gadgetlab/lightcone.hpp"
#include "gadgetlab/rotations.hpp"
#include "gadgetlab/zeno.hpp"
#include "oracles.hpp"
#include "runner.hpp"

using namespace gadgetlab;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;  // wall-clock limit, infinite when unstated
  std::function<Verdict()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool within(double x, double lo, double hi) { return x >= lo && x <= hi; }

// Witnesses gathered by the gadget criteria, checked by the energy-bound criterion.
struct BoundInput {
  std::string label;
  double j;
  int k_prime;
  double eps;
  double eta;
  double norm;
};
std::vector<BoundInput> g_witnesses;

void record(const std::string& label, const GadgetInstance& g, const GadgetWitness& w) {
  g_witnesses.push_back(
      {label, 1.0, hypergraph_stats(g.gadget).k, w.eps, w.eta, oracle::norm2(g.gadget.assemble())});
}

PauliString ps(const std::string& s) { return PauliString::parse(s); }

State plus_state(int n) { return State::Constant(1 << n, 1.0 / std::sqrt(double(1 << n))); }

std::vector<double> octave_dts(int k_min, int k_max) {
  std::vector<double> out;
  for (int k = k_min; k <= k_max; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

ZenoSpec zzz_spec(int n, double dt) {
  std::string a(n, 'I'), b(n, 'I'), c(n, 'I');
  a[0] = b[1] = c[2] = 'Z';
  return pauli_zeno_spec(ps(a), ps(b), ps(c), dt);
}

// ---- criteria ---------------------------------------------------------------

Verdict zeno_identity() {
  const Operator want = oracle::kron({oracle::Z(), oracle::Z(), oracle::Z()});
  double worst = 0.0;
  for (double dt : {0.1, 0.01}) {
    const ZenoSpec spec = pauli_zeno_spec(ps("ZII"), ps("IZI"), ps("IIZ"), dt);
    worst = std::max(worst, oracle::norm2(effective_hamiltonian(spec) - want));
  }
  return {worst <= 1e-10, fmt("||H_eff - ZZZ|| = %.2e", worst)};
}

struct SlopePair {
  double amp1, err0;
  std::vector<double> err0_values;
};

SlopePair zeno_slopes(int n, const State& psi, const Operator& h_else, const std::vector<double>& dts) {
  std::vector<double> amp1, err0;
  for (double dt : dts) {
    const StepAmplitudes s = step_amplitudes(zzz_spec(n, dt), psi, h_else);
    amp1.push_back(s.amp1);
    err0.push_back(s.err0);
  }
  return {fit_slope(dts, amp1).slope, fit_slope(dts, err0).slope, err0};
}

Verdict zeno_scalings() {
  const std::vector<double> dts = octave_dts(4, 10);
  std::mt19937_64 rng(2024);
  bool ok = true;
  std::string detail;
  for (const State& psi : {plus_state(3), State(oracle::random_state(8, rng))}) {
    const SlopePair s = zeno_slopes(3, psi, Operator::Zero(8, 8), dts);
    ok = ok && within(s.amp1, 1.35, 1.65) && within(s.err0, 1.85, 2.15);
    detail += fmt("amp1 %.3f err0 %.3f; ", s.amp1, s.err0);
  }
  return {ok, detail + "6 octaves"};
}

Verdict zeno_environment() {
  const std::vector<double> dts = octave_dts(4, 10);
  bool ok = true;
  double amp_lo = INFINITY, amp_hi = -INFINITY, err_lo = INFINITY, err_hi = -INFINITY;
  std::vector<double> min_err0(dts.size(), INFINITY), max_err0(dts.size(), 0.0);
  for (int n = 3; n <= 8; ++n) {
    const Operator h_else = pauli_chain(n, {0.5, 0.5}, false).assemble();
    const SlopePair s = zeno_slopes(n, plus_state(n), h_else, dts);
    ok = ok && within(s.amp1, 1.35, 1.65) && within(s.err0, 1.85, 2.15);
    amp_lo = std::min(amp_lo, s.amp1);
    amp_hi = std::max(amp_hi, s.amp1);
    err_lo = std::min(err_lo, s.err0);
    err_hi = std::max(err_hi, s.err0);
    for (std::size_t i = 0; i < dts.size(); ++i) {
      min_err0[i] = std::min(min_err0[i], s.err0_values[i]);
      max_err0[i] = std::max(max_err0[i], s.err0_values[i]);
    }
  }
  double spread = 1.0;
  for (std::size_t i = 0; i < dts.size(); ++i) spread = std::max(spread, max_err0[i] / min_err0[i]);
  ok = ok && spread < 2.0;
  return {ok, fmt("n=3..8: amp1 [%.3f, %.3f] err0 [%.3f, %.3f]; err0 spread %.4fx", amp_lo, amp_hi, err_lo, err_hi,
                  spread)};
}

Verdict zeno_trajectory() {
  const std::vector<double> dts = octave_dts(4, 10);
  const State psi = plus_state(3);
  SimulationTask task;
  task.t_max = 1.0;
  task.observables.push_back({"X0", pauli_embed(ps("XII"), SiteLayout::qubits(3))});
  std::vector<double> err, leak;
  for (double dt : dts) {
    const auto traj = simulate_zeno(zzz_spec(3, dt), Operator::Zero(8, 8), psi * psi.adjoint(), task);
    if (std::abs(traj.back().t - 1.0) > 1e-12) return {false, "trajectory does not end at t = 1"};
    err.push_back(traj.back().errors[0]);
    leak.push_back(traj.back().leak_prob);
  }
  double lo = INFINITY, hi = 0.0;
  for (std::size_t i = 0; i + 1 < err.size(); ++i) {
    lo = std::min(lo, err[i] / err[i + 1]);
    hi = std::max(hi, err[i] / err[i + 1]);
  }
  const double slope = fit_slope(dts, leak).slope;
  return {within(lo, 1.6, 2.6) && within(hi, 1.6, 2.6) && within(slope, 1.8, 2.2),
          fmt("halving ratios in [%.3f, %.3f]; leak slope %.3f", lo, hi, slope)};
}

Verdict subdivision_scaling() {
  std::vector<double> deltas, eps, eta;
  for (double d = 1e2; d <= 1.001e6; d *= std::sqrt(10.0)) {
    const GadgetInstance g = subdivision_gadget(oracle::Z(), oracle::Z(), d);
    if (g.gadget.layout().total_dim() != 8) return {false, "joint space is not 8-dimensional"};
    const GadgetWitness w = verify_low_energy(g, d / 2);
    record(fmt("subdivision %.0e", d), g, w);
    deltas.push_back(d);
    eps.push_back(w.eps);
    eta.push_back(w.eta);
  }
  const double se = fit_slope(deltas, eps).slope, sn = fit_slope(deltas, eta).slope;
  return {within(se, -0.65, -0.35) && within(sn, -0.65, -0.35), fmt("eps slope %.3f, eta slope %.3f", se, sn)};
}

Verdict three_to_two_scaling() {
  std::vector<double> deltas, eps;
  for (double d = 1e3; d <= 1.001e9; d *= 10.0) {
    const GadgetInstance g = three_to_two_gadget(oracle::Z(), oracle::Z(), oracle::Z(), d);
    if (g.gadget.layout().total_dim() != 16) return {false, "joint space is not 16-dimensional"};
    const GadgetWitness w = verify_low_energy(g, d / 2);
    record(fmt("three-to-two %.0e", d), g, w);
    deltas.push_back(d);
    eps.push_back(w.eps);
  }
  const double s = fit_slope(deltas, eps).slope;
  return {within(s, -0.45, -0.22), fmt("eps slope %.3f", s)};
}

std::vector<LocalHamiltonian> shared_environments(const SiteLayout& tl) {
  std::vector<LocalHamiltonian> envs{LocalHamiltonian(tl)};
  for (auto& e : adversarial_environments(tl, 0.5)) envs.push_back(std::move(e));
  for (int s = 0; s < 8; ++s) envs.push_back(random_environment(tl, 3, 1.0, 500 + s));
  return envs;
}

Verdict exact_three_to_two_check() {
  const ExactGadget ex = exact_three_to_two(oracle::Z(), oracle::Z(), oracle::Z());
  const GadgetWitness w = witness_for_unitary(ex.instance, ex.instance.ancilla_projector, ex.U);
  record("exact three-to-two", ex.instance, w);
  const GadgetPropertySample exact = sample_gadget_property(ex.instance, w, shared_environments(ex.instance.target.layout()));

  const GadgetInstance sub = subdivision_gadget(oracle::Z(), oracle::Z(), 1e4);
  const GadgetWitness ws = verify_low_energy(sub, 5e3);
  const GadgetPropertySample s = sample_gadget_property(sub, ws, shared_environments(sub.target.layout()));

  const double dist = exact.distances[0];
  const bool ok = dist <= 1e-9 && std::abs(w.eta - 2.0) <= 1e-6 && exact.zeta_hat >= 10 * s.zeta_hat;
  return {ok, fmt("spectrum distance %.1e; eta %.9f; zeta exact %.3e vs subdivision %.3e (eps %.1e)", dist, w.eta,
                  exact.zeta_hat, s.zeta_hat, ws.eps)};
}

Verdict combination() {
  const double delta = 1e4;
  const GadgetInstance g = subdivision_gadget(oracle::Z(), oracle::Z(), delta);
  const GadgetWitness w = verify_low_energy(g, delta / 2);
  const CombinedGadget c = combine_parallel({{g, w, {0, 1}}, {g, w, {1, 2}}}, SiteLayout::qubits(3));
  const Operator hp = c.gadget.assemble();
  if (hp.rows() != 32) return {false, "combined space is not 32-dimensional"};
  // Ground energies straight from a dense solver.
  const Operator h = oracle::kron({oracle::Z(), oracle::Z(), oracle::I2()}) +
                     oracle::kron({oracle::I2(), oracle::Z(), oracle::Z()});
  const double l0 = Eigen::SelfAdjointEigenSolver<Operator>(h, Eigen::EigenvaluesOnly).eigenvalues()(0);
  const double l0p = Eigen::SelfAdjointEigenSolver<Operator>(hp, Eigen::EigenvaluesOnly).eigenvalues()(0);
  const double gse = std::abs(l0 - l0p);
  g_witnesses.push_back({"combined subdivision pair", 1.0, hypergraph_stats(c.gadget).k, c.eps, c.eta,
                         oracle::norm2(hp)});
  const bool ok = c.eps <= 4 * c.sum_bound && gse <= 5 * c.reference();
  return {ok, fmt("eps' %.3e <= 4 x %.3e; |dE0| %.3e <= 5 x %.3e", c.eps, c.sum_bound, gse, c.reference())};
}

Verdict energy_bound() {
  int applicable = 0, violations = 0;
  double min_slack = INFINITY;
  for (const BoundInput& b : g_witnesses) {
    const double gap = std::ldexp(b.j, -b.k_prime) - b.eps;
    if (gap <= 0.0 || b.eta <= 0.0) continue;
    ++applicable;
    const double rhs = gap / (2 * b.eta);
    const EnergyBound lib = energy_bound_check(b.j, b.k_prime, b.eps, b.eta, b.norm);
    if (b.norm < rhs || !lib.applicable || !lib.holds) ++violations;
    min_slack = std::min(min_slack, b.norm / rhs);
  }
  return {applicable > 0 && violations == 0,
          fmt("%zu witnesses, %d applicable, %d violations, min ||H'||/rhs %.2f", g_witnesses.size(), applicable,
              violations, min_slack)};
}

Verdict rotation_suite() {
  std::mt19937_64 rng(4242);
  const int n = 200;
  int weyl_bad = 0, comm_bad = 0, dk_bad = 0, gen_bad = 0, ad_bad = 0;
  double weyl_slack = INFINITY, dk_slack = INFINITY, gen_slack = INFINITY;
  double comm_worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const int d = 2 + i % 7;
    const Operator a = oracle::random_hermitian(d, rng);
    const Operator b = a + oracle::random_hermitian(d, rng, 0.01 + 0.5 * (i % 5));
    const double lhs = spectral_distance(a, b), rhs = oracle::norm2(a - b);
    weyl_bad += lhs > rhs;
    weyl_slack = std::min(weyl_slack, rhs - lhs);

    const Operator p = oracle::random_projector(d, 1 + i % (d - 1), rng);
    const Operator q = oracle::random_projector(d, 1 + (i / 7) % (d - 1), rng);
    const double res = projector_commutator_check(p, q).residual;
    comm_bad += res > 1e-8;
    comm_worst = std::max(comm_worst, res);

    const Operator v = oracle::expm(Complex(0, 1) * oracle::random_hermitian(d, rng, 0.02 + 0.03 * (i % 8)));
    const Operator q2 = v * p * v.adjoint();
    const DirectRotation rot = direct_rotation(p, q2);
    const double s_norm = oracle::norm2(rot.S);
    const double bound = std::numbers::pi / (2 * std::sqrt(2.0)) * oracle::norm2(rot.W - Operator::Identity(d, d));
    gen_bad += !(s_norm < std::numbers::pi / 2) || s_norm > bound + 1e-9;
    gen_slack = std::min(gen_slack, bound - s_norm);

    const Operator s = Complex(0, 1) * oracle::random_hermitian(d, rng, 0.1 + 0.1 * (i % 4));
    for (int k = 0; k <= 6; ++k) {
      const AdRemainder r = ad_remainder(s, a, k);
      ad_bad += r.remainder > r.bound * (1 + 1e-9) + 1e-13;
    }
  }
  int dk_done = 0;
  Eigen::VectorXd spec(6);
  spec << -1.0, -0.8, 1.0, 1.3, 1.7, 2.0;
  while (dk_done < n) {
    const Operator u = oracle::random_unitary(6, rng);
    const Operator a = u * spec.cast<Complex>().asDiagonal() * u.adjoint();
    const Operator b = a + oracle::random_hermitian(6, rng, 0.02 + 0.02 * (dk_done % 5));
    const Eigensystem eb = herm_eig(b);
    const double gap = eb.values(2) - (-0.8);
    if (gap <= 0.0) continue;
    const Operator pa = u.leftCols(2) * u.leftCols(2).adjoint();
    const Operator pb = eb.vectors.leftCols(2) * eb.vectors.leftCols(2).adjoint();
    const DavisKahanResult r = davis_kahan_check(a, b, pa, pb, -1.0, -0.8, gap);
    dk_bad += !r.holds;
    dk_slack = std::min(dk_slack, r.rhs - r.lhs);
    ++dk_done;
  }
  const int total = weyl_bad + comm_bad + dk_bad + gen_bad + ad_bad;
  return {total == 0, fmt("%d instances each; violations weyl %d comm %d dk %d gen %d ad %d; min slack weyl %.1e dk "
                          "%.1e gen %.1e; worst residual %.1e",
                          n, weyl_bad, comm_bad, dk_bad, gen_bad, ad_bad, weyl_slack, dk_slack, gen_slack,
                          comm_worst)};
}

Verdict boolean_separation() {
  const BoolFunction f = bool_proof_function(3, 3, 2);
  const double bound = bool_separation_bound(f, 2);
  const double minimax = oracle::minimax_klocal_distance(3, f.table, 2);
  bool r_ok = walsh_locality(bool_reduce_R(f)) == walsh_locality(f) - 1;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 2; n <= 6; ++n) {
    std::vector<double> table(std::size_t{1} << n);
    for (double& x : table) x = u(rng);
    const BoolFunction g = make_bool_function(n, table);
    r_ok = r_ok && walsh_locality(bool_reduce_R(g)) == walsh_locality(g) - 1;
  }
  const bool ok = bound == 0.25 && minimax >= 0.25 - 1e-6 && r_ok;
  return {ok, fmt("certified bound %.17g; minimax %.9f; R lowers locality by 1: %s", bound, minimax,
                  r_ok ? "yes" : "no")};
}

Verdict lightcone() {
  WindowExperiment ex;
  ex.builder = pauli_chain_builder({1.0, 1.0});
  ex.n_full = 11;
  ex.m_list = {3, 5, 7, 9};
  ex.observable = oracle::Z();
  ex.site_state = State::Unit(2, 0);
  ex.t = 0.5;
  const WindowSweep s = window_sweep(ex, 1);
  const double ratio = s.rows.front().abs_error / s.rows.back().abs_error;
  const bool ok = ratio >= 10.0 && s.tail && s.tail->slope < 0.0 && s.tail->r_squared >= 0.9;
  return {ok, fmt("err(3) %.2e err(9) %.2e ratio %.2e; tail slope %.3f R^2 %.4f", s.rows.front().abs_error,
                  s.rows.back().abs_error, ratio, s.tail ? s.tail->slope : NAN, s.tail ? s.tail->r_squared : NAN)};
}

Verdict qutrit_encoding() {
  std::mt19937_64 rng(313);
  std::uniform_real_distribution<double> time(0.0, 3.0);
  double worst = 0.0;
  const Operator n_op = Eigen::Vector3cd(0, 1, 1).asDiagonal();
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 3;
    const QutritEncoding enc = qutrit_to_qubit_simulator(n);
    const int d = static_cast<int>(std::pow(3, n));
    // Qutrit Hamiltonian assembled independently, site by site.
    Operator h = Operator::Zero(d, d);
    for (int j = 0; j < n; ++j) {
      std::vector<Operator> f(n, Operator::Identity(3, 3));
      f[j] = n_op;
      h += oracle::kron(f);
    }
    Operator rho = Operator::Zero(d, d);
    for (int m = 0; m < 3; ++m) {
      const oracle::Vec psi = oracle::random_state(d, rng);
      rho += (m + 1.0) / 6.0 * psi * psi.adjoint();
    }
    const Operator o = oracle::random_hermitian(d, rng);
    const double t = time(rng);
    const Operator u = oracle::expm(Complex(0, -t) * h);
    const Operator us = oracle::expm(Complex(0, -t) * enc.simulator.assemble());
    const Complex direct = (o * u * rho * u.adjoint()).trace();
    const Complex encoded = (enc.encode_observable(o) * us * enc.encode_state(rho) * us.adjoint()).trace();
    worst = std::max(worst, std::abs(direct - encoded));
  }
  return {worst <= 1e-10, fmt("200 triples, n <= 3 qutrits; max |difference| %.2e", worst)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict reproducibility() {
  namespace fs = std::filesystem;
  const fs::path configs = GADGETLAB_CONFIG_DIR;
  const fs::path scratch = fs::temp_directory_path() / "gadgetlab_acceptance";
  fs::remove_all(scratch);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(configs)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  int same = 0;
  std::string bad;
  for (const fs::path& f : files) {
    const std::string kind = nlohmann::json::parse(std::ifstream(f))["kind"];
    std::string bodies[2];
    for (int rep = 0; rep < 2; ++rep) {
      cli::Invocation inv;
      inv.kind = kind;
      inv.config = f;
      inv.out = scratch / (f.stem().string() + "_" + std::to_string(rep) + ".csv");
      inv.jobs = 1 + rep;
      const cli::Outcome o = cli::run(inv);
      if (o.exit_code != 0) return {false, f.filename().string() + ": " + o.error_json};
      bodies[rep] = slurp(o.csv_path);
    }
    if (bodies[0] == bodies[1] && !bodies[0].empty()) {
      ++same;
    } else {
      bad += " " + f.filename().string();
    }
  }
  fs::remove_all(scratch);
  return {same == static_cast<int>(files.size()) && same > 0,
          fmt("%d/%zu configs byte-identical across re-runs (jobs 1 vs 2)%s", same, files.size(), bad.c_str())};
}

}  // namespace

int main() {
  const double inf = INFINITY;
  // The energy-bound check consumes witnesses from the gadget criteria, so it runs after them.
  const std::vector<Criterion> order = {
      {1, "Zeno algebraic identity", 1.0, zeno_identity},
      {2, "Zeno step scalings", 60.0, zeno_scalings},
      {3, "Zeno scalings with environment", 600.0, zeno_environment},
      {4, "Zeno trajectory error", 300.0, zeno_trajectory},
      {5, "subdivision gadget scaling", 60.0, subdivision_scaling},
      {6, "3-to-2 gadget scaling", 60.0, three_to_two_scaling},
      {7, "exact 3-to-2 gadget", inf, exact_three_to_two_check},
      {9, "parallel combination", 60.0, combination},
      {8, "energy-bound consistency", inf, energy_bound},
      {10, "rotation inequality suite", 60.0, rotation_suite},
      {11, "Boolean separation", 10.0, boolean_separation},
      {12, "light-cone truncation", 120.0, lightcone},
      {13, "qutrit encoding", 60.0, qutrit_encoding},
      {14, "CLI reproducibility", inf, reproducibility},
  };
  struct Line {
    int id;
    std::string text;
    bool pass;
  };
  std::vector<Line> lines;
  for (const Criterion& c : order) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = v.pass && in_time;
    std::string budget = std::isinf(c.budget_s) ? "" : fmt(" / %.0f s", c.budget_s);
    lines.push_back({c.id,
                     fmt("%s [%2d] %s: %s (%.2f s%s)%s", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                         v.detail.c_str(), secs, budget.c_str(), in_time ? "" : " over budget"),
                     pass});
  }
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.id < b.id; });
  int failed = 0;
  for (const Line& l : lines) {
    std::printf("%s\n", l.text.c_str());
    failed += !l.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(lines.size()) - failed, lines.size());
  return failed == 0 ? 0 : 1;
}
