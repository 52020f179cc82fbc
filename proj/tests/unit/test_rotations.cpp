#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gadgetlab/errors.hpp"
#include "gadgetlab/rotations.hpp"
#include "oracles.hpp"

using namespace gadgetlab;

namespace {

Operator ket_projector(double theta) {
  oracle::Vec v(2);
  v << std::cos(theta), std::sin(theta);
  return v * v.adjoint();
}

double max_abs(const Operator& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("direct rotation between two qubit rays") {
  const DirectRotation r = direct_rotation(ket_projector(0.0), ket_projector(0.4));
  CHECK(oracle::norm2(r.W - oracle::I2()) == doctest::Approx(2 * std::sin(0.2)).epsilon(1e-12));
  CHECK(oracle::norm2(r.S) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("direct rotation invariants on random projectors") {
  std::mt19937_64 rng(31);
  const double bound_factor = std::numbers::pi / (2 * std::sqrt(2.0));
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 3 + trial % 5;
    const int r = 1 + trial % (d - 1);
    const Operator p = oracle::random_projector(d, r, rng);
    const Operator small = oracle::random_hermitian(d, rng, 0.05 * (1 + trial % 6));
    const Operator v = oracle::expm(Complex(0, 1) * small);
    const Operator q = v * p * v.adjoint();
    const DirectRotation rot = direct_rotation(p, q);
    const Operator id = Operator::Identity(d, d);
    CHECK(max_abs(rot.W * p * rot.W.adjoint() - q) < 1e-10);
    CHECK(max_abs(rot.W.adjoint() * rot.W - id) < 1e-12);
    CHECK(max_abs(oracle::expm(rot.S) - rot.W) < 1e-10);
    CHECK(max_abs(rot.S + rot.S.adjoint()) < 1e-12);
    CHECK(max_abs(p * rot.S * p) < 1e-9);
    CHECK(max_abs((id - p) * rot.S * (id - p)) < 1e-9);
    CHECK(max_abs(q * rot.S * q) < 1e-9);
    CHECK(max_abs((id - q) * rot.S * (id - q)) < 1e-9);
    const double s_norm = oracle::norm2(rot.S);
    CHECK(s_norm < std::numbers::pi / 2);
    CHECK(s_norm <= bound_factor * oracle::norm2(rot.W - id) + 1e-9);
    CHECK(max_abs(rot.W - oracle::reflection_root(p, q)) < 1e-9);
    const DirectRotation back = direct_rotation(q, p);
    CHECK(max_abs(back.W * rot.W - id) < 1e-8);
  }
}

TEST_CASE("direct rotation is the closest unitary carrying P to Q") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 5; ++trial) {
    const int d = 5;
    const Operator p = oracle::random_projector(d, 2, rng);
    const Operator v0 = oracle::expm(Complex(0, 1) * oracle::random_hermitian(d, rng, 0.2));
    const Operator q = v0 * p * v0.adjoint();
    const DirectRotation rot = direct_rotation(p, q);
    const double best = oracle::norm2(rot.W - Operator::Identity(d, d));
    const Operator range = projector_range(p);
    const Operator comp = projector_range(Operator::Identity(d, d) - p);
    for (int k = 0; k < 50; ++k) {
      // Unitaries commuting with P, scaled from near-identity to generic.
      const double scale = 0.01 * (k + 1);
      const Operator u1 = oracle::expm(Complex(0, 1) * oracle::random_hermitian(2, rng, scale));
      const Operator u2 = oracle::expm(Complex(0, 1) * oracle::random_hermitian(3, rng, scale));
      const Operator x = range * u1 * range.adjoint() + comp * u2 * comp.adjoint();
      const Operator v = rot.W * x;
      CHECK(max_abs(v * p * v.adjoint() - q) < 1e-10);
      CHECK(oracle::norm2(v - Operator::Identity(d, d)) >= best - 1e-10);
    }
  }
}

TEST_CASE("direct rotation rejects incompatible projectors") {
  CHECK_THROWS_AS(direct_rotation(ket_projector(0.0), Operator::Identity(2, 2)), InvalidInput);
  CHECK_THROWS_AS(direct_rotation(ket_projector(0.0), ket_projector(std::numbers::pi / 2)), InvalidInput);
}

TEST_CASE("projector commutator identity") {
  const CommutatorCheck c = projector_commutator_check(ket_projector(0.0), ket_projector(std::numbers::pi / 4));
  CHECK(c.f == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c.commutator_norm == doctest::Approx(0.5).epsilon(1e-12));
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 6;
    const Operator p = oracle::random_projector(d, 1 + trial % (d - 1), rng);
    const Operator q = oracle::random_projector(d, 1 + (trial / 3) % (d - 1), rng);
    CHECK(projector_commutator_check(p, q).residual <= 1e-8);
  }
  const Operator p = oracle::random_projector(4, 2, rng);
  CHECK(projector_commutator_check(p, p).residual <= 1e-8);
}

TEST_CASE("Davis-Kahan bound on perturbed spectral projectors") {
  std::mt19937_64 rng(43);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 6;
    const int r = 2;
    Eigen::VectorXd spec(d);
    spec << -1.0, -0.8, 1.0, 1.3, 1.7, 2.0;
    const Operator u = oracle::random_unitary(d, rng);
    const Operator a = u * spec.cast<Complex>().asDiagonal() * u.adjoint();
    const Operator b = a + oracle::random_hermitian(d, rng, 0.05);
    const Operator pa = u.leftCols(r) * u.leftCols(r).adjoint();
    const Eigensystem eb = herm_eig(b);
    const Operator pb = eb.vectors.leftCols(r) * eb.vectors.leftCols(r).adjoint();
    const double gap = eb.values(r) - (-0.8);
    if (gap <= 0) continue;
    const DavisKahanResult res = davis_kahan_check(a, b, pa, pb, -1.0, -0.8, gap);
    CHECK(res.holds);
    CHECK(res.lhs <= res.rhs);
    ++checked;
  }
  CHECK(checked >= 30);
}

TEST_CASE("Davis-Kahan reports violated hypotheses") {
  Operator a = Operator::Zero(2, 2);
  a.diagonal() << 0.0, 1.0;
  const Operator p = ket_projector(0.0);
  CHECK_THROWS_AS(davis_kahan_check(a, a, p, p, 0.5, 0.6, 0.1), HypothesisViolation);
  CHECK_THROWS_AS(davis_kahan_check(a, a, p, p, 0.0, 0.0, 2.0), HypothesisViolation);
  CHECK_THROWS_AS(davis_kahan_check(a, a, ket_projector(0.3), p, 0.0, 0.0, 0.5), HypothesisViolation);
  CHECK(davis_kahan_check(a, a, p, p, 0.0, 0.0, 0.5).holds);
}

TEST_CASE("ad expansion remainder bound") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const Operator s = Complex(0, 1) * oracle::random_hermitian(4, rng, 0.3);
    const Operator h = oracle::random_hermitian(4, rng);
    const Operator conj = oracle::expm(s) * h * oracle::expm(-s);
    CHECK(ad_remainder(s, h, 0).remainder == doctest::Approx(oracle::norm2(h)).epsilon(1e-10));
    CHECK(ad_remainder(s, h, 1).remainder == doctest::Approx(oracle::norm2(conj - h)).epsilon(1e-8));
    for (int k = 0; k <= 6; ++k) {
      const AdRemainder r = ad_remainder(s, h, k);
      CHECK(r.remainder <= r.bound * (1 + 1e-9) + 1e-13);
    }
  }
  CHECK_THROWS_AS(ad_remainder(Operator::Zero(2, 2), Operator::Identity(2, 2), 7), InvalidInput);
  CHECK_THROWS_AS(ad_remainder(Operator::Identity(2, 2), Operator::Identity(2, 2), 1), InvalidInput);
}

TEST_CASE("nested commutators of local sums grow linearly with system size") {
  for (int k : {1, 2, 3}) {
    double lo = INFINITY, hi = 0.0;
    for (int n = 4; n <= 9; ++n) {
      const LocalHamiltonian gen = pauli_chain(n, {0.3, 0.2}, false);
      LocalHamiltonian h(SiteLayout::qubits(n));
      for (int s = 0; s < n; ++s) h.add_pauli(PauliString::single(n, s, Pauli::Y, 1.0));
      for (int s = 0; s + 1 < n; ++s) {
        PauliString p;
        p.n_sites = n;
        p.ops[s] = Pauli::X;
        p.ops[s + 1] = Pauli::X;
        h.add_pauli(p);
      }
      const LocalAdBound b = local_ad_bound_check(gen, h, k);
      lo = std::min(lo, b.ratio);
      hi = std::max(hi, b.ratio);
    }
    CHECK(hi < 2.0 * lo);
    CHECK(hi < std::pow(4.0 * 2, k));
  }
}
