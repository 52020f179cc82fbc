#include "gadgetlab/rotations.hpp"

#include <algorithm>
#include <cmath>

#include "gadgetlab/errors.hpp"

namespace gadgetlab {

namespace {

constexpr double kProjectorTol = 1e-9;

void require_projector(const Operator& p, const char* name) {
  if (p.rows() != p.cols()) throw InvalidInput(std::string(name) + " is not square");
  if (!is_hermitian(p, 1e-10) || (p * p - p).cwiseAbs().maxCoeff() > kProjectorTol) {
    throw InvalidInput(std::string(name) + " is not an orthogonal projector");
  }
}

Operator inverse_sqrt(const Operator& g) {
  const Eigensystem es = herm_eig(hermitian_part(g));
  if (es.values.minCoeff() <= 0.0) throw NumericalAmbiguity("singular overlap in polar factor");
  const Eigen::VectorXd d = es.values.cwiseSqrt().cwiseInverse();
  return es.vectors * d.asDiagonal() * es.vectors.adjoint();
}

// log of a unitary whose eigenphases lie in (-pi/2, pi/2).
Operator small_angle_log(const Operator& w) {
  const Complex i(0.0, 1.0);
  const Operator sine = hermitian_part((w - w.adjoint()) / (2.0 * i));
  const Operator cosine = hermitian_part((w + w.adjoint()) / 2.0);
  const Eigensystem es = herm_eig(sine);
  Eigen::VectorXd theta(es.values.size());
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    const auto v = es.vectors.col(j);
    const double c = (v.adjoint() * cosine * v)(0, 0).real();
    theta(j) = std::atan2(es.values(j), c);
  }
  return i * es.vectors * theta.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

}  // namespace

DirectRotation direct_rotation(const Operator& p, const Operator& q) {
  require_projector(p, "P");
  require_projector(q, "Q");
  if (p.rows() != q.rows()) throw InvalidInput("projectors act on different spaces");
  if (projector_rank(p) != projector_rank(q)) throw InvalidInput("projectors differ in rank");
  if (op_norm(hermitian_part(p - q)) >= 1.0 - 1e-8) {
    throw InvalidInput("||P - Q|| too close to 1 for a direct rotation");
  }
  const Operator id = identity(static_cast<std::size_t>(p.rows()));
  const Operator m = q * p + (id - q) * (id - p);
  DirectRotation r;
  r.W = m * inverse_sqrt(m.adjoint() * m);
  r.S = small_angle_log(r.W);
  return r;
}

DavisKahanResult davis_kahan_check(const Operator& a, const Operator& b, const Operator& pa,
                                   const Operator& pb, double alpha, double beta, double gap) {
  if (!is_hermitian(a) || !is_hermitian(b)) throw InvalidInput("A and B must be Hermitian");
  require_projector(pa, "P_A");
  require_projector(pb, "P_B");
  if (!(gap > 0.0) || alpha > beta) throw HypothesisViolation("need gap > 0 and alpha <= beta");
  const double tol = 1e-9 * (1.0 + op_norm(a) + op_norm(b));
  if (op_norm(a * pa - pa * a) > tol) throw HypothesisViolation("P_A does not commute with A");
  if (op_norm(b * pb - pb * b) > tol) throw HypothesisViolation("P_B does not commute with B");

  const Operator qa = projector_range(pa);
  const Eigen::VectorXd spec_a = herm_eig(hermitian_part(qa.adjoint() * a * qa)).values;
  if (spec_a.size() > 0 && (spec_a.minCoeff() < alpha - tol || spec_a.maxCoeff() > beta + tol)) {
    throw HypothesisViolation("spectrum of A on P_A leaves [alpha, beta]");
  }
  const Operator id = identity(static_cast<std::size_t>(a.rows()));
  const Operator qb = projector_range(id - pb);
  const Eigen::VectorXd spec_b = herm_eig(hermitian_part(qb.adjoint() * b * qb)).values;
  for (Eigen::Index j = 0; j < spec_b.size(); ++j) {
    const double l = spec_b(j);
    if (l > alpha - gap + tol && l < beta + gap - tol) {
      throw HypothesisViolation("spectrum of B on the complement of P_B enters the gap window");
    }
  }
  if (projector_rank(pa) != projector_rank(pb) || op_norm(hermitian_part(pa - pb)) >= 1.0 - 1e-8) {
    throw HypothesisViolation("P_A and P_B are not related by a direct rotation");
  }

  DavisKahanResult res;
  res.lhs = op_norm(direct_rotation(pa, pb).W - id);
  res.rhs = std::sqrt(2.0) / gap * op_norm((b - a) * pa);
  res.holds = res.lhs <= res.rhs + 1e-12;
  return res;
}

CommutatorCheck projector_commutator_check(const Operator& p, const Operator& q) {
  require_projector(p, "P");
  require_projector(q, "Q");
  const Complex i(0.0, 1.0);
  CommutatorCheck c;
  c.commutator_norm = op_norm(hermitian_part(i * (p * q - q * p)));
  const Eigen::VectorXd lam = herm_eig(hermitian_part(p * q * p)).values;
  for (Eigen::Index j = 0; j < lam.size(); ++j) {
    double l = std::clamp(lam(j), 0.0, 1.0);
    if (l < 1e-12) l = 0.0;
    if (l > 1.0 - 1e-12) l = 1.0;
    c.f = std::max(c.f, std::min(l, 1.0 - l));
  }
  c.residual = std::abs(c.commutator_norm - std::sqrt(c.f - c.f * c.f));
  return c;
}

Operator ad_power(const Operator& s, const Operator& h, int k) {
  Operator out = h;
  for (int j = 0; j < k; ++j) out = s * out - out * s;
  return out;
}

AdRemainder ad_remainder(const Operator& s, const Operator& h, int k) {
  if (k < 0 || k > 6) throw InvalidInput("ad_remainder supports 0 <= k <= 6");
  if (!is_hermitian(h)) throw InvalidInput("H must be Hermitian");
  const Complex i(0.0, 1.0);
  const Operator gen = i * s;
  if (!is_hermitian(gen, 1e-10)) throw InvalidInput("S must be anti-Hermitian");
  const Operator u = expm_ih(hermitian_part(gen), 1.0);  // exp(S)
  Operator rest = u * h * u.adjoint();
  Operator term = h;
  double factorial = 1.0;
  for (int p = 0; p < k; ++p) {
    rest -= term / factorial;
    term = s * term - term * s;
    factorial *= p + 1;
  }
  AdRemainder r;
  r.remainder = op_norm(hermitian_part(rest));
  r.bound = op_norm(hermitian_part(term)) / factorial;
  return r;
}

LocalAdBound local_ad_bound_check(const LocalHamiltonian& generator, const LocalHamiltonian& h, int k) {
  if (!(generator.layout() == h.layout())) throw InvalidInput("layouts differ");
  const Operator g = generator.assemble();
  const Operator ad = ad_power(g, h.assemble(), k);
  LocalAdBound r;
  r.ad_norm = op_norm(hermitian_part(k % 2 == 0 ? ad : Operator(Complex(0.0, 1.0) * ad)));
  r.reference = h.layout().size() * std::pow(hypergraph_stats(generator).J, k) * hypergraph_stats(h).J;
  r.ratio = r.reference > 0.0 ? r.ad_norm / r.reference : 0.0;
  return r;
}

}  // namespace gadgetlab
