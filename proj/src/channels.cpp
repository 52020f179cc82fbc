#include "gadgetlab/channels.hpp"

#include <algorithm>
#include <random>

#include "gadgetlab/errors.hpp"

namespace gadgetlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Operator apply_channel(const Channel& c, const Operator& rho) {
  return std::visit(
      overloaded{
          [&](const UnitaryConjugation& u) -> Operator { return u.U * rho * u.U.adjoint(); },
          [&](const AncillaDephasing& d) -> Operator {
            if (d.ancilla_dim < 1 || rho.rows() % d.ancilla_dim != 0) {
              throw InvalidInput("state dimension is not divisible by the ancilla dimension");
            }
            Operator out = rho;
            for (Eigen::Index j = 0; j < out.cols(); ++j) {
              for (Eigen::Index i = 0; i < out.rows(); ++i) {
                if (i % d.ancilla_dim != j % d.ancilla_dim) out(i, j) = 0.0;
              }
            }
            return out;
          },
          [&](const Depolarizing& d) -> Operator {
            const auto n = rho.rows();
            return (1.0 - d.p) * rho + d.p * rho.trace() / static_cast<double>(n) * Operator::Identity(n, n);
          },
          [&](const Composition& comp) -> Operator {
            Operator out = rho;
            for (const Channel& stage : comp.stages) out = apply_channel(stage, out);
            return out;
          },
      },
      c.kind);
}

double estimate_one_to_one_distance(const Channel& a, const Channel& b, int dim, int samples,
                                    std::uint64_t seed) {
  if (dim < 1 || samples < 1) throw InvalidInput("need a positive dimension and sample count");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    State psi(dim);
    for (int i = 0; i < dim; ++i) psi(i) = Complex(gauss(rng), gauss(rng));
    psi.normalize();
    const Operator rho = psi * psi.adjoint();
    best = std::max(best, trace_norm(hermitian_part(apply_channel(a, rho) - apply_channel(b, rho))));
  }
  return best;
}

}  // namespace gadgetlab
