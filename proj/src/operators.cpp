#include "gadgetlab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include "gadgetlab/errors.hpp"

namespace gadgetlab {

std::size_t default_dimension_cap() {
  static const std::size_t cap = [] {
    if (const char* env = std::getenv("GADGETLAB_DIM_CAP")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return kDefaultDimensionCap;
  }();
  return cap;
}

SiteLayout::SiteLayout(std::vector<int> dims, std::size_t cap) : dims_(std::move(dims)), cap_(cap) {
  total_ = 1;
  for (int d : dims_) {
    if (d < 2) throw InvalidInput("local dimension must be at least 2, got " + std::to_string(d));
    if (total_ > cap_ / static_cast<std::size_t>(d)) {
      throw DimensionError("Hilbert space dimension exceeds cap " + std::to_string(cap_));
    }
    total_ *= static_cast<std::size_t>(d);
  }
}

SiteLayout SiteLayout::qubits(int n, std::size_t cap) {
  if (n < 0) throw InvalidInput("negative site count");
  return SiteLayout(std::vector<int>(static_cast<std::size_t>(n), 2), cap);
}

SiteLayout SiteLayout::with_extra_sites(const std::vector<int>& extra) const {
  std::vector<int> dims = dims_;
  dims.insert(dims.end(), extra.begin(), extra.end());
  return SiteLayout(std::move(dims), cap_);
}

std::size_t SiteLayout::subsystem_dim(std::span<const int> sites) const {
  std::size_t d = 1;
  for (int s : sites) d *= static_cast<std::size_t>(dim(s));
  return d;
}

namespace {

std::vector<std::size_t> strides_of(const SiteLayout& layout) {
  std::vector<std::size_t> strides(static_cast<std::size_t>(layout.size()), 1);
  for (int i = layout.size() - 2; i >= 0; --i) {
    strides[static_cast<std::size_t>(i)] =
        strides[static_cast<std::size_t>(i) + 1] * static_cast<std::size_t>(layout.dim(i + 1));
  }
  return strides;
}

void check_sites(std::span<const int> sites, const SiteLayout& layout) {
  std::vector<bool> seen(static_cast<std::size_t>(layout.size()), false);
  for (int s : sites) {
    if (s < 0 || s >= layout.size()) {
      throw InvalidInput("site index " + std::to_string(s) + " out of range");
    }
    if (seen[static_cast<std::size_t>(s)]) throw InvalidInput("repeated site " + std::to_string(s));
    seen[static_cast<std::size_t>(s)] = true;
  }
}

// Full-space offsets of every configuration of `sites`, and base indices of every
// configuration of the complementary sites.
struct IndexSplit {
  std::vector<std::size_t> inner;
  std::vector<std::size_t> outer;
};

IndexSplit split_indices(std::span<const int> sites, const SiteLayout& layout) {
  check_sites(sites, layout);
  const auto strides = strides_of(layout);
  IndexSplit split;
  split.inner.assign(1, 0);
  for (int s : sites) {
    std::vector<std::size_t> next;
    next.reserve(split.inner.size() * static_cast<std::size_t>(layout.dim(s)));
    for (std::size_t off : split.inner) {
      for (int v = 0; v < layout.dim(s); ++v) {
        next.push_back(off + static_cast<std::size_t>(v) * strides[static_cast<std::size_t>(s)]);
      }
    }
    split.inner = std::move(next);
  }
  split.outer.assign(1, 0);
  for (int s = 0; s < layout.size(); ++s) {
    if (std::find(sites.begin(), sites.end(), s) != sites.end()) continue;
    std::vector<std::size_t> next;
    next.reserve(split.outer.size() * static_cast<std::size_t>(layout.dim(s)));
    for (std::size_t off : split.outer) {
      for (int v = 0; v < layout.dim(s); ++v) {
        next.push_back(off + static_cast<std::size_t>(v) * strides[static_cast<std::size_t>(s)]);
      }
    }
    split.outer = std::move(next);
  }
  return split;
}

double frobenius(const Operator& a) { return a.norm(); }

}  // namespace

Operator identity(std::size_t dim) {
  return Operator::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

Operator kron(const Operator& a, const Operator& b) { return Eigen::kroneckerProduct(a, b).eval(); }

Operator embed(const Operator& op, std::span<const int> support, const SiteLayout& layout) {
  const IndexSplit split = split_indices(support, layout);
  const auto d = static_cast<Eigen::Index>(split.inner.size());
  if (op.rows() != d || op.cols() != d) {
    throw InvalidInput("operator shape does not match its support");
  }
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  Operator out = Operator::Zero(n, n);
  for (std::size_t base : split.outer) {
    for (Eigen::Index b = 0; b < d; ++b) {
      const auto col = static_cast<Eigen::Index>(base + split.inner[static_cast<std::size_t>(b)]);
      for (Eigen::Index a = 0; a < d; ++a) {
        const Complex v = op(a, b);
        if (v == Complex{}) continue;
        out(static_cast<Eigen::Index>(base + split.inner[static_cast<std::size_t>(a)]), col) = v;
      }
    }
  }
  return out;
}

Operator partial_trace(const Operator& a, const SiteLayout& layout, std::span<const int> keep) {
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  if (a.rows() != n || a.cols() != n) throw InvalidInput("operator shape does not match layout");
  const IndexSplit split = split_indices(keep, layout);
  const auto d = static_cast<Eigen::Index>(split.inner.size());
  Operator out = Operator::Zero(d, d);
  for (std::size_t base : split.outer) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto col = static_cast<Eigen::Index>(base + split.inner[static_cast<std::size_t>(j)]);
      for (Eigen::Index i = 0; i < d; ++i) {
        out(i, j) += a(static_cast<Eigen::Index>(base + split.inner[static_cast<std::size_t>(i)]), col);
      }
    }
  }
  return out;
}

bool is_hermitian(const Operator& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  return frobenius(a - a.adjoint()) <= rel_tol * frobenius(a);
}

Operator hermitian_part(const Operator& a) { return (a + a.adjoint()) / 2.0; }

Eigensystem herm_eig(const Operator& a) {
  if (!is_hermitian(a)) throw InvalidInput("herm_eig: operator is not Hermitian");
  const Operator h = hermitian_part(a);
  Eigensystem es;
  if (h.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.real());
    if (solver.info() != Eigen::Success) throw NumericalAmbiguity("eigensolver did not converge");
    es.values = solver.eigenvalues();
    es.vectors = solver.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<Operator> solver(h);
    if (solver.info() != Eigen::Success) throw NumericalAmbiguity("eigensolver did not converge");
    es.values = solver.eigenvalues();
    es.vectors = solver.eigenvectors();
  }
  return es;
}

Operator expm_ih(const Eigensystem& es, double t) {
  const Eigen::VectorXcd phases =
      es.values.unaryExpr([t](double l) { return std::exp(Complex(0.0, -t * l)); });
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

Operator expm_ih(const Operator& h, double t) { return expm_ih(herm_eig(h), t); }

State evolve(const Eigensystem& es, const State& psi, double t) {
  State c = es.vectors.adjoint() * psi;
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= std::exp(Complex(0.0, -t * es.values(i)));
  return es.vectors * c;
}

namespace {

Eigen::VectorXd singular_values(const Operator& a) {
  if (a.size() == 0) return {};
  if (is_hermitian(a)) {
    const Operator h = hermitian_part(a);
    Eigen::SelfAdjointEigenSolver<Operator> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs();
  }
  Eigen::BDCSVD<Operator> svd(a);
  return svd.singularValues();
}

}  // namespace

double op_norm(const Operator& a) {
  const Eigen::VectorXd s = singular_values(a);
  return s.size() == 0 ? 0.0 : s.maxCoeff();
}

double trace_norm(const Operator& a) { return singular_values(a).sum(); }

Operator low_energy_projector(const Eigensystem& es, double delta) {
  constexpr double kAmbiguity = 1e-8;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double l = es.values(i);
    if (std::abs(l - delta) <= kAmbiguity) {
      throw NumericalAmbiguity("eigenvalue " + std::to_string(l) + " lies on the cutoff " +
                               std::to_string(delta));
    }
    if (l <= delta) ++rank;
  }
  const auto low = es.vectors.leftCols(rank);
  return low * low.adjoint();
}

Operator low_energy_projector(const Operator& h, double delta) {
  return low_energy_projector(herm_eig(h), delta);
}

double spectral_distance(const Operator& a, const Operator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidInput("spectral_distance: dimension mismatch");
  }
  const Eigen::VectorXd la = herm_eig(a).values;
  const Eigen::VectorXd lb = herm_eig(b).values;
  return la.size() == 0 ? 0.0 : (la - lb).cwiseAbs().maxCoeff();
}

Operator projector_range(const Operator& p) {
  const Eigensystem es = herm_eig(p);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) > 0.5) ++rank;
  }
  return es.vectors.rightCols(rank);
}

int projector_rank(const Operator& p) {
  return static_cast<int>(std::lround(p.trace().real()));
}

}  // namespace gadgetlab
