#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace gadgetlab {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using State = Eigen::VectorXcd;

inline constexpr std::size_t kDefaultDimensionCap = std::size_t{1} << 13;

// kDefaultDimensionCap unless GADGETLAB_DIM_CAP holds a positive integer.
std::size_t default_dimension_cap();

// Ordered list of local dimensions. Site 0 is the most significant tensor factor.
class SiteLayout {
 public:
  SiteLayout() = default;
  explicit SiteLayout(std::vector<int> dims, std::size_t cap = default_dimension_cap());

  static SiteLayout qubits(int n, std::size_t cap = default_dimension_cap());

  int size() const { return static_cast<int>(dims_.size()); }
  int dim(int site) const { return dims_.at(static_cast<std::size_t>(site)); }
  const std::vector<int>& dims() const { return dims_; }
  std::size_t total_dim() const { return total_; }
  std::size_t cap() const { return cap_; }

  SiteLayout with_extra_sites(const std::vector<int>& extra) const;
  std::size_t subsystem_dim(std::span<const int> sites) const;

  bool operator==(const SiteLayout& other) const { return dims_ == other.dims_; }

 private:
  std::vector<int> dims_;
  std::size_t total_ = 1;
  std::size_t cap_ = kDefaultDimensionCap;
};

enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

Pauli pauli_from_char(char c);
Operator pauli_matrix(Pauli p);

struct PauliString {
  double coeff = 1.0;
  std::map<int, Pauli> ops;  // identity factors are not stored
  int n_sites = 0;

  // One letter per site, e.g. "ZIZ".
  static PauliString parse(std::string_view letters, double coeff = 1.0);
  static PauliString single(int n_sites, int site, Pauli p, double coeff = 1.0);

  std::string letters() const;
  std::vector<int> support() const;
  bool commutes_with(const PauliString& other) const;
};

struct PauliProduct {
  Complex phase;
  PauliString string;
};

// a*b with coefficients multiplied and the Pauli phase returned separately.
PauliProduct multiply(const PauliString& a, const PauliString& b);

Operator identity(std::size_t dim);
Operator kron(const Operator& a, const Operator& b);

Operator pauli_embed(const PauliString& p, const SiteLayout& layout);

// Lift `op`, whose tensor factors follow the order of `support`, to the full layout.
Operator embed(const Operator& op, std::span<const int> support, const SiteLayout& layout);

Operator partial_trace(const Operator& a, const SiteLayout& layout, std::span<const int> keep);

bool is_hermitian(const Operator& a, double rel_tol = 1e-12);
Operator hermitian_part(const Operator& a);

struct Eigensystem {
  Eigen::VectorXd values;  // ascending
  Operator vectors;        // columns
};

Eigensystem herm_eig(const Operator& a);

// exp(-i t H) through the eigendecomposition of H.
Operator expm_ih(const Operator& h, double t);
Operator expm_ih(const Eigensystem& es, double t);
State evolve(const Eigensystem& es, const State& psi, double t);

double op_norm(const Operator& a);
double trace_norm(const Operator& a);

// Projector onto eigenvectors with eigenvalue <= delta.
Operator low_energy_projector(const Operator& h, double delta);
Operator low_energy_projector(const Eigensystem& es, double delta);

double spectral_distance(const Operator& a, const Operator& b);

// Orthonormal columns spanning the range of a Hermitian projector.
Operator projector_range(const Operator& p);
int projector_rank(const Operator& p);

}  // namespace gadgetlab
