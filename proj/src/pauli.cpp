#include <string>

#include "gadgetlab/errors.hpp"
#include "gadgetlab/operators.hpp"

namespace gadgetlab {

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw InvalidInput(std::string("not a Pauli letter: ") + c);
  }
}

Operator pauli_matrix(Pauli p) {
  Operator m(2, 2);
  const Complex i(0.0, 1.0);
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -i, i, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

PauliString PauliString::parse(std::string_view letters, double coeff) {
  PauliString p;
  p.coeff = coeff;
  p.n_sites = static_cast<int>(letters.size());
  for (std::size_t k = 0; k < letters.size(); ++k) {
    const Pauli q = pauli_from_char(letters[k]);
    if (q != Pauli::I) p.ops[static_cast<int>(k)] = q;
  }
  return p;
}

PauliString PauliString::single(int n_sites, int site, Pauli p, double coeff) {
  if (site < 0 || site >= n_sites) throw InvalidInput("Pauli site out of range");
  PauliString s;
  s.coeff = coeff;
  s.n_sites = n_sites;
  if (p != Pauli::I) s.ops[site] = p;
  return s;
}

std::string PauliString::letters() const {
  std::string out(static_cast<std::size_t>(n_sites), 'I');
  for (const auto& [site, p] : ops) out[static_cast<std::size_t>(site)] = static_cast<char>(p);
  return out;
}

std::vector<int> PauliString::support() const {
  std::vector<int> s;
  for (const auto& [site, p] : ops) s.push_back(site);
  return s;
}

bool PauliString::commutes_with(const PauliString& other) const {
  int anti = 0;
  for (const auto& [site, p] : ops) {
    const auto it = other.ops.find(site);
    if (it != other.ops.end() && it->second != p) ++anti;
  }
  return anti % 2 == 0;
}

namespace {

// Single-site product a*b = phase * c.
std::pair<Complex, Pauli> multiply_site(Pauli a, Pauli b) {
  if (a == Pauli::I) return {1.0, b};
  if (b == Pauli::I) return {1.0, a};
  if (a == b) return {1.0, Pauli::I};
  const Complex i(0.0, 1.0);
  auto cyclic = [](Pauli x, Pauli y) {
    return (x == Pauli::X && y == Pauli::Y) || (x == Pauli::Y && y == Pauli::Z) ||
           (x == Pauli::Z && y == Pauli::X);
  };
  Pauli c = Pauli::I;
  for (Pauli q : {Pauli::X, Pauli::Y, Pauli::Z}) {
    if (q != a && q != b) c = q;
  }
  return {cyclic(a, b) ? i : -i, c};
}

}  // namespace

PauliProduct multiply(const PauliString& a, const PauliString& b) {
  PauliProduct out;
  out.phase = 1.0;
  out.string.coeff = a.coeff * b.coeff;
  out.string.n_sites = std::max(a.n_sites, b.n_sites);
  out.string.ops = a.ops;
  for (const auto& [site, q] : b.ops) {
    const auto it = out.string.ops.find(site);
    const Pauli left = it == out.string.ops.end() ? Pauli::I : it->second;
    const auto [phase, c] = multiply_site(left, q);
    out.phase *= phase;
    if (c == Pauli::I) {
      out.string.ops.erase(site);
    } else {
      out.string.ops[site] = c;
    }
  }
  return out;
}

Operator pauli_embed(const PauliString& p, const SiteLayout& layout) {
  std::vector<int> support;
  Operator local = Operator::Identity(1, 1);
  for (const auto& [site, q] : p.ops) {
    if (site < 0 || site >= layout.size()) {
      throw InvalidInput("Pauli site " + std::to_string(site) + " out of range");
    }
    if (layout.dim(site) != 2) {
      throw InvalidInput("Pauli on non-qubit site " + std::to_string(site));
    }
    support.push_back(site);
    local = kron(local, pauli_matrix(q));
  }
  if (support.empty()) return p.coeff * identity(layout.total_dim());
  return embed(p.coeff * local, support, layout);
}

}  // namespace gadgetlab
