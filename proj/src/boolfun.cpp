#include "gadgetlab/boolfun.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "gadgetlab/errors.hpp"

namespace gadgetlab {

BoolFunction make_bool_function(int n, std::vector<double> table) {
  if (n < 0 || n > 24) throw InvalidInput("unsupported number of bits");
  if (table.size() != (std::size_t{1} << n)) {
    throw InvalidInput("truth table needs 2^" + std::to_string(n) + " entries");
  }
  return BoolFunction{n, std::move(table)};
}

std::vector<double> walsh_coefficients(const BoolFunction& f) {
  // In-place fast Walsh-Hadamard transform.
  std::vector<double> c = f.table;
  for (std::size_t h = 1; h < c.size(); h <<= 1) {
    for (std::size_t i = 0; i < c.size(); i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = c[j];
        const double b = c[j + h];
        c[j] = a + b;
        c[j + h] = a - b;
      }
    }
  }
  const double scale = 1.0 / static_cast<double>(c.size());
  for (double& v : c) v *= scale;
  return c;
}

int walsh_locality(const BoolFunction& f, double tol) {
  const std::vector<double> c = walsh_coefficients(f);
  double peak = 0.0;
  for (double v : f.table) peak = std::max(peak, std::abs(v));
  int k = 0;
  for (std::size_t s = 0; s < c.size(); ++s) {
    if (std::abs(c[s]) > tol * std::max(peak, 1.0)) k = std::max(k, std::popcount(s));
  }
  return k;
}

bool bool_klocal_check(const BoolFunction& f, int k, double tol) { return walsh_locality(f, tol) <= k; }

BoolFunction bool_reduce_R(const BoolFunction& f) {
  if (f.n < 1) throw InvalidInput("cannot reduce a function of zero bits");
  std::vector<double> out(f.table.size() / 2);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = f.table[2 * j] - f.table[2 * j + 1];
  return BoolFunction{f.n - 1, std::move(out)};
}

BoolFunction bool_proof_function(int n, int k, int k_prime) {
  if (!(0 < k_prime && k_prime < k && k <= n)) throw InvalidInput("need 0 < k' < k <= n");
  std::vector<double> table(std::size_t{1} << n, 0.0);
  const unsigned low_mask = (1u << k_prime) - 1u;
  for (unsigned x = 0; x < table.size(); ++x) {
    if ((x & low_mask) != 0) continue;
    int parity = 0;
    for (int i = 1; i <= k - k_prime; ++i) parity += static_cast<int>((x >> (n - i)) & 1u);
    table[x] = parity % 2 == 0 ? 1.0 : -1.0;
  }
  return BoolFunction{n, std::move(table)};
}

double bool_separation_bound(const BoolFunction& f, int k_prime) {
  if (k_prime < 0 || k_prime > f.n) throw InvalidInput("k' must lie in [0, n]");
  BoolFunction r = f;
  for (int j = 0; j < k_prime; ++j) r = bool_reduce_R(r);
  const auto [lo, hi] = std::minmax_element(r.table.begin(), r.table.end());
  return (*hi - *lo) / (2.0 * std::ldexp(1.0, k_prime));
}

}  // namespace gadgetlab
