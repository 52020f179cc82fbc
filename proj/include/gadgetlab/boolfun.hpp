#pragma once

#include <vector>

namespace gadgetlab {

// f : {0,1}^n -> R. Table index has x_1 as its most significant bit.
struct BoolFunction {
  int n = 0;
  std::vector<double> table;

  double operator()(unsigned x) const { return table.at(x); }
};

BoolFunction make_bool_function(int n, std::vector<double> table);

// Coefficient of (-1)^{s.x}, indexed by the subset mask s in the table convention.
std::vector<double> walsh_coefficients(const BoolFunction& f);
int walsh_locality(const BoolFunction& f, double tol = 1e-12);
bool bool_klocal_check(const BoolFunction& f, int k, double tol = 1e-12);

// (Rf)(x_1..x_{n-1}) = f(x_1..x_{n-1}, 0) - f(x_1..x_{n-1}, 1)
BoolFunction bool_reduce_R(const BoolFunction& f);

BoolFunction bool_proof_function(int n, int k, int k_prime);

// Lower bound on max |f - g| over k'-local g.
double bool_separation_bound(const BoolFunction& f, int k_prime);

}  // namespace gadgetlab
