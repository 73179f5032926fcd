#pragma once

#include <optional>
#include <vector>

#include "arimat/exactmat.hpp"
#include "arimat/matroid.hpp"

namespace arimat::decompose {

using exactmat::Matrix;
using exactmat::Scalar;

// X = T * A * D with A totally unimodular carrying an identity block on
// `basis`, D diagonal with first diagonal entry 1, both invertible.
struct TADFactorization {
  Matrix source;
  Matrix t;
  Matrix a;
  std::vector<Scalar> d;   // diagonal of D
  std::vector<int> basis;  // columns of the identity block in a

  Matrix d_matrix() const;
  bool t_is_diagonal() const;
};

enum class PowerMode { up_to_sign, odd_exact, sign_preserving };

struct CounterexamplePair {
  unsigned long p;
  unsigned long k;
  unsigned long a;  // field element with (a-1)^k = +-(a^k - 1), a, a^k not in {0,1}
  Matrix x;         // X(a) over F_p
  Matrix xk;        // X_k(a) over F_p
};

// Scaling recovery of a totally unimodular representative; the failure
// carries the offending entry or minor in the exception message.
Matrix recover_tu(const Matrix& x);

TADFactorization tad(const Matrix& x);
TADFactorization tad(const Matrix& x, const Matrix& a);

Matrix power_matrix(const Matrix& x, unsigned long k, PowerMode mode = PowerMode::up_to_sign);
Matrix power_two(const Matrix& x1, const Matrix& x2, unsigned long k1, unsigned long k2,
                 PowerMode mode = PowerMode::up_to_sign);

std::optional<CounterexamplePair> counterexample_fp(unsigned long p, unsigned long k);

// Exhaustive check of every square subdeterminant (columns capped).
bool is_totally_unimodular(const Matrix& a);

}  // namespace arimat::decompose
