#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "arimat/exactmat.hpp"
#include "arimat/matroid.hpp"
#include "arimat/subsets.hpp"

namespace testutil {

using arimat::exactmat::Matrix;
using arimat::exactmat::Scalar;

// Deterministic generator; uniform_int_distribution is not portable across
// standard libraries, so entries come from the raw stream.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return state_;
  }

  long range(long lo, long hi) {  // inclusive
    return lo + long(next() % std::uint64_t(hi - lo + 1));
  }

private:
  std::uint64_t state_;
};

inline Matrix random_int_matrix(Rng& rng, int d, int n, long lo, long hi) {
  std::vector<std::vector<long>> rows(d, std::vector<long>(n));
  for (auto& r : rows)
    for (long& v : r) v = rng.range(lo, hi);
  return Matrix::from_rows(rows);
}

inline Matrix random_full_rank(Rng& rng, int d, int n, long lo, long hi) {
  for (;;) {
    Matrix m = random_int_matrix(rng, d, n, lo, hi);
    if (arimat::exactmat::rank(m) == d) return m;
  }
}

// Cofactor-expansion determinant, the independent oracle for the
// elimination kernel. Only sensible for small matrices.
inline Scalar naive_det(const Matrix& m) {
  int n = m.rows();
  if (n == 1) return m.at(0, 0);
  Scalar acc = Scalar::zero(m.field());
  std::vector<int> all_rows;
  for (int i = 1; i < n; ++i) all_rows.push_back(i);
  std::vector<int> cols;
  for (int j = 0; j < n; ++j) cols.push_back(j);
  for (int j = 0; j < n; ++j) {
    if (m.at(0, j).is_zero()) continue;
    std::vector<int> sub_cols;
    for (int c : cols)
      if (c != j) sub_cols.push_back(c);
    Scalar minor = naive_det(m.submatrix(all_rows, sub_cols));
    Scalar term = m.at(0, j) * minor;
    acc = j % 2 == 0 ? acc + term : acc - term;
  }
  return acc;
}

// Brute-force U24 search over all disjoint (inner, context) pairs, the
// oracle for the staged search in the matroid module.
inline bool brute_force_has_u24(const arimat::matroid::MatroidView& v) {
  const auto& g = v.ground();
  int n = int(g.size());
  for (std::uint32_t jm = 0; jm < (1u << n); ++jm) {
    std::vector<int> context;
    std::vector<int> rest;
    for (int i = 0; i < n; ++i) ((jm >> i) & 1 ? context : rest).push_back(g[i]);
    if (int(rest.size()) < 4) continue;
    int rj = v.rank_of(context);
    for (const auto& pick : arimat::subsets::combinations(int(rest.size()), 4)) {
      std::vector<int> inner;
      for (int i : pick) inner.push_back(rest[i]);
      std::vector<int> all = context;
      all.insert(all.end(), inner.begin(), inner.end());
      if (v.rank_of(all) - rj != 2) continue;
      bool ok = true;
      for (const auto& pair : arimat::subsets::combinations(4, 2)) {
        std::vector<int> probe = context;
        probe.push_back(inner[pair[0]]);
        probe.push_back(inner[pair[1]]);
        if (v.rank_of(probe) - rj != 2) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
  }
  return false;
}

}  // namespace testutil
