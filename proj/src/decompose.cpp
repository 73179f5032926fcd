#include "arimat/decompose.hpp"

#include <algorithm>
#include <numeric>

#include "arimat/caps.hpp"
#include "arimat/subsets.hpp"

namespace arimat::decompose {

using exactmat::det;
using exactmat::Field;
using exactmat::Int;
using exactmat::inverse;
using exactmat::matrix_pow;
using exactmat::plucker;
using exactmat::PluckerVector;

namespace {

void require_full_rank_q(const Matrix& x) {
  if (!x.field().is_rational()) throw Error(errc::unsupported_field, "decomposition works over Q");
  if (x.rows() > x.cols()) throw Error(errc::bad_shape, "more rows than columns");
  if (exactmat::rank(x) != x.rows()) throw Error(errc::rank_deficient, "matrix is not of full row rank");
}

std::vector<int> lex_first_basis(const Matrix& x) {
  for (const auto& c : subsets::combinations(x.cols(), x.rows()))
    if (!det(x.columns(c)).is_zero()) return c;
  throw Error(errc::rank_deficient, "no basis found");
}

bool same_plucker_support(const PluckerVector& a, const PluckerVector& b) {
  if (a.d != b.d || a.n != b.n) return false;
  for (std::size_t i = 0; i < a.coords.size(); ++i)
    if (a.coords[i].is_zero() != b.coords[i].is_zero()) return false;
  return true;
}

Matrix diag_to_matrix(const std::vector<Scalar>& d, Field f) {
  Matrix m(int(d.size()), int(d.size()), f);
  for (std::size_t i = 0; i < d.size(); ++i) m.set(int(i), int(i), d[i]);
  return m;
}

// Solves the column scalings against a given TU representative via the
// basis-exchange ratio delta_i/delta_j, propagated from delta = 1 at the
// smallest column of each linked component, then T = X_B (A_B D_B)^-1.
TADFactorization solve_scalings(const Matrix& x, const Matrix& a) {
  PluckerVector px = plucker(x);
  PluckerVector pa = plucker(a);
  if (!same_plucker_support(px, pa))
    throw Error(errc::inconsistent_ratios, "the supplied matrix represents a different labelled matroid");

  int n = x.cols();
  auto combs = subsets::combinations(n, x.rows());
  std::vector<int> basis_ids;
  for (int i = 0; i < int(combs.size()); ++i)
    if (!px.coords[i].is_zero()) basis_ids.push_back(i);

  std::vector<bool> is_loop(n, true);
  for (int id : basis_ids)
    for (int c : combs[id]) is_loop[c] = false;

  // delta_i / delta_j over every exchange edge B -> B \ {i} u {j}.
  struct Edge {
    int to;
    Scalar factor;  // delta_to = factor * delta_from
  };
  std::vector<std::vector<Edge>> adj(n);
  for (std::size_t u = 0; u < basis_ids.size(); ++u)
    for (std::size_t v = u + 1; v < basis_ids.size(); ++v) {
      const auto& bu = combs[basis_ids[u]];
      const auto& bv = combs[basis_ids[v]];
      std::vector<int> diff;
      std::set_symmetric_difference(bu.begin(), bu.end(), bv.begin(), bv.end(),
                                    std::back_inserter(diff));
      if (diff.size() != 2) continue;
      int i = diff[0], j = diff[1];
      if (std::binary_search(bu.begin(), bu.end(), j)) std::swap(i, j);  // i in bu, j in bv
      Scalar ratio = (px.coords[basis_ids[u]] * pa.coords[basis_ids[v]]) /
                     (px.coords[basis_ids[v]] * pa.coords[basis_ids[u]]);
      adj[i].push_back({j, ratio.inverse()});  // delta_j = ratio^-1 * delta_i
      adj[j].push_back({i, ratio});            // delta_i = ratio   * delta_j
    }

  std::vector<Scalar> delta(n, Scalar::zero(x.field()));
  std::vector<bool> known(n, false);
  for (int c = 0; c < n; ++c) {
    if (is_loop[c]) {
      delta[c] = Scalar::one(x.field());
      known[c] = true;
    }
  }
  for (int root = 0; root < n; ++root) {
    if (known[root]) continue;
    delta[root] = Scalar::one(x.field());
    known[root] = true;
    std::vector<int> queue{root};
    while (!queue.empty()) {
      int cur = queue.back();
      queue.pop_back();
      for (const Edge& e : adj[cur]) {
        if (known[e.to]) continue;
        delta[e.to] = e.factor * delta[cur];
        known[e.to] = true;
        queue.push_back(e.to);
      }
    }
  }

  std::vector<int> b = lex_first_basis(x);
  Matrix ab = a.columns(b);
  Matrix db(int(b.size()), int(b.size()), x.field());
  for (std::size_t i = 0; i < b.size(); ++i) db.set(int(i), int(i), delta[b[i]]);
  Matrix t = x.columns(b) * inverse(ab * db);

  TADFactorization f{x, t, a, delta, b};
  if (!(t * a * diag_to_matrix(delta, x.field()) == x))
    throw Error(errc::inconsistent_ratios, "scaling propagation does not reproduce the matrix");
  return f;
}

// Explicit construction for rank <= 2: group the columns into parallel
// classes; a regular rank-2 list has at most three of them.
TADFactorization tad_low_rank(const Matrix& x) {
  Field f = x.field();
  int n = x.cols();
  int d = x.rows();

  if (d == 1) {
    Matrix a(1, n, f);
    std::vector<Scalar> delta(n, Scalar::one(f));
    Scalar t = Scalar::one(f);
    bool have_t = false;
    for (int j = 0; j < n; ++j) {
      if (x.at(0, j).is_zero()) continue;
      if (!have_t) {
        t = x.at(0, j);
        have_t = true;
      }
      a.set(0, j, Scalar::one(f));
      delta[j] = x.at(0, j) / t;
    }
    Matrix tm(1, 1, f);
    tm.set(0, 0, t);
    TADFactorization fact{x, tm, a, delta, lex_first_basis(x)};
    if (!(tm * a * diag_to_matrix(delta, f) == x)) throw Error(errc::internal, "rank-1 factorization failed");
    return fact;
  }

  // Parallel classes in column order; class representatives u, v, w.
  std::vector<int> cls(n, -1);
  std::vector<int> reps;
  for (int j = 0; j < n; ++j) {
    bool zero = x.at(0, j).is_zero() && x.at(1, j).is_zero();
    if (zero) continue;
    for (std::size_t c = 0; c < reps.size(); ++c) {
      int r = reps[c];
      Scalar dd = x.at(0, r) * x.at(1, j) - x.at(1, r) * x.at(0, j);
      if (dd.is_zero()) {
        cls[j] = int(c);
        break;
      }
    }
    if (cls[j] < 0) {
      cls[j] = int(reps.size());
      reps.push_back(j);
    }
  }
  if (reps.size() > 3)
    throw Error(errc::not_regular,
                "rank-2 list with four pairwise non-parallel columns (columns " +
                    std::to_string(reps[0] + 1) + "," + std::to_string(reps[1] + 1) + "," +
                    std::to_string(reps[2] + 1) + "," + std::to_string(reps[3] + 1) + ")");
  if (reps.size() < 2) throw Error(errc::rank_deficient, "rank-2 list with fewer than two classes");

  // T columns: u and v, scaled so that the third class maps to (1,1).
  std::vector<Scalar> u{x.at(0, reps[0]), x.at(1, reps[0])};
  std::vector<Scalar> v{x.at(0, reps[1]), x.at(1, reps[1])};
  Scalar ca = Scalar::one(f), cb = Scalar::one(f);
  if (reps.size() == 3) {
    // w = ca*u + cb*v, solved with Cramer's rule.
    Scalar w0 = x.at(0, reps[2]), w1 = x.at(1, reps[2]);
    Scalar dd = u[0] * v[1] - u[1] * v[0];
    ca = (w0 * v[1] - w1 * v[0]) / dd;
    cb = (u[0] * w1 - u[1] * w0) / dd;
  }
  Matrix t(2, 2, f);
  t.set(0, 0, ca * u[0]);
  t.set(1, 0, ca * u[1]);
  t.set(0, 1, cb * v[0]);
  t.set(1, 1, cb * v[1]);
  Matrix tinv = inverse(t);

  Matrix a(2, n, f);
  std::vector<Scalar> delta(n, Scalar::one(f));
  for (int j = 0; j < n; ++j) {
    if (cls[j] < 0) continue;
    // column = delta_j * T * a_j with a_j in {e1, e2, (1,1)}.
    std::vector<Scalar> col{tinv.at(0, 0) * x.at(0, j) + tinv.at(0, 1) * x.at(1, j),
                            tinv.at(1, 0) * x.at(0, j) + tinv.at(1, 1) * x.at(1, j)};
    if (cls[j] == 0) {
      a.set(0, j, Scalar::one(f));
      delta[j] = col[0];
    } else if (cls[j] == 1) {
      a.set(1, j, Scalar::one(f));
      delta[j] = col[1];
    } else {
      a.set(0, j, Scalar::one(f));
      a.set(1, j, Scalar::one(f));
      delta[j] = col[0];
      if (!(col[1] == col[0])) throw Error(errc::internal, "rank-2 class resolution failed");
    }
  }

  // Normalize the first diagonal entry to 1, absorbing the factor into T.
  Scalar d1 = delta[0];
  if (!d1.is_zero() && !d1.is_one()) {
    for (Scalar& s : delta) s = s / d1;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) t.set(i, j, t.at(i, j) * d1);
  }

  TADFactorization fact{x, t, a, delta, lex_first_basis(x)};
  if (!(t * a * diag_to_matrix(delta, f) == x)) throw Error(errc::internal, "rank-2 factorization failed");
  return fact;
}

}  // namespace

Matrix TADFactorization::d_matrix() const { return diag_to_matrix(d, source.field()); }

bool TADFactorization::t_is_diagonal() const {
  for (int i = 0; i < t.rows(); ++i)
    for (int j = 0; j < t.cols(); ++j)
      if (i != j && !t.at(i, j).is_zero()) return false;
  return true;
}

bool is_totally_unimodular(const Matrix& a) {
  if (a.cols() > caps().tu_cols)
    throw Error(errc::too_large, "total-unimodularity check exceeds the column cap");
  int kmax = std::min(a.rows(), a.cols());
  for (int k = 1; k <= kmax; ++k)
    for (const auto& rows : subsets::combinations(a.rows(), k))
      for (const auto& cols : subsets::combinations(a.cols(), k)) {
        Scalar dd = det(a.submatrix(rows, cols));
        if (!(dd.is_zero() || dd.is_one() || (-dd).is_one())) return false;
      }
  return true;
}

Matrix recover_tu(const Matrix& x) {
  require_full_rank_q(x);
  int d = x.rows(), n = x.cols();
  if (n > caps().tu_cols) throw Error(errc::too_large, "column count exceeds the TU verification cap");

  std::vector<int> b0 = lex_first_basis(x);
  Matrix xp = inverse(x.columns(b0)) * x;  // identity block on b0

  std::vector<bool> basic(n, false);
  for (int c : b0) basic[c] = true;

  // Bipartite support graph on rows x non-basic columns; a spanning forest
  // fixes one entry per edge to +1 by choosing row/column scalars.
  int nodes = d + n;  // rows, then columns (basic column nodes stay unused)
  std::vector<Scalar> scale(nodes, Scalar::zero(x.field()));
  std::vector<bool> known(nodes, false);
  for (int start = 0; start < d; ++start) {
    if (known[start]) continue;
    scale[start] = Scalar::one(x.field());
    known[start] = true;
    std::vector<int> queue{start};
    while (!queue.empty()) {
      int cur = queue.back();
      queue.pop_back();
      if (cur < d) {
        for (int j = 0; j < n; ++j) {
          if (basic[j] || known[d + j] || xp.at(cur, j).is_zero()) continue;
          scale[d + j] = (scale[cur] * xp.at(cur, j)).inverse();
          known[d + j] = true;
          queue.push_back(d + j);
        }
      } else {
        int j = cur - d;
        for (int i = 0; i < d; ++i) {
          if (known[i] || xp.at(i, j).is_zero()) continue;
          scale[i] = (xp.at(i, j) * scale[cur]).inverse();
          known[i] = true;
          queue.push_back(i);
        }
      }
    }
  }

  Matrix a(d, n, x.field());
  for (std::size_t k = 0; k < b0.size(); ++k) a.set(int(k), b0[k], Scalar::one(x.field()));
  for (int j = 0; j < n; ++j) {
    if (basic[j]) continue;
    for (int i = 0; i < d; ++i) {
      if (xp.at(i, j).is_zero()) continue;
      Scalar v = scale[i] * xp.at(i, j) * scale[d + j];
      if (!(v.is_one() || (-v).is_one()))
        throw Error(errc::not_regular, "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                           ") scales to " + v.str() + ", not a unit");
      a.set(i, j, v);
    }
  }

  if (!is_totally_unimodular(a))
    throw Error(errc::not_regular, "the recovered sign pattern is not totally unimodular");
  if (!same_plucker_support(plucker(a), plucker(x)))
    throw Error(errc::not_regular, "the recovered sign pattern represents a different matroid");
  return a;
}

TADFactorization tad(const Matrix& x) {
  require_full_rank_q(x);
  if (x.rows() <= 2) {
    TADFactorization f = tad_low_rank(x);
    if (!is_totally_unimodular(f.a)) throw Error(errc::internal, "low-rank representative not TU");
    return f;
  }
  return solve_scalings(x, recover_tu(x));
}

TADFactorization tad(const Matrix& x, const Matrix& a) {
  require_full_rank_q(x);
  if (a.rows() != x.rows() || a.cols() != x.cols())
    throw Error(errc::bad_shape, "shape mismatch between the matrix and the supplied representative");
  if (!is_totally_unimodular(a))
    throw Error(errc::inconsistent_ratios, "the supplied representative is not totally unimodular");
  return solve_scalings(x, a);
}

namespace {

Matrix assemble_power(const TADFactorization& f, unsigned long k1, unsigned long k2,
                      const TADFactorization* f2, PowerMode mode) {
  Field field = f.source.field();
  int d = f.t.rows();
  int n = int(f.d.size());
  if (mode == PowerMode::odd_exact && (k1 + k2) % 2 == 0)
    throw Error(errc::even_k_for_odd_exact, "odd-exact mode needs an odd total exponent");

  if (mode != PowerMode::sign_preserving) {
    Matrix t = matrix_pow(f.t, k1);
    std::vector<Scalar> dd(n);
    for (int j = 0; j < n; ++j) dd[j] = f.d[j].pow(k1);
    if (f2) {
      t = t * matrix_pow(f2->t, k2);
      for (int j = 0; j < n; ++j) dd[j] = dd[j] * f2->d[j].pow(k2);
    }
    return t * f.a * diag_to_matrix(dd, field);
  }

  // Sign-preserving: |det T|^k with the sign of det T placed in the
  // top-left slot of an identity matrix, and |delta|^k with sgn(delta).
  auto tilde_t = [&](const TADFactorization& g, unsigned long k) {
    Scalar dt = det(g.t);
    Matrix t = Matrix::identity(d, field);
    Scalar v = dt.abs().pow(k);
    t.set(0, 0, dt.sgn() < 0 ? -v : v);
    return t;
  };
  auto tilde_d = [&](const TADFactorization& g, unsigned long k) {
    std::vector<Scalar> dd(n);
    for (int j = 0; j < n; ++j) {
      Scalar v = g.d[j].abs().pow(k);
      dd[j] = g.d[j].sgn() < 0 ? -v : v;
    }
    return dd;
  };
  Matrix t = tilde_t(f, k1);
  std::vector<Scalar> dd = tilde_d(f, k1);
  if (f2) {
    t = t * tilde_t(*f2, k2);
    auto dd2 = tilde_d(*f2, k2);
    for (int j = 0; j < n; ++j) dd[j] = dd[j] * dd2[j];
  }
  return t * f.a * diag_to_matrix(dd, field);
}

}  // namespace

Matrix power_matrix(const Matrix& x, unsigned long k, PowerMode mode) {
  TADFactorization f = tad(x);
  return assemble_power(f, k, 0, nullptr, mode);
}

Matrix power_two(const Matrix& x1, const Matrix& x2, unsigned long k1, unsigned long k2,
                 PowerMode mode) {
  if (x1.rows() != x2.rows() || x1.cols() != x2.cols())
    throw Error(errc::bad_shape, "the two matrices must have the same shape");
  require_full_rank_q(x1);
  require_full_rank_q(x2);
  if (!same_plucker_support(plucker(x1), plucker(x2)))
    throw Error(errc::labelled_matroid_mismatch, "the matrices represent different labelled matroids");
  TADFactorization f1 = tad(x1);
  TADFactorization f2 = tad(x2, f1.a);
  return assemble_power(f1, k1, k2, &f2, mode);
}

std::optional<CounterexamplePair> counterexample_fp(unsigned long p, unsigned long k) {
  Field f = Field::prime(p);
  if (k < 2) return std::nullopt;
  for (unsigned long a = 2; a < p; ++a) {
    Scalar sa = Scalar::of_fp(long(a), p);
    Scalar ak = sa.pow(k);
    if (ak.is_zero() || ak.is_one()) continue;
    Scalar lhs = (sa - Scalar::one(f)).pow(k);
    Scalar rhs = ak - Scalar::one(f);
    if (!(lhs == rhs || lhs == -rhs)) continue;

    Matrix x(2, 4, f), xk(2, 4, f);
    auto fill = [&](Matrix& m, const Scalar& last) {
      m.set(0, 0, Scalar::one(f));
      m.set(0, 2, Scalar::one(f));
      m.set(0, 3, Scalar::one(f));
      m.set(1, 1, Scalar::one(f));
      m.set(1, 2, Scalar::one(f));
      m.set(1, 3, last);
    };
    fill(x, sa);
    fill(xk, ak);

    // Both matrices must represent U(2,4) and the powering must hold on
    // every Plucker coordinate up to sign.
    PluckerVector px = plucker(x), pk = plucker(xk);
    bool ok = true;
    for (std::size_t i = 0; i < px.coords.size() && ok; ++i) {
      if (px.coords[i].is_zero() || pk.coords[i].is_zero()) {
        ok = false;
        break;
      }
      Scalar want = px.coords[i].pow(k);
      if (!(pk.coords[i] == want || pk.coords[i] == -want)) ok = false;
    }
    if (!ok) continue;
    return CounterexamplePair{p, k, a, x, xk};
  }
  return std::nullopt;
}

}  // namespace arimat::decompose
