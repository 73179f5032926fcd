#include "arimat/arimat.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "arimat/caps.hpp"
#include "arimat/decompose.hpp"
#include "arimat/gpcheck.hpp"
#include "arimat/matroid.hpp"

namespace arimat::ari {

using exactmat::det;
using exactmat::Field;
using exactmat::Scalar;
using matroid::MatroidView;

GroupList GroupList::from_matrix(Matrix m) {
  GroupList gl{std::move(m), {}, {}};
  gl.validate();
  return gl;
}

void GroupList::validate() const {
  if (!free.field().is_rational() || !free.is_integer())
    throw Error(errc::non_integer_entries, "group list needs an integer free part");
  if (torsion.size() != moduli.size())
    throw Error(errc::bad_shape, "torsion rows and moduli differ in count");
  for (const auto& row : torsion)
    if (int(row.size()) != free.cols()) throw Error(errc::bad_shape, "ragged torsion row");
  for (const Int& q : moduli)
    if (q < 1) throw Error(errc::bad_shape, "moduli must be positive");
}

std::pair<Matrix, std::vector<int>> lift(const GroupList& gl) {
  gl.validate();
  int d = gl.free.rows(), nfree = gl.free.cols(), n = gl.torsion_rows();
  if (n == 0) return {gl.free, {}};
  Matrix out(d + n, nfree + n, Field::rationals());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < nfree; ++j) out.set(i, j, gl.free.at(i, j));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < nfree; ++j) out.set(d + i, j, Scalar::of_int(gl.torsion[i][j]));
    out.set(d + i, nfree + i, Scalar::of_int(gl.moduli[i]));
  }
  std::vector<int> appended(n);
  std::iota(appended.begin(), appended.end(), nfree);
  return {out, appended};
}

namespace {

// Multiplicity of a column set in a torsion-free list: gcd of the maximal
// minors when independent, gcd over the maximal-rank independent subsets
// otherwise.
Int tf_multiplicity(const Matrix& m, std::vector<int> cols) {
  std::sort(cols.begin(), cols.end());
  if (cols.empty()) return 1;
  int r = exactmat::rank(m.columns(cols));
  if (r == 0) return 1;  // loops only: the empty set is the one maximal independent subset
  if (r == int(cols.size())) {
    std::vector<Int> minors;
    for (const auto& rows : subsets::combinations(m.rows(), r))
      minors.push_back(det(m.submatrix(rows, cols)).as_int());
    return exactmat::gcd_of(minors);
  }
  Int g = 0;
  for (const auto& pick : subsets::combinations(int(cols.size()), r)) {
    std::vector<int> b;
    for (int i : pick) b.push_back(cols[i]);
    if (exactmat::rank(m.columns(b)) != r) continue;
    g = gcd(g, tf_multiplicity(m, b));
  }
  return abs(g);
}

std::vector<int> mask_to_cols(Mask s) { return subsets::to_indices(s); }

}  // namespace

Int multiplicity(const GroupList& gl, const std::vector<int>& s) {
  for (int e : s)
    if (e < 0 || e >= gl.elements()) throw Error(errc::out_of_ground_set, "element out of range");
  auto [l, y] = lift(gl);
  std::vector<int> cols = s;
  cols.insert(cols.end(), y.begin(), y.end());
  return tf_multiplicity(l, cols);
}

MultiplicityTable full_table(const GroupList& gl) {
  int n = gl.elements();
  if (n > caps().table) throw Error(errc::too_large, "ground set exceeds the table cap");
  auto [l, y] = lift(gl);
  MultiplicityTable t;
  t.n = n;
  t.rank.resize(std::size_t(1) << n);
  t.m.resize(std::size_t(1) << n);
  for (Mask s = 0; s < (Mask(1) << n); ++s) {
    auto cols = mask_to_cols(s);
    t.rank[s] = cols.empty() ? 0 : exactmat::rank(gl.free.columns(cols));
    std::vector<int> lifted = cols;
    lifted.insert(lifted.end(), y.begin(), y.end());
    t.m[s] = tf_multiplicity(l, lifted);
  }
  return t;
}

std::optional<std::vector<int>> find_multiplicative_basis(const GroupList& gl) {
  if (!gl.torsion_free())
    throw Error(errc::has_torsion, "multiplicative bases are searched on a lifting");
  const Matrix& m = gl.free;
  int r = exactmat::rank(m);
  if (r == 0) return std::vector<int>{};
  std::vector<Int> singleton(m.cols());
  for (int j = 0; j < m.cols(); ++j) singleton[j] = tf_multiplicity(m, {j});
  for (const auto& b : subsets::combinations(m.cols(), r)) {
    if (exactmat::rank(m.columns(b)) != r) continue;
    Int prod = 1;
    for (int j : b) prod *= singleton[j];
    if (tf_multiplicity(m, b) == prod) return b;
  }
  return std::nullopt;
}

namespace {

// Multiplicative bases of a lifting that contain the appended columns,
// lexicographic in the non-appended part.
std::optional<std::vector<int>> multiplicative_basis_over(const Matrix& l,
                                                          const std::vector<int>& y) {
  int r = exactmat::rank(l);
  if (int(y.size()) > r) return std::nullopt;
  if (r == 0) return std::vector<int>{};
  std::vector<int> rest;
  for (int c = 0; c < l.cols(); ++c)
    if (std::find(y.begin(), y.end(), c) == y.end()) rest.push_back(c);
  std::vector<Int> singleton(l.cols());
  for (int j = 0; j < l.cols(); ++j) singleton[j] = tf_multiplicity(l, {j});
  for (const auto& pick : subsets::combinations(int(rest.size()), r - int(y.size()))) {
    std::vector<int> b;
    for (int i : pick) b.push_back(rest[i]);
    b.insert(b.end(), y.begin(), y.end());
    std::sort(b.begin(), b.end());
    if (exactmat::rank(l.columns(b)) != r) continue;
    Int prod = 1;
    for (int j : b) prod *= singleton[j];
    if (tf_multiplicity(l, b) == prod) {
      std::vector<int> ordered;  // non-appended part first, then the appended set
      for (int i : pick) ordered.push_back(rest[i]);
      std::sort(ordered.begin(), ordered.end());
      ordered.insert(ordered.end(), y.begin(), y.end());
      return ordered;
    }
  }
  return std::nullopt;
}

}  // namespace

Classification classify(const GroupList& gl) {
  auto [l, y] = lift(gl);
  if (l.cols() > caps().ground) throw Error(errc::too_large, "lift exceeds the enumeration cap");
  Classification c;
  MatroidView view(l);
  c.regular = matroid::is_regular(view);

  std::vector<Int> singleton(l.cols());
  for (int j = 0; j < l.cols(); ++j) singleton[j] = tf_multiplicity(l, {j});
  c.strongly_multiplicative = true;
  for (const auto& b : matroid::bases(view)) {
    Int prod = 1;
    for (int j : b) prod *= singleton[j];
    if (tf_multiplicity(l, b) != prod) {
      c.strongly_multiplicative = false;
      break;
    }
  }
  c.weakly_multiplicative = multiplicative_basis_over(l, y).has_value();
  return c;
}

GroupList arith_power(const GroupList& gl, unsigned long k) {
  gl.validate();
  if (k == 1) return gl;
  auto [l, y] = lift(gl);
  int n_elems = gl.elements();
  int n_tor = gl.torsion_rows();

  MatroidView underlying(gl.free);
  if (matroid::find_u24(underlying)) {
    auto cert = gpcheck::power_nonrep_certificate(gl, k);
    if (!cert) throw Error(errc::internal, "certificate construction failed on a U24 minor");
    throw gpcheck::NonRegularError(*cert);
  }
  if (!matroid::is_regular(MatroidView(l)))
    throw Error(errc::no_multiplicative_basis,
                "the canonical lift is not regular, so no powering construction applies");

  auto basis = multiplicative_basis_over(l, y);
  if (!basis)
    throw Error(errc::no_multiplicative_basis,
                "the canonical lift has no multiplicative basis containing the appended columns");

  // Hermite normal form with the multiplicative basis in front makes the
  // basis columns diagonal; the factorization then has a diagonal T and the
  // entrywise powered product stays integral.
  exactmat::HnfResult h = exactmat::hnf(l, *basis);
  int rl = int(basis->size());
  for (int i = 0; i < rl; ++i)
    for (int j = 0; j < rl; ++j)
      if (i != j && !h.hnf.at(i, j).is_zero())
        throw Error(errc::internal, "multiplicative basis did not diagonalize under HNF");
  for (int i = 0; i < n_tor; ++i)
    if (h.hnf.at(rl - n_tor + i, rl - n_tor + i).as_int() != gl.moduli[i])
      throw Error(errc::internal, "appended columns lost their moduli under HNF");

  std::vector<int> live_rows(rl);
  std::iota(live_rows.begin(), live_rows.end(), 0);
  std::vector<int> all_cols(h.hnf.cols());
  std::iota(all_cols.begin(), all_cols.end(), 0);
  Matrix trimmed = h.hnf.submatrix(live_rows, all_cols);

  decompose::TADFactorization f = decompose::tad(trimmed);
  if (!f.t_is_diagonal()) throw Error(errc::internal, "expected a diagonal T from the diagonal basis");

  Matrix lift_k = [&] {
    Matrix t = exactmat::matrix_pow(f.t, k);
    Matrix dk(trimmed.cols(), trimmed.cols(), trimmed.field());
    for (int j = 0; j < trimmed.cols(); ++j) dk.set(j, j, f.d[j].pow(k));
    return t * f.a * dk;
  }();
  if (!lift_k.is_integer()) throw Error(errc::internal, "powered lift is not integral");

  // Split back: columns of the original ground set in source order; the
  // first rl - n rows stay free, the basis rows of the appended columns
  // carry the powered moduli.
  std::vector<int> pos_of(l.cols());
  for (int j = 0; j < l.cols(); ++j) pos_of[h.perm[j]] = j;
  int free_rows = rl - n_tor;
  int out_free_rows = std::max(free_rows, 1);

  Matrix out_free(out_free_rows, n_elems, Field::rationals());
  for (int i = 0; i < free_rows; ++i)
    for (int e = 0; e < n_elems; ++e) out_free.set(i, e, lift_k.at(i, pos_of[e]));

  GroupList out{out_free, {}, {}};
  for (int i = 0; i < n_tor; ++i) {
    Int q = gl.moduli[i];
    Int qk;
    mpz_pow_ui(qk.get_mpz_t(), q.get_mpz_t(), k);
    if (qk == 1) continue;  // trivial summands are dropped
    std::vector<Int> row(n_elems);
    for (int e = 0; e < n_elems; ++e) {
      Int v = lift_k.at(free_rows + i, pos_of[e]).as_int();
      mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), qk.get_mpz_t());
      row[e] = v;
    }
    out.torsion.push_back(std::move(row));
    out.moduli.push_back(qk);
  }
  out.validate();

  // The construction is always re-checked against the powered table.
  MultiplicityTable before = full_table(gl);
  MultiplicityTable after = full_table(out);
  for (Mask s = 0; s < (Mask(1) << n_elems); ++s) {
    Int want;
    mpz_pow_ui(want.get_mpz_t(), before.m[s].get_mpz_t(), k);
    if (after.rank[s] != before.rank[s] || after.m[s] != want)
      throw Error(errc::internal, "powered representation fails the table check");
  }
  return out;
}

std::vector<GcdViolation> gcd_consistency(const MultiplicityTable& t) {
  std::vector<GcdViolation> out;
  for (Mask s = 0; s < Mask(t.size()); ++s) {
    if (t.rank[s] == subsets::popcount(s)) continue;  // independent sets hold trivially
    Int g = 0;
    for (Mask b = s;; b = (b - 1) & s) {
      if (subsets::popcount(b) == t.rank[s] && t.rank[b] == t.rank[s]) g = gcd(g, t.m[b]);
      if (b == 0) break;
    }
    g = abs(g);
    if (g != 0 && g != t.m[s]) out.push_back({s, t.m[s], g});
  }
  return out;
}

AxiomReport verify_axioms(const MultiplicityTable& t) {
  if (t.n > caps().axioms) throw Error(errc::too_large, "axiom check exceeds the ground cap");
  AxiomReport rep;
  rep.pass = true;
  Mask full = (Mask(1) << t.n) - 1;

  for (Mask a = 0; a <= full; ++a)
    for (int e = 0; e < t.n; ++e) {
      if (a & (Mask(1) << e)) continue;
      Mask ae = a | (Mask(1) << e);
      bool ok = t.rank[ae] == t.rank[a] ? t.m[a] % t.m[ae] == 0 : t.m[ae] % t.m[a] == 0;
      rep.a1_checks.push_back({a, e, ok});
      if (!ok) rep.pass = false;
    }

  for (Mask r = 0; r <= full; ++r) {
    Mask rest = full & ~r;
    // iterate s = r | sub over subsets sub of the complement
    for (Mask sub = rest;; sub = (sub - 1) & rest) {
      Mask s = r | sub;
      Mask fm = 0;
      for (int e = 0; e < t.n; ++e) {
        Mask bit = Mask(1) << e;
        if ((sub & bit) && t.rank[r | bit] == t.rank[r] + 1) fm |= bit;
      }
      Mask tm = sub & ~fm;
      bool molecule = true;
      for (Mask q = sub;; q = (q - 1) & sub) {
        if (t.rank[r | q] != t.rank[r] + subsets::popcount(q & fm)) {
          molecule = false;
          break;
        }
        if (q == 0) break;
      }
      if (molecule) {
        Int rho = 0;
        int ssize = subsets::popcount(s);
        for (Mask q = sub;; q = (q - 1) & sub) {
          Int term = t.m[r | q];
          rho += (ssize - subsets::popcount(r | q)) % 2 == 0 ? term : -term;
          if (q == 0) break;
        }
        if (subsets::popcount(tm) % 2 != 0) rho = -rho;
        bool p_ok = rho >= 0;
        bool prod_ok = t.m[r] * t.m[s] == t.m[r | fm] * t.m[r | tm];
        rep.molecule_checks.push_back({r, s, fm, tm, rho, p_ok});
        rep.a2_checks.push_back({r, s, prod_ok});
        if (!p_ok || !prod_ok) rep.pass = false;
      }
      if (sub == 0) break;
    }
  }
  return rep;
}

namespace {

// Row transform U (unimodular) and invariant factors s_1 | s_2 | ... of an
// integer matrix: the column lattice of U*M is  s_1 Z e_1 + s_2 Z e_2 + ...
struct SmithRows {
  std::vector<std::vector<Int>> u;
  std::vector<Int> factors;
};

SmithRows smith_row_transform(std::vector<std::vector<Int>> m) {
  int rows = int(m.size());
  int cols = rows ? int(m[0].size()) : 0;
  SmithRows res;
  res.u.assign(rows, std::vector<Int>(rows, 0));
  for (int i = 0; i < rows; ++i) res.u[i][i] = 1;

  auto row_op = [&](int dst, int src, const Int& c) {
    for (int j = 0; j < cols; ++j) m[dst][j] += c * m[src][j];
    for (int j = 0; j < rows; ++j) res.u[dst][j] += c * res.u[src][j];
  };
  auto row_swap = [&](int a, int b) {
    std::swap(m[a], m[b]);
    std::swap(res.u[a], res.u[b]);
  };
  auto col_op = [&](int dst, int src, const Int& c) {
    for (int i = 0; i < rows; ++i) m[i][dst] += c * m[i][src];
  };
  auto col_swap = [&](int a, int b) {
    for (int i = 0; i < rows; ++i) std::swap(m[i][a], m[i][b]);
  };

  int t = 0;
  while (t < rows && t < cols) {
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (m[i][j] != 0 && (pi < 0 || cmp(abs(m[i][j]), abs(m[pi][pj])) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    if (pi != t) row_swap(t, pi);
    if (pj != t) col_swap(t, pj);

    bool clean = true;
    for (int i = t + 1; i < rows; ++i) {
      if (m[i][t] == 0) continue;
      Int q = m[i][t] / m[t][t];
      row_op(i, t, -q);
      if (m[i][t] != 0) clean = false;
    }
    for (int j = t + 1; j < cols; ++j) {
      if (m[t][j] == 0) continue;
      Int q = m[t][j] / m[t][t];
      col_op(j, t, -q);
      if (m[t][j] != 0) clean = false;
    }
    if (!clean) continue;

    // divisibility fix: fold a bad column into the pivot column and redo
    bool fixed = true;
    for (int i = t + 1; i < rows && fixed; ++i)
      for (int j = t + 1; j < cols && fixed; ++j)
        if (m[i][j] % m[t][t] != 0) {
          col_op(t, j, 1);
          fixed = false;
        }
    if (!fixed) continue;

    if (m[t][t] < 0) {
      for (int j = 0; j < cols; ++j) m[t][j] = -m[t][j];
      for (int j = 0; j < rows; ++j) res.u[t][j] = -res.u[t][j];
    }
    res.factors.push_back(m[t][t]);
    ++t;
  }
  return res;
}

std::vector<std::vector<Int>> incidence_columns(const LabelledGraph& g, bool dotted,
                                                unsigned long power) {
  std::vector<std::vector<Int>> cols;
  for (const auto& e : g.edges) {
    if (e.dotted != dotted) continue;
    if (e.tail == e.head) throw Error(errc::loop_edge, "loop edges are not allowed");
    if (e.tail < 0 || e.tail >= g.vertices || e.head < 0 || e.head >= g.vertices)
      throw Error(errc::bad_shape, "edge endpoint out of range");
    if (e.label < 1) throw Error(errc::bad_shape, "labels must be positive");
    Int l;
    mpz_pow_ui(l.get_mpz_t(), e.label.get_mpz_t(), power);
    std::vector<Int> col(g.vertices, 0);
    col[e.tail] = -l;
    col[e.head] = l;
    cols.push_back(std::move(col));
  }
  return cols;
}

GroupList labelled_list_powered(const LabelledGraph& g, unsigned long power) {
  auto reg = incidence_columns(g, false, power);
  auto dot = incidence_columns(g, true, power);
  if (reg.empty()) throw Error(errc::bad_shape, "graph needs at least one regular edge");
  int nv = g.vertices;

  if (dot.empty()) {
    Matrix free(nv, int(reg.size()), Field::rationals());
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < int(reg.size()); ++j) free.set(i, j, Scalar::of_int(reg[j][i]));
    return GroupList{free, {}, {}};
  }

  // Present Z^V / <dotted columns> via a row transform: the first r
  // coordinates become cyclic of the invariant-factor orders, the rest stay
  // free. Torsion entries keep their exact transformed coordinates, which
  // keeps the canonical lift equivalent to the incidence lifting.
  std::vector<std::vector<Int>> w(nv, std::vector<Int>(dot.size()));
  for (int i = 0; i < nv; ++i)
    for (std::size_t j = 0; j < dot.size(); ++j) w[i][j] = dot[j][i];
  SmithRows snf = smith_row_transform(std::move(w));
  int r = int(snf.factors.size());

  auto transformed = [&](const std::vector<Int>& col) {
    std::vector<Int> out(nv, 0);
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j) out[i] += snf.u[i][j] * col[j];
    return out;
  };

  int d = nv - r;
  Matrix free(std::max(d, 1), int(reg.size()), Field::rationals());
  GroupList out{free, {}, {}};
  std::vector<std::vector<Int>> tor_rows;
  for (int i = 0; i < r; ++i)
    if (snf.factors[i] != 1) {
      out.moduli.push_back(snf.factors[i]);
      tor_rows.emplace_back();
    }
  for (std::size_t j = 0; j < reg.size(); ++j) {
    auto y = transformed(reg[j]);
    for (int i = 0; i < d; ++i) out.free.set(i, int(j), Scalar::of_int(y[r + i]));
    int slot = 0;
    for (int i = 0; i < r; ++i)
      if (snf.factors[i] != 1) tor_rows[slot++].push_back(y[i]);
  }
  out.torsion = std::move(tor_rows);
  out.validate();
  return out;
}

}  // namespace

GroupList labelled_to_list(const LabelledGraph& g) { return labelled_list_powered(g, 1); }

GroupList labelled_power(const LabelledGraph& g, unsigned long k) {
  return labelled_list_powered(g, k);
}

}  // namespace arimat::ari
