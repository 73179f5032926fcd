#include "arimat/exactmat.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "arimat/subsets.hpp"

namespace arimat::exactmat {

namespace {

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

unsigned long fp_reduce(const Int& v, unsigned long p) {
  Int r = v % Int(p);
  if (r < 0) r += Int(p);
  return r.get_ui();
}

unsigned long fp_mul(unsigned long a, unsigned long b, unsigned long p) {
  return (unsigned long)((unsigned __int128)a * b % p);
}

unsigned long fp_pow(unsigned long a, unsigned long e, unsigned long p) {
  unsigned long r = 1 % p;
  while (e) {
    if (e & 1) r = fp_mul(r, a, p);
    a = fp_mul(a, a, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

Field Field::prime(unsigned long p) {
  if (!is_prime(p)) throw Error(errc::unsupported_field, "modulus " + std::to_string(p) + " is not prime");
  return Field{p};
}

std::string Field::str() const {
  return is_rational() ? "Q" : "Fp:" + std::to_string(p);
}

Field Field::parse(const std::string& text) {
  if (text == "Q") return rationals();
  if (text.rfind("Fp:", 0) == 0) {
    unsigned long p = 0;
    try {
      p = std::stoul(text.substr(3));
    } catch (const std::exception&) {
      throw Error(errc::parse_error, "bad field descriptor '" + text + "'");
    }
    return prime(p);
  }
  throw Error(errc::parse_error, "bad field descriptor '" + text + "'");
}

Scalar Scalar::of_rat(Rat q) {
  q.canonicalize();
  return Scalar(std::move(q), 0, Field::rationals());
}

Scalar Scalar::of_fp(long residue, unsigned long p) {
  Field f = Field::prime(p);
  return Scalar(Rat(0), fp_reduce(Int(residue), p), f);
}

bool Scalar::is_zero() const { return f_.is_rational() ? q_ == 0 : r_ == 0; }

bool Scalar::is_one() const { return f_.is_rational() ? q_ == 1 : r_ == 1 % f_.p; }

bool Scalar::is_integer() const {
  return f_.is_rational() ? q_.get_den() == 1 : true;
}

Int Scalar::as_int() const {
  if (!is_integer()) throw Error(errc::non_integer_entries, "scalar " + str() + " is not an integer");
  return f_.is_rational() ? q_.get_num() : Int(r_);
}

const Rat& Scalar::rat() const {
  if (!f_.is_rational()) throw Error(errc::unsupported_field, "prime-field scalar has no rational value");
  return q_;
}

unsigned long Scalar::residue() const {
  if (f_.is_rational()) throw Error(errc::unsupported_field, "rational scalar has no residue");
  return r_;
}

void Scalar::check_same_field(const Scalar& o) const {
  if (!(f_ == o.f_))
    throw Error(errc::unsupported_field, "mixed fields " + f_.str() + " and " + o.f_.str());
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  if (f_.is_rational()) return of_rat(q_ + o.q_);
  return Scalar(Rat(0), (r_ + o.r_) % f_.p, f_);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  if (f_.is_rational()) return of_rat(q_ * o.q_);
  return Scalar(Rat(0), fp_mul(r_, o.r_, f_.p), f_);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  if (f_.is_rational()) return of_rat(-q_);
  return Scalar(Rat(0), r_ == 0 ? 0 : f_.p - r_, f_);
}

bool Scalar::operator==(const Scalar& o) const {
  return f_ == o.f_ && (f_.is_rational() ? q_ == o.q_ : r_ == o.r_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(errc::bad_shape, "division by zero");
  if (f_.is_rational()) return of_rat(Rat(1) / q_);
  return Scalar(Rat(0), fp_pow(r_, f_.p - 2, f_.p), f_);
}

Scalar Scalar::pow(unsigned long k) const {
  if (f_.is_rational()) {
    Rat r(1);
    Rat b = q_;
    unsigned long e = k;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return of_rat(r);
  }
  return Scalar(Rat(0), fp_pow(r_, k, f_.p), f_);
}

int Scalar::sgn() const {
  if (!f_.is_rational()) throw Error(errc::unsupported_field, "sign is only ordered over Q");
  return ::sgn(q_);
}

Scalar Scalar::abs() const {
  if (!f_.is_rational()) throw Error(errc::unsupported_field, "absolute value is only ordered over Q");
  return of_rat(::abs(q_));
}

std::string Scalar::str() const {
  if (!f_.is_rational()) return std::to_string(r_);
  return q_.get_str();
}

Scalar Scalar::parse(const std::string& text, Field f) {
  if (text.empty()) throw Error(errc::parse_error, "empty scalar");
  std::size_t slash = text.find('/');
  try {
    Int num(slash == std::string::npos ? text : text.substr(0, slash));
    Int den = slash == std::string::npos ? Int(1) : Int(text.substr(slash + 1));
    if (den == 0) throw Error(errc::parse_error, "zero denominator in '" + text + "'");
    if (f.is_rational()) return of_rat(Rat(num) / Rat(den));
    if (den != 1 && fp_reduce(den, f.p) == 0)
      throw Error(errc::parse_error, "denominator divisible by modulus in '" + text + "'");
    unsigned long n = fp_reduce(num, f.p);
    unsigned long d = fp_reduce(den, f.p);
    return Scalar(Rat(0), fp_mul(n, fp_pow(d, f.p - 2, f.p), f.p), f);
  } catch (const std::invalid_argument&) {
    throw Error(errc::parse_error, "bad scalar literal '" + text + "'");
  }
}

Matrix::Matrix(int rows, int cols, Field f)
    : rows_(rows), cols_(cols), f_(f), e_(std::size_t(rows) * cols, Scalar::zero(f)) {
  if (rows <= 0 || cols <= 0) throw Error(errc::bad_shape, "matrix dimensions must be positive");
}

Matrix Matrix::identity(int d, Field f) {
  Matrix m(d, d, f);
  for (int i = 0; i < d; ++i) m.set(i, i, Scalar::one(f));
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long>>& rows) {
  return from_rows(rows, Field::rationals());
}

Matrix Matrix::from_rows(const std::vector<std::vector<long>>& rows, Field f) {
  if (rows.empty() || rows[0].empty()) throw Error(errc::bad_shape, "empty matrix");
  Matrix m(int(rows.size()), int(rows[0].size()), f);
  for (int i = 0; i < m.rows(); ++i) {
    if (int(rows[i].size()) != m.cols()) throw Error(errc::bad_shape, "ragged rows");
    for (int j = 0; j < m.cols(); ++j)
      m.set(i, j, f.is_rational() ? Scalar::of_long(rows[i][j]) : Scalar::of_fp(rows[i][j], f.p));
  }
  return m;
}

const Scalar& Matrix::at(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw Error(errc::bad_shape, "index out of range");
  return e_[std::size_t(i) * cols_ + j];
}

void Matrix::set(int i, int j, Scalar v) {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw Error(errc::bad_shape, "index out of range");
  if (!(v.field() == f_)) throw Error(errc::unsupported_field, "entry field mismatch");
  e_[std::size_t(i) * cols_ + j] = std::move(v);
}

Matrix Matrix::columns(const std::vector<int>& cols) const {
  std::vector<int> all(rows_);
  std::iota(all.begin(), all.end(), 0);
  return submatrix(all, cols);
}

Matrix Matrix::submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
  Matrix m(int(rows.size()), int(cols.size()), f_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m.set(int(i), int(j), at(rows[i], cols[j]));
  return m;
}

bool Matrix::is_integer() const {
  return std::all_of(e_.begin(), e_.end(), [](const Scalar& s) { return s.is_integer(); });
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_ || !(f_ == o.f_)) throw Error(errc::bad_shape, "incompatible product");
  Matrix r(rows_, o.cols_, f_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) {
      Scalar acc = Scalar::zero(f_);
      for (int k = 0; k < cols_; ++k) acc = acc + at(i, k) * o.at(k, j);
      r.set(i, j, acc);
    }
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && f_ == o.f_ && e_ == o.e_;
}

std::string Matrix::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).str();
    os << '\n';
  }
  return os.str();
}

const Scalar& PluckerVector::at(const std::vector<int>& subset) const {
  return coords[subsets::comb_rank(subset, n)];
}

namespace {

// Fraction-free (Bareiss) determinant of an integer matrix.
Int bareiss_det(std::vector<std::vector<Int>> m) {
  int n = int(m.size());
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) { piv = i; break; }
      if (piv < 0) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

Scalar det_fp(const Matrix& m) {
  int n = m.rows();
  std::vector<std::vector<Scalar>> a(n, std::vector<Scalar>(n, Scalar::zero(m.field())));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m.at(i, j);
  Scalar d = Scalar::one(m.field());
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (!a[i][k].is_zero()) { piv = i; break; }
    if (piv < 0) return Scalar::zero(m.field());
    if (piv != k) {
      std::swap(a[piv], a[k]);
      d = -d;
    }
    d = d * a[k][k];
    Scalar inv = a[k][k].inverse();
    for (int i = k + 1; i < n; ++i) {
      if (a[i][k].is_zero()) continue;
      Scalar factor = a[i][k] * inv;
      for (int j = k; j < n; ++j) a[i][j] = a[i][j] - factor * a[k][j];
    }
  }
  return d;
}

}  // namespace

Scalar det(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(errc::non_square, "determinant of non-square matrix");
  if (!m.field().is_rational()) return det_fp(m);
  // Clear denominators per row, eliminate fraction-free, divide back.
  int n = m.rows();
  std::vector<std::vector<Int>> z(n, std::vector<Int>(n));
  Int scale = 1;
  for (int i = 0; i < n; ++i) {
    Int l = 1;
    for (int j = 0; j < n; ++j) l = lcm(l, m.at(i, j).rat().get_den());
    for (int j = 0; j < n; ++j) {
      Rat v = m.at(i, j).rat() * Rat(l);
      z[i][j] = v.get_num();
    }
    scale *= l;
  }
  return Scalar::of_rat(Rat(bareiss_det(std::move(z))) / Rat(scale));
}

int rank(const Matrix& m) {
  std::vector<std::vector<Scalar>> a(m.rows(), std::vector<Scalar>(m.cols(), Scalar::zero(m.field())));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) a[i][j] = m.at(i, j);
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!a[i][c].is_zero()) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(a[piv], a[r]);
    Scalar inv = a[r][c].inverse();
    for (int i = r + 1; i < m.rows(); ++i) {
      if (a[i][c].is_zero()) continue;
      Scalar factor = a[i][c] * inv;
      for (int j = c; j < m.cols(); ++j) a[i][j] = a[i][j] - factor * a[r][j];
    }
    ++r;
  }
  return r;
}

HnfResult hnf(const Matrix& m, const std::vector<int>& front_columns) {
  if (!m.field().is_rational() || !m.is_integer())
    throw Error(errc::non_integer_entries, "Hermite normal form needs integer entries");
  int d = m.rows(), n = m.cols();

  std::vector<int> order;
  std::vector<bool> used(n, false);
  for (int c : front_columns) {
    if (c < 0 || c >= n || used[c]) throw Error(errc::bad_shape, "bad preferred column order");
    order.push_back(c);
    used[c] = true;
  }
  for (int c = 0; c < n; ++c)
    if (!used[c]) order.push_back(c);

  std::vector<std::vector<Int>> w(d, std::vector<Int>(n));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < n; ++j) w[i][j] = m.at(i, order[j]).as_int();
  std::vector<std::vector<Int>> u(d, std::vector<Int>(d, 0));
  for (int i = 0; i < d; ++i) u[i][i] = 1;

  auto row_axpy = [&](int dst, int src, const Int& c) {  // row dst += c * row src
    for (int j = 0; j < n; ++j) w[dst][j] += c * w[src][j];
    for (int j = 0; j < d; ++j) u[dst][j] += c * u[src][j];
  };
  auto row_swap = [&](int a, int b) {
    std::swap(w[a], w[b]);
    std::swap(u[a], u[b]);
  };
  auto row_negate = [&](int r) {
    for (int j = 0; j < n; ++j) w[r][j] = -w[r][j];
    for (int j = 0; j < d; ++j) u[r][j] = -u[r][j];
  };

  // Supplied front columns become the leading pivots in their given order;
  // afterwards pivot columns are taken greedily left to right, where a
  // column with its first usable entry exactly in the pivot row wins over
  // one that needs a row swap.
  std::vector<int> pivots, nonpivots;
  int prow = 0;
  std::vector<bool> taken(n, false);
  while (prow < d) {
    int chosen = -1;
    if (prow < int(front_columns.size())) {
      chosen = prow;  // position in `order`
      bool usable = w[prow][chosen] != 0;
      for (int i = prow + 1; i < d && !usable; ++i)
        if (w[i][chosen] != 0) {
          row_swap(prow, i);
          usable = true;
        }
      if (!usable) throw Error(errc::bad_shape, "preferred columns are not independent");
    }
    if (chosen < 0)
      for (int j = 0; j < n && chosen < 0; ++j)
        if (!taken[j] && w[prow][j] != 0) chosen = j;
    if (chosen < 0) {
      for (int j = 0; j < n && chosen < 0; ++j) {
        if (taken[j]) continue;
        for (int i = prow + 1; i < d; ++i)
          if (w[i][j] != 0) {
            row_swap(prow, i);
            chosen = j;
            break;
          }
      }
    }
    if (chosen < 0) break;  // all remaining columns vanish on rows >= prow
    taken[chosen] = true;
    pivots.push_back(chosen);

    // Clear the column below the pivot row with gcd row operations.
    while (true) {
      int best = -1;
      for (int i = prow; i < d; ++i)
        if (w[i][chosen] != 0 && (best < 0 || cmp(abs(w[i][chosen]), abs(w[best][chosen])) < 0)) best = i;
      if (best != prow) row_swap(prow, best);
      bool done = true;
      for (int i = prow + 1; i < d; ++i) {
        if (w[i][chosen] == 0) continue;
        Int q = w[i][chosen] / w[prow][chosen];  // truncated division is fine here
        row_axpy(i, prow, -q);
        if (w[i][chosen] != 0) done = false;
      }
      if (done) break;
    }
    if (w[prow][chosen] < 0) row_negate(prow);
    ++prow;
  }
  for (int j = 0; j < n; ++j)
    if (!taken[j]) nonpivots.push_back(j);

  // Reduce entries above each pivot into [0, pivot).
  for (int k = 0; k < int(pivots.size()); ++k) {
    int c = pivots[k];
    for (int i = 0; i < k; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), w[i][c].get_mpz_t(), w[k][c].get_mpz_t());
      if (q != 0) row_axpy(i, k, -q);
    }
  }

  std::vector<int> final_pos;
  for (int c : pivots) final_pos.push_back(c);
  for (int c : nonpivots) final_pos.push_back(c);

  HnfResult res{Matrix(d, d, Field::rationals()), std::vector<int>(n), Matrix(d, n, Field::rationals())};
  for (int j = 0; j < n; ++j) res.perm[j] = order[final_pos[j]];
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) res.transform.set(i, j, Scalar::of_int(u[i][j]));
    for (int j = 0; j < n; ++j) res.hnf.set(i, j, Scalar::of_int(w[i][final_pos[j]]));
  }
  return res;
}

PluckerVector plucker(const Matrix& m) {
  int d = m.rows(), n = m.cols();
  if (d > n) throw Error(errc::bad_shape, "more rows than columns");
  if (rank(m) != d) throw Error(errc::rank_deficient, "matrix does not have full row rank");
  PluckerVector pv;
  pv.d = d;
  pv.n = n;
  pv.field = m.field();
  for (const auto& c : subsets::combinations(n, d)) pv.coords.push_back(det(m.columns(c)));
  return pv;
}

Int gcd_of(const std::vector<Int>& xs) {
  if (xs.empty()) throw Error(errc::bad_shape, "gcd of empty list");
  Int g = 0;
  for (const Int& x : xs) g = gcd(g, x);
  if (g == 0) throw Error(errc::all_zero, "gcd of all-zero list");
  return abs(g);
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(errc::non_square, "inverse of non-square matrix");
  int n = m.rows();
  Field f = m.field();
  std::vector<std::vector<Scalar>> a(n, std::vector<Scalar>(2 * n, Scalar::zero(f)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = m.at(i, j);
    a[i][n + i] = Scalar::one(f);
  }
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (!a[i][c].is_zero()) { piv = i; break; }
    if (piv < 0) throw Error(errc::rank_deficient, "singular matrix");
    std::swap(a[piv], a[c]);
    Scalar inv = a[c][c].inverse();
    for (int j = 0; j < 2 * n; ++j) a[c][j] = a[c][j] * inv;
    for (int i = 0; i < n; ++i) {
      if (i == c || a[i][c].is_zero()) continue;
      Scalar factor = a[i][c];
      for (int j = 0; j < 2 * n; ++j) a[i][j] = a[i][j] - factor * a[c][j];
    }
  }
  Matrix r(n, n, f);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.set(i, j, a[i][n + j]);
  return r;
}

Matrix matrix_pow(const Matrix& m, unsigned long k) {
  if (m.rows() != m.cols()) throw Error(errc::non_square, "power of non-square matrix");
  Matrix r = Matrix::identity(m.rows(), m.field());
  Matrix b = m;
  while (k) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

}  // namespace arimat::exactmat
