#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "arimat/errors.hpp"

namespace arimat::exactmat {

using Int = mpz_class;
using Rat = mpq_class;

// The coefficient field: the rationals, or a prime field F_p with a
// machine-word modulus. p = 0 encodes Q.
struct Field {
  unsigned long p = 0;

  bool is_rational() const { return p == 0; }
  unsigned long characteristic() const { return p; }
  bool operator==(const Field&) const = default;

  static Field rationals() { return Field{0}; }
  static Field prime(unsigned long p);  // validates primality

  std::string str() const;                      // "Q" or "Fp:5"
  static Field parse(const std::string& text);  // inverse of str()
};

class Scalar {
public:
  Scalar() : f_{0} {}  // 0 over Q

  static Scalar zero(Field f) { return Scalar(Rat(0), 0, f); }
  static Scalar one(Field f) { return f.is_rational() ? of_rat(1) : of_fp(1, f.p); }
  static Scalar of_rat(Rat q);
  static Scalar of_int(const Int& z) { return of_rat(Rat(z)); }
  static Scalar of_long(long v) { return of_rat(Rat(v)); }
  static Scalar of_fp(long residue, unsigned long p);

  Field field() const { return f_; }
  bool is_zero() const;
  bool is_one() const;

  // Q: denominator 1. F_p: always true.
  bool is_integer() const;
  Int as_int() const;  // requires is_integer(); F_p residue as an integer
  const Rat& rat() const;
  unsigned long residue() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // o nonzero
  Scalar operator-() const;
  bool operator==(const Scalar& o) const;

  Scalar inverse() const;
  Scalar pow(unsigned long k) const;  // x^0 = 1, including x = 0

  // Q only.
  int sgn() const;
  Scalar abs() const;

  std::string str() const;
  static Scalar parse(const std::string& text, Field f);

private:
  Scalar(Rat q, unsigned long r, Field f) : q_(std::move(q)), r_(r), f_(f) {}
  void check_same_field(const Scalar& o) const;

  Rat q_;               // value when f_ is rational
  unsigned long r_ = 0; // value when f_ is a prime field
  Field f_;
};

class Matrix {
public:
  Matrix(int rows, int cols, Field f);
  static Matrix identity(int d, Field f);
  static Matrix from_rows(const std::vector<std::vector<long>>& rows);  // over Q
  static Matrix from_rows(const std::vector<std::vector<long>>& rows, Field f);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Field field() const { return f_; }

  const Scalar& at(int i, int j) const;
  void set(int i, int j, Scalar v);

  Matrix columns(const std::vector<int>& cols) const;
  Matrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;
  bool is_integer() const;

  Matrix operator*(const Matrix& o) const;
  bool operator==(const Matrix& o) const;

  std::string str() const;  // row-per-line debug form

private:
  int rows_, cols_;
  Field f_;
  std::vector<Scalar> e_;
};

// Plucker coordinates of a full-rank d x n matrix: one scalar per sorted
// d-subset of the columns, stored in lexicographic order of the subsets.
struct PluckerVector {
  int d = 0;
  int n = 0;
  Field field;
  std::vector<Scalar> coords;  // size C(n, d), lexicographic

  const Scalar& at(const std::vector<int>& subset) const;
  std::size_t size() const { return coords.size(); }
};

struct HnfResult {
  Matrix transform;       // d x d, determinant +-1
  std::vector<int> perm;  // perm[j] = source column at position j
  Matrix hnf;             // transform * original * perm
};

Scalar det(const Matrix& m);                       // square input
int rank(const Matrix& m);
HnfResult hnf(const Matrix& m,
              const std::vector<int>& front_columns = {});  // integer input
PluckerVector plucker(const Matrix& m);            // rank d, d <= n
Int gcd_of(const std::vector<Int>& xs);            // positive gcd, not all zero

Matrix inverse(const Matrix& m);  // square, nonsingular
Matrix matrix_pow(const Matrix& m, unsigned long k);

}  // namespace arimat::exactmat
