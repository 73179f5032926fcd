#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arimat/decompose.hpp"
#include "arimat/matroid.hpp"
#include "helpers.hpp"

using namespace arimat;
using namespace arimat::decompose;
using exactmat::Field;
using exactmat::Matrix;
using exactmat::PluckerVector;
using exactmat::Scalar;
using testutil::Rng;

namespace {

Matrix mat(std::vector<std::vector<long>> rows) { return Matrix::from_rows(rows); }

Scalar q(long num, long den = 1) { return Scalar::of_rat(exactmat::Rat(num, den)); }

void check_factorization(const TADFactorization& f) {
  CHECK(f.t * f.a * f.d_matrix() == f.source);
  CHECK(is_totally_unimodular(f.a));
  CHECK(f.d[0].is_one());
  for (const Scalar& s : f.d) CHECK(!s.is_zero());
  CHECK(!exactmat::det(f.t).is_zero());
}

}  // namespace

TEST_CASE("recover_tu examples") {
  SUBCASE("graphic example") {
    Matrix a = recover_tu(mat({{1, 0, 1}, {0, 3, -2}}));
    CHECK(a == mat({{1, 0, 1}, {0, 1, 1}}));
  }
  SUBCASE("identity") {
    CHECK(recover_tu(Matrix::identity(3, Field::rationals())) ==
          Matrix::identity(3, Field::rationals()));
  }
  SUBCASE("non-regular input") {
    CHECK_THROWS_AS(recover_tu(mat({{1, 0, 1, 1}, {0, 1, 1, 2}})), Error);
  }
  SUBCASE("sign pattern with the right support but no TU completion") {
    CHECK_THROWS_AS(recover_tu(mat({{1, 0, 1, 1}, {0, 1, 1, -1}})), Error);
  }
}

TEST_CASE("tad examples") {
  SUBCASE("graphic example reproduces the displayed factorization") {
    TADFactorization f = tad(mat({{1, 0, 1}, {0, 3, -2}}));
    check_factorization(f);
    CHECK(f.t == mat({{1, 0}, {0, -2}}));
    CHECK(f.a == mat({{1, 0, 1}, {0, 1, 1}}));
    CHECK(f.d[0] == q(1));
    CHECK(f.d[1] == q(-3, 2));
    CHECK(f.d[2] == q(1));
  }
  SUBCASE("cycle example lands on the displayed instance") {
    TADFactorization f = tad(mat({{1, 1, 2, 1}, {0, 2, 1, 2}, {0, 0, 3, 2}}));
    check_factorization(f);
    Matrix t(3, 3, Field::rationals());
    long tnum[3][3] = {{3, -2, -4}, {0, -4, -2}, {0, 0, -6}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t.set(i, j, q(tnum[i][j], 3));
    CHECK(f.t == t);
    CHECK(f.a == mat({{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}}));
    CHECK(f.d[0] == q(1));
    CHECK(f.d[1] == q(-3, 2));
    CHECK(f.d[2] == q(-3, 2));
    CHECK(f.d[3] == q(-1));
  }
  SUBCASE("identity") {
    TADFactorization f = tad(Matrix::identity(3, Field::rationals()));
    check_factorization(f);
    CHECK(f.t == Matrix::identity(3, Field::rationals()));
    CHECK(f.a == Matrix::identity(3, Field::rationals()));
  }
  SUBCASE("non-regular input") {
    CHECK_THROWS_AS(tad(mat({{1, 0, 1, 1}, {0, 1, 1, 2}})), Error);
  }
  SUBCASE("rank one") {
    TADFactorization f = tad(mat({{3, 0, -5, 1}}));
    check_factorization(f);
  }
  SUBCASE("matrix with a loop column") {
    TADFactorization f = tad(mat({{1, 0, 0, 1}, {0, 0, 3, -2}}));
    check_factorization(f);
  }
}

TEST_CASE("tad against a supplied representative") {
  Matrix x = mat({{1, 0, 1}, {0, 3, -2}});
  Matrix a = mat({{1, 0, 1}, {0, 1, 1}});
  TADFactorization f = tad(x, a);
  check_factorization(f);
  CHECK(f.a == a);

  SUBCASE("a representative of a different labelled matroid is rejected") {
    Matrix wrong = mat({{1, 0, 0}, {0, 1, 1}});
    CHECK_THROWS_AS(tad(x, wrong), Error);
  }
  SUBCASE("a non-TU matrix is rejected") {
    Matrix not_tu = mat({{1, 0, 2}, {0, 1, 1}});
    CHECK_THROWS_AS(tad(x, not_tu), Error);
  }
}

TEST_CASE("round-trip on random regular matrices") {
  Rng rng(321);
  int seen = 0;
  while (seen < 40) {
    int d = int(rng.range(1, 3));
    int n = int(rng.range(d, 6));
    Matrix x = testutil::random_full_rank(rng, d, n, -4, 4);
    if (!matroid::is_regular(matroid::MatroidView(x))) continue;
    ++seen;
    TADFactorization f = tad(x);
    check_factorization(f);

    PluckerVector base = exactmat::plucker(x);
    for (unsigned long k : {0ul, 2ul, 3ul}) {
      Matrix xk = power_matrix(x, k, PowerMode::up_to_sign);
      PluckerVector pk = exactmat::plucker(xk);
      for (std::size_t i = 0; i < base.coords.size(); ++i) {
        Scalar want = base.coords[i].is_zero() ? Scalar::zero(base.field)
                                               : base.coords[i].pow(k);
        CHECK((pk.coords[i] == want || pk.coords[i] == -want));
        if (k % 2 == 1) CHECK(pk.coords[i] == want);  // odd powers come out exact
      }
    }

    Matrix x3 = power_matrix(x, 3, PowerMode::odd_exact);
    PluckerVector p3 = exactmat::plucker(x3);
    for (std::size_t i = 0; i < base.coords.size(); ++i)
      CHECK(p3.coords[i] == base.coords[i].pow(3));

    for (unsigned long k : {0ul, 2ul, 3ul}) {
      Matrix xs = power_matrix(x, k, PowerMode::sign_preserving);
      PluckerVector ps = exactmat::plucker(xs);
      for (std::size_t i = 0; i < base.coords.size(); ++i) {
        CHECK((ps.coords[i] * base.coords[i]).sgn() >= 0);
        Scalar want = base.coords[i].is_zero() ? Scalar::zero(base.field)
                                               : base.coords[i].abs().pow(k);
        CHECK(ps.coords[i].abs() == want);
      }
    }
  }
}

TEST_CASE("scaled graph incidence matrices decompose at rank four") {
  Rng rng(1111);
  for (int iter = 0; iter < 8; ++iter) {
    // connected graph on 5 vertices: a random spanning tree plus extras
    const int nv = 5, ne = 8;
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < nv; ++v) edges.emplace_back(int(rng.range(0, v - 1)), v);
    while (int(edges.size()) < ne) {
      int a = int(rng.range(0, nv - 1)), b = int(rng.range(0, nv - 1));
      if (a != b) edges.emplace_back(a, b);
    }
    // incidence matrix with the last vertex row dropped keeps full rank 4
    Matrix x(nv - 1, ne, Field::rationals());
    for (int e = 0; e < ne; ++e) {
      auto [a, b] = edges[e];
      if (a < nv - 1) x.set(a, e, q(-1));
      if (b < nv - 1) x.set(b, e, q(1));
    }
    // scale rows and columns by arbitrary nonzero rationals
    for (int i = 0; i < nv - 1; ++i) {
      Scalar r = q(rng.range(0, 1) ? rng.range(1, 3) : -rng.range(1, 3), rng.range(1, 3));
      for (int e = 0; e < ne; ++e) x.set(i, e, x.at(i, e) * r);
    }
    for (int e = 0; e < ne; ++e) {
      Scalar c = q(rng.range(0, 1) ? rng.range(1, 3) : -rng.range(1, 3), rng.range(1, 3));
      for (int i = 0; i < nv - 1; ++i) x.set(i, e, x.at(i, e) * c);
    }
    if (exactmat::rank(x) != nv - 1) continue;  // disconnected after duplicate edges

    TADFactorization f = tad(x);
    check_factorization(f);
    Matrix x2 = power_matrix(x, 2);
    PluckerVector base = exactmat::plucker(x);
    PluckerVector p2 = exactmat::plucker(x2);
    for (std::size_t i = 0; i < base.coords.size(); ++i)
      CHECK(p2.coords[i].abs() == base.coords[i].abs().pow(2));
  }
}

TEST_CASE("recover_tu succeeds exactly on regular matrices") {
  Rng rng(9000);
  int regular = 0, irregular = 0;
  for (int iter = 0; iter < 60; ++iter) {
    int d = int(rng.range(1, 3));
    int n = int(rng.range(d, 6));
    Matrix x = testutil::random_full_rank(rng, d, n, -4, 4);
    bool reg = matroid::is_regular(matroid::MatroidView(x));
    bool recovered = true;
    try {
      recover_tu(x);
    } catch (const Error& e) {
      CHECK(e.code() == errc::not_regular);
      recovered = false;
    }
    CHECK(reg == recovered);
    (reg ? regular : irregular)++;
  }
  CHECK(regular > 10);
  CHECK(irregular > 10);
}

TEST_CASE("power_matrix examples") {
  SUBCASE("graphic example powers") {
    Matrix x = mat({{1, 0, 1}, {0, 3, -2}});
    for (unsigned long k : {2ul, 3ul}) {
      Matrix xk = power_matrix(x, k);
      Matrix want = k == 2 ? mat({{1, 0, 1}, {0, 9, -4}}) : mat({{1, 0, 1}, {0, 27, -8}});
      PluckerVector pk = exactmat::plucker(xk);
      PluckerVector pw = exactmat::plucker(want);
      for (std::size_t i = 0; i < pk.coords.size(); ++i)
        CHECK(pk.coords[i].abs() == pw.coords[i].abs());
    }
  }
  SUBCASE("k = 1 reproduces the Plucker vector up to sign") {
    Matrix x = mat({{1, 0, 1}, {0, 3, -2}});
    PluckerVector p1 = exactmat::plucker(power_matrix(x, 1));
    PluckerVector base = exactmat::plucker(x);
    for (std::size_t i = 0; i < base.coords.size(); ++i) CHECK(p1.coords[i] == base.coords[i]);
  }
  SUBCASE("cycle example squared") {
    Matrix x2 = power_matrix(mat({{1, 1, 2, 1}, {0, 2, 1, 2}, {0, 0, 3, 2}}), 2);
    PluckerVector p = exactmat::plucker(x2);
    std::vector<long> want{36, 16, 16, 36};
    for (std::size_t i = 0; i < 4; ++i) CHECK(p.coords[i].abs() == q(want[i]));
  }
  SUBCASE("cycle example squared, sign-preserving, equals the displayed matrix") {
    Matrix x2 =
        power_matrix(mat({{1, 1, 2, 1}, {0, 2, 1, 2}, {0, 0, 3, 2}}), 2, PowerMode::sign_preserving);
    Matrix want(3, 4, Field::rationals());
    want.set(0, 0, q(64, 9));
    want.set(0, 3, q(-64, 9));
    want.set(1, 1, q(-9, 4));
    want.set(1, 3, q(-1));
    want.set(2, 2, q(-9, 4));
    want.set(2, 3, q(-1));
    CHECK(x2 == want);
  }
  SUBCASE("k = 0 yields the unimodular representative") {
    Matrix x = mat({{1, 0, 1}, {0, 3, -2}});
    CHECK(power_matrix(x, 0) == tad(x).a);
  }
  SUBCASE("odd-exact refuses even exponents") {
    CHECK_THROWS_AS(power_matrix(mat({{1, 0, 1}, {0, 3, -2}}), 2, PowerMode::odd_exact), Error);
  }
}

TEST_CASE("power_two examples") {
  SUBCASE("two different representations of the triangle") {
    Matrix x1 = mat({{1, 0, 1}, {0, 1, 1}});
    Matrix x2 = mat({{1, 0, 2}, {0, 3, 3}});
    Matrix x12 = power_two(x1, x2, 1, 1);
    PluckerVector p = exactmat::plucker(x12);
    std::vector<long> want{3, 3, 6};
    for (std::size_t i = 0; i < 3; ++i) CHECK(p.coords[i].abs() == q(want[i]));
  }
  SUBCASE("k2 = 0 keeps the first vector") {
    Matrix x1 = mat({{1, 0, 1}, {0, 1, 1}});
    Matrix x2 = mat({{1, 0, 2}, {0, 3, 3}});
    Matrix out = power_two(x1, x2, 1, 0);
    PluckerVector p = exactmat::plucker(out);
    PluckerVector base = exactmat::plucker(x1);
    for (std::size_t i = 0; i < 3; ++i) CHECK(p.coords[i].abs() == base.coords[i].abs());
  }
  SUBCASE("squaring through the two-vector route") {
    Matrix x = mat({{1, 0, 1}, {0, 3, -2}});
    Matrix out = power_two(x, x, 1, 1);
    PluckerVector p = exactmat::plucker(out);
    // |coords| of x are (3, 2, 3), so the product has (9, 4, 9)
    std::vector<long> want{9, 4, 9};
    for (std::size_t i = 0; i < 3; ++i) CHECK(p.coords[i].abs() == q(want[i]));
  }
  SUBCASE("sign-preserving variant") {
    // For an odd total exponent the construction preserves the sign of the
    // powered product; the magnitudes always match.
    Matrix x1 = mat({{1, 0, 1}, {0, 1, 1}});
    Matrix x2 = mat({{1, 0, 2}, {0, 3, 3}});
    Matrix out = power_two(x1, x2, 2, 3, PowerMode::sign_preserving);
    PluckerVector p = exactmat::plucker(out);
    PluckerVector p1 = exactmat::plucker(x1);
    PluckerVector p2 = exactmat::plucker(x2);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(p.coords[i].abs() == p1.coords[i].abs().pow(2) * p2.coords[i].abs().pow(3));
      CHECK((p1.coords[i].pow(2) * p2.coords[i].pow(3) * p.coords[i]).sgn() >= 0);
    }
  }
  SUBCASE("different labelled matroids are rejected") {
    CHECK_THROWS_AS(power_two(mat({{1, 0, 1}, {0, 1, 1}}), mat({{1, 0, 0}, {0, 1, 1}}), 1, 1),
                    Error);
  }
}

TEST_CASE("large exponents stay exact") {
  Matrix x = mat({{1, 0, 1}, {0, 3, -2}});
  Matrix xk = power_matrix(x, 10);
  PluckerVector p = exactmat::plucker(xk);
  PluckerVector base = exactmat::plucker(x);
  for (std::size_t i = 0; i < 3; ++i) CHECK(p.coords[i].abs() == base.coords[i].abs().pow(10));
  CHECK(base.coords[0].abs().pow(10) == q(59049));  // 3^10, no rounding anywhere
}

TEST_CASE("counterexample_fp") {
  SUBCASE("p = 3, k = 3 finds a = 2") {
    auto c = counterexample_fp(3, 3);
    REQUIRE(c.has_value());
    CHECK(c->a == 2);
    CHECK(c->x.at(1, 3) == Scalar::of_fp(2, 3));
    CHECK(c->xk.at(1, 3) == Scalar::of_fp(2, 3));  // 2^3 = 8 = 2 mod 3
  }
  SUBCASE("p = 5, k = 5 finds a = 2") {
    auto c = counterexample_fp(5, 5);
    REQUIRE(c.has_value());
    CHECK(c->a == 2);
  }
  SUBCASE("no counterexample over F_2") {
    for (unsigned long k : {2ul, 3ul, 5ul}) CHECK(!counterexample_fp(2, k));
  }
  SUBCASE("no solution for p = 3, k = 2") { CHECK(!counterexample_fp(3, 2)); }
  SUBCASE("composite p rejected") { CHECK_THROWS_AS(counterexample_fp(6, 2), Error); }
  SUBCASE("witness powering is verified coordinatewise") {
    auto c = counterexample_fp(7, 7);
    REQUIRE(c.has_value());
    PluckerVector px = exactmat::plucker(c->x);
    PluckerVector pk = exactmat::plucker(c->xk);
    for (std::size_t i = 0; i < 6; ++i) {
      CHECK(!px.coords[i].is_zero());
      CHECK(!pk.coords[i].is_zero());
      Scalar want = px.coords[i].pow(7);
      CHECK((pk.coords[i] == want || pk.coords[i] == -want));
    }
  }
}
