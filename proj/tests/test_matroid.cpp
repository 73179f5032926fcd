#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arimat/matroid.hpp"
#include "arimat/subsets.hpp"
#include "helpers.hpp"

using namespace arimat;
using namespace arimat::matroid;
using exactmat::Field;
using exactmat::Matrix;
using testutil::Rng;

namespace {

Matrix mat(std::vector<std::vector<long>> rows) { return Matrix::from_rows(rows); }

}  // namespace

TEST_CASE("rank_of examples") {
  SUBCASE("pair killed by a vanishing minor") {
    MatroidView v(mat({{1, 0, 1, 0}, {0, 1, 1, 1}}));
    CHECK(v.rank_of({1, 3}) == 1);
    CHECK(v.rank_of({}) == 0);
    CHECK(v.rank_of({0, 1}) == 2);
  }
  SUBCASE("contraction of the lifted torsion column") {
    MatroidView v(mat({{1, 0, 1, -1, 0}, {0, 1, 1, 1, 2}}), {4});
    CHECK(v.rank_of({0, 1}) == 1);
    CHECK(v.rank() == 1);
    // the pure-torsion element projects to a loop, the other three do not
    CHECK(v.rank_of({1}) == 0);
    CHECK(v.rank_of({0}) == 1);
    CHECK(v.rank_of({2}) == 1);
    CHECK(v.rank_of({3}) == 1);
  }
  SUBCASE("out of ground set") {
    MatroidView v(mat({{1, 0}, {0, 1}}));
    CHECK_THROWS_AS(v.rank_of({5}), Error);
    MatroidView w(mat({{1, 0}, {0, 1}}), {1});
    CHECK_THROWS_AS(w.rank_of({1}), Error);
  }
}

namespace {

void check_rank_axioms(const MatroidView& v) {
  int nn = int(v.ground().size());
  std::vector<int> rk(1u << nn);
  for (std::uint32_t s = 0; s < (1u << nn); ++s) {
    std::vector<int> set;
    for (int i = 0; i < nn; ++i)
      if ((s >> i) & 1) set.push_back(v.ground()[i]);
    rk[s] = v.rank_of(set);
    CHECK(rk[s] >= 0);
    CHECK(rk[s] <= int(set.size()));
  }
  for (std::uint32_t a = 0; a < (1u << nn); ++a)
    for (std::uint32_t b = a; b < (1u << nn); ++b) {
      if ((a & b) == a) CHECK(rk[a] <= rk[b]);  // monotone on nested pairs
      CHECK(rk[a | b] + rk[a & b] <= rk[a] + rk[b]);
    }
}

}  // namespace

TEST_CASE("rank axioms hold exhaustively") {
  Rng rng(21);
  for (int iter = 0; iter < 25; ++iter) {
    int d = int(rng.range(1, 3));
    int n = int(rng.range(d, 6));
    check_rank_axioms(MatroidView(testutil::random_int_matrix(rng, d, n, -3, 3)));
  }
  // up to the eight-element bound, including a contracted view
  for (int iter = 0; iter < 4; ++iter) {
    Matrix m = testutil::random_int_matrix(rng, 3, 8, -3, 3);
    check_rank_axioms(MatroidView(m));
    check_rank_axioms(MatroidView(m, {0}));
  }
}

TEST_CASE("restricted views") {
  Matrix m = Matrix::from_rows({{1, 0, 1, 1}, {0, 1, 1, 2}});
  MatroidView v(m, {}, std::vector<int>{0, 2, 3});
  CHECK(v.ground() == std::vector<int>{0, 2, 3});
  CHECK(v.rank() == 2);
  CHECK(bases(v).size() == 3);  // all pairs of the three columns
  CHECK(!find_u24(v).has_value());
  MatroidView w(m, {1}, std::vector<int>{0, 2, 3});
  CHECK(w.rank() == 1);
}

TEST_CASE("bases examples") {
  SUBCASE("all pairs except the dependent one") {
    auto bs = bases(MatroidView(mat({{1, 0, 1, 0}, {0, 1, 1, 1}})));
    REQUIRE(bs.size() == 5);
    for (const auto& b : bs) CHECK(b != std::vector<int>{1, 3});
  }
  SUBCASE("identity has a single basis") {
    auto bs = bases(MatroidView(Matrix::identity(3, Field::rationals())));
    REQUIRE(bs.size() == 1);
    CHECK(bs[0] == std::vector<int>{0, 1, 2});
  }
  SUBCASE("uniform representation has all six") {
    CHECK(bases(MatroidView(mat({{1, 0, 1, 1}, {0, 1, 1, 2}}))).size() == 6);
  }
}

TEST_CASE("basis exchange graph") {
  SUBCASE("single vertex, no edges") {
    ExchangeGraph g = basis_exchange_graph(MatroidView(Matrix::identity(2, Field::rationals())));
    CHECK(g.bases.size() == 1);
    CHECK(g.edges.empty());
    CHECK(g.connected);
  }
  SUBCASE("five bases connected") {
    ExchangeGraph g = basis_exchange_graph(MatroidView(mat({{1, 0, 1, 0}, {0, 1, 1, 1}})));
    CHECK(g.bases.size() == 5);
    CHECK(g.connected);
  }
  SUBCASE("uniform 2-4") {
    ExchangeGraph g = basis_exchange_graph(MatroidView(mat({{1, 0, 1, 1}, {0, 1, 1, 2}})));
    CHECK(g.bases.size() == 6);
    CHECK(g.connected);
  }
}

TEST_CASE("find_u24 examples") {
  SUBCASE("uniform 2-4 representation") {
    auto w = find_u24(MatroidView(mat({{1, 0, 1, 1}, {0, 1, 1, 2}})));
    REQUIRE(w.has_value());
    CHECK(w->inner == std::vector<int>{0, 1, 2, 3});
    CHECK(w->context.empty());
    REQUIRE(w->certificate.size() == 6);
    for (const auto& c : w->certificate) CHECK(!c.is_zero());
  }
  SUBCASE("regular 2x4 matrix") {
    CHECK(!find_u24(MatroidView(mat({{1, 0, 1, 0}, {0, 1, 1, 1}}))));
  }
  SUBCASE("four columns in rank three leave no room") {
    CHECK(!find_u24(MatroidView(mat({{1, 1, 2, 1}, {0, 2, 1, 2}, {0, 0, 3, 2}}))));
  }
  SUBCASE("witness that needs a contraction") {
    // Columns 2..5 span rank 3 but become a U24 after contracting column 1.
    Matrix m = mat({{1, 1, 1, 1, 1}, {0, 1, 0, 1, 1}, {0, 0, 1, 1, 2}});
    auto w = find_u24(MatroidView(m));
    REQUIRE(w.has_value());
    CHECK(w->context == std::vector<int>{0});
    CHECK(w->inner == std::vector<int>{1, 2, 3, 4});
  }
  SUBCASE("characteristic two refused") {
    CHECK_THROWS_AS(find_u24(MatroidView(Matrix::from_rows({{1, 0}, {0, 1}}, Field::prime(2)))),
                    Error);
  }
  SUBCASE("odd characteristic works") {
    auto w = find_u24(MatroidView(Matrix::from_rows({{1, 0, 1, 1}, {0, 1, 1, 2}}, Field::prime(5))));
    CHECK(w.has_value());
  }
}

TEST_CASE("find_u24 agrees with the brute-force scan") {
  Rng rng(77);
  int found = 0;
  for (int iter = 0; iter < 80; ++iter) {
    int d = int(rng.range(1, 3));
    int n = int(rng.range(d, 6));
    Matrix m = testutil::random_int_matrix(rng, d, n, -3, 3);
    MatroidView v(m);
    CHECK(basis_exchange_graph(v).connected);
    bool brute = testutil::brute_force_has_u24(v);
    auto staged = find_u24(v);
    CHECK(brute == staged.has_value());
    if (staged) {
      ++found;
      // the witness must satisfy its own invariant
      int rj = v.rank_of(staged->context);
      for (const auto& pair : subsets::combinations(4, 2)) {
        std::vector<int> probe = staged->context;
        probe.push_back(staged->inner[pair[0]]);
        probe.push_back(staged->inner[pair[1]]);
        CHECK(v.rank_of(probe) == rj + 2);
      }
      for (const auto& c : staged->certificate) CHECK(!c.is_zero());
    }
  }
  CHECK(found > 10);  // the corpus exercises both outcomes
}

TEST_CASE("is_regular examples") {
  CHECK(is_regular(MatroidView(Matrix::identity(3, Field::rationals()))));
  CHECK(!is_regular(MatroidView(mat({{1, 0, 1, 1}, {0, 1, 1, 2}}))));
  CHECK(is_regular(MatroidView(mat({{1, 0, 1, 0}, {0, 1, 1, 1}}))));
}

TEST_CASE("enumeration caps are enforced") {
  Caps saved = caps();
  caps().ground = 3;
  Matrix m = mat({{1, 0, 1, 1}, {0, 1, 1, 2}});
  CHECK_THROWS_AS(bases(MatroidView(m)), Error);
  CHECK_THROWS_AS(find_u24(MatroidView(m)), Error);
  caps() = saved;
}
