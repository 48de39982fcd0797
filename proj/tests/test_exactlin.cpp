#include "doctest.h"

#include <random>

#include "pairops/exactlin.hpp"

using namespace pairops;

namespace {

Matrix mk(FieldSpec f, int cols, const std::vector<std::vector<long>>& rows) {
  std::vector<Vec> vs;
  for (const auto& r : rows) {
    Vec v;
    for (long x : r) v.push_back(f.from_long(x));
    vs.push_back(v);
  }
  return Matrix::from_rows(f, cols, vs);
}

Subspace sp(FieldSpec f, int cols, const std::vector<std::vector<long>>& rows) {
  return Subspace::from_rows(mk(f, cols, rows));
}

Matrix random_matrix(FieldSpec f, int rows, int cols, std::mt19937& rng) {
  Matrix m(f, rows, cols);
  long range = f.finite() ? long(f.characteristic) : 7;
  for (auto& x : m.a) x = f.from_long(long(rng() % range) - (f.finite() ? 0 : 3));
  return m;
}

}  // namespace

TEST_CASE("subspace_from_rows canonicalizes") {
  auto gf2 = FieldSpec::gf(2);

  SUBCASE("duplicate rows collapse") {
    auto s = sp(gf2, 2, {{1, 1}, {1, 1}});
    CHECK(s.rank() == 1);
    CHECK(s.basis() == mk(gf2, 2, {{1, 1}}));
  }
  SUBCASE("empty span") {
    auto s = sp(gf2, 3, {});
    CHECK(s.rank() == 0);
    CHECK(s == Subspace::zero(gf2, 3));
  }
  SUBCASE("hand-reduced echelon form") {
    auto s = sp(gf2, 3, {{0, 1, 0}, {1, 0, 1}, {1, 1, 1}});
    CHECK(s.rank() == 2);
    CHECK(s.basis() == mk(gf2, 3, {{1, 0, 1}, {0, 1, 0}}));
  }
  SUBCASE("idempotent on canonical input") {
    auto s = sp(gf2, 3, {{0, 1, 0}, {1, 0, 1}, {1, 1, 1}});
    CHECK(Subspace::from_rows(s.basis()) == s);
  }
}

TEST_CASE("kernel") {
  auto gf2 = FieldSpec::gf(2);
  CHECK(kernel(Matrix::identity(gf2, 2)) == Subspace::zero(gf2, 2));
  CHECK(kernel(Matrix(gf2, 2, 3)) == Subspace::full(gf2, 3));
  CHECK(kernel(mk(gf2, 2, {{1, 1}})) == sp(gf2, 2, {{1, 1}}));
}

TEST_CASE("image") {
  auto gf2 = FieldSpec::gf(2);
  CHECK(image(Matrix::identity(gf2, 3)) == Subspace::full(gf2, 3));
  CHECK(image(Matrix(gf2, 2, 2)) == Subspace::zero(gf2, 2));
  CHECK(image(mk(gf2, 2, {{1, 0}, {1, 0}})) == sp(gf2, 2, {{1, 1}}));
}

TEST_CASE("sum and intersection") {
  auto gf2 = FieldSpec::gf(2);
  auto a = sp(gf2, 2, {{1, 0}});
  auto b = sp(gf2, 2, {{0, 1}});
  CHECK(subspace_sum(a, Subspace::zero(gf2, 2)) == a);
  CHECK(subspace_sum(a, b) == Subspace::full(gf2, 2));
  CHECK(subspace_intersect(a, Subspace::full(gf2, 2)) == a);
  CHECK(subspace_intersect(a, b) == Subspace::zero(gf2, 2));

  // R3 = GF(2)[x,y]/(x^2,y^2) coordinates (1, x, y, xy):
  // (x) + (y) = m and (x) n (y) = span{xy}.
  auto ix = sp(gf2, 4, {{0, 1, 0, 0}, {0, 0, 0, 1}});
  auto iy = sp(gf2, 4, {{0, 0, 1, 0}, {0, 0, 0, 1}});
  auto m = sp(gf2, 4, {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK(subspace_sum(ix, iy) == m);
  CHECK(subspace_intersect(ix, iy) == sp(gf2, 4, {{0, 0, 0, 1}}));
}

TEST_CASE("rank-nullity and lattice identities on random matrices") {
  std::mt19937 rng(20240521);
  for (FieldSpec f : {FieldSpec::gf(2), FieldSpec::gf(3), FieldSpec::rationals()}) {
    for (int trial = 0; trial < 40; ++trial) {
      int rows = 1 + int(rng() % 5), cols = 1 + int(rng() % 5);
      Matrix m = random_matrix(f, rows, cols, rng);
      CHECK(kernel(m).rank() + image(m).rank() == cols);

      Subspace a = Subspace::from_rows(random_matrix(f, 1 + int(rng() % 4), 4, rng));
      Subspace b = Subspace::from_rows(random_matrix(f, 1 + int(rng() % 4), 4, rng));
      Subspace c = Subspace::from_rows(random_matrix(f, 1 + int(rng() % 4), 4, rng));
      CHECK(subspace_sum(a, b).rank() + subspace_intersect(a, b).rank() == a.rank() + b.rank());
      // modular law with the inner term forced under a
      Subspace d = subspace_intersect(a, c);
      CHECK(subspace_intersect(a, subspace_sum(b, d)) == subspace_sum(subspace_intersect(a, b), d));
      CHECK(subspace_sum(a, b).contains(a));
      CHECK(a.contains(subspace_intersect(a, b)));
      CHECK(perp(perp(a)) == a);
    }
  }
}

TEST_CASE("solve and preimage") {
  std::mt19937 rng(7);
  auto gf3 = FieldSpec::gf(3);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix m = random_matrix(gf3, 3, 4, rng);
    Vec x(4);
    for (auto& v : x) v = gf3.from_long(long(rng() % 3));
    Vec b = m.apply(x);
    auto sol = solve(m, b);
    REQUIRE(sol.has_value());
    CHECK(m.apply(*sol) == b);

    Subspace w = image_subspace(m, Subspace::from_vectors(gf3, 4, {x}));
    Subspace pre = preimage_subspace(m, w);
    CHECK(pre.contains(x));
    for (int i = 0; i < pre.rank(); ++i) CHECK(w.contains(m.apply(pre.basis().row(i))));
  }
  // inconsistent system
  auto gf2 = FieldSpec::gf(2);
  auto m = mk(gf2, 2, {{1, 0}, {1, 0}});
  CHECK(!solve(m, {gf2.one(), gf2.zero()}).has_value());
}

TEST_CASE("rational arithmetic stays exact") {
  auto q = FieldSpec::rationals();
  Matrix m(q, 2, 2);
  m.at(0, 0) = Scalar(1, 3);
  m.at(0, 1) = Scalar(1, 7);
  m.at(1, 0) = Scalar(2, 5);
  m.at(1, 1) = Scalar(3, 11);
  auto s = Subspace::from_rows(m);
  CHECK(s.rank() == 2);
  CHECK(s == Subspace::full(q, 2));
  CHECK(q.mul(Scalar(1, 3), Scalar(3, 1)) == 1);
  CHECK(q.inv(Scalar(-2, 7)) == Scalar(-7, 2));
}

TEST_CASE("field mismatch and shape errors are rejected") {
  auto gf2 = FieldSpec::gf(2);
  auto gf3 = FieldSpec::gf(3);
  CHECK_THROWS_AS(subspace_sum(Subspace::zero(gf2, 2), Subspace::zero(gf3, 2)), Error);
  CHECK_THROWS_AS(subspace_sum(Subspace::zero(gf2, 2), Subspace::zero(gf2, 3)), Error);
  CHECK_THROWS_AS(mk(gf2, 2, {{1, 0, 1}}), Error);
  CHECK_THROWS_AS(FieldSpec::gf(6), Error);
  CHECK_THROWS_AS(gf2.inv(gf2.zero()), Error);
}

TEST_CASE("vector enumeration is lexicographic") {
  auto gf2 = FieldSpec::gf(2);
  auto vs = all_vectors(gf2, 2);
  REQUIRE(vs.size() == 4);
  CHECK(vec_str(vs[0]) == "[0,0]");
  CHECK(vec_str(vs[1]) == "[0,1]");
  CHECK(vec_str(vs[2]) == "[1,0]");
  CHECK(vec_str(vs[3]) == "[1,1]");
  CHECK(all_vectors(FieldSpec::gf(3), 3).size() == 27);
}
