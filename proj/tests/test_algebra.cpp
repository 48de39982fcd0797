#include "doctest.h"

#include "pairops/fixtures.hpp"

using namespace pairops;

TEST_CASE("polynomial grammar") {
  auto gf2 = FieldSpec::gf(2);
  std::vector<std::string> vars{"x", "y"};

  auto p = parse_poly("x^2 + 2*x*y", vars, gf2);
  REQUIRE(p.terms.size() == 1);  // 2*x*y vanishes mod 2
  CHECK(p.terms[0].exponents == Exponents{2, 0});
  CHECK(p.terms[0].coeff == 1);

  auto q = parse_poly("  3 * x * y ^ 2 + 1", vars, FieldSpec::gf(5));
  REQUIRE(q.terms.size() == 2);

  CHECK(parse_poly("x + x", vars, gf2).terms.empty());
  CHECK(parse_poly("7", vars, FieldSpec::gf(7)).terms.empty());
  CHECK(parse_poly("x^2 - y", vars, FieldSpec::rationals()).terms.size() == 2);

  CHECK_THROWS_WITH_AS(parse_poly("x + z", vars, gf2), doctest::Contains("E-UNRESOLVED"), Error);
  CHECK_THROWS_WITH_AS(parse_poly("x + ", vars, gf2), doctest::Contains("E-SYNTAX"), Error);
  CHECK_THROWS_WITH_AS(parse_poly("x^", vars, gf2), doctest::Contains("E-SYNTAX"), Error);
}

TEST_CASE("fixture construction") {
  auto R1 = fixture_R1();
  CHECK(R1->dim() == 2);
  CHECK(R1->basis_labels == std::vector<std::string>{"1", "x"});

  auto R2 = fixture_R2();
  CHECK(R2->dim() == 3);
  CHECK(R2->basis_labels == std::vector<std::string>{"1", "x", "y"});

  auto R3 = fixture_R3();
  CHECK(R3->dim() == 4);
  CHECK(R3->basis_labels == std::vector<std::string>{"1", "x", "y", "x*y"});
  CHECK(R3->unit_index == 0);

  auto R4 = fixture_R4();
  CHECK(R4->dim() == 3);
  CHECK(R4->basis_labels == std::vector<std::string>{"1", "x", "x^2"});

  for (const auto& R : {R1, R2, R3, R4}) CHECK(validate_local_algebra(*R).ok());
}

TEST_CASE("ring multiplication") {
  auto R3 = fixture_R3();
  auto x = ring_element_from_string(*R3, "x");
  auto y = ring_element_from_string(*R3, "y");
  auto xy = ring_element_from_string(*R3, "x*y");
  auto one = ring_unit(*R3);

  CHECK(ring_multiply(*R3, one, x) == x);
  CHECK(ring_multiply(*R3, x, y) == xy);
  CHECK(ring_multiply(*R3, x, x) == Vec(4, Scalar(0)));
  CHECK(ring_multiply(*R3, xy, x) == Vec(4, Scalar(0)));
  CHECK(ring_element_str(*R3, ring_multiply(*R3, x, y)) == "x*y");

  auto R1 = fixture_R1();
  auto x1 = ring_element_from_string(*R1, "x");
  CHECK(ring_multiply(*R1, x1, x1) == Vec(2, Scalar(0)));

  auto R4 = fixture_R4();
  auto x4 = ring_element_from_string(*R4, "x");
  auto sq = ring_multiply(*R4, x4, x4);
  CHECK(ring_element_str(*R4, sq) == "x^2");
  CHECK(ring_multiply(*R4, x4, sq) == Vec(3, Scalar(0)));
}

TEST_CASE("maximal ideal") {
  CHECK(maximal_ideal(*fixture_R1()).rank() == 1);
  CHECK(maximal_ideal(*fixture_R2()).rank() == 2);
  CHECK(maximal_ideal(*fixture_R3()).rank() == 3);
  auto R3 = fixture_R3();
  CHECK(!maximal_ideal(*R3).contains(ring_unit(*R3)));
  CHECK(maximal_ideal(*R3).contains(ring_element_from_string(*R3, "x + x*y")));
}

TEST_CASE("builder determinism") {
  auto a = fixture_R3();
  auto b = fixture_R3();
  CHECK(a->skey == b->skey);
  CHECK(*a == *b);
}

TEST_CASE("degenerate and inconsistent inputs") {
  auto gf2 = FieldSpec::gf(2);
  CHECK_THROWS_WITH_AS(
      build_local_algebra(gf2, {"x"}, std::vector<std::string>{"x + 1"}, 4),
      doctest::Contains("E-ZERO-RING"), Error);
  // relation x^2 + x forces x into the ideal below nil_bound 2; result is k
  auto k = build_local_algebra(gf2, {"x"}, std::vector<std::string>{"x^2 + x"}, 2);
  CHECK(k->dim() == 1);
  CHECK(maximal_ideal(*k).rank() == 0);
  CHECK_THROWS_AS(build_local_algebra(gf2, {"x"}, std::vector<std::string>{"x^2"}, 0), Error);
}

TEST_CASE("validate flags corrupted tables") {
  auto R3 = fixture_R3();

  SUBCASE("broken associativity") {
    LocalAlgebra bad = *R3;
    // make x*y = y, so x*(x*y) = y while (x*x)*y = 0
    Matrix ax = bad.variable_actions[0];
    for (int r = 0; r < 4; ++r) ax.at(r, 2) = (r == 2) ? Scalar(1) : Scalar(0);
    bad.variable_actions[0] = ax;
    auto rep = validate_local_algebra(bad);
    CHECK(!rep.ok());
    bool saw_assoc = false;
    for (const auto& issue : rep.issues) saw_assoc |= issue.check == "associativity";
    CHECK(saw_assoc);
  }

  SUBCASE("idempotent non-unit breaks nilpotence") {
    LocalAlgebra bad = *fixture_R1();
    Matrix ax = bad.variable_actions[0];
    ax.at(1, 1) = 1;  // x*x = x
    bad.variable_actions[0] = ax;
    auto rep = validate_local_algebra(bad);
    CHECK(!rep.ok());
    bool saw = false;
    for (const auto& issue : rep.issues)
      saw |= issue.check == "nilpotence" || issue.check == "nil-bound";
    CHECK(saw);
  }
}
