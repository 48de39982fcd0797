#include "doctest.h"

#include "pairops/properties.hpp"
#include "support/helpers.hpp"

using namespace pairops;
using testhelp::ideal_of;

TEST_CASE("identity certifies as both closure and interior") {
  auto R2 = fixture_R2();
  auto rep = check_properties(identity_operation(), R2);
  for (const auto& id :
       {"extensive", "intensive", "idempotent", "order_preserving_submodules",
        "order_preserving_ambient", "surjection_functorial", "functorial", "restrictable",
        "surjection_cofunctorial", "cofunctorial", "hereditary", "cohereditary", "residual",
        "nakayama_closure", "nakayama_interior", "isomorphism_invariant"})
    CHECK_MESSAGE(rep.passed(id), id, ": ", rep.find(id)->counterexample);
  // identity is not absolute: p(L, N) = L = p(L, M) holds... it is absolute
  CHECK(rep.passed("absolute"));
  CHECK(!rep.randomized);
}

TEST_CASE("bf_m on R3: closure side passes, residual fails") {
  auto R3 = fixture_R3();
  auto reg = regular_module(R3);
  auto rep = check_properties(make_bf(maximal_ideal_sub(reg)), R3);

  CHECK(rep.passed("extensive"));
  CHECK(rep.passed("idempotent"));
  CHECK(rep.passed("order_preserving_submodules"));
  CHECK(rep.passed("isomorphism_invariant"));
  CHECK(rep.failed("intensive"));

  REQUIRE(rep.failed("residual"));
  auto cx = rep.find("residual")->counterexample;
  CHECK(cx.find("R/(x*y)") != std::string::npos);
  CHECK(cx.find("0") != std::string::npos);
}

TEST_CASE("be_m on R3: interior side passes, extensive fails") {
  auto R3 = fixture_R3();
  auto reg = regular_module(R3);
  auto rep = check_properties(make_be(maximal_ideal_sub(reg)), R3);
  CHECK(rep.passed("intensive"));
  CHECK(rep.passed("idempotent"));
  CHECK(rep.passed("order_preserving_submodules"));
  REQUIRE(rep.failed("extensive"));
  CHECK(!rep.find("extensive")->counterexample.empty());
}

TEST_CASE("zero interior is a Nakayama interior") {
  auto R2 = fixture_R2();
  auto rep = check_properties(zero_interior_operation(), R2);
  CHECK(rep.passed("intensive"));
  CHECK(rep.passed("nakayama_interior"));
  CHECK(rep.failed("extensive"));
}

TEST_CASE("every property records case counts and scope") {
  auto R1 = fixture_R1();
  auto rep = check_properties(identity_operation(), R1);
  CHECK(rep.scope.find("modules:") != std::string::npos);
  for (const auto& [id, res] : rep.properties) {
    INFO(id);
    CHECK((res.cases > 0 || res.verdict != Verdict::Pass));
  }
}

TEST_CASE("randomized checking over the rationals") {
  auto q = FieldSpec::rationals();
  auto R = build_local_algebra(q, {"x"}, std::vector<std::string>{"x^2"}, 2);
  auto rep = check_properties(identity_operation(), R);
  CHECK(rep.randomized);
  CHECK(rep.scope.find("randomized") != std::string::npos);
  CHECK(rep.passed("extensive"));
  CHECK(rep.passed("idempotent"));
}

TEST_CASE("selector properties and transfer to rho/gamma") {
  auto R2 = fixture_R2();
  CheckBounds b{4, 20000, 4096};
  for (const auto& alpha :
       {selector_zero(), selector_full(), selector_socle(), selector_m_times()}) {
    auto srep = check_selector_properties(alpha, R2, b);
    auto rrep = check_properties(rho(alpha), R2, b);
    auto grep = check_properties(gamma(alpha), R2, b);

    INFO(alpha.name);
    if (srep.passed("order_preserving")) CHECK(grep.passed("order_preserving_submodules"));
    if (srep.passed("surjection_functorial")) CHECK(rrep.passed("order_preserving_submodules"));
    if (srep.passed("co_idempotent")) CHECK(rrep.passed("idempotent"));
    if (srep.passed("idempotent")) CHECK(grep.passed("idempotent"));
    // rho always residual, gamma always absolute
    CHECK(rrep.passed("residual"));
    CHECK(grep.passed("absolute"));
  }

  // socle is not co-idempotent, mM is not idempotent: the checker must see it
  CHECK(check_selector_properties(selector_socle(), R2, b).failed("co_idempotent"));
  auto R3 = fixture_R3();
  CHECK(check_selector_properties(selector_m_times(), R3, b).failed("idempotent"));
}

TEST_CASE("enumeration limits mark properties skipped") {
  auto R3 = fixture_R3();
  CheckBounds tight;
  tight.max_maps = 2;  // every hom space is larger
  auto rep = check_properties(identity_operation(), R3, tight);
  CHECK(rep.find("functorial")->verdict == Verdict::Skipped);
  CHECK(rep.find("functorial")->note.find("limit") != std::string::npos);
  // non-map properties are unaffected
  CHECK(rep.passed("extensive"));
}
