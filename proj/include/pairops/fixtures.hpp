#pragma once

#include "pairops/algebra.hpp"

namespace pairops {

// Canonical desk-scale fixtures used throughout the test batteries.
inline RingPtr fixture_R1() {
  return build_local_algebra(FieldSpec::gf(2), {"x"}, std::vector<std::string>{"x^2"}, 2);
}

inline RingPtr fixture_R2() {
  return build_local_algebra(FieldSpec::gf(2), {"x", "y"},
                             std::vector<std::string>{"x^2", "x*y", "y^2"}, 2);
}

inline RingPtr fixture_R3() {
  return build_local_algebra(FieldSpec::gf(2), {"x", "y"}, std::vector<std::string>{"x^2", "y^2"},
                             4);
}

inline RingPtr fixture_R4() {
  return build_local_algebra(FieldSpec::gf(3), {"x"}, std::vector<std::string>{"x^3"}, 3);
}

}  // namespace pairops
