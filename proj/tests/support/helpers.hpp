#pragma once

#include <string>
#include <vector>

#include "pairops/fixtures.hpp"
#include "pairops/flmod.hpp"

namespace testhelp {

using namespace pairops;

// Ideal of R spanned (as a submodule) by the given polynomials.
inline Submodule ideal_of(const ModulePtr& regular, const std::vector<std::string>& polys) {
  std::vector<Vec> gens;
  for (const auto& p : polys) gens.push_back(ring_element_from_string(*regular->ring, p));
  return span_submodule(regular, gens);
}

inline Submodule sub_of(const ModulePtr& M, const std::vector<Vec>& gens) {
  return span_submodule(M, gens);
}

inline Vec elem(const ModulePtr& regular, const std::string& poly) {
  return ring_element_from_string(*regular->ring, poly);
}

}  // namespace testhelp
