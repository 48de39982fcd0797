#pragma once

#include "pairops/duality.hpp"

namespace pairops {

struct CheckBounds {
  int max_dim = 8;
  long max_submodules = 20000;
  long max_maps = 8192;
};

// Deterministic family of test modules for a ring: the regular module, E,
// every quotient by a nonzero ideal, and every nonzero ideal as a module.
// Deduplicated structurally, dimensions capped by the bounds.
inline std::vector<ModulePtr> standard_module_catalog(const RingPtr& R,
                                                      const CheckBounds& bounds = {}) {
  auto reg = regular_module(R);
  auto E = matlis_dual(reg);
  std::vector<ModulePtr> out;
  std::set<std::string> seen;
  auto push = [&](const ModulePtr& M) {
    if (M->dim > bounds.max_dim) return;
    if (seen.insert(M->skey).second) out.push_back(M);
  };
  push(reg);
  push(E);
  auto ideals = enumerate_submodules(reg, bounds.max_submodules);
  for (const auto& I : ideals)
    if (I.rank() > 0) push(quotient_module(reg, I).module);
  for (const auto& I : ideals)
    if (I.rank() > 0) push(submodule_as_module(I).module);
  return out;
}

}  // namespace pairops
