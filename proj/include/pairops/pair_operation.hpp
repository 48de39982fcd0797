#pragma once

#include <functional>

#include "pairops/flmod.hpp"

namespace pairops {

// A pair operation sends each submodule pair L <= M to a submodule of M.
// The pair is passed as the Submodule L; the ambient module is L.parent.
// Evaluators are pure and deterministic; isomorphism-invariance is a
// contract checked empirically by the property checker.
struct PairOperation {
  std::string name;
  std::string kind;
  std::function<Submodule(const Submodule&)> eval;

  Submodule operator()(const Submodule& pair) const { return eval(pair); }
};

// alpha(M) <= M for every module M.
struct SubmoduleSelector {
  std::string name;
  std::function<Submodule(const ModulePtr&)> eval;

  Submodule operator()(const ModulePtr& M) const { return eval(M); }
};

inline PairOperation identity_operation() {
  return PairOperation{"identity", "identity", [](const Submodule& L) { return L; }};
}

inline PairOperation zero_interior_operation() {
  return PairOperation{"zero_interior", "zero_interior",
                       [](const Submodule& L) { return zero_submodule(L.parent); }};
}

}  // namespace pairops
