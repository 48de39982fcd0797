#pragma once

#include <atomic>

#include "pairops/pair_operation.hpp"

namespace pairops {

// Matlis dual over an Artinian local algebra: the vector-space dual with
// transposed actions. Double transposition restores the original module
// structurally, so eta is the identity matrix on coordinates.
inline ModulePtr matlis_dual(const ModulePtr& M) {
  std::vector<Matrix> actions;
  for (const auto& a : M->actions) actions.push_back(a.transpose());
  std::vector<std::string> labels;
  for (const auto& l : M->labels) labels.push_back(l + "^");
  return make_module(M->ring, std::move(actions), std::move(labels), M->name + "^v");
}

// (M/N)^v identified with {g in M^v : g(N) = 0}, i.e. the orthogonal
// complement of N under the evaluation pairing.
inline Submodule dual_sub_quot(const Submodule& N) {
  return make_submodule(matlis_dual(N.parent), perp(N.space));
}

inline Submodule dual_sub_quot_in(const ModulePtr& dual, const Submodule& N) {
  return make_submodule(dual, perp(N.space));
}

// Matlis duality isomorphism x -> (g -> g(x)): the identity on coordinates.
inline ModuleMap eta(const ModulePtr& M) {
  return make_module_map(M, matlis_dual(matlis_dual(M)),
                         Matrix::identity(M->ring->field, M->dim));
}

// Dual of a map: (g : M -> N) dualizes to g^v : N^v -> M^v with the
// transposed matrix.
inline ModuleMap dual_map(const ModuleMap& g) {
  return make_module_map(matlis_dual(g.target), matlis_dual(g.source), g.mat.transpose());
}

// E = E_R(k) realized as R^v, with the evaluation pairing R x E -> k being
// the standard dot product on coordinates.
struct MatlisContext {
  RingPtr ring;
  ModulePtr E;
  Matrix pairing;
};

inline MatlisContext make_matlis_context(const RingPtr& R) {
  auto reg = regular_module(R);
  auto E = matlis_dual(reg);
  if (E->dim != R->dim()) throw Error("E-INVARIANT", "dim E != dim R");
  if (socle(E).rank() != 1) throw Error("E-INVARIANT", "E does not have a simple socle");
  if (!(colon(zero_submodule(E), zero_submodule(reg)) == full_submodule(E)))
    throw Error("E-INVARIANT", "(0 :_E 0) != E");
  if (colon(zero_submodule(E), full_submodule(reg)).rank() != 0)
    throw Error("E-INVARIANT", "(0 :_E R) != 0");
  return MatlisContext{R, E, Matrix::identity(R->field, R->dim())};
}

// Socle-counting envelope M into E^n, built as the Matlis dual of a minimal
// free cover of M^v.
struct InjectiveEmbed {
  ModulePtr envelope;
  ModuleMap embedding;
};

inline InjectiveEmbed injective_embed(const ModulePtr& M) {
  auto D = matlis_dual(M);
  auto fc = free_cover(D);
  auto envelope = matlis_dual(fc.free);
  Matrix mat = fc.projection.mat.transpose();
  auto emb = make_module_map(M, envelope, std::move(mat));
  if (kernel(emb.mat).rank() != 0) throw Error("E-INVARIANT", "injective envelope map not injective");
  if (int(fc.generators.size()) != socle(M).rank())
    throw Error("E-INVARIANT", "envelope multiplicity differs from the socle dimension");
  return InjectiveEmbed{envelope, emb};
}

// Shared instrumentation: every smile-dual evaluation runs both the
// displayed-formula route and the kernel-view route and asserts agreement.
struct DualityStats {
  std::atomic<unsigned long long> evaluations{0};
  std::atomic<unsigned long long> agreements{0};

  void reset() {
    evaluations = 0;
    agreements = 0;
  }
};

inline DualityStats& duality_stats() {
  static DualityStats stats;
  return stats;
}

// Smile dual: p^(A,B) = eta^-1(((B^v / p((B/A)^v, B^v))^v). The result is
// also computed independently as the joint kernel of a basis of
// p((B/A)^v, B^v); the two routes must agree on every evaluation.
inline PairOperation smile_dual(const PairOperation& p) {
  auto inner = p;
  return PairOperation{
      "smile(" + p.name + ")", "smile_dual", [inner](const Submodule& A) -> Submodule {
        const ModulePtr& B = A.parent;
        auto Bdual = matlis_dual(B);
        Submodule Adual = dual_sub_quot_in(Bdual, A);
        Submodule P = inner(Adual);

        // formula route: quotient, dualize, pull back along the dual of the
        // projection, then through eta (the identity on coordinates)
        auto q = quotient_module(Bdual, P);
        ModuleMap emb = dual_map(q.projection);  // (B^v/P)^v -> B^vv
        Subspace formula = map_image(emb, full_submodule(emb.source)).space;

        // kernel route: x lies in the dual iff g(x) = 0 for all g in P
        Subspace kern = P.rank() == 0 ? Subspace::full(B->ring->field, B->dim)
                                      : kernel(P.space.basis());

        auto& stats = duality_stats();
        stats.evaluations.fetch_add(1, std::memory_order_relaxed);
        if (!(formula == kern))
          throw Error("E-INVARIANT",
                      "smile dual: formula and kernel evaluators disagree for " + inner.name);
        stats.agreements.fetch_add(1, std::memory_order_relaxed);
        return make_submodule(B, formula);
      }};
}

}  // namespace pairops
