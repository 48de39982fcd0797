#pragma once

#include "pairops/catalog.hpp"

namespace pairops {

inline void require_ideal_of(const Submodule& J, const ModulePtr& M, const char* what) {
  if (!(J.parent->ring->skey == M->ring->skey) || J.parent->dim != M->ring->dim())
    throw Error("E-RING-MISMATCH", what);
}

// J-basically full closure (J L :_M J).
inline PairOperation make_bf(const Submodule& J) {
  std::string n = "bf[" + submodule_str(J) + "]";
  return PairOperation{n, "bf", [J](const Submodule& L) {
                         require_ideal_of(J, L.parent, "bf over a different ring");
                         return colon(scale(J, L), J);
                       }};
}

// J-basically empty interior J (L :_M J).
inline PairOperation make_be(const Submodule& J) {
  std::string n = "be[" + submodule_str(J) + "]";
  return PairOperation{n, "be", [J](const Submodule& L) {
                         require_ideal_of(J, L.parent, "be over a different ring");
                         return scale(J, colon(L, J));
                       }};
}

// Subset module closure cl_{S,L}: u lies in the closure of N in M iff for
// every s in S the simple tensor s (x) u is hit by L (x) N -> L (x) M.
inline PairOperation make_module_closure(std::vector<Vec> S, const ModulePtr& L,
                                         std::string display = "") {
  for (const auto& s : S)
    if (int(s.size()) != L->dim) throw Error("E-DIM", "closure subset not inside L");
  std::string n = display.empty() ? "cl[" + L->name + "]" : display;
  return PairOperation{n, "module_closure", [S, L](const Submodule& N) {
                         const ModulePtr& M = N.parent;
                         if (!(L->ring->skey == M->ring->skey))
                           throw Error("E-RING-MISMATCH", "module closure over a different ring");
                         auto T = tensor_R(L, M);
                         Subspace im = tensor_image_of_right_submodule(T, N).space;
                         Subspace result = Subspace::full(M->ring->field, M->dim);
                         for (const auto& s : S) {
                           Matrix phi(M->ring->field, T.module->dim, M->dim);
                           for (int j = 0; j < M->dim; ++j) {
                             Vec e(M->dim, Scalar(0));
                             e[j] = 1;
                             Vec col = T.simple(s, e);
                             for (int r = 0; r < T.module->dim; ++r) phi.at(r, j) = col[r];
                           }
                           result = subspace_intersect(result, preimage_subspace(phi, im));
                         }
                         return make_submodule(M, result);
                       }};
}

// (S,L)-trace: the submodule generated by {f(s) : f in Hom_R(L, N), s in S}.
// Absolute: the ambient module enters only as the carrier.
inline PairOperation make_trace(std::vector<Vec> S, const ModulePtr& L, std::string display = "") {
  for (const auto& s : S)
    if (int(s.size()) != L->dim) throw Error("E-DIM", "trace subset not inside L");
  std::string n = display.empty() ? "tr[" + L->name + "]" : display;
  return PairOperation{n, "trace", [S, L](const Submodule& N) {
                         const ModulePtr& M = N.parent;
                         if (!(L->ring->skey == M->ring->skey))
                           throw Error("E-RING-MISMATCH", "trace over a different ring");
                         auto sm = submodule_as_module(N);
                         std::vector<Vec> gens;
                         for (const auto& f : hom_R(L, sm.module))
                           for (const auto& s : S)
                             gens.push_back(sm.inclusion.mat.apply(f.mat.apply(s)));
                         return span_submodule(M, gens);
                       }};
}

inline Vec ring_power(const LocalAlgebra& R, const Vec& v, unsigned long e) {
  Vec acc = ring_unit(R);
  for (unsigned long i = 0; i < e; ++i) acc = ring_multiply(R, acc, v);
  return acc;
}

// Frobenius closure on ideal pairs (I, R) over prime characteristic:
// I^F = {r : r^{p^e} in I^{[p^e]} for some e <= e_max}, where e_max is the
// first e with p^e >= nil_bound. The Frobenius map is GF(p)-linear, so each
// stage is one preimage computation against the bracket ideal.
inline PairOperation make_frobenius_closure(const RingPtr& R) {
  if (!R->field.finite())
    throw Error("E-FIELD", "Frobenius closure requires prime characteristic");
  unsigned long p = R->field.characteristic;
  unsigned emax = 0;
  unsigned long q = 1;
  while (q < R->nil_bound) {
    q *= p;
    ++emax;
  }
  std::string rkey = R->skey;
  unsigned long dmR = (unsigned long)R->dim();
  (void)dmR;
  return PairOperation{
      "frobenius", "frobenius", [R, p, emax, rkey](const Submodule& I) -> Submodule {
        const ModulePtr& M = I.parent;
        auto reg = regular_module(R);
        if (!same_module(M, reg))
          throw Error("E-SCHEMA", "Frobenius closure is defined on ideal pairs (I, R) only");
        Subspace acc = I.space;
        unsigned long power = 1;
        for (unsigned e = 0; e <= emax; ++e) {
          // bracket ideal I^[q] from q-th powers of generators
          std::vector<Vec> bgens;
          for (int i = 0; i < I.rank(); ++i)
            bgens.push_back(ring_power(*R, I.space.basis().row(i), power));
          Subspace bracket = span_submodule(reg, bgens).space;
          // Frobenius matrix: r -> r^q is linear over the prime field
          Matrix frob(R->field, R->dim(), R->dim());
          for (int i = 0; i < R->dim(); ++i) {
            Vec b(R->dim(), Scalar(0));
            b[i] = 1;
            Vec im = ring_power(*R, b, power);
            for (int r = 0; r < R->dim(); ++r) frob.at(r, i) = im[r];
          }
          acc = subspace_sum(acc, preimage_subspace(frob, bracket));
          power *= p;
        }
        return make_submodule(M, acc);
      }};
}

// Residual operation rho(alpha)(L, M) = pi^{-1}(alpha(M/L)).
inline PairOperation rho(const SubmoduleSelector& alpha) {
  return PairOperation{"rho(" + alpha.name + ")", "rho", [alpha](const Submodule& L) {
                         auto q = quotient_module(L.parent, L);
                         return map_preimage(q.projection, alpha(q.module));
                       }};
}

// Absolute operation gamma(alpha)(L, M) = alpha(L).
inline PairOperation gamma(const SubmoduleSelector& alpha) {
  return PairOperation{"gamma(" + alpha.name + ")", "gamma", [alpha](const Submodule& L) {
                         auto sm = submodule_as_module(L);
                         return map_image(sm.inclusion, alpha(sm.module));
                       }};
}

inline SubmoduleSelector selector_zero() {
  return SubmoduleSelector{"zero", [](const ModulePtr& M) { return zero_submodule(M); }};
}

inline SubmoduleSelector selector_full() {
  return SubmoduleSelector{"full", [](const ModulePtr& M) { return full_submodule(M); }};
}

inline SubmoduleSelector selector_socle() {
  return SubmoduleSelector{"socle", [](const ModulePtr& M) { return socle(M); }};
}

inline SubmoduleSelector selector_m_times() {
  return SubmoduleSelector{
      "mM", [](const ModulePtr& M) { return make_submodule(M, m_times_subspace(*M)); }};
}

inline SubmoduleSelector selector_by_name(const std::string& name) {
  if (name == "zero") return selector_zero();
  if (name == "full" || name == "identity") return selector_full();
  if (name == "socle") return selector_socle();
  if (name == "mM") return selector_m_times();
  throw Error("E-UNRESOLVED", "unknown selector \"" + name + "\"");
}

inline PairOperation meet(const std::vector<PairOperation>& ops) {
  if (ops.empty()) throw Error("E-SCHEMA", "meet of an empty operation list");
  std::string n = "meet(";
  for (size_t i = 0; i < ops.size(); ++i) n += (i ? "," : "") + ops[i].name;
  n += ")";
  return PairOperation{n, "meet", [ops](const Submodule& L) {
                         Submodule acc = ops.front()(L);
                         for (size_t i = 1; i < ops.size(); ++i)
                           acc = sub_intersect(acc, ops[i](L));
                         return acc;
                       }};
}

inline PairOperation join(const std::vector<PairOperation>& ops) {
  if (ops.empty()) throw Error("E-SCHEMA", "join of an empty operation list");
  std::string n = "join(";
  for (size_t i = 0; i < ops.size(); ++i) n += (i ? "," : "") + ops[i].name;
  n += ")";
  return PairOperation{n, "join", [ops](const Submodule& L) {
                         Submodule acc = ops.front()(L);
                         for (size_t i = 1; i < ops.size(); ++i) acc = sub_sum(acc, ops[i](L));
                         return acc;
                       }};
}

inline std::vector<Vec> subspace_elements(const Subspace& s) {
  std::vector<Vec> out;
  for (const auto& c : all_vectors(s.field(), s.rank())) {
    Vec v(s.ambient_dim(), Scalar(0));
    for (int i = 0; i < s.rank(); ++i)
      for (int j = 0; j < s.ambient_dim(); ++j)
        v[j] = s.field().add(v[j], s.field().mul(c[i], s.basis().at(i, j)));
    out.push_back(v);
  }
  return out;
}

struct FinitisticDetail {
  Submodule value;
  bool union_was_submodule = true;
};

// Finitistic version: the span of the union of p(L n U, U) over all
// submodules U of M, each piece pushed into M along the inclusion. The flag
// records whether the raw set union was already a submodule.
inline FinitisticDetail finitistic_detail(const PairOperation& p, const Submodule& L,
                                          long limit = 20000) {
  const ModulePtr& M = L.parent;
  std::vector<Subspace> pieces;
  Subspace total = Subspace::zero(M->ring->field, M->dim);
  for (const auto& U : enumerate_submodules(M, limit)) {
    auto um = submodule_as_module(U);
    Submodule LU = restrict_to(um, sub_intersect(L, U));
    Submodule pushed = map_image(um.inclusion, p(LU));
    pieces.push_back(pushed.space);
    total = subspace_sum(total, pushed.space);
  }
  bool union_closed = true;
  for (const auto& v : subspace_elements(total)) {
    bool hit = false;
    for (const auto& piece : pieces)
      if (piece.contains(v)) {
        hit = true;
        break;
      }
    if (!hit) {
      union_closed = false;
      break;
    }
  }
  return FinitisticDetail{make_submodule(M, total), union_closed};
}

inline PairOperation finitistic(const PairOperation& p, long limit = 20000) {
  auto inner = p;
  return PairOperation{"finitistic(" + p.name + ")", "finitistic",
                       [inner, limit](const Submodule& L) {
                         return finitistic_detail(inner, L, limit).value;
                       }};
}

// Derived diagnostic: the union over extensions L <= N <= M with N/L
// finitely generated, as in the remark on functorial residual operations.
// Exposed for comparison only; the definition above is authoritative.
inline PairOperation finitistic_over_extensions(const PairOperation& p, long limit = 20000) {
  auto inner = p;
  return PairOperation{"finitistic_ext(" + p.name + ")", "finitistic_ext",
                       [inner, limit](const Submodule& L) {
                         const ModulePtr& M = L.parent;
                         Subspace total = Subspace::zero(M->ring->field, M->dim);
                         for (const auto& N : enumerate_submodules(M, limit)) {
                           if (!N.space.contains(L.space)) continue;
                           auto nm = submodule_as_module(N);
                           Submodule LN = restrict_to(nm, L);
                           total = subspace_sum(total, map_image(nm.inclusion, inner(LN)).space);
                         }
                         return make_submodule(M, total);
                       }};
}

// Cohereditary version p_ch(L, M) = pi(p(pi^{-1}(L), P)) along a minimal
// free cover pi : P ->> M.
inline PairOperation cohereditary_version(const PairOperation& p) {
  auto inner = p;
  return PairOperation{"coheredit(" + p.name + ")", "cohereditary_version",
                       [inner](const Submodule& L) {
                         auto fc = free_cover(L.parent);
                         return map_image(fc.projection, inner(map_preimage(fc.projection, L)));
                       }};
}

// Hereditary version p_h(L, M) = i^{-1}(p(i(L), E^n)) along the injective
// pre-envelope i : M -> E^n.
inline PairOperation hereditary_version(const PairOperation& p) {
  auto inner = p;
  return PairOperation{"heredit(" + p.name + ")", "hereditary_version",
                       [inner](const Submodule& L) {
                         auto emb = injective_embed(L.parent);
                         return map_preimage(emb.embedding, inner(map_image(emb.embedding, L)));
                       }};
}

// Guarded table operation: the first rule whose guard ideal satisfies
// L <= guard*M wins and yields value*M; otherwise the result is M itself.
inline PairOperation make_custom_table(std::vector<std::pair<Submodule, Submodule>> rules,
                                       std::string name) {
  return PairOperation{std::move(name), "custom_table",
                       [rules](const Submodule& L) -> Submodule {
                         const ModulePtr& M = L.parent;
                         for (const auto& [guard, value] : rules) {
                           require_ideal_of(guard, M, "custom table over a different ring");
                           Submodule gm = scale(guard, full_submodule(M));
                           if (gm.space.contains(L.space)) return scale(value, full_submodule(M));
                         }
                         return full_submodule(M);
                       }};
}

enum class TestIdealMode { Big, Finitistic, Enumerated };

// Test ideal of a closure operation. Big: ann_R(cl(0, E)). Finitistic: the
// same with the finitistic version. Enumerated: the brute-force intersection
// of (L :_R cl(L, M)) over the catalog pairs within bounds.
inline Submodule test_ideal(const PairOperation& cl, const RingPtr& R, TestIdealMode mode,
                            const CheckBounds& bounds = {}) {
  auto reg = regular_module(R);
  auto E = matlis_dual(reg);
  switch (mode) {
    case TestIdealMode::Big:
      return annihilator(reg, cl(zero_submodule(E)));
    case TestIdealMode::Finitistic:
      return annihilator(reg, finitistic(cl, bounds.max_submodules)(zero_submodule(E)));
    case TestIdealMode::Enumerated: {
      Submodule acc = full_submodule(reg);
      for (const auto& M : standard_module_catalog(R, bounds))
        for (const auto& L : enumerate_submodules(M, bounds.max_submodules))
          acc = sub_intersect(acc, colon_into_ring(reg, L, cl(L)));
      return acc;
    }
  }
  throw Error("E-SCHEMA", "unknown test ideal mode");
}

}  // namespace pairops
