#pragma once

#include <random>

#include "pairops/operations.hpp"

namespace pairops {

enum class Verdict { Pass, Fail, Skipped };

inline const char* verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "FAIL";
    default: return "skipped";
  }
}

struct PropertyResult {
  Verdict verdict = Verdict::Pass;
  long cases = 0;
  std::string counterexample;
  std::string note;
};

// Property identifiers in canonical order; display names follow the survey's
// tables.
inline const std::vector<std::pair<std::string, std::string>>& property_names() {
  static const std::vector<std::pair<std::string, std::string>> names = {
      {"extensive", "extensive"},
      {"intensive", "intensive"},
      {"idempotent", "idempotent"},
      {"order_preserving_submodules", "order-preserving on submodules"},
      {"order_preserving_ambient", "order preserving on ambient modules"},
      {"surjection_functorial", "surjection-functorial"},
      {"functorial", "functorial"},
      {"restrictable", "restrictable"},
      {"surjection_cofunctorial", "surjection-cofunctorial"},
      {"cofunctorial", "cofunctorial"},
      {"hereditary", "hereditary"},
      {"absolute", "absolute"},
      {"cohereditary", "cohereditary"},
      {"residual", "residual"},
      {"nakayama_closure", "Nakayama closure"},
      {"nakayama_interior", "Nakayama interior"},
      {"isomorphism_invariant", "isomorphism-invariant"},
  };
  return names;
}

struct PropertyReport {
  std::string operation;
  std::string ring;
  std::string scope;
  bool randomized = false;
  std::vector<std::pair<std::string, PropertyResult>> properties;

  const PropertyResult* find(const std::string& id) const {
    for (const auto& [k, v] : properties)
      if (k == id) return &v;
    return nullptr;
  }
  bool passed(const std::string& id) const {
    const auto* r = find(id);
    return r && r->verdict == Verdict::Pass;
  }
  bool failed(const std::string& id) const {
    const auto* r = find(id);
    return r && r->verdict == Verdict::Fail;
  }
};

namespace detail {

class PropertyChecker {
 public:
  PropertyChecker(PairOperation p, RingPtr R, CheckBounds bounds)
      : p_(std::move(p)), ring_(std::move(R)), bounds_(bounds) {
    randomized_ = !ring_->field.finite();
    if (randomized_) {
      auto reg = regular_module(ring_);
      catalog_ = {reg, matlis_dual(reg)};
    } else {
      catalog_ = standard_module_catalog(ring_, bounds_);
    }
  }

  PropertyReport run() {
    PropertyReport rep;
    rep.operation = p_.name;
    rep.ring = ring_->field.describe() + "[" + join_names(ring_->variables) + "], dim " +
               std::to_string(ring_->dim());
    rep.randomized = randomized_;
    {
      std::ostringstream os;
      os << "modules: ";
      for (size_t i = 0; i < catalog_.size(); ++i) os << (i ? ", " : "") << catalog_[i]->name;
      os << "; max_dim=" << bounds_.max_dim << " max_submodules=" << bounds_.max_submodules
         << " max_maps=" << bounds_.max_maps;
      os << (randomized_ ? "; randomized sampling over an infinite field" : "; exhaustive");
      rep.scope = os.str();
    }

    PropertyResult res[17];
    run_simple(res[0], res[1], res[2], res[3]);
    run_inner_modules(res[4], res[7], res[10], res[11]);
    run_maps(res[5], res[6], res[8], res[9], res[16]);
    run_quotients(res[12], res[13]);
    run_nakayama_closure(res[14], res[0], res[3], res[2]);
    run_nakayama_interior(res[15], res[1], res[3], res[2]);

    const auto& names = property_names();
    for (size_t i = 0; i < names.size(); ++i) rep.properties.push_back({names[i].first, res[i]});
    return rep;
  }

 private:
  PairOperation p_;
  RingPtr ring_;
  CheckBounds bounds_;
  bool randomized_ = false;
  std::vector<ModulePtr> catalog_;
  std::map<std::string, std::vector<Submodule>> subs_cache_;
  std::map<std::string, bool> subs_skipped_;
  std::map<std::string, Submodule> eval_cache_;

  static std::string join_names(const std::vector<std::string>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
  }

  const std::vector<Submodule>* subs(const ModulePtr& M) {
    auto it = subs_cache_.find(M->skey);
    if (it != subs_cache_.end()) return subs_skipped_[M->skey] ? nullptr : &it->second;
    std::vector<Submodule> out;
    bool skipped = false;
    if (randomized_) {
      out = sampled_submodules(M);
    } else {
      try {
        out = enumerate_submodules(M, bounds_.max_submodules);
      } catch (const EnumerationLimit&) {
        skipped = true;
      }
    }
    subs_skipped_[M->skey] = skipped;
    auto& slot = subs_cache_[M->skey];
    slot = std::move(out);
    return skipped ? nullptr : &slot;
  }

  std::vector<Submodule> sampled_submodules(const ModulePtr& M) {
    std::vector<Submodule> out{zero_submodule(M), full_submodule(M), socle(M),
                               make_submodule(M, m_times_subspace(*M))};
    std::mt19937 rng(0xA11CE ^ unsigned(M->dim));
    for (int t = 0; t < 6; ++t) {
      Vec v(M->dim);
      for (auto& x : v) x = M->ring->field.from_long(long(rng() % 5) - 2);
      out.push_back(span_submodule(M, {v}));
    }
    std::sort(out.begin(), out.end(), [](const Submodule& a, const Submodule& b) {
      return a.space.key() < b.space.key();
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::sort(out.begin(), out.end(), [](const Submodule& a, const Submodule& b) {
      if (a.rank() != b.rank()) return a.rank() < b.rank();
      return a.space.key() < b.space.key();
    });
    return out;
  }

  Submodule evalp(const Submodule& L) {
    std::string key = L.parent->skey + "#" + L.space.key();
    auto it = eval_cache_.find(key);
    if (it != eval_cache_.end()) return it->second;
    Submodule v = p_(L);
    eval_cache_.emplace(key, v);
    return v;
  }

  static std::string cx_pair(const Submodule& L) {
    return "M = " + L.parent->name + ", L = " + submodule_str(L);
  }

  static void fail(PropertyResult& r, const std::string& witness) {
    if (r.verdict == Verdict::Fail) return;
    r.verdict = Verdict::Fail;
    r.counterexample = witness;
  }

  static void finish(PropertyResult& r, bool any_skip, const std::string& note) {
    if (r.verdict == Verdict::Fail) return;
    if (any_skip) {
      r.verdict = Verdict::Skipped;
      r.note = note;
    }
  }

  void run_simple(PropertyResult& ext, PropertyResult& inte, PropertyResult& idem,
                  PropertyResult& opsub) {
    bool any_skip = false;
    for (const auto& M : catalog_) {
      const auto* ss = subs(M);
      if (!ss) {
        any_skip = true;
        continue;
      }
      for (const auto& L : *ss) {
        Submodule v = evalp(L);
        ++ext.cases;
        if (!v.space.contains(L.space)) fail(ext, cx_pair(L));
        ++inte.cases;
        if (!L.space.contains(v.space)) fail(inte, cx_pair(L));
        ++idem.cases;
        if (!(evalp(v) == v))
          fail(idem, cx_pair(L) + ", p(L,M) = " + submodule_str(v) + ", p(p(L,M),M) = " +
                         submodule_str(evalp(v)));
      }
      for (const auto& L : *ss)
        for (const auto& N : *ss) {
          if (!N.space.contains(L.space)) continue;
          ++opsub.cases;
          if (!evalp(N).space.contains(evalp(L).space))
            fail(opsub, cx_pair(L) + ", N = " + submodule_str(N));
        }
    }
    std::string note = "enumeration limit exceeded on some module";
    finish(ext, any_skip, note);
    finish(inte, any_skip, note);
    finish(idem, any_skip, note);
    finish(opsub, any_skip, note);
  }

  // properties quantified over an inner module N (or K) realized as a module
  void run_inner_modules(PropertyResult& opamb, PropertyResult& restr, PropertyResult& hered,
                         PropertyResult& absol) {
    bool any_skip = false;
    for (const auto& M : catalog_) {
      const auto* ss = subs(M);
      if (!ss) {
        any_skip = true;
        continue;
      }
      for (const auto& N : *ss) {
        auto nm = submodule_as_module(N);
        for (const auto& L : *ss) {
          Submodule pLM = evalp(L);
          if (N.space.contains(L.space)) {
            Submodule inner = evalp(restrict_to(nm, L));
            Submodule pushed = map_image(nm.inclusion, inner);
            ++opamb.cases;
            if (!pLM.space.contains(pushed.space))
              fail(opamb, cx_pair(L) + ", N = " + submodule_str(N));
            ++hered.cases;
            if (!(pushed == sub_intersect(pLM, N)))
              fail(hered, cx_pair(L) + ", N = " + submodule_str(N) + ": p(L,N) = " +
                              submodule_str(pushed) + " vs p(L,M) n N = " +
                              submodule_str(sub_intersect(pLM, N)));
            ++absol.cases;
            if (!(pushed == pLM))
              fail(absol, cx_pair(L) + ", N = " + submodule_str(N) + ": p(L,N) = " +
                              submodule_str(pushed) + " vs p(L,M) = " + submodule_str(pLM));
          }
          {
            Submodule cap = sub_intersect(L, N);
            Submodule inner = evalp(restrict_to(nm, cap));
            Submodule pushed = map_image(nm.inclusion, inner);
            ++restr.cases;
            if (!pLM.space.contains(pushed.space))
              fail(restr, cx_pair(L) + ", K = " + submodule_str(N));
          }
        }
      }
    }
    std::string note = "enumeration limit exceeded on some module";
    finish(opamb, any_skip, note);
    finish(restr, any_skip, note);
    finish(hered, any_skip, note);
    finish(absol, any_skip, note);
  }

  std::vector<Matrix> maps_between(const ModulePtr& M, const ModulePtr& N, bool& skipped) {
    skipped = false;
    auto basis = hom_R(M, N);
    std::vector<Matrix> out;
    if (randomized_) {
      std::mt19937 rng(0xD0D0 ^ unsigned(M->dim * 31 + N->dim));
      for (int t = 0; t < 24; ++t) {
        Matrix g(M->ring->field, N->dim, M->dim);
        for (const auto& f : basis)
          g = g + f.mat.scaled(M->ring->field.from_long(long(rng() % 5) - 2));
        out.push_back(g);
      }
      return out;
    }
    unsigned long pchar = M->ring->field.characteristic;
    double count = 1;
    for (size_t i = 0; i < basis.size(); ++i) count *= double(pchar);
    if (count > double(bounds_.max_maps)) {
      skipped = true;
      return out;
    }
    for (const auto& c : all_vectors(M->ring->field, int(basis.size()))) {
      Matrix g(M->ring->field, N->dim, M->dim);
      for (size_t i = 0; i < basis.size(); ++i)
        if (c[i] != 0) g = g + basis[i].mat.scaled(c[i]);
      out.push_back(g);
    }
    return out;
  }

  void run_maps(PropertyResult& sfun, PropertyResult& fun, PropertyResult& scofun,
                PropertyResult& cofun, PropertyResult& iso) {
    bool any_skip = false;
    for (const auto& M : catalog_) {
      const auto* sm = subs(M);
      if (!sm) {
        any_skip = true;
        continue;
      }
      for (const auto& N : catalog_) {
        const auto* sn = subs(N);
        if (!sn) {
          any_skip = true;
          continue;
        }
        bool skipped = false;
        auto mats = maps_between(M, N, skipped);
        if (skipped) {
          any_skip = true;
          continue;
        }
        for (const auto& mat : mats) {
          ModuleMap g{M, N, mat};
          bool surjective = image(mat).rank() == N->dim;
          bool invertible = M->dim == N->dim && surjective;
          std::string gdesc = "g: " + M->name + " -> " + N->name;
          for (const auto& L : *sm) {
            Submodule gL = map_image(g, L);
            Submodule pgL = evalp(gL);
            Submodule gpL = map_image(g, evalp(L));
            ++fun.cases;
            if (!pgL.space.contains(gpL.space)) fail(fun, cx_pair(L) + ", " + gdesc);
            if (surjective) {
              ++sfun.cases;
              if (!pgL.space.contains(gpL.space)) fail(sfun, cx_pair(L) + ", " + gdesc);
            }
            if (invertible) {
              ++iso.cases;
              if (!(pgL == gpL)) fail(iso, cx_pair(L) + ", iso " + gdesc);
            }
          }
          for (const auto& Lp : *sn) {
            Submodule pre = map_preimage(g, Lp);
            Submodule lhs = evalp(pre);
            Submodule rhs = map_preimage(g, evalp(Lp));
            ++cofun.cases;
            if (!rhs.space.contains(lhs.space))
              fail(cofun, "M' = " + N->name + ", L = " + submodule_str(Lp) + ", " + gdesc);
            if (surjective) {
              ++scofun.cases;
              if (!rhs.space.contains(lhs.space))
                fail(scofun, "M' = " + N->name + ", L = " + submodule_str(Lp) + ", " + gdesc);
            }
          }
        }
      }
    }
    std::string note = "map enumeration limit exceeded";
    finish(sfun, any_skip, note);
    finish(fun, any_skip, note);
    finish(scofun, any_skip, note);
    finish(cofun, any_skip, note);
    finish(iso, any_skip, note);
  }

  void run_quotients(PropertyResult& cohered, PropertyResult& resid) {
    bool any_skip = false;
    for (const auto& M : catalog_) {
      const auto* ss = subs(M);
      if (!ss) {
        any_skip = true;
        continue;
      }
      for (const auto& L : *ss) {
        auto q = quotient_module(M, L);
        for (const auto& N : *ss) {
          if (!N.space.contains(L.space)) continue;
          Submodule piN = map_image(q.projection, N);
          Submodule inner = evalp(piN);
          Submodule pNM = evalp(N);
          ++cohered.cases;
          if (!(map_image(q.projection, pNM) == inner))
            fail(cohered,
                 cx_pair(L) + ", N = " + submodule_str(N) + "; quotient pair (" +
                     submodule_str(piN) + ", " + q.module->name + ")");
          ++resid.cases;
          if (!(pNM == map_preimage(q.projection, inner)))
            fail(resid, cx_pair(L) + ", N = " + submodule_str(N) + "; quotient pair (" +
                            submodule_str(piN) + ", " + q.module->name + ")");
        }
      }
    }
    std::string note = "enumeration limit exceeded on some module";
    finish(cohered, any_skip, note);
    finish(resid, any_skip, note);
  }

  void run_nakayama_closure(PropertyResult& nak, const PropertyResult& ext,
                            const PropertyResult& opsub, const PropertyResult& idem) {
    for (const auto* pre : {&ext, &opsub, &idem}) {
      if (pre->verdict == Verdict::Fail) {
        nak.verdict = Verdict::Fail;
        nak.note = "not a closure operation on this scope";
        nak.counterexample = pre->counterexample;
        return;
      }
      if (pre->verdict == Verdict::Skipped) {
        nak.verdict = Verdict::Skipped;
        nak.note = "closure prerequisites skipped";
        return;
      }
    }
    auto reg = regular_module(ring_);
    Submodule mid = maximal_ideal_sub(reg);
    bool any_skip = false;
    for (const auto& M : catalog_) {
      const auto* ss = subs(M);
      if (!ss) {
        any_skip = true;
        continue;
      }
      for (const auto& L : *ss)
        for (const auto& N : *ss) {
          if (!N.space.contains(L.space)) continue;
          Submodule lmn = sub_sum(L, scale(mid, N));
          ++nak.cases;
          if (evalp(lmn).space.contains(N.space) && !(evalp(L) == evalp(N)))
            fail(nak, cx_pair(L) + ", N = " + submodule_str(N));
        }
    }
    finish(nak, any_skip, "enumeration limit exceeded on some module");
  }

  void run_nakayama_interior(PropertyResult& nak, const PropertyResult& inte,
                             const PropertyResult& opsub, const PropertyResult& idem) {
    for (const auto* pre : {&inte, &opsub, &idem}) {
      if (pre->verdict == Verdict::Fail) {
        nak.verdict = Verdict::Fail;
        nak.note = "not an interior operation on this scope";
        nak.counterexample = pre->counterexample;
        return;
      }
      if (pre->verdict == Verdict::Skipped) {
        nak.verdict = Verdict::Skipped;
        nak.note = "interior prerequisites skipped";
        return;
      }
    }
    auto reg = regular_module(ring_);
    Submodule mid = maximal_ideal_sub(reg);
    bool any_skip = false;
    for (const auto& B : catalog_) {
      const auto* ss = subs(B);
      if (!ss) {
        any_skip = true;
        continue;
      }
      for (const auto& A : *ss)
        for (const auto& C : *ss) {
          if (!C.space.contains(A.space)) continue;
          Submodule acm = sub_intersect(colon(A, mid), C);  // (A :_C m)
          ++nak.cases;
          if (A.space.contains(evalp(acm).space) && !(evalp(A) == evalp(C)))
            fail(nak, "B = " + B->name + ", A = " + submodule_str(A) + ", C = " + submodule_str(C));
        }
    }
    finish(nak, any_skip, "enumeration limit exceeded on some module");
  }
};

}  // namespace detail

// Exhaustively test every property from the survey's tables on the module
// catalog of the given ring, within bounds. Over infinite fields the scope
// is randomized and the report says so.
inline PropertyReport check_properties(const PairOperation& p, const RingPtr& R,
                                       const CheckBounds& bounds = {}) {
  return detail::PropertyChecker(p, R, bounds).run();
}

// Submodule-selector properties (order preserving, surjection-functorial,
// functorial, idempotent, co-idempotent), enumerated over the same catalog.
inline PropertyReport check_selector_properties(const SubmoduleSelector& alpha, const RingPtr& R,
                                                const CheckBounds& bounds = {}) {
  PropertyReport rep;
  rep.operation = alpha.name;
  rep.ring = R->field.describe();
  auto catalog = standard_module_catalog(R, bounds);
  {
    std::ostringstream os;
    os << "modules: ";
    for (size_t i = 0; i < catalog.size(); ++i) os << (i ? ", " : "") << catalog[i]->name;
    rep.scope = os.str();
  }
  PropertyResult order, sfun, fun, idem, coidem;
  std::map<std::string, std::vector<Submodule>> subs;
  for (const auto& M : catalog) subs[M->skey] = enumerate_submodules(M, bounds.max_submodules);

  for (const auto& M : catalog) {
    Submodule aM = alpha(M);
    for (const auto& L : subs[M->skey]) {
      auto lm = submodule_as_module(L);
      ++order.cases;
      if (order.verdict == Verdict::Pass &&
          !aM.space.contains(map_image(lm.inclusion, alpha(lm.module)).space)) {
        order.verdict = Verdict::Fail;
        order.counterexample = "M = " + M->name + ", L = " + submodule_str(L);
      }
      auto q = quotient_module(M, L);
      ++sfun.cases;
      if (sfun.verdict == Verdict::Pass &&
          !alpha(q.module).space.contains(map_image(q.projection, aM).space)) {
        sfun.verdict = Verdict::Fail;
        sfun.counterexample = "M = " + M->name + ", quotient by " + submodule_str(L);
      }
    }
    {
      auto am = submodule_as_module(aM);
      Submodule aaM = map_image(am.inclusion, alpha(am.module));
      ++idem.cases;
      if (idem.verdict == Verdict::Pass && !(aaM == aM)) {
        idem.verdict = Verdict::Fail;
        idem.counterexample = "M = " + M->name;
      }
      auto q = quotient_module(M, aM);
      ++coidem.cases;
      if (coidem.verdict == Verdict::Pass && alpha(q.module).rank() != 0) {
        coidem.verdict = Verdict::Fail;
        coidem.counterexample = "M = " + M->name;
      }
    }
    for (const auto& N : catalog) {
      auto homs = hom_R(M, N);
      double count = 1;
      for (size_t i = 0; i < homs.size(); ++i) count *= double(R->field.characteristic);
      if (count > double(bounds.max_maps)) {
        if (fun.verdict == Verdict::Pass) fun.verdict = Verdict::Skipped;
        continue;
      }
      for (const auto& c : all_vectors(R->field, int(homs.size()))) {
        Matrix g(R->field, N->dim, M->dim);
        for (size_t i = 0; i < homs.size(); ++i)
          if (c[i] != 0) g = g + homs[i].mat.scaled(c[i]);
        ++fun.cases;
        if (fun.verdict == Verdict::Pass &&
            !alpha(N).space.contains(image_subspace(g, aM.space))) {
          fun.verdict = Verdict::Fail;
          fun.counterexample = "g: " + M->name + " -> " + N->name;
        }
      }
    }
  }
  rep.properties = {{"order_preserving", order},
                    {"surjection_functorial", sfun},
                    {"functorial", fun},
                    {"idempotent", idem},
                    {"co_idempotent", coidem}};
  return rep;
}

}  // namespace pairops
