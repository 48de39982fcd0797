#pragma once

#include "json.hpp"
#include "pairops/corehull.hpp"
#include "pairops/fixtures.hpp"

namespace pairops {

using ordered_json = nlohmann::ordered_json;

namespace wsdetail {

inline std::pair<int, int> line_col(const std::string& text, size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline const ordered_json& need(const ordered_json& j, const char* key, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key))
    throw Error("E-SCHEMA", "missing key \"" + std::string(key) + "\" in " + ctx);
  return j.at(key);
}

inline std::string need_string(const ordered_json& j, const char* key, const std::string& ctx) {
  const auto& v = need(j, key, ctx);
  if (!v.is_string()) throw Error("E-SCHEMA", "\"" + std::string(key) + "\" must be a string in " + ctx);
  return v.get<std::string>();
}

inline long need_int(const ordered_json& j, const char* key, const std::string& ctx) {
  const auto& v = need(j, key, ctx);
  if (!v.is_number_integer()) throw Error("E-SCHEMA", "\"" + std::string(key) + "\" must be an integer in " + ctx);
  return v.get<long>();
}

inline void check_keys(const ordered_json& j, std::initializer_list<const char*> allowed,
                       const std::string& ctx) {
  if (!j.is_object()) throw Error("E-SCHEMA", ctx + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok |= it.key() == k;
    if (!ok) throw Error("E-SCHEMA", "unknown key \"" + it.key() + "\" in " + ctx);
  }
}

}  // namespace wsdetail

struct OperationDef {
  std::string name;
  std::string kind;
  std::string ring_name;
  PairOperation op;
};

// Parsed and fully resolved workspace. `canonical` holds the normalized
// definition document; emitting and re-parsing it reproduces the workspace.
struct Workspace {
  FieldSpec field;
  CheckBounds bounds;
  std::vector<std::pair<std::string, RingPtr>> rings;
  std::vector<std::pair<std::string, ModulePtr>> modules;
  std::vector<std::pair<std::string, Submodule>> ideals;  // over the regular module
  std::vector<OperationDef> operations;
  ordered_json tasks;
  ordered_json canonical;

  const RingPtr& ring(const std::string& name) const {
    for (const auto& [n, r] : rings)
      if (n == name) return r;
    throw Error("E-UNRESOLVED", "unknown ring \"" + name + "\"");
  }
  const ModulePtr& module(const std::string& name) const {
    for (const auto& [n, m] : modules)
      if (n == name) return m;
    throw Error("E-UNRESOLVED", "unknown module \"" + name + "\"");
  }
  const Submodule& ideal(const std::string& name) const {
    for (const auto& [n, s] : ideals)
      if (n == name) return s;
    throw Error("E-UNRESOLVED", "unknown ideal \"" + name + "\"");
  }
  const OperationDef& operation(const std::string& name) const {
    for (const auto& o : operations)
      if (o.name == name) return o;
    throw Error("E-UNRESOLVED", "unknown operation \"" + name + "\"");
  }
  std::string ring_name_of(const RingPtr& R) const {
    for (const auto& [n, r] : rings)
      if (r->skey == R->skey) return n;
    return "?";
  }
};

inline Submodule rebind(const Submodule& s, const ModulePtr& M) {
  if (!same_module(s.parent, M))
    throw Error("E-SCHEMA", "submodule does not live in module \"" + M->name + "\"");
  return Submodule{M, s.space};
}

namespace wsdetail {

inline Vec parse_generator(const Workspace& w, const ModulePtr& M, const ordered_json& g,
                           const std::string& ctx) {
  if (g.is_string()) {
    auto reg = regular_module(M->ring);
    if (!same_module(M, reg))
      throw Error("E-SCHEMA", "polynomial generators require the regular module in " + ctx);
    return ring_element_from_string(*M->ring, g.get<std::string>());
  }
  if (g.is_array()) {
    if (int(g.size()) != M->dim)
      throw Error("E-SCHEMA", "coordinate vector of wrong length in " + ctx);
    Vec v;
    for (const auto& x : g) {
      if (x.is_number_integer())
        v.push_back(w.field.from_long(x.get<long>()));
      else if (x.is_string())
        v.push_back(w.field.canon(Scalar(x.get<std::string>())));
      else
        throw Error("E-SCHEMA", "coordinates must be integers or strings in " + ctx);
    }
    return v;
  }
  throw Error("E-SCHEMA", "generator must be a polynomial string or coordinate array in " + ctx);
}

inline Submodule resolve_sub(const Workspace& w, const ordered_json& spec, const ModulePtr& M,
                             const std::string& ctx) {
  if (spec.is_string()) {
    std::string s = spec.get<std::string>();
    if (s == "0" || s == "zero") return zero_submodule(M);
    if (s == "full") return full_submodule(M);
    if (s == "socle") return socle(M);
    return rebind(w.ideal(s), M);
  }
  if (spec.is_object()) {
    check_keys(spec, {"generators"}, ctx);
    std::vector<Vec> gens;
    for (const auto& g : need(spec, "generators", ctx)) gens.push_back(parse_generator(w, M, g, ctx));
    return span_submodule(M, gens);
  }
  throw Error("E-SCHEMA", "submodule reference must be a name, keyword, or generator object in " + ctx);
}

}  // namespace wsdetail

inline Workspace parse_workspace(const std::string& text) {
  using namespace wsdetail;
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw Error("E-SYNTAX", "JSON parse error at line " + std::to_string(line) + ", column " +
                                std::to_string(col) + ": " + e.what());
  }
  check_keys(doc, {"field", "rings", "modules", "ideals", "operations", "tasks", "config"},
             "workspace");

  Workspace w;
  const auto& field = need(doc, "field", "workspace");
  check_keys(field, {"char"}, "field");
  long ch = need_int(field, "char", "field");
  if (ch < 0) throw Error("E-SCHEMA", "field characteristic must be nonnegative");
  w.field = ch == 0 ? FieldSpec::rationals() : FieldSpec::gf((unsigned long)ch);

  if (doc.contains("config")) {
    const auto& cfg = doc.at("config");
    check_keys(cfg, {"max_dim", "max_submodules", "max_maps"}, "config");
    if (cfg.contains("max_dim")) w.bounds.max_dim = int(need_int(cfg, "max_dim", "config"));
    if (cfg.contains("max_submodules"))
      w.bounds.max_submodules = need_int(cfg, "max_submodules", "config");
    if (cfg.contains("max_maps")) w.bounds.max_maps = need_int(cfg, "max_maps", "config");
  }

  std::set<std::string> names;
  auto claim = [&](const std::string& n, const std::string& ctx) {
    if (n.empty()) throw Error("E-SCHEMA", "empty name in " + ctx);
    if (!names.insert(n).second) throw Error("E-SCHEMA", "duplicate name \"" + n + "\"");
  };

  if (doc.contains("rings"))
    for (const auto& rj : doc.at("rings")) {
      check_keys(rj, {"name", "vars", "relations", "nil_bound"}, "ring definition");
      std::string name = need_string(rj, "name", "ring definition");
      claim(name, "rings");
      std::vector<std::string> vars;
      for (const auto& v : need(rj, "vars", name)) vars.push_back(v.get<std::string>());
      std::vector<std::string> rels;
      for (const auto& r : need(rj, "relations", name)) rels.push_back(r.get<std::string>());
      long nb = need_int(rj, "nil_bound", name);
      if (nb < 1) throw Error("E-SCHEMA", "nil_bound must be positive in ring \"" + name + "\"");
      w.rings.push_back({name, build_local_algebra(w.field, vars, rels, unsigned(nb))});
    }

  if (doc.contains("modules"))
    for (const auto& mj : doc.at("modules")) {
      check_keys(mj, {"name", "ring", "kind", "rank", "of", "by", "generators"},
                 "module definition");
      std::string name = need_string(mj, "name", "module definition");
      claim(name, "modules");
      std::string kind = need_string(mj, "kind", name);
      const auto& R = w.ring(need_string(mj, "ring", name));
      ModulePtr M;
      if (kind == "free") {
        M = free_module(R, int(need_int(mj, "rank", name)));
      } else if (kind == "injective_hull") {
        M = matlis_dual(regular_module(R));
      } else if (kind == "quotient") {
        const auto& base = w.module(need_string(mj, "of", name));
        Submodule by = wsdetail::resolve_sub(w, need(mj, "by", name), base, name);
        M = quotient_module(base, by).module;
      } else if (kind == "dual") {
        M = matlis_dual(w.module(need_string(mj, "of", name)));
      } else if (kind == "submodule") {
        const auto& base = w.module(need_string(mj, "of", name));
        Submodule s = wsdetail::resolve_sub(w, need(mj, "generators", name), base, name);
        M = submodule_as_module(s).module;
      } else {
        throw Error("E-SCHEMA", "unknown module kind \"" + kind + "\" in \"" + name + "\"");
      }
      if (!(M->ring->skey == R->skey))
        throw Error("E-SCHEMA", "module \"" + name + "\" does not live over its declared ring");
      w.modules.push_back({name, M});
    }

  if (doc.contains("ideals"))
    for (const auto& ij : doc.at("ideals")) {
      check_keys(ij, {"name", "ring", "generators"}, "ideal definition");
      std::string name = need_string(ij, "name", "ideal definition");
      claim(name, "ideals");
      const auto& R = w.ring(need_string(ij, "ring", name));
      auto reg = regular_module(R);
      std::vector<Vec> gens;
      for (const auto& g : need(ij, "generators", name))
        gens.push_back(wsdetail::parse_generator(w, reg, g, name));
      w.ideals.push_back({name, span_submodule(reg, gens)});
    }

  if (doc.contains("operations"))
    for (const auto& oj : doc.at("operations")) {
      check_keys(oj,
                 {"name", "kind", "ring", "ideal", "module", "subset", "selector", "operand",
                  "operands", "rules"},
                 "operation definition");
      std::string name = need_string(oj, "name", "operation definition");
      claim(name, "operations");
      std::string kind = need_string(oj, "kind", name);
      OperationDef def;
      def.name = name;
      def.kind = kind;
      auto ring_of_ideal = [&](const Submodule& J) { return w.ring_name_of(J.parent->ring); };
      if (kind == "bf" || kind == "be") {
        const auto& J = w.ideal(need_string(oj, "ideal", name));
        def.ring_name = ring_of_ideal(J);
        def.op = kind == "bf" ? make_bf(J) : make_be(J);
      } else if (kind == "module_closure" || kind == "trace") {
        const auto& L = w.module(need_string(oj, "module", name));
        std::vector<Vec> S;
        const auto& subset = need(oj, "subset", name);
        if (subset.is_string() && subset.get<std::string>() == "basis") {
          for (int i = 0; i < L->dim; ++i) {
            Vec e(L->dim, Scalar(0));
            e[i] = 1;
            S.push_back(e);
          }
        } else if (subset.is_array()) {
          for (const auto& g : subset) S.push_back(wsdetail::parse_generator(w, L, g, name));
        } else {
          throw Error("E-SCHEMA", "\"subset\" must be \"basis\" or a generator list in " + name);
        }
        def.ring_name = w.ring_name_of(L->ring);
        def.op = kind == "module_closure" ? make_module_closure(S, L, name) : make_trace(S, L, name);
      } else if (kind == "frobenius") {
        const auto& R = w.ring(need_string(oj, "ring", name));
        def.ring_name = need_string(oj, "ring", name);
        def.op = make_frobenius_closure(R);
      } else if (kind == "rho" || kind == "gamma") {
        auto alpha = selector_by_name(need_string(oj, "selector", name));
        def.ring_name = need_string(oj, "ring", name);
        w.ring(def.ring_name);
        def.op = kind == "rho" ? rho(alpha) : gamma(alpha);
      } else if (kind == "meet" || kind == "join") {
        std::vector<PairOperation> ops;
        std::string rn;
        for (const auto& o : need(oj, "operands", name)) {
          const auto& d = w.operation(o.get<std::string>());
          ops.push_back(d.op);
          if (rn.empty()) rn = d.ring_name;
        }
        def.ring_name = rn;
        def.op = kind == "meet" ? meet(ops) : join(ops);
      } else if (kind == "finitistic" || kind == "cohereditary_version" ||
                 kind == "hereditary_version" || kind == "smile_dual") {
        const auto& d = w.operation(need_string(oj, "operand", name));
        def.ring_name = d.ring_name;
        if (kind == "finitistic")
          def.op = finitistic(d.op, w.bounds.max_submodules);
        else if (kind == "cohereditary_version")
          def.op = cohereditary_version(d.op);
        else if (kind == "hereditary_version")
          def.op = hereditary_version(d.op);
        else
          def.op = smile_dual(d.op);
      } else if (kind == "identity" || kind == "zero_interior") {
        if (oj.contains("ring")) {
          def.ring_name = need_string(oj, "ring", name);
          w.ring(def.ring_name);
        }
        def.op = kind == "identity" ? identity_operation() : zero_interior_operation();
      } else if (kind == "custom_table") {
        std::vector<std::pair<Submodule, Submodule>> rules;
        for (const auto& rj : need(oj, "rules", name)) {
          check_keys(rj, {"guard", "value"}, name + " rule");
          rules.push_back({w.ideal(need_string(rj, "guard", name)),
                           w.ideal(need_string(rj, "value", name))});
        }
        if (rules.empty()) throw Error("E-SCHEMA", "custom_table needs at least one rule in " + name);
        def.ring_name = ring_of_ideal(rules.front().first);
        def.op = make_custom_table(rules, name);
      } else {
        throw Error("E-SCHEMA", "unknown operation kind \"" + kind + "\" in \"" + name + "\"");
      }
      def.op.name = name;
      w.operations.push_back(std::move(def));
    }

  w.tasks = doc.contains("tasks") ? doc.at("tasks") : ordered_json::array();
  if (!w.tasks.is_array()) throw Error("E-SCHEMA", "\"tasks\" must be an array");
  static const std::set<std::string> task_kinds = {"eval",       "props", "dual_check",
                                                   "core",       "hull",  "test_ideal",
                                                   "duality_table", "fixtures"};
  for (const auto& t : w.tasks) {
    std::string kind = wsdetail::need_string(t, "task", "task list");
    if (!task_kinds.count(kind)) throw Error("E-SCHEMA", "unknown task \"" + kind + "\"");
    if (t.contains("operation")) w.operation(t.at("operation").get<std::string>());
    if (t.contains("operations"))
      for (const auto& o : t.at("operations")) w.operation(o.get<std::string>());
    if (t.contains("module")) w.module(t.at("module").get<std::string>());
    if (t.contains("ring")) w.ring(t.at("ring").get<std::string>());
    if (t.contains("sub") && t.at("sub").is_string()) {
      std::string s = t.at("sub").get<std::string>();
      if (s != "0" && s != "zero" && s != "full" && s != "socle") w.ideal(s);
    }
    if (t.contains("mode")) {
      std::string m = t.at("mode").get<std::string>();
      if (m != "big" && m != "finitistic" && m != "enumerated")
        throw Error("E-SCHEMA", "unknown test ideal mode \"" + m + "\"");
    }
  }

  w.canonical = doc;
  return w;
}

inline std::string emit_workspace(const Workspace& w) { return w.canonical.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// reports

struct TaskResult {
  int index = 0;
  std::string kind;
  std::string status;  // ok | failed | error
  ordered_json data;
};

struct Report {
  ordered_json meta;
  std::vector<TaskResult> tasks;

  bool all_ok() const {
    for (const auto& t : tasks)
      if (t.status != "ok") return false;
    return true;
  }
  int exit_code() const {
    for (const auto& t : tasks)
      if (t.status == "error") return 1;
    return all_ok() ? 0 : 1;
  }
};

inline ordered_json scalar_json(const Scalar& x) {
  if (x.get_den() == 1 && x.get_num().fits_slong_p())
    return ordered_json(x.get_num().get_si());
  return ordered_json(x.get_str());
}

inline ordered_json submodule_json(const Submodule& s) {
  ordered_json out;
  out["dim"] = s.rank();
  ordered_json gens = ordered_json::array();
  for (int i = 0; i < s.rank(); ++i)
    gens.push_back(module_element_str(*s.parent, s.space.basis().row(i)));
  out["generators"] = gens;
  ordered_json basis = ordered_json::array();
  for (int i = 0; i < s.rank(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < s.parent->dim; ++j) row.push_back(scalar_json(s.space.basis().at(i, j)));
    basis.push_back(row);
  }
  out["basis"] = basis;
  return out;
}

inline ordered_json property_report_json(const PropertyReport& rep) {
  ordered_json out;
  out["operation"] = rep.operation;
  out["ring"] = rep.ring;
  out["scope"] = rep.scope;
  out["randomized"] = rep.randomized;
  ordered_json props = ordered_json::array();
  for (const auto& [id, res] : rep.properties) {
    ordered_json p;
    p["id"] = id;
    for (const auto& [pid, display] : property_names())
      if (pid == id) p["name"] = display;
    if (!p.contains("name")) p["name"] = id;
    p["verdict"] = verdict_str(res.verdict);
    p["cases"] = res.cases;
    if (!res.counterexample.empty()) p["counterexample"] = res.counterexample;
    if (!res.note.empty()) p["note"] = res.note;
    props.push_back(p);
  }
  out["properties"] = props;
  return out;
}

// Table 1 correspondences: property of p paired with the property of its
// smile dual; both directions must certify together.
inline const std::vector<std::pair<std::string, std::string>>& dual_correspondences() {
  static const std::vector<std::pair<std::string, std::string>> rows = {
      {"idempotent", "idempotent"},
      {"extensive", "intensive"},
      {"intensive", "extensive"},
      {"order_preserving_submodules", "order_preserving_submodules"},
      {"surjection_functorial", "restrictable"},
      {"functorial", "cofunctorial"},
      {"surjection_cofunctorial", "order_preserving_ambient"},
      {"hereditary", "cohereditary"},
      {"residual", "absolute"},
      {"nakayama_closure", "nakayama_interior"},
  };
  return rows;
}

struct DualTableRow {
  std::string p_property, dual_property;
  Verdict p_verdict, dual_verdict;
  bool consistent;
};

inline std::vector<DualTableRow> correspondence_rows(const PropertyReport& rep,
                                                     const PropertyReport& drep) {
  std::vector<DualTableRow> rows;
  for (const auto& [pp, dp] : dual_correspondences()) {
    Verdict a = rep.find(pp)->verdict, b = drep.find(dp)->verdict;
    bool consistent = (a == Verdict::Pass) == (b == Verdict::Pass) && a != Verdict::Skipped &&
                      b != Verdict::Skipped;
    rows.push_back({pp, dp, a, b, consistent});
  }
  // closure <-> interior, composed from the table entries
  auto closed = [&](const PropertyReport& r, bool closure_side) {
    return r.passed(closure_side ? "extensive" : "intensive") &&
           r.passed("order_preserving_submodules") && r.passed("idempotent");
  };
  rows.push_back({"closure operation", "interior operation",
                  closed(rep, true) ? Verdict::Pass : Verdict::Fail,
                  closed(drep, false) ? Verdict::Pass : Verdict::Fail,
                  closed(rep, true) == closed(drep, false)});
  return rows;
}

inline Report execute_tasks(const Workspace& w) {
  Report report;
  report.meta["field"] = ordered_json{{"char", (long)w.field.characteristic}};
  report.meta["rings"] = ordered_json::array();
  for (const auto& [n, R] : w.rings) {
    ordered_json rj;
    rj["name"] = n;
    rj["dim"] = R->dim();
    report.meta["rings"].push_back(rj);
  }
  report.meta["bounds"] =
      ordered_json{{"max_dim", w.bounds.max_dim},
                   {"max_submodules", w.bounds.max_submodules},
                   {"max_maps", w.bounds.max_maps}};

  int index = 0;
  for (const auto& t : w.tasks) {
    TaskResult res;
    res.index = index++;
    res.kind = t.at("task").get<std::string>();
    res.status = "ok";
    try {
      if (res.kind == "eval") {
        const auto& def = w.operation(t.at("operation").get<std::string>());
        const auto& M = w.module(t.at("module").get<std::string>());
        Submodule L = wsdetail::resolve_sub(w, t.at("sub"), M, "eval task");
        res.data["operation"] = def.name;
        res.data["module"] = t.at("module");
        res.data["sub"] = submodule_json(L);
        res.data["result"] = submodule_json(def.op(L));
      } else if (res.kind == "props") {
        const auto& def = w.operation(t.at("operation").get<std::string>());
        const auto& R = w.ring(t.at("ring").get<std::string>());
        res.data = property_report_json(check_properties(def.op, R, w.bounds));
      } else if (res.kind == "dual_check") {
        const auto& def = w.operation(t.at("operation").get<std::string>());
        const auto& R = w.ring(t.at("ring").get<std::string>());
        auto& stats = duality_stats();
        unsigned long long ev0 = stats.evaluations.load(), ag0 = stats.agreements.load();
        auto dual = smile_dual(def.op);
        auto dd = smile_dual(dual);
        long pairs = 0, mismatches = 0;
        std::string witness;
        for (const auto& M : standard_module_catalog(R, w.bounds))
          for (const auto& L : enumerate_submodules(M, w.bounds.max_submodules)) {
            ++pairs;
            if (!(dd(L) == def.op(L))) {
              ++mismatches;
              if (witness.empty()) witness = "M = " + M->name + ", L = " + submodule_str(L);
            }
          }
        auto rep = check_properties(def.op, R, w.bounds);
        auto drep = check_properties(dual, R, w.bounds);
        auto rows = correspondence_rows(rep, drep);
        ordered_json corr = ordered_json::array();
        long asymmetries = 0;
        for (const auto& row : rows) {
          ordered_json rj;
          rj["p_property"] = row.p_property;
          rj["dual_property"] = row.dual_property;
          rj["p_verdict"] = verdict_str(row.p_verdict);
          rj["dual_verdict"] = verdict_str(row.dual_verdict);
          rj["consistent"] = row.consistent;
          if (!row.consistent) ++asymmetries;
          corr.push_back(rj);
        }
        res.data["operation"] = def.name;
        res.data["pairs_checked"] = pairs;
        res.data["double_dual_mismatches"] = mismatches;
        if (!witness.empty()) res.data["witness"] = witness;
        res.data["correspondences"] = corr;
        res.data["asymmetries"] = asymmetries;
        res.data["kernel_view"] =
            ordered_json{{"evaluations", (long long)(stats.evaluations.load() - ev0)},
                         {"agreements", (long long)(stats.agreements.load() - ag0)}};
        if (mismatches > 0 || asymmetries > 0) res.status = "failed";
      } else if (res.kind == "core") {
        const auto& def = w.operation(t.at("operation").get<std::string>());
        const auto& M = w.module(t.at("module").get<std::string>());
        Submodule N = wsdetail::resolve_sub(w, t.at("sub"), M, "core task");
        auto set = reductions(def.op, N, w.bounds.max_submodules);
        Submodule core = cl_core(def.op, N, w.bounds.max_submodules);
        res.data["operation"] = def.name;
        res.data["sub"] = submodule_json(N);
        ordered_json rl = ordered_json::array();
        bool contained = true;
        for (const auto& L : set.reductions) {
          rl.push_back(submodule_json(L));
          contained &= L.space.contains(core.space);
        }
        res.data["reductions"] = rl;
        res.data["core"] = submodule_json(core);
        res.data["core_contained_in_all_reductions"] = contained;
        if (!contained) res.status = "failed";
      } else if (res.kind == "hull") {
        const auto& def = w.operation(t.at("operation").get<std::string>());
        const auto& M = w.module(t.at("module").get<std::string>());
        Submodule A = wsdetail::resolve_sub(w, t.at("sub"), M, "hull task");
        auto set = expansions(def.op, A, w.bounds.max_submodules);
        auto hull = int_hull(def.op, A, w.bounds.max_submodules);
        res.data["operation"] = def.name;
        res.data["sub"] = submodule_json(A);
        ordered_json ej = ordered_json::array();
        bool contains_all = true;
        for (const auto& C : set.expansions) {
          ej.push_back(submodule_json(C));
          contains_all &= hull.hull.space.contains(C.space);
        }
        ordered_json fj = ordered_json::array();
        for (const auto& C : set.formula_candidates) fj.push_back(submodule_json(C));
        res.data["expansions"] = ej;
        res.data["formula_candidates"] = fj;
        res.data["expansion_and_formula_sets_agree"] = set.sets_agree;
        res.data["hull"] = submodule_json(hull.hull);
        res.data["hull_contains_all_expansions"] = contains_all;
        if (!contains_all) res.status = "failed";
      } else if (res.kind == "test_ideal") {
        const auto& def = w.operation(t.at("operation").get<std::string>());
        const auto& R = w.ring(t.at("ring").get<std::string>());
        std::string mode = t.at("mode").get<std::string>();
        auto run_mode = [&](TestIdealMode m) { return test_ideal(def.op, R, m, w.bounds); };
        Submodule big = run_mode(TestIdealMode::Big);
        Submodule fin = run_mode(TestIdealMode::Finitistic);
        Submodule enu = run_mode(TestIdealMode::Enumerated);
        res.data["operation"] = def.name;
        res.data["mode"] = mode;
        res.data["value"] = submodule_json(mode == "big"          ? big
                                           : mode == "finitistic" ? fin
                                                                  : enu);
        res.data["all_modes"] = ordered_json{{"big", submodule_json(big)},
                                             {"finitistic", submodule_json(fin)},
                                             {"enumerated", submodule_json(enu)}};
      } else if (res.kind == "duality_table") {
        const auto& R = w.ring(t.at("ring").get<std::string>());
        std::vector<const OperationDef*> defs;
        if (t.contains("operations"))
          for (const auto& o : t.at("operations")) defs.push_back(&w.operation(o.get<std::string>()));
        else
          for (const auto& d : w.operations)
            if (d.ring_name == t.at("ring").get<std::string>()) defs.push_back(&d);
        ordered_json table = ordered_json::array();
        long asymmetries = 0;
        for (const auto* d : defs) {
          auto rep = check_properties(d->op, R, w.bounds);
          auto drep = check_properties(smile_dual(d->op), R, w.bounds);
          ordered_json oj;
          oj["operation"] = d->name;
          oj["properties"] = property_report_json(rep)["properties"];
          oj["dual_properties"] = property_report_json(drep)["properties"];
          ordered_json corr = ordered_json::array();
          for (const auto& row : correspondence_rows(rep, drep)) {
            ordered_json rj;
            rj["p_property"] = row.p_property;
            rj["dual_property"] = row.dual_property;
            rj["p_verdict"] = verdict_str(row.p_verdict);
            rj["dual_verdict"] = verdict_str(row.dual_verdict);
            rj["consistent"] = row.consistent;
            if (!row.consistent) ++asymmetries;
            corr.push_back(rj);
          }
          oj["correspondences"] = corr;
          table.push_back(oj);
        }
        res.data["ring"] = t.at("ring");
        res.data["table"] = table;
        res.data["asymmetries"] = asymmetries;
        if (asymmetries > 0) res.status = "failed";
      } else if (res.kind == "fixtures") {
        ordered_json fx = ordered_json::array();
        struct Fx {
          const char* name;
          RingPtr R;
        } all[] = {{"R1", fixture_R1()}, {"R2", fixture_R2()}, {"R3", fixture_R3()},
                   {"R4", fixture_R4()}};
        bool ok = true;
        for (const auto& f : all) {
          ordered_json fj;
          fj["name"] = f.name;
          fj["dim"] = f.R->dim();
          fj["basis"] = f.R->basis_labels;
          bool valid = validate_local_algebra(*f.R).ok();
          fj["valid"] = valid;
          ok &= valid;
          fx.push_back(fj);
        }
        res.data["fixtures"] = fx;
        if (!ok) res.status = "failed";
      }
    } catch (const Error& e) {
      res.status = "error";
      res.data["error"] = e.what();
      res.data["code"] = e.code();
    } catch (const std::exception& e) {
      res.status = "error";
      res.data["error"] = e.what();
      res.data["code"] = "E-INTERNAL";
    }
    report.tasks.push_back(std::move(res));
  }
  return report;
}

inline ordered_json report_json(const Report& r) {
  ordered_json out;
  out["meta"] = r.meta;
  ordered_json tasks = ordered_json::array();
  for (const auto& t : r.tasks) {
    ordered_json tj;
    tj["index"] = t.index;
    tj["task"] = t.kind;
    tj["status"] = t.status;
    tj["data"] = t.data;
    tasks.push_back(tj);
  }
  out["tasks"] = tasks;
  out["summary"] = ordered_json{{"tasks", (long)r.tasks.size()},
                                {"ok", r.all_ok()},
                                {"exit_code", r.exit_code()}};
  return out;
}

namespace wsdetail {

inline void render_property_table(std::ostringstream& os, const ordered_json& props,
                                  const std::string& heading) {
  os << heading << "\n";
  size_t width = 0;
  for (const auto& p : props) width = std::max(width, p.at("name").get<std::string>().size());
  for (const auto& p : props) {
    std::string name = p.at("name").get<std::string>();
    os << "  " << name << std::string(width - name.size() + 2, ' ')
       << p.at("verdict").get<std::string>();
    if (p.contains("counterexample"))
      os << "   [" << p.at("counterexample").get<std::string>() << "]";
    if (p.contains("note")) os << "   (" << p.at("note").get<std::string>() << ")";
    os << "\n";
  }
}

inline std::string sub_brief(const ordered_json& sj) {
  std::string s;
  for (const auto& g : sj.at("generators")) s += (s.empty() ? "" : ", ") + g.get<std::string>();
  return s.empty() ? "0" : s;
}

}  // namespace wsdetail

inline std::string emit_report(const Report& r, const std::string& format) {
  if (format == "json") return report_json(r).dump(2) + "\n";
  if (format != "text") throw Error("E-SCHEMA", "unknown report format \"" + format + "\"");
  std::ostringstream os;
  for (const auto& t : r.tasks) {
    os << "== task " << t.index << ": " << t.kind << " -> " << t.status << "\n";
    if (t.status == "error") {
      os << "  " << t.data.at("error").get<std::string>() << "\n";
      continue;
    }
    if (t.kind == "eval") {
      os << "  " << t.data.at("operation").get<std::string>() << " on ("
         << wsdetail::sub_brief(t.data.at("sub")) << ") in "
         << t.data.at("module").get<std::string>() << "\n";
      os << "  result: " << wsdetail::sub_brief(t.data.at("result"))
         << "   dim " << t.data.at("result").at("dim").get<int>() << "\n";
      os << "  coordinates: " << t.data.at("result").at("basis").dump() << "\n";
    } else if (t.kind == "props") {
      wsdetail::render_property_table(os, t.data.at("properties"),
                                      "  properties of " + t.data.at("operation").get<std::string>());
    } else if (t.kind == "dual_check") {
      os << "  pairs checked: " << t.data.at("pairs_checked").get<long>()
         << ", double dual mismatches: " << t.data.at("double_dual_mismatches").get<long>()
         << ", asymmetries: " << t.data.at("asymmetries").get<long>() << "\n";
    } else if (t.kind == "core") {
      os << "  reductions: " << t.data.at("reductions").size() << "\n";
      os << "  core: " << wsdetail::sub_brief(t.data.at("core")) << "\n";
    } else if (t.kind == "hull") {
      os << "  expansions: " << t.data.at("expansions").size() << "\n";
      os << "  hull: " << wsdetail::sub_brief(t.data.at("hull")) << "\n";
    } else if (t.kind == "test_ideal") {
      os << "  mode " << t.data.at("mode").get<std::string>() << ": "
         << wsdetail::sub_brief(t.data.at("value")) << "\n";
      os << "  big: " << wsdetail::sub_brief(t.data.at("all_modes").at("big")) << "; finitistic: "
         << wsdetail::sub_brief(t.data.at("all_modes").at("finitistic")) << "; enumerated: "
         << wsdetail::sub_brief(t.data.at("all_modes").at("enumerated")) << "\n";
    } else if (t.kind == "duality_table") {
      for (const auto& oj : t.data.at("table")) {
        wsdetail::render_property_table(os, oj.at("properties"),
                                        "  " + oj.at("operation").get<std::string>());
        wsdetail::render_property_table(os, oj.at("dual_properties"),
                                        "  smile(" + oj.at("operation").get<std::string>() + ")");
      }
      os << "  asymmetries: " << t.data.at("asymmetries").get<long>() << "\n";
    } else if (t.kind == "fixtures") {
      for (const auto& fj : t.data.at("fixtures")) {
        os << "  " << fj.at("name").get<std::string>() << ": dim " << fj.at("dim").get<int>()
           << ", basis";
        for (const auto& b : fj.at("basis")) os << " " << b.get<std::string>();
        os << (fj.at("valid").get<bool>() ? "  (valid)" : "  (INVALID)") << "\n";
      }
    }
  }
  os << "summary: " << r.tasks.size() << " task(s), " << (r.all_ok() ? "all ok" : "FAILURES")
     << "\n";
  return os.str();
}

}  // namespace pairops
