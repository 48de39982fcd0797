#pragma once

#include <map>
#include <memory>
#include <set>

#include "pairops/algebra.hpp"

namespace pairops {

// Finite-length R-module: a coordinate space with one commuting nilpotent
// action matrix per ring variable, consistent with the ring's multiplication
// table. Immutable; share via ModulePtr.
struct FLModule {
  RingPtr ring;
  int dim = 0;
  std::vector<Matrix> actions;
  std::vector<std::string> labels;
  std::string name;
  std::string skey;
};

using ModulePtr = std::shared_ptr<const FLModule>;

inline bool same_module(const ModulePtr& a, const ModulePtr& b) { return a->skey == b->skey; }

inline Matrix module_monomial_action(const FLModule& M, const Exponents& e) {
  Matrix m = Matrix::identity(M.ring->field, M.dim);
  for (size_t v = 0; v < e.size(); ++v)
    for (unsigned k = 0; k < e[v]; ++k) m = M.actions[v] * m;
  return m;
}

// Action of the ring element with the given coordinates.
inline Matrix module_element_action(const FLModule& M, const Vec& r) {
  if (int(r.size()) != M.ring->dim()) throw Error("E-DIM", "ring element length mismatch");
  Matrix out(M.ring->field, M.dim, M.dim);
  for (int i = 0; i < M.ring->dim(); ++i) {
    if (r[i] == 0) continue;
    out = out + module_monomial_action(M, M.ring->basis[i]).scaled(r[i]);
  }
  return out;
}

inline std::string module_element_str(const FLModule& M, const Vec& v) {
  std::string s;
  for (int i = 0; i < M.dim; ++i) {
    if (v[i] == 0) continue;
    if (!s.empty()) s += " + ";
    if (v[i] != 1) s += v[i].get_str() + "*";
    s += M.labels[i];
  }
  return s.empty() ? "0" : s;
}

inline ValidationReport validate_module(const FLModule& M) {
  ValidationReport rep;
  const auto& R = *M.ring;
  if (int(M.actions.size()) != int(R.variables.size())) {
    rep.issues.push_back({"actions", "one action matrix required per ring variable"});
    return rep;
  }
  for (const auto& a : M.actions)
    if (a.rows != M.dim || a.cols != M.dim || !(a.field == R.field)) {
      rep.issues.push_back({"actions", "action matrix has wrong shape or field"});
      return rep;
    }
  for (size_t v = 0; v < M.actions.size(); ++v) {
    for (size_t w = v + 1; w < M.actions.size(); ++w)
      if (!(M.actions[v] * M.actions[w] == M.actions[w] * M.actions[v]))
        rep.issues.push_back({"commute", R.variables[v] + "," + R.variables[w]});
    if (!M.actions[v].pow(unsigned(M.dim)).is_zero())
      rep.issues.push_back({"nilpotent", R.variables[v]});
  }
  // the variable actions must satisfy the ring's multiplication table
  std::vector<Matrix> mon;
  for (int b = 0; b < R.dim(); ++b) mon.push_back(module_monomial_action(M, R.basis[b]));
  for (size_t v = 0; v < M.actions.size() && rep.ok(); ++v)
    for (int b = 0; b < R.dim(); ++b) {
      Matrix lhs = M.actions[v] * mon[b];
      Matrix rhs(R.field, M.dim, M.dim);
      for (int j = 0; j < R.dim(); ++j) {
        const Scalar& c = R.variable_actions[v].at(j, b);
        if (c != 0) rhs = rhs + mon[j].scaled(c);
      }
      if (!(lhs == rhs)) {
        rep.issues.push_back({"table", R.variables[v] + "*" + R.basis_labels[b]});
        break;
      }
    }
  return rep;
}

inline ModulePtr make_module(RingPtr ring, std::vector<Matrix> actions,
                             std::vector<std::string> labels, std::string name,
                             bool check = true) {
  auto M = std::make_shared<FLModule>();
  M->ring = std::move(ring);
  M->dim = actions.empty() ? int(labels.size()) : actions.front().rows;
  M->actions = std::move(actions);
  if (M->actions.empty() && !M->ring->variables.empty()) {
    for (size_t v = 0; v < M->ring->variables.size(); ++v)
      M->actions.push_back(Matrix(M->ring->field, M->dim, M->dim));
  }
  M->labels = std::move(labels);
  M->name = std::move(name);
  if (int(M->labels.size()) != M->dim) throw Error("E-DIM", "label count mismatch");
  std::ostringstream os;
  os << M->ring->skey << '|' << M->dim;
  for (const auto& a : M->actions)
    for (const auto& x : a.a) os << ',' << x.get_str();
  M->skey = os.str();
  if (check) {
    auto rep = validate_module(*M);
    if (!rep.ok())
      throw Error("E-INVARIANT", "module \"" + M->name + "\" invalid: " + rep.issues.front().check +
                                     " (" + rep.issues.front().witness + ")");
  }
  return M;
}

inline ModulePtr regular_module(const RingPtr& R) {
  return make_module(R, R->variable_actions, R->basis_labels, "R");
}

inline ModulePtr free_module(const RingPtr& R, int n) {
  if (n < 0) throw Error("E-DIM", "negative free rank");
  const int d = R->dim();
  std::vector<Matrix> actions;
  for (const auto& av : R->variable_actions) {
    Matrix big(R->field, n * d, n * d);
    for (int blk = 0; blk < n; ++blk)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) big.at(blk * d + i, blk * d + j) = av.at(i, j);
    actions.push_back(big);
  }
  std::vector<std::string> labels;
  for (int blk = 0; blk < n; ++blk)
    for (int i = 0; i < d; ++i)
      labels.push_back(n == 1 ? R->basis_labels[i]
                              : "g" + std::to_string(blk + 1) +
                                    (R->basis[i] == Exponents(R->variables.size(), 0)
                                         ? ""
                                         : "*" + R->basis_labels[i]));
  return make_module(R, std::move(actions), std::move(labels),
                     n == 1 ? "R" : "R^" + std::to_string(n));
}

// Submodule: an action-invariant subspace of its parent's coordinate space,
// held in canonical form.
struct Submodule {
  ModulePtr parent;
  Subspace space;

  int rank() const { return space.rank(); }
  bool operator==(const Submodule& o) const {
    return same_module(parent, o.parent) && space == o.space;
  }
};

inline bool action_invariant(const FLModule& M, const Subspace& s) {
  for (const auto& a : M.actions)
    for (int i = 0; i < s.rank(); ++i)
      if (!s.contains(a.apply(s.basis().row(i)))) return false;
  return true;
}

inline Submodule make_submodule(ModulePtr parent, Subspace space, bool check = true) {
  if (space.ambient_dim() != parent->dim || !(space.field() == parent->ring->field))
    throw Error("E-DIM", "subspace does not live in the module's coordinate space");
  if (check && !action_invariant(*parent, space))
    throw Error("E-INVARIANT", "subspace of \"" + parent->name + "\" is not action-invariant");
  return Submodule{std::move(parent), std::move(space)};
}

inline Submodule zero_submodule(const ModulePtr& M) {
  return Submodule{M, Subspace::zero(M->ring->field, M->dim)};
}

inline Submodule full_submodule(const ModulePtr& M) {
  return Submodule{M, Subspace::full(M->ring->field, M->dim)};
}

inline std::string submodule_str(const Submodule& s) {
  if (s.rank() == 0) return "0";
  if (s.rank() == s.parent->dim) return "full";
  std::string out;
  for (int i = 0; i < s.rank(); ++i) {
    if (i) out += ", ";
    out += module_element_str(*s.parent, s.space.basis().row(i));
  }
  return "(" + out + ")";
}

inline void require_same_parent(const Submodule& a, const Submodule& b, const char* what) {
  if (!same_module(a.parent, b.parent)) throw Error("E-MODULE-MISMATCH", what);
}

inline Submodule sub_sum(const Submodule& a, const Submodule& b) {
  require_same_parent(a, b, "sum of submodules of different modules");
  return Submodule{a.parent, subspace_sum(a.space, b.space)};
}

inline Submodule sub_intersect(const Submodule& a, const Submodule& b) {
  require_same_parent(a, b, "intersection of submodules of different modules");
  return Submodule{a.parent, subspace_intersect(a.space, b.space)};
}

// Smallest action-invariant subspace containing the generators.
inline Submodule span_submodule(const ModulePtr& M, const std::vector<Vec>& gens) {
  Subspace s = Subspace::from_vectors(M->ring->field, M->dim, gens);
  while (true) {
    std::vector<Vec> next;
    for (const auto& a : M->actions)
      for (int i = 0; i < s.rank(); ++i) {
        Vec w = a.apply(s.basis().row(i));
        if (!s.contains(w)) next.push_back(w);
      }
    if (next.empty()) break;
    s = subspace_sum(s, Subspace::from_vectors(M->ring->field, M->dim, next));
  }
  return Submodule{M, s};
}

// R-linear map between modules over the same ring; the matrix intertwines
// every variable action.
struct ModuleMap {
  ModulePtr source, target;
  Matrix mat;
};

inline ModuleMap make_module_map(ModulePtr source, ModulePtr target, Matrix mat,
                                 bool check = true) {
  if (!(source->ring->skey == target->ring->skey))
    throw Error("E-RING-MISMATCH", "module map between different rings");
  if (mat.rows != target->dim || mat.cols != source->dim)
    throw Error("E-DIM", "module map shape mismatch");
  if (check)
    for (size_t v = 0; v < source->actions.size(); ++v)
      if (!(target->actions[v] * mat == mat * source->actions[v]))
        throw Error("E-INVARIANT", "matrix does not intertwine the actions (variable " +
                                       source->ring->variables[v] + ")");
  return ModuleMap{std::move(source), std::move(target), std::move(mat)};
}

inline ModuleMap identity_map(const ModulePtr& M) {
  return ModuleMap{M, M, Matrix::identity(M->ring->field, M->dim)};
}

inline Submodule map_image(const ModuleMap& g, const Submodule& s) {
  if (!same_module(g.source, s.parent)) throw Error("E-MODULE-MISMATCH", "image of foreign submodule");
  return make_submodule(g.target, image_subspace(g.mat, s.space));
}

inline Submodule map_preimage(const ModuleMap& g, const Submodule& s) {
  if (!same_module(g.target, s.parent))
    throw Error("E-MODULE-MISMATCH", "preimage of foreign submodule");
  return make_submodule(g.source, preimage_subspace(g.mat, s.space));
}

enum class MapDirection { Forward, Backward };

inline Submodule map_image_preimage(const ModuleMap& g, const Submodule& s, MapDirection dir) {
  return dir == MapDirection::Forward ? map_image(g, s) : map_preimage(g, s);
}

struct QuotientData {
  ModulePtr module;
  ModuleMap projection;
  Matrix section;  // fixed coset-representative section, dim(M) x dim(Q)
  Submodule kernel;
};

// M/N with induced actions on the complement coordinates of N's canonical
// basis; the projection kills exactly N.
inline QuotientData quotient_module(const ModulePtr& M, const Submodule& N) {
  if (!same_module(M, N.parent)) throw Error("E-MODULE-MISMATCH", "quotient by foreign submodule");
  const auto f = M->ring->field;
  std::vector<bool> is_pivot(M->dim, false);
  for (int c : N.space.pivots()) is_pivot[c] = true;
  std::vector<int> comp;
  for (int j = 0; j < M->dim; ++j)
    if (!is_pivot[j]) comp.push_back(j);
  const int q = int(comp.size());

  Matrix proj(f, q, M->dim);
  for (int j = 0; j < M->dim; ++j) {
    Vec e(M->dim, Scalar(0));
    e[j] = 1;
    Vec red = N.space.reduce(e);
    for (int i = 0; i < q; ++i) proj.at(i, j) = red[comp[i]];
  }
  Matrix section(f, M->dim, q);
  for (int i = 0; i < q; ++i) section.at(comp[i], i) = 1;

  std::vector<Matrix> actions;
  for (const auto& a : M->actions) actions.push_back(proj * a * section);
  std::vector<std::string> labels;
  for (int i = 0; i < q; ++i) labels.push_back("[" + M->labels[comp[i]] + "]");
  auto Q = make_module(M->ring, std::move(actions), std::move(labels),
                       M->name + "/" + submodule_str(N));
  return QuotientData{Q, make_module_map(M, Q, proj), section, N};
}

// (L :_M J) = {u in M : j u in L for all j in J}.
inline Submodule colon(const Submodule& L, const Submodule& J) {
  const auto& M = L.parent;
  if (!(J.parent->ring->skey == M->ring->skey) || J.parent->dim != M->ring->dim())
    throw Error("E-RING-MISMATCH", "colon by a non-ideal");
  Subspace result = Subspace::full(M->ring->field, M->dim);
  for (int i = 0; i < J.rank(); ++i) {
    Matrix act = module_element_action(*M, J.space.basis().row(i));
    result = subspace_intersect(result, preimage_subspace(act, L.space));
  }
  return make_submodule(M, result);
}

// J L, closed under the action.
inline Submodule scale(const Submodule& J, const Submodule& L) {
  const auto& M = L.parent;
  if (!(J.parent->ring->skey == M->ring->skey) || J.parent->dim != M->ring->dim())
    throw Error("E-RING-MISMATCH", "scale by a non-ideal");
  std::vector<Vec> gens;
  for (int i = 0; i < J.rank(); ++i) {
    Matrix act = module_element_action(*M, J.space.basis().row(i));
    for (int j = 0; j < L.rank(); ++j) gens.push_back(act.apply(L.space.basis().row(j)));
  }
  return span_submodule(M, gens);
}

inline Submodule maximal_ideal_sub(const ModulePtr& regular) {
  return make_submodule(regular, regular->ring->maximal_ideal_space);
}

inline Submodule ideal_from_elements(const ModulePtr& regular, const std::vector<Vec>& gens) {
  return span_submodule(regular, gens);
}

// ann_R(N) as an ideal (submodule of the regular module).
inline Submodule annihilator(const ModulePtr& regular, const Submodule& N) {
  const auto& M = N.parent;
  const auto& R = *M->ring;
  if (!(regular->ring->skey == R.skey)) throw Error("E-RING-MISMATCH", "annihilator ring mismatch");
  Matrix T(R.field, M->dim * std::max(N.rank(), 1), R.dim());
  if (N.rank() == 0) return full_submodule(regular);
  for (int i = 0; i < R.dim(); ++i) {
    Matrix act = module_monomial_action(*M, R.basis[i]);
    for (int g = 0; g < N.rank(); ++g) {
      Vec w = act.apply(N.space.basis().row(g));
      for (int r = 0; r < M->dim; ++r) T.at(g * M->dim + r, i) = w[r];
    }
  }
  return make_submodule(regular, kernel(T));
}

// (L :_R K) for submodules L, K of the same module.
inline Submodule colon_into_ring(const ModulePtr& regular, const Submodule& L,
                                 const Submodule& K) {
  require_same_parent(L, K, "ring colon of submodules of different modules");
  const auto& M = L.parent;
  const auto& R = *M->ring;
  Subspace result = Subspace::full(R.field, R.dim());
  for (int g = 0; g < K.rank(); ++g) {
    Matrix phi(R.field, M->dim, R.dim());
    for (int i = 0; i < R.dim(); ++i) {
      Vec w = module_monomial_action(*M, R.basis[i]).apply(K.space.basis().row(g));
      for (int r = 0; r < M->dim; ++r) phi.at(r, i) = w[r];
    }
    result = subspace_intersect(result, preimage_subspace(phi, L.space));
  }
  return make_submodule(regular, result);
}

inline Submodule socle(const ModulePtr& M) {
  auto reg = regular_module(M->ring);
  return colon(zero_submodule(M), maximal_ideal_sub(reg));
}

inline Subspace m_times_subspace(const FLModule& M) {
  Subspace s = Subspace::zero(M.ring->field, M.dim);
  for (const auto& a : M.actions) s = subspace_sum(s, image(a));
  return s;
}

// Basis of Hom_R(M, N) via the intertwining system.
inline std::vector<ModuleMap> hom_R(const ModulePtr& M, const ModulePtr& N) {
  if (!(M->ring->skey == N->ring->skey)) throw Error("E-RING-MISMATCH", "Hom over different rings");
  const auto f = M->ring->field;
  const int m = M->dim, n = N->dim;
  if (m == 0 || n == 0) return {};
  Matrix sys(f, 0, n * m);
  for (size_t v = 0; v < M->actions.size(); ++v) {
    Matrix k = kron(N->actions[v], Matrix::identity(f, m)) -
               kron(Matrix::identity(f, n), M->actions[v].transpose());
    sys = vstack(sys, k);
  }
  Subspace sol = M->actions.empty() ? Subspace::full(f, n * m) : kernel(sys);
  std::vector<ModuleMap> out;
  for (int i = 0; i < sol.rank(); ++i) {
    Matrix X(f, n, m);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < m; ++c) X.at(r, c) = sol.basis().at(i, r * m + c);
    out.push_back(make_module_map(M, N, X));
  }
  return out;
}

// M (x)_R N presented as the quotient of M (x)_k N by the usual balancing
// relations, with the simple-tensor map as the only sanctioned entry point.
struct TensorProduct {
  ModulePtr module;
  ModulePtr left, right;
  Matrix projection;  // dim(module) x (dim(left)*dim(right)), row-major pairs

  Vec simple(const Vec& u, const Vec& v) const {
    const auto f = module->ring->field;
    Vec w(size_t(left->dim) * size_t(right->dim), Scalar(0));
    for (int i = 0; i < left->dim; ++i) {
      if (u[i] == 0) continue;
      for (int j = 0; j < right->dim; ++j)
        if (v[j] != 0) w[size_t(i) * right->dim + j] = f.mul(u[i], v[j]);
    }
    return projection.apply(w);
  }
};

inline TensorProduct tensor_R(const ModulePtr& M, const ModulePtr& N) {
  if (!(M->ring->skey == N->ring->skey))
    throw Error("E-RING-MISMATCH", "tensor over different rings");
  const auto f = M->ring->field;
  const int m = M->dim, n = N->dim, mn = m * n;
  std::vector<Vec> rels;
  for (size_t v = 0; v < M->actions.size(); ++v)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        Vec r(mn, Scalar(0));
        for (int k = 0; k < m; ++k)
          if (M->actions[v].at(k, i) != 0)
            r[size_t(k) * n + j] = f.add(r[size_t(k) * n + j], M->actions[v].at(k, i));
        for (int l = 0; l < n; ++l)
          if (N->actions[v].at(l, j) != 0)
            r[size_t(i) * n + l] = f.sub(r[size_t(i) * n + l], N->actions[v].at(l, j));
        rels.push_back(r);
      }
  Subspace W = Subspace::from_vectors(f, mn, rels);

  std::vector<bool> is_pivot(mn, false);
  for (int c : W.pivots()) is_pivot[c] = true;
  std::vector<int> comp;
  for (int j = 0; j < mn; ++j)
    if (!is_pivot[j]) comp.push_back(j);
  const int t = int(comp.size());

  Matrix proj(f, t, mn);
  for (int j = 0; j < mn; ++j) {
    Vec e(mn, Scalar(0));
    e[j] = 1;
    Vec red = W.reduce(e);
    for (int i = 0; i < t; ++i) proj.at(i, j) = red[comp[i]];
  }
  Matrix section(f, mn, t);
  for (int i = 0; i < t; ++i) section.at(comp[i], i) = 1;

  std::vector<Matrix> actions;
  for (size_t v = 0; v < M->actions.size(); ++v) {
    Matrix left = proj * kron(M->actions[v], Matrix::identity(f, n)) * section;
    Matrix right = proj * kron(Matrix::identity(f, m), N->actions[v]) * section;
    if (!(left == right))
      throw Error("E-INVARIANT", "tensor action is not balanced");  // cannot happen
    actions.push_back(left);
  }
  std::vector<std::string> labels;
  for (int i = 0; i < t; ++i)
    labels.push_back("[" + M->labels[comp[i] / n] + "(x)" + N->labels[comp[i] % n] + "]");
  auto T = make_module(M->ring, std::move(actions), std::move(labels),
                       "(" + M->name + "(x)" + N->name + ")");
  return TensorProduct{T, M, N, proj};
}

// Image of L (x) N -> L (x) M for N a submodule of the right factor.
inline Submodule tensor_image_of_right_submodule(const TensorProduct& T, const Submodule& N) {
  if (!same_module(T.right, N.parent))
    throw Error("E-MODULE-MISMATCH", "submodule is not in the right tensor factor");
  std::vector<Vec> gens;
  for (int i = 0; i < T.left->dim; ++i) {
    Vec e(T.left->dim, Scalar(0));
    e[i] = 1;
    for (int j = 0; j < N.rank(); ++j) gens.push_back(T.simple(e, N.space.basis().row(j)));
  }
  return make_submodule(T.module, Subspace::from_vectors(T.module->ring->field, T.module->dim, gens));
}

class EnumerationLimit : public Error {
 public:
  EnumerationLimit(long partial, long limit)
      : Error("E-LIMIT", "submodule enumeration exceeded limit " + std::to_string(limit) +
                             " (partial count " + std::to_string(partial) + ")"),
        partial_count(partial) {}
  long partial_count;
};

// All action-invariant subspaces, ordered by dimension then lexicographic
// canonical basis. Exhaustive; finite fields only.
inline std::vector<Submodule> enumerate_submodules(const ModulePtr& M, long limit = 20000) {
  if (!M->ring->field.finite())
    throw Error("E-FIELD", "submodule enumeration requires a finite field");
  auto vectors = all_vectors(M->ring->field, M->dim);
  std::map<std::string, Subspace> seen;
  std::vector<Subspace> queue;
  Subspace z = Subspace::zero(M->ring->field, M->dim);
  seen[z.key()] = z;
  queue.push_back(z);
  while (!queue.empty()) {
    Subspace cur = queue.back();
    queue.pop_back();
    for (const auto& v : vectors) {
      if (cur.contains(v)) continue;
      std::vector<Vec> gens{v};
      for (int i = 0; i < cur.rank(); ++i) gens.push_back(cur.basis().row(i));
      Subspace grown = span_submodule(M, gens).space;
      if (seen.emplace(grown.key(), grown).second) {
        if (long(seen.size()) > limit) throw EnumerationLimit(long(seen.size()), limit);
        queue.push_back(grown);
      }
    }
  }
  std::vector<Subspace> spaces;
  for (auto& [k, s] : seen) spaces.push_back(s);
  std::sort(spaces.begin(), spaces.end(), [](const Subspace& a, const Subspace& b) {
    if (a.rank() != b.rank()) return a.rank() < b.rank();
    const auto &xa = a.basis().a, &xb = b.basis().a;
    for (size_t i = 0; i < xa.size(); ++i)
      if (xa[i] != xb[i]) return xa[i] < xb[i];
    return false;
  });
  std::vector<Submodule> out;
  for (auto& s : spaces) out.push_back(Submodule{M, s});
  return out;
}

struct FreeCover {
  ModulePtr free;
  ModuleMap projection;
  std::vector<Vec> generators;  // chosen minimal generators of M
};

// Minimal free cover: F = R^n with n = dim(M/mM); generators are the
// lexicographically first coordinate vectors completing a basis of M/mM.
inline FreeCover free_cover(const ModulePtr& M) {
  const auto f = M->ring->field;
  Subspace mM = m_times_subspace(*M);
  const int n = M->dim - mM.rank();
  std::vector<Vec> gens;
  Subspace U = mM;
  if (n > 0) {
    if (f.finite()) {
      for (const auto& v : all_vectors(f, M->dim)) {
        if (U.contains(v)) continue;
        gens.push_back(v);
        U = subspace_sum(U, Subspace::from_vectors(f, M->dim, {v}));
        if (int(gens.size()) == n) break;
      }
    } else {
      for (int j = 0; j < M->dim && int(gens.size()) < n; ++j) {
        Vec e(M->dim, Scalar(0));
        e[j] = 1;
        if (U.contains(e)) continue;
        gens.push_back(e);
        U = subspace_sum(U, Subspace::from_vectors(f, M->dim, {e}));
      }
    }
  }
  auto F = free_module(M->ring, n);
  const int d = M->ring->dim();
  Matrix proj(f, M->dim, n * d);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < d; ++i) {
      Vec w = module_monomial_action(*M, M->ring->basis[i]).apply(gens[j]);
      for (int r = 0; r < M->dim; ++r) proj.at(r, j * d + i) = w[r];
    }
  auto pi = make_module_map(F, M, proj);
  if (image(proj).rank() != M->dim) throw Error("E-INVARIANT", "free cover is not surjective");
  return FreeCover{F, pi, gens};
}

struct SubmoduleModule {
  ModulePtr module;
  ModuleMap inclusion;
};

// Realize a submodule as a module in its own right, with the inclusion map.
inline SubmoduleModule submodule_as_module(const Submodule& L) {
  const auto& M = *L.parent;
  const auto f = M.ring->field;
  const int r = L.rank();
  std::vector<Matrix> actions;
  for (const auto& a : M.actions) {
    Matrix small(f, r, r);
    for (int i = 0; i < r; ++i) {
      Vec w = a.apply(L.space.basis().row(i));
      Vec c = L.space.coordinates_of(w);
      for (int k = 0; k < r; ++k) small.at(k, i) = c[k];
    }
    actions.push_back(small);
  }
  std::vector<std::string> labels;
  for (int i = 0; i < r; ++i) labels.push_back(module_element_str(M, L.space.basis().row(i)));
  auto S = make_module(M.ring, std::move(actions), std::move(labels),
                       submodule_str(L) + "<=" + M.name);
  return SubmoduleModule{S, make_module_map(S, L.parent, L.space.basis().transpose())};
}

// Transport a submodule S of M into N-coordinates along an inclusion of N in
// M (S must lie inside the image of the inclusion).
inline Submodule restrict_to(const SubmoduleModule& N, const Submodule& S) {
  return map_preimage(N.inclusion, S);
}

}  // namespace pairops
