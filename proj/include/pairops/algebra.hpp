#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "pairops/exactlin.hpp"

namespace pairops {

using Exponents = std::vector<unsigned>;

inline unsigned total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

// Graded order, earlier variables dominating: 1 < x < y < x^2 < x*y < y^2.
inline bool monomial_less(const Exponents& a, const Exponents& b) {
  unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a > b;  // within a degree, larger power on an earlier variable comes first
}

inline std::string monomial_str(const Exponents& e, const std::vector<std::string>& vars) {
  std::string s;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

struct PolyTerm {
  Scalar coeff;
  Exponents exponents;
};

// Polynomial in canonical form: no repeated exponent vectors, no zero terms.
struct PolyExpr {
  std::vector<std::string> variables;
  std::vector<PolyTerm> terms;
  std::string source;
};

// Concrete grammar:
//   poly = term (("+" | "-") term)*
//   term = integer | [integer "*"] var ("^" integer)? ("*" var ("^" integer)?)*
// Integers are decimal (optionally signed) and are interpreted in the field;
// whitespace is ignored.
inline PolyExpr parse_poly(const std::string& text, const std::vector<std::string>& variables,
                           FieldSpec field) {
  size_t pos = 0;
  auto fail = [&](const std::string& msg) -> Error {
    return Error("E-SYNTAX", msg + " at column " + std::to_string(pos + 1) + " in \"" + text + "\"");
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto peek = [&]() -> int {
    skip_ws();
    return pos < text.size() ? text[pos] : -1;
  };
  auto read_int = [&]() -> long {
    skip_ws();
    size_t start = pos;
    if (pos < text.size() && text[pos] == '-') ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (text[start] == '-' && pos == start + 1)) throw fail("expected integer");
    return std::stol(text.substr(start, pos - start));
  };
  auto read_var = [&]() -> size_t {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
      if (pos == start && std::isdigit(static_cast<unsigned char>(text[pos]))) break;
      ++pos;
    }
    if (pos == start) throw fail("expected variable");
    std::string name = text.substr(start, pos - start);
    auto it = std::find(variables.begin(), variables.end(), name);
    if (it == variables.end()) throw Error("E-UNRESOLVED", "unknown variable \"" + name + "\"");
    return size_t(it - variables.begin());
  };

  std::map<Exponents, Scalar> acc;
  auto read_term = [&](bool negate) {
    Scalar coeff = field.one();
    Exponents exps(variables.size(), 0);
    int c = peek();
    bool saw_factor = false;
    if (c == '-' || std::isdigit(c)) {
      coeff = field.from_long(read_int());
      saw_factor = true;
      if (peek() != '*') {
        if (negate) coeff = field.neg(coeff);
        acc[exps] = field.add(acc.count(exps) ? acc[exps] : field.zero(), coeff);
        return;
      }
      ++pos;  // consume '*'
    }
    while (true) {
      size_t vi = read_var();
      unsigned e = 1;
      if (peek() == '^') {
        ++pos;
        long raw = read_int();
        if (raw < 0) throw fail("negative exponent");
        e = unsigned(raw);
      }
      exps[vi] += e;
      saw_factor = true;
      if (peek() != '*') break;
      ++pos;
    }
    if (!saw_factor) throw fail("empty term");
    if (negate) coeff = field.neg(coeff);
    acc[exps] = field.add(acc.count(exps) ? acc[exps] : field.zero(), coeff);
  };

  read_term(false);
  while (true) {
    int c = peek();
    if (c == '+' || c == '-') {
      ++pos;
      read_term(c == '-');
    } else if (c == -1) {
      break;
    } else {
      throw fail("unexpected character '" + std::string(1, char(c)) + "'");
    }
  }

  PolyExpr p;
  p.variables = variables;
  p.source = text;
  for (auto& [e, coeff] : acc)
    if (coeff != 0) p.terms.push_back({coeff, e});
  return p;
}

struct ValidationIssue {
  std::string check;
  std::string witness;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

// Finite-dimensional commutative local k-algebra R = k[x_1..x_n]/I presented
// by a monomial basis (the standard monomials below the nilpotency bound) and
// the action of each variable in that basis. Immutable after construction.
struct LocalAlgebra {
  FieldSpec field;
  std::vector<std::string> variables;
  unsigned nil_bound = 1;
  std::vector<Exponents> basis;            // degree-then-variable-major order
  size_t unit_index = 0;
  std::vector<Matrix> variable_actions;    // multiplication table, one dim x dim matrix per variable
  Subspace maximal_ideal_space;
  std::vector<std::string> basis_labels;
  std::string skey;                        // structural fingerprint

  int dim() const { return int(basis.size()); }

  bool operator==(const LocalAlgebra& o) const {
    return field == o.field && variables == o.variables && basis == o.basis &&
           variable_actions == o.variable_actions;
  }
};

using RingPtr = std::shared_ptr<const LocalAlgebra>;

// Action of the basis monomial with the given exponents (product of the
// variable actions; they commute).
inline Matrix monomial_action(const LocalAlgebra& R, const Exponents& e) {
  Matrix m = Matrix::identity(R.field, R.dim());
  for (size_t v = 0; v < e.size(); ++v)
    for (unsigned k = 0; k < e[v]; ++k) m = R.variable_actions[v] * m;
  return m;
}

// Regular representation of the element with the given coordinates.
inline Matrix element_action(const LocalAlgebra& R, const Vec& coords) {
  if (int(coords.size()) != R.dim()) throw Error("E-DIM", "ring element length mismatch");
  Matrix m(R.field, R.dim(), R.dim());
  for (int i = 0; i < R.dim(); ++i) {
    if (coords[i] == 0) continue;
    m = m + monomial_action(R, R.basis[i]).scaled(coords[i]);
  }
  return m;
}

inline Vec ring_multiply(const LocalAlgebra& R, const Vec& a, const Vec& b) {
  return element_action(R, a).apply(b);
}

inline Vec ring_unit(const LocalAlgebra& R) {
  Vec v(R.dim(), Scalar(0));
  v[R.unit_index] = 1;
  return v;
}

inline Vec ring_element_from_poly(const LocalAlgebra& R, const PolyExpr& p) {
  Vec out(R.dim(), Scalar(0));
  for (const auto& t : p.terms) {
    Vec mono = monomial_action(R, t.exponents).apply(ring_unit(R));
    for (int i = 0; i < R.dim(); ++i) out[i] = R.field.add(out[i], R.field.mul(t.coeff, mono[i]));
  }
  return out;
}

inline Vec ring_element_from_string(const LocalAlgebra& R, const std::string& text) {
  return ring_element_from_poly(R, parse_poly(text, R.variables, R.field));
}

inline std::string ring_element_str(const LocalAlgebra& R, const Vec& coords) {
  std::string s;
  for (int i = 0; i < R.dim(); ++i) {
    if (coords[i] == 0) continue;
    if (!s.empty()) s += " + ";
    if (coords[i] != 1) s += coords[i].get_str() + "*";
    s += R.basis_labels[i];
  }
  return s.empty() ? "0" : s;
}

inline Subspace maximal_ideal(const LocalAlgebra& R) { return R.maximal_ideal_space; }

// Empirical invariant checks: commutativity and associativity on basis
// elements, unit law, nilpotence of each variable, locality, m^N = 0.
inline ValidationReport validate_local_algebra(const LocalAlgebra& R) {
  ValidationReport rep;
  const int d = R.dim();
  if (d == 0) {
    rep.issues.push_back({"nonzero", "algebra has dimension 0"});
    return rep;
  }
  if (R.unit_index >= size_t(d) || total_degree(R.basis[R.unit_index]) != 0)
    rep.issues.push_back({"unit", "basis does not contain the monomial 1 at unit_index"});

  auto unit = ring_unit(R);
  std::vector<Vec> b;
  for (int i = 0; i < d; ++i) {
    Vec v(d, Scalar(0));
    v[i] = 1;
    b.push_back(v);
  }
  for (int i = 0; i < d && rep.ok(); ++i)
    if (ring_multiply(R, unit, b[i]) != b[i] || ring_multiply(R, b[i], unit) != b[i])
      rep.issues.push_back({"unit-law", "1*" + R.basis_labels[i] + " != " + R.basis_labels[i]});

  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (ring_multiply(R, b[i], b[j]) != ring_multiply(R, b[j], b[i])) {
        rep.issues.push_back({"commutativity", R.basis_labels[i] + "*" + R.basis_labels[j]});
        break;
      }

  bool assoc_ok = true;
  for (int i = 0; i < d && assoc_ok; ++i)
    for (int j = 0; j < d && assoc_ok; ++j)
      for (int k = 0; k < d && assoc_ok; ++k) {
        Vec lhs = ring_multiply(R, b[i], ring_multiply(R, b[j], b[k]));
        Vec rhs = ring_multiply(R, ring_multiply(R, b[i], b[j]), b[k]);
        if (lhs != rhs) {
          rep.issues.push_back({"associativity", "(" + R.basis_labels[i] + "," + R.basis_labels[j] +
                                                     "," + R.basis_labels[k] + ")"});
          assoc_ok = false;
        }
      }

  for (size_t v = 0; v < R.variables.size(); ++v)
    if (!R.variable_actions[v].pow(unsigned(d)).is_zero())
      rep.issues.push_back({"nilpotence", "variable " + R.variables[v] + " is not nilpotent"});

  if (R.maximal_ideal_space.rank() != d - 1 || R.maximal_ideal_space.contains(unit))
    rep.issues.push_back({"locality", "dim R/m != 1"});

  // m^N = 0 by multiplying out
  Subspace power = R.maximal_ideal_space;
  for (unsigned k = 1; k < R.nil_bound && !power.is_zero(); ++k) {
    std::vector<Vec> prods;
    for (int i = 0; i < power.rank(); ++i)
      for (int j = 0; j < R.maximal_ideal_space.rank(); ++j)
        prods.push_back(ring_multiply(R, R.maximal_ideal_space.basis().row(j), power.basis().row(i)));
    power = Subspace::from_vectors(R.field, d, prods);
  }
  if (!power.is_zero())
    rep.issues.push_back({"nil-bound", "m^" + std::to_string(R.nil_bound) + " != 0"});
  return rep;
}

namespace detail {

inline std::vector<Exponents> monomials_below(size_t nvars, unsigned bound) {
  std::vector<Exponents> out;
  Exponents cur(nvars, 0);
  // enumerate all exponent vectors of total degree < bound
  while (true) {
    if (total_degree(cur) < bound) out.push_back(cur);
    size_t i = nvars;
    while (i > 0) {
      --i;
      if (cur[i] + 1 < bound) {
        ++cur[i];
        std::fill(cur.begin() + i + 1, cur.end(), 0u);
        break;
      }
      if (i == 0) {
        std::sort(out.begin(), out.end(), monomial_less);
        return out;
      }
      cur[i] = 0;
    }
    if (nvars == 0) {
      std::sort(out.begin(), out.end(), monomial_less);
      return out;
    }
  }
}

}  // namespace detail

// Build R = k[vars]/(relations + m^N) by a Macaulay-matrix fixed point below
// degree N. The ideal span is row reduced with the *largest* monomial of each
// row as pivot, so the surviving standard monomials always include 1 unless
// the relations are inconsistent.
inline RingPtr build_local_algebra(FieldSpec field, std::vector<std::string> vars,
                                   const std::vector<PolyExpr>& relations, unsigned nil_bound) {
  if (nil_bound < 1) throw Error("E-SCHEMA", "nil_bound must be at least 1");
  for (const auto& rel : relations)
    if (rel.variables != vars) throw Error("E-SCHEMA", "relation uses a different variable list");

  const auto mons = detail::monomials_below(vars.size(), nil_bound);
  const int D = int(mons.size());
  std::map<Exponents, int> index;
  for (int i = 0; i < D; ++i) index[mons[i]] = i;
  // column j of the ideal space holds monomial D-1-j, so row reduction pivots
  // on the largest monomial present in each row
  auto rev = [&](int i) { return D - 1 - i; };

  auto poly_row = [&](const std::vector<std::pair<Scalar, Exponents>>& terms) {
    Vec row(D, Scalar(0));
    for (const auto& [c, e] : terms) {
      if (total_degree(e) >= nil_bound) continue;  // inside m^N
      row[rev(index.at(e))] = field.add(row[rev(index.at(e))], c);
    }
    return row;
  };

  std::vector<Vec> rows;
  for (const auto& rel : relations) {
    std::vector<std::pair<Scalar, Exponents>> terms;
    for (const auto& t : rel.terms) terms.push_back({field.canon(t.coeff), t.exponents});
    Vec r = poly_row(terms);
    if (std::any_of(r.begin(), r.end(), [](const Scalar& x) { return x != 0; })) rows.push_back(r);
  }

  Subspace ideal = Subspace::from_vectors(field, D, rows);
  for (unsigned iter = 0;; ++iter) {
    if (iter > unsigned(D) + 1)
      throw Error("E-BUDGET", "ideal fixed point exceeded the iteration budget");
    std::vector<Vec> next;
    for (int i = 0; i < ideal.rank(); ++i) {
      Vec row = ideal.basis().row(i);
      for (size_t v = 0; v < vars.size(); ++v) {
        std::vector<std::pair<Scalar, Exponents>> terms;
        for (int j = 0; j < D; ++j) {
          if (row[j] == 0) continue;
          Exponents e = mons[rev(j)];
          ++e[v];
          terms.push_back({row[j], e});
        }
        next.push_back(poly_row(terms));
      }
    }
    Subspace grown = subspace_sum(ideal, Subspace::from_vectors(field, D, next));
    if (grown.rank() == ideal.rank()) break;
    ideal = grown;
  }

  std::vector<bool> is_pivot(D, false);
  for (int c : ideal.pivots()) is_pivot[rev(c)] = true;

  auto R = std::make_shared<LocalAlgebra>();
  R->field = field;
  R->variables = vars;
  R->nil_bound = nil_bound;
  for (int i = 0; i < D; ++i)
    if (!is_pivot[i]) R->basis.push_back(mons[i]);
  const int d = int(R->basis.size());
  if (d == 0) throw Error("E-ZERO-RING", "relations are inconsistent: 1 lies in the ideal");

  std::map<Exponents, int> basis_index;
  for (int i = 0; i < d; ++i) {
    basis_index[R->basis[i]] = i;
    R->basis_labels.push_back(monomial_str(R->basis[i], vars));
  }
  if (!basis_index.count(Exponents(vars.size(), 0)))
    throw Error("E-ZERO-RING", "relations are inconsistent: 1 lies in the ideal");
  R->unit_index = size_t(basis_index.at(Exponents(vars.size(), 0)));

  // reduce a monomial of degree < N to standard-monomial coordinates
  auto reduce_monomial = [&](const Exponents& e) {
    Vec rep(D, Scalar(0));
    rep[rev(index.at(e))] = 1;
    Vec residue = ideal.reduce(rep);
    Vec coords(d, Scalar(0));
    for (int j = 0; j < D; ++j) {
      if (residue[j] == 0) continue;
      coords[basis_index.at(mons[rev(j)])] = residue[j];
    }
    return coords;
  };

  for (size_t v = 0; v < vars.size(); ++v) {
    Matrix act(field, d, d);
    for (int bcol = 0; bcol < d; ++bcol) {
      Exponents e = R->basis[bcol];
      ++e[v];
      if (total_degree(e) >= nil_bound) continue;  // maps to 0
      Vec col = reduce_monomial(e);
      for (int r = 0; r < d; ++r) act.at(r, bcol) = col[r];
    }
    R->variable_actions.push_back(act);
  }

  std::vector<Vec> mgens;
  for (int i = 0; i < d; ++i) {
    if (size_t(i) == R->unit_index) continue;
    Vec v(d, Scalar(0));
    v[i] = 1;
    mgens.push_back(v);
  }
  R->maximal_ideal_space = Subspace::from_vectors(field, d, mgens);

  {
    std::ostringstream os;
    os << field.describe() << ';' << nil_bound << ';';
    for (const auto& v : vars) os << v << ',';
    for (const auto& m : R->variable_actions)
      for (const auto& x : m.a) os << x.get_str() << ',';
    R->skey = os.str();
  }

  auto rep = validate_local_algebra(*R);
  if (!rep.ok()) {
    const auto& issue = rep.issues.front();
    std::string hint =
        issue.check == "nil-bound" ? " (raise nil_bound so that m^N lies in the ideal)" : "";
    throw Error("E-NONLOCAL", issue.check + " violation: " + issue.witness + hint);
  }
  return R;
}

inline RingPtr build_local_algebra(FieldSpec field, std::vector<std::string> vars,
                                   const std::vector<std::string>& relation_texts,
                                   unsigned nil_bound) {
  std::vector<PolyExpr> rels;
  for (const auto& t : relation_texts) rels.push_back(parse_poly(t, vars, field));
  return build_local_algebra(field, std::move(vars), rels, nil_bound);
}

}  // namespace pairops
