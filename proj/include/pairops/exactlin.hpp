#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <vector>

#include "pairops/field.hpp"

namespace pairops {

using Vec = std::vector<Scalar>;

// Dense matrix over an exact field, row-major. A Matrix represents the
// linear map x -> M x from k^cols to k^rows.
struct Matrix {
  FieldSpec field;
  int rows = 0;
  int cols = 0;
  std::vector<Scalar> a;

  Matrix() = default;
  Matrix(FieldSpec f, int r, int c) : field(f), rows(r), cols(c), a(size_t(r) * size_t(c), Scalar(0)) {
    if (r < 0 || c < 0) throw Error("E-DIM", "negative matrix dimension");
  }

  static Matrix identity(FieldSpec f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static Matrix from_rows(FieldSpec f, int cols, const std::vector<Vec>& rows) {
    Matrix m(f, int(rows.size()), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (int(rows[i].size()) != cols) throw Error("E-DIM", "row length mismatch");
      for (int j = 0; j < cols; ++j) m.at(int(i), j) = f.canon(rows[i][j]);
    }
    return m;
  }

  Scalar& at(int r, int c) { return a[size_t(r) * cols + c]; }
  const Scalar& at(int r, int c) const { return a[size_t(r) * cols + c]; }

  Vec row(int r) const { return Vec(a.begin() + size_t(r) * cols, a.begin() + size_t(r + 1) * cols); }

  void set_row(int r, const Vec& v) {
    for (int j = 0; j < cols; ++j) at(r, j) = v[j];
  }

  bool is_zero() const {
    for (const auto& x : a)
      if (x != 0) return false;
    return true;
  }

  bool operator==(const Matrix& o) const {
    return field == o.field && rows == o.rows && cols == o.cols && a == o.a;
  }

  Matrix transpose() const {
    Matrix t(field, cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (field != o.field) throw Error("E-FIELD-MISMATCH", "matrix product over different fields");
    if (cols != o.rows) throw Error("E-DIM", "matrix product shape mismatch");
    Matrix r(field, rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const Scalar& x = at(i, k);
        if (x == 0) continue;
        for (int j = 0; j < o.cols; ++j) r.at(i, j) += x * o.at(k, j);
      }
    for (auto& x : r.a) x = field.canon(x);
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    if (rows != o.rows || cols != o.cols) throw Error("E-DIM", "matrix sum shape mismatch");
    Matrix r(field, rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = field.canon(a[i] + o.a[i]);
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    if (rows != o.rows || cols != o.cols) throw Error("E-DIM", "matrix difference shape mismatch");
    Matrix r(field, rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = field.canon(a[i] - o.a[i]);
    return r;
  }

  Matrix scaled(const Scalar& c) const {
    Matrix r = *this;
    for (auto& x : r.a) x = field.canon(x * c);
    return r;
  }

  Vec apply(const Vec& v) const {
    if (int(v.size()) != cols) throw Error("E-DIM", "matrix apply length mismatch");
    Vec r(rows, Scalar(0));
    for (int i = 0; i < rows; ++i) {
      Scalar s(0);
      for (int j = 0; j < cols; ++j)
        if (at(i, j) != 0 && v[j] != 0) s += at(i, j) * v[j];
      r[i] = field.canon(s);
    }
    return r;
  }

  Matrix pow(unsigned e) const {
    if (rows != cols) throw Error("E-DIM", "power of non-square matrix");
    Matrix r = identity(field, rows);
    for (unsigned i = 0; i < e; ++i) r = r * (*this);
    return r;
  }
};

inline Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols != b.cols || a.field != b.field) throw Error("E-DIM", "vstack mismatch");
  Matrix r(a.field, a.rows + b.rows, a.cols);
  std::copy(a.a.begin(), a.a.end(), r.a.begin());
  std::copy(b.a.begin(), b.a.end(), r.a.begin() + a.a.size());
  return r;
}

inline Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows || a.field != b.field) throw Error("E-DIM", "hstack mismatch");
  Matrix r(a.field, a.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) r.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols; ++j) r.at(i, a.cols + j) = b.at(i, j);
  }
  return r;
}

// Kronecker product on row-major vectorization: (A (x) B) vec(X) = vec(A X B^T).
inline Matrix kron(const Matrix& a, const Matrix& b) {
  if (a.field != b.field) throw Error("E-FIELD-MISMATCH", "kron over different fields");
  Matrix r(a.field, a.rows * b.rows, a.cols * b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) {
      if (a.at(i, j) == 0) continue;
      for (int k = 0; k < b.rows; ++k)
        for (int l = 0; l < b.cols; ++l)
          r.at(i * b.rows + k, j * b.cols + l) = a.field.canon(a.at(i, j) * b.at(k, l));
    }
  return r;
}

// In-place reduced row echelon form with leftmost-nonzero pivoting.
// Returns pivot column indices; zero rows end up at the bottom.
inline std::vector<int> rref_inplace(Matrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int pr = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c) != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(r, j));
    Scalar inv = m.field.inv(m.at(r, c));
    for (int j = c; j < m.cols; ++j) m.at(r, j) = m.field.mul(m.at(r, j), inv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Scalar f = m.at(i, c);
      for (int j = c; j < m.cols; ++j) m.at(i, j) = m.field.sub(m.at(i, j), m.field.mul(f, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Canonical subspace of k^n: basis in RREF with no zero rows. Two subspaces
// are equal as sets iff their basis matrices are identical.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(FieldSpec f, int ambient) {
    Subspace s;
    s.field_ = f;
    s.ambient_ = ambient;
    s.basis_ = Matrix(f, 0, ambient);
    return s;
  }

  static Subspace full(FieldSpec f, int ambient) { return from_rows(Matrix::identity(f, ambient)); }

  static Subspace from_rows(Matrix rows) {
    for (auto& x : rows.a) x = rows.field.canon(x);
    auto pivots = rref_inplace(rows);
    Subspace s;
    s.field_ = rows.field;
    s.ambient_ = rows.cols;
    s.pivots_ = pivots;
    s.basis_ = Matrix(rows.field, int(pivots.size()), rows.cols);
    for (int i = 0; i < int(pivots.size()); ++i) s.basis_.set_row(i, rows.row(i));
    return s;
  }

  static Subspace from_vectors(FieldSpec f, int ambient, const std::vector<Vec>& vs) {
    return from_rows(Matrix::from_rows(f, ambient, vs));
  }

  const FieldSpec& field() const { return field_; }
  int ambient_dim() const { return ambient_; }
  int rank() const { return basis_.rows; }
  const Matrix& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }
  bool is_zero() const { return rank() == 0; }
  bool is_full() const { return rank() == ambient_; }

  bool operator==(const Subspace& o) const {
    return field_ == o.field_ && ambient_ == o.ambient_ && basis_ == o.basis_;
  }

  // Residue of v after eliminating pivot coordinates; zero iff v is a member.
  Vec reduce(const Vec& v) const {
    if (int(v.size()) != ambient_) throw Error("E-DIM", "reduce length mismatch");
    Vec r = v;
    for (auto& x : r) x = field_.canon(x);
    for (int i = 0; i < rank(); ++i) {
      const Scalar& c = r[pivots_[i]];
      if (c == 0) continue;
      Scalar f = c;
      for (int j = 0; j < ambient_; ++j) r[j] = field_.sub(r[j], field_.mul(f, basis_.at(i, j)));
    }
    return r;
  }

  bool contains(const Vec& v) const {
    Vec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](const Scalar& x) { return x == 0; });
  }

  bool contains(const Subspace& o) const {
    if (o.ambient_ != ambient_ || !(o.field_ == field_)) throw Error("E-DIM", "containment ambient mismatch");
    for (int i = 0; i < o.rank(); ++i)
      if (!contains(o.basis_.row(i))) return false;
    return true;
  }

  // Coordinates of a member vector in the canonical basis.
  Vec coordinates_of(const Vec& v) const {
    if (!contains(v)) throw Error("E-MEMBER", "vector not in subspace");
    Vec c(rank(), Scalar(0));
    for (int i = 0; i < rank(); ++i) c[i] = field_.canon(v[pivots_[i]]);
    return c;
  }

  std::string key() const {
    std::ostringstream os;
    os << ambient_ << ':' << rank();
    for (const auto& x : basis_.a) os << ',' << x.get_str();
    return os.str();
  }

 private:
  FieldSpec field_;
  int ambient_ = 0;
  Matrix basis_;
  std::vector<int> pivots_;
};

inline Subspace subspace_from_rows(const Matrix& rows) { return Subspace::from_rows(rows); }

// Null space {v : m v = 0}, canonicalized.
inline Subspace kernel(const Matrix& m) {
  Matrix e = m;
  auto pivots = rref_inplace(e);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<Vec> gens;
  for (int j = 0; j < m.cols; ++j) {
    if (is_pivot[j]) continue;
    Vec v(m.cols, Scalar(0));
    v[j] = 1;
    for (int i = 0; i < int(pivots.size()); ++i) v[pivots[i]] = m.field.neg(e.at(i, j));
    gens.push_back(v);
  }
  return Subspace::from_vectors(m.field, m.cols, gens);
}

// Column space of m.
inline Subspace image(const Matrix& m) { return Subspace::from_rows(m.transpose()); }

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || !(a.field() == b.field()))
    throw Error("E-DIM", "subspace sum ambient mismatch");
  return Subspace::from_rows(vstack(a.basis(), b.basis()));
}

// Zassenhaus: rows (u|u) for u in a, (w|0) for w in b; echelon rows with zero
// left half carry a basis of the intersection in their right half.
inline Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || !(a.field() == b.field()))
    throw Error("E-DIM", "subspace intersection ambient mismatch");
  int n = a.ambient_dim();
  Matrix z(a.field(), a.rank() + b.rank(), 2 * n);
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < n; ++j) {
      z.at(i, j) = a.basis().at(i, j);
      z.at(i, n + j) = a.basis().at(i, j);
    }
  for (int i = 0; i < b.rank(); ++i)
    for (int j = 0; j < n; ++j) z.at(a.rank() + i, j) = b.basis().at(i, j);
  rref_inplace(z);
  std::vector<Vec> gens;
  for (int i = 0; i < z.rows; ++i) {
    bool left_zero = true;
    for (int j = 0; j < n && left_zero; ++j)
      if (z.at(i, j) != 0) left_zero = false;
    if (!left_zero) continue;
    Vec v(n);
    for (int j = 0; j < n; ++j) v[j] = z.at(i, n + j);
    gens.push_back(v);
  }
  return Subspace::from_vectors(a.field(), n, gens);
}

// Orthogonal complement under the standard dot product.
inline Subspace perp(const Subspace& s) { return kernel(s.basis()); }

// {x : m x in w}, a subspace of the domain.
inline Subspace preimage_subspace(const Matrix& m, const Subspace& w) {
  if (w.ambient_dim() != m.rows) throw Error("E-DIM", "preimage ambient mismatch");
  if (w.is_full()) return kernel(Matrix(m.field, 0, m.cols));
  return kernel(perp(w).basis() * m);
}

inline Subspace image_subspace(const Matrix& m, const Subspace& s) {
  if (s.ambient_dim() != m.cols) throw Error("E-DIM", "image ambient mismatch");
  std::vector<Vec> rows;
  for (int i = 0; i < s.rank(); ++i) rows.push_back(m.apply(s.basis().row(i)));
  return Subspace::from_vectors(m.field, m.rows, rows);
}

// One solution of m x = b, if any.
inline std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (int(b.size()) != m.rows) throw Error("E-DIM", "solve length mismatch");
  Matrix aug(m.field, m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = m.field.canon(b[i]);
  }
  auto pivots = rref_inplace(aug);
  if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;
  Vec x(m.cols, Scalar(0));
  for (int i = 0; i < int(pivots.size()); ++i) x[pivots[i]] = aug.at(i, m.cols);
  return x;
}

// All coordinate vectors of GF(p)^n in lexicographic order, first coordinate
// most significant. Only meaningful over finite fields.
inline std::vector<Vec> all_vectors(FieldSpec f, int n) {
  if (!f.finite()) throw Error("E-FIELD", "cannot enumerate vectors over an infinite field");
  unsigned long p = f.characteristic;
  double total = 1;
  for (int i = 0; i < n; ++i) total *= double(p);
  if (total > 4000000.0) throw Error("E-LIMIT", "vector enumeration too large");
  std::vector<Vec> out;
  Vec v(n, Scalar(0));
  out.push_back(v);
  while (true) {
    int i = n - 1;
    while (i >= 0) {
      unsigned long d = mpz_get_ui(v[i].get_num().get_mpz_t());
      if (d + 1 < p) {
        v[i] = Scalar(long(d + 1));
        break;
      }
      v[i] = 0;
      --i;
    }
    if (i < 0) break;
    out.push_back(v);
  }
  return out;
}

inline std::string vec_str(const Vec& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + "]";
}

}  // namespace pairops
