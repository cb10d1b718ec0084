#include "tropdyn/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace tropdyn {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector>& columns) {
  IntMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw DomainError("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(std::size_t cols, const std::vector<IntVector>& rows) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DomainError("row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw DomainError("matrix dimension mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
  if (cols_ != v.size()) throw DomainError("matrix dimension mismatch");
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) out[i] += (*this)(i, k) * v[k];
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix a = m;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

// Reduced row echelon form over Q; returns pivot columns.
std::vector<std::size_t> rref(std::vector<RatVector>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

}  // namespace

std::vector<IntVector> nullspace(std::size_t cols, const std::vector<IntVector>& rows) {
  std::vector<RatVector> a;
  a.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != cols) throw DomainError("row length mismatch");
    a.push_back(to_rational(row));
  }
  auto pivots = rref(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<IntVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RatVector v(cols);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][free];
    basis.push_back(primitive_integer(v));
  }
  return basis;
}

std::size_t rank(std::size_t cols, const std::vector<IntVector>& rows) {
  std::vector<RatVector> a;
  a.reserve(rows.size());
  for (const auto& row : rows) a.push_back(to_rational(row));
  return rref(a, cols).size();
}

std::vector<IntVector> echelon_basis(std::size_t cols, const std::vector<IntVector>& vectors) {
  std::vector<RatVector> a;
  a.reserve(vectors.size());
  for (const auto& v : vectors) a.push_back(to_rational(v));
  rref(a, cols);
  std::vector<IntVector> out;
  out.reserve(a.size());
  for (const auto& row : a) out.push_back(primitive_integer(row));
  return out;
}

std::size_t rank(const IntMatrix& m) {
  std::vector<IntVector> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  return rank(m.cols(), rows);
}

PrimitiveVector primitive(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0) throw DomainError("no primitive direction: zero vector");
  PrimitiveVector out{v, g};
  for (auto& x : out.direction) x /= g;
  return out;
}

std::vector<Integer> SmithDecomposition::invariant_factors() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

namespace {

// Smith reduction that also tracks U^{-1}, needed for saturation.
struct SmithWork {
  IntMatrix a, u, u_inv, v;
};

SmithWork smith_reduce(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  SmithWork w{m, IntMatrix::identity(rows), IntMatrix::identity(rows), IntMatrix::identity(cols)};
  auto& a = w.a;

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols; ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < rows; ++c) std::swap(w.u(i, c), w.u(j, c));
    for (std::size_t r = 0; r < rows; ++r) std::swap(w.u_inv(r, i), w.u_inv(r, j));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows; ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < cols; ++r) std::swap(w.v(r, i), w.v(r, j));
  };
  // row_i += q * row_j
  auto add_row = [&](std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t c = 0; c < cols; ++c) a(i, c) += q * a(j, c);
    for (std::size_t c = 0; c < rows; ++c) w.u(i, c) += q * w.u(j, c);
    for (std::size_t r = 0; r < rows; ++r) w.u_inv(r, j) -= q * w.u_inv(r, i);
  };
  // col_i += q * col_j
  auto add_col = [&](std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t r = 0; r < rows; ++r) a(r, i) += q * a(r, j);
    for (std::size_t r = 0; r < cols; ++r) w.v(r, i) += q * w.v(r, j);
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // pivot on the entry of least nonzero absolute value
      bool found = false;
      std::size_t pr = t, pc = t;
      Integer best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a(i, j) != 0 && (!found || abs(a(i, j)) < best)) {
            found = true;
            best = abs(a(i, j));
            pr = i;
            pc = j;
          }
      if (!found) return w;
      swap_rows(t, pr);
      swap_cols(t, pc);

      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        add_row(i, t, -(a(i, t) / a(t, t)));
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        add_col(j, t, -(a(t, j) / a(t, t)));
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            add_row(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (a(t, t) < 0) {
      for (std::size_t c = 0; c < cols; ++c) a(t, c) = -a(t, c);
      for (std::size_t c = 0; c < rows; ++c) w.u(t, c) = -w.u(t, c);
      for (std::size_t r = 0; r < rows; ++r) w.u_inv(r, t) = -w.u_inv(r, t);
    }
  }
  return w;
}

// Row-style Hermite form of a full-rank list of lattice vectors: echelon with
// positive pivots and entries above each pivot reduced into [0, pivot).
std::vector<IntVector> hermite_rows(std::vector<IntVector> rows, std::size_t n) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Integer q = rows[i][c] / rows[r][c];
        for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r < rows.size() && rows[r][c] != 0) {
      if (rows[r][c] < 0)
        for (auto& x : rows[r]) x = -x;
      for (std::size_t i = 0; i < r; ++i) {
        Integer q = rows[i][c] / rows[r][c];
        if (rows[i][c] - q * rows[r][c] < 0) q -= 1;
        if (q != 0)
          for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
      }
      ++r;
    }
  }
  rows.resize(r);
  return rows;
}

IntMatrix unimodular_inverse(const IntMatrix& w) {
  const std::size_t n = w.rows();
  std::vector<RatVector> aug(n, RatVector(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = Rational(w(i, j));
    aug[i][n + i] = 1;
  }
  // Gauss-Jordan on [W | I]
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && aug[p][c] == 0) ++p;
    if (p == n) throw DomainError("singular lattice basis");
    std::swap(aug[c], aug[p]);
    Rational inv = 1 / aug[c][c];
    for (auto& x : aug[c]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || aug[i][c] == 0) continue;
      Rational f = aug[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) aug[i][j] -= f * aug[c][j];
    }
  }
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& x = aug[i][n + j];
      if (denominator(x) != 1) throw DomainError("lattice basis is not unimodular");
      inv(i, j) = numerator(x);
    }
  return inv;
}

void next_combination_init(std::vector<std::size_t>& idx, std::size_t k) {
  idx.resize(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  auto w = smith_reduce(m);
  return SmithDecomposition{std::move(w.u), std::move(w.a), std::move(w.v)};
}

QuotientLattice::QuotientLattice(std::size_t ambient, std::vector<IntVector> basis,
                                 std::vector<IntVector> complement)
    : ambient_(ambient), basis_(std::move(basis)), complement_(std::move(complement)) {
  if (basis_.size() + complement_.size() != ambient_)
    throw DomainError("quotient presentation must have exactly n vectors");
  auto full = full_matrix();
  Integer det = determinant(full);
  if (abs(det) != 1) throw DomainError("quotient presentation is not a Z-basis");
  inverse_ = unimodular_inverse(full);
}

QuotientLattice QuotientLattice::trivial(std::size_t ambient) {
  std::vector<IntVector> units;
  for (std::size_t i = 0; i < ambient; ++i) {
    IntVector e(ambient);
    e[i] = 1;
    units.push_back(std::move(e));
  }
  return QuotientLattice(ambient, {}, std::move(units));
}

IntMatrix QuotientLattice::full_matrix() const {
  std::vector<IntVector> cols = basis_;
  cols.insert(cols.end(), complement_.begin(), complement_.end());
  return IntMatrix::from_columns(ambient_, cols);
}

IntVector QuotientLattice::quotient_coordinates(const IntVector& v) const {
  IntVector all = inverse_ * v;
  return IntVector(all.begin() + static_cast<std::ptrdiff_t>(basis_.size()), all.end());
}

RatVector QuotientLattice::quotient_coordinates(const RatVector& v) const {
  RatVector out(complement_.size());
  for (std::size_t i = 0; i < complement_.size(); ++i)
    for (std::size_t k = 0; k < ambient_; ++k) out[i] += Rational(inverse_(basis_.size() + i, k)) * v[k];
  return out;
}

IntVector QuotientLattice::lift(const IntVector& q) const {
  if (q.size() != complement_.size()) throw DomainError("quotient coordinate length mismatch");
  IntVector out(ambient_);
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t k = 0; k < ambient_; ++k) out[k] += q[i] * complement_[i][k];
  return out;
}

bool QuotientLattice::contains(const IntVector& v) const { return is_zero(quotient_coordinates(v)); }

QuotientLattice saturate_and_complete(std::size_t ambient, const std::vector<IntVector>& spanning) {
  std::vector<IntVector> nonzero;
  for (const auto& v : spanning) {
    if (v.size() != ambient) throw DomainError("vector length does not match ambient rank");
    if (!is_zero(v)) nonzero.push_back(v);
  }
  if (nonzero.empty()) return QuotientLattice::trivial(ambient);

  auto w = smith_reduce(IntMatrix::from_columns(ambient, nonzero));
  std::size_t r = 0;
  while (r < std::min(w.a.rows(), w.a.cols()) && w.a(r, r) != 0) ++r;

  std::vector<IntVector> saturated;
  for (std::size_t c = 0; c < r; ++c) saturated.push_back(w.u_inv.column(c));
  saturated = hermite_rows(std::move(saturated), ambient);

  // Prefer a complement of standard unit vectors when some maximal minor of
  // the saturated basis is a unit.
  std::vector<IntVector> complement;
  std::vector<std::size_t> idx;
  next_combination_init(idx, r);
  do {
    IntMatrix minor(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) minor(i, j) = saturated[i][idx[j]];
    if (abs(determinant(minor)) == 1) {
      std::vector<bool> used(ambient, false);
      for (auto c : idx) used[c] = true;
      for (std::size_t c = 0; c < ambient; ++c) {
        if (used[c]) continue;
        IntVector e(ambient);
        e[c] = 1;
        complement.push_back(std::move(e));
      }
      break;
    }
  } while (next_combination(idx, ambient));

  if (complement.empty() && r < ambient)
    for (std::size_t c = r; c < ambient; ++c) complement.push_back(w.u_inv.column(c));

  return QuotientLattice(ambient, std::move(saturated), std::move(complement));
}

IntVector outward_generator(const QuotientLattice& face_lattice, const std::vector<IntVector>& cell_span,
                            const RatVector& inward) {
  const std::size_t n = face_lattice.ambient();
  auto cell = saturate_and_complete(n, cell_span);
  if (cell.sublattice_rank() != face_lattice.sublattice_rank() + 1)
    throw DomainError("face is not of codimension one in the cell");
  for (const auto& b : face_lattice.basis())
    if (!cell.contains(b)) throw DomainError("face span is not contained in the cell span");

  IntVector generator;
  for (const auto& b : cell.basis()) {
    IntVector image = face_lattice.quotient_coordinates(b);
    if (is_zero(image)) continue;
    auto prim = primitive(image).direction;
    if (generator.empty()) {
      generator = std::move(prim);
    } else if (prim != generator) {
      IntVector neg = prim;
      for (auto& x : neg) x = -x;
      if (neg != generator) throw DomainError("cell span has quotient rank > 1 over the face");
    }
  }
  if (generator.empty()) throw DomainError("cell span equals face span");

  RatVector inward_image = face_lattice.quotient_coordinates(inward);
  Rational pairing = dot(generator, inward_image);
  if (pairing == 0) throw DomainError("inward direction lies in the face span");
  if (pairing < 0)
    for (auto& x : generator) x = -x;
  return face_lattice.lift(generator);
}

}  // namespace tropdyn
