#pragma once

// Exact integer-lattice linear algebra: primitive vectors, Smith normal form,
// saturation of sublattices and presentations of quotient lattices.

#include "tropdyn/numeric.hpp"

#include <cstddef>
#include <vector>

namespace tropdyn {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  /// Builds the matrix whose columns are the given vectors (all of length `rows`).
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& columns);
  static IntMatrix from_rows(std::size_t cols, const std::vector<IntVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntVector operator*(const IntVector& v) const;
  bool operator==(const IntMatrix& rhs) const = default;

  IntMatrix transpose() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Exact determinant of a square matrix (fraction-free elimination).
Integer determinant(const IntMatrix& m);
std::size_t rank(const IntMatrix& m);

/// Basis of {x : A x = 0} as primitive integer vectors; `rows` may be empty,
/// in which case the standard basis of Z^cols is returned.
std::vector<IntVector> nullspace(std::size_t cols, const std::vector<IntVector>& rows);
std::size_t rank(std::size_t cols, const std::vector<IntVector>& rows);
/// Canonical basis of the rational span of `vectors`: reduced echelon rows
/// scaled to primitive integer vectors.
std::vector<IntVector> echelon_basis(std::size_t cols, const std::vector<IntVector>& vectors);

struct PrimitiveVector {
  IntVector direction;
  Integer length;
};

/// v = length * direction with gcd(direction) = 1.
PrimitiveVector primitive(const IntVector& v);

struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  /// Diagonal of D, length min(rows, cols).
  std::vector<Integer> invariant_factors() const;
};

/// U * M * V = D with U, V unimodular and d_1 | d_2 | ... on the diagonal.
SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Presentation of Z^n / (H ∩ Z^n) for a rational subspace H.
///
/// `basis` spans the saturated sublattice H ∩ Z^n and `complement` completes
/// it to a Z-basis of Z^n. The class of v in the quotient is given by the last
/// n - p coordinates of v in the basis [basis | complement].
class QuotientLattice {
 public:
  QuotientLattice(std::size_t ambient, std::vector<IntVector> basis, std::vector<IntVector> complement);

  /// The quotient of Z^n by the zero sublattice.
  static QuotientLattice trivial(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t sublattice_rank() const { return basis_.size(); }
  std::size_t quotient_rank() const { return complement_.size(); }

  const std::vector<IntVector>& basis() const { return basis_; }
  const std::vector<IntVector>& complement() const { return complement_; }

  /// Columns: basis followed by complement. Determinant is +-1.
  IntMatrix full_matrix() const;

  IntVector quotient_coordinates(const IntVector& v) const;
  RatVector quotient_coordinates(const RatVector& v) const;
  /// Representative in Z^n of the class with the given quotient coordinates.
  IntVector lift(const IntVector& quotient_coords) const;
  bool contains(const IntVector& v) const;

 private:
  std::size_t ambient_;
  std::vector<IntVector> basis_;
  std::vector<IntVector> complement_;
  IntMatrix inverse_;
};

/// Saturates the lattice spanned by `spanning` and completes it to a Z-basis.
/// Zero or empty input yields QuotientLattice::trivial(ambient).
QuotientLattice saturate_and_complete(std::size_t ambient, const std::vector<IntVector>& spanning);

/// Generator of the rank-one lattice (Z^n ∩ H_σ) / (Z^n ∩ H_τ), signed so that
/// it pairs positively with `inward`, a direction in H_σ \ H_τ pointing into σ.
/// Throws DomainError unless H_τ ⊂ H_σ has codimension one.
IntVector outward_generator(const QuotientLattice& face_lattice, const std::vector<IntVector>& cell_span,
                            const RatVector& inward);

}  // namespace tropdyn
