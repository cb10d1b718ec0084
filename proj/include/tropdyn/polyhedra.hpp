#pragma once

// Exact rational polyhedra, cones, fans and weighted complexes.

#include "tropdyn/lattice.hpp"
#include "tropdyn/numeric.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tropdyn {

/// Largest ambient dimension for which H/V conversion is supported.
inline constexpr std::size_t kMaxPolyhedralDim = 4;

/// normal · x >= offset (or == offset when used as an equation).
struct LinearConstraint {
  IntVector normal;
  Rational offset;

  bool operator==(const LinearConstraint&) const = default;
};

/// Extreme rays and lineality of {y : A y >= 0, E y = 0} in Z^dim.
struct ConeGenerators {
  std::vector<IntVector> rays;       // primitive, orthogonal to the lineality space
  std::vector<IntVector> lineality;  // canonical echelon basis
};

ConeGenerators cone_generators(std::size_t dim, const std::vector<IntVector>& inequalities,
                               const std::vector<IntVector>& equalities);

/// A rational polyhedron with both descriptions kept in canonical form.
///
/// Vertices and rays are taken inside the orthogonal complement of the
/// lineality space, rays are primitive, facets are irredundant with primitive
/// normals orthogonal to the affine hull. Two polyhedra are equal iff their
/// canonical descriptions agree.
class Polyhedron {
 public:
  Polyhedron() = default;

  static Polyhedron from_generators(std::size_t ambient, const std::vector<RatVector>& points,
                                    const std::vector<IntVector>& rays, const std::vector<IntVector>& lineality = {});
  static Polyhedron from_constraints(std::size_t ambient, const std::vector<LinearConstraint>& inequalities,
                                     const std::vector<LinearConstraint>& equations = {});
  static Polyhedron empty(std::size_t ambient);
  static Polyhedron box(const RatVector& lo, const RatVector& hi);

  std::size_t ambient_dim() const { return ambient_; }
  /// -1 for the empty polyhedron.
  int dim() const { return dim_; }
  bool is_empty() const { return dim_ < 0; }
  bool is_bounded() const { return rays_.empty() && lineality_.empty(); }
  /// Nonempty with the origin as its only vertex.
  bool is_cone() const;

  const std::vector<RatVector>& vertices() const { return vertices_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<IntVector>& lineality() const { return lineality_; }
  const std::vector<LinearConstraint>& facets() const { return facets_; }
  const std::vector<LinearConstraint>& equations() const { return equations_; }

  /// Integer basis of the linear space H parallel to the affine hull.
  std::vector<IntVector> span_basis() const;
  RatVector relative_interior_point() const;

  bool contains(const RatVector& x) const;
  bool contains(std::span<const double> x, double tol) const;

  Polyhedron intersect(const Polyhedron& other) const;
  /// Faces of codimension one.
  std::vector<Polyhedron> facet_faces() const;
  /// All nonempty faces including this polyhedron, sorted.
  std::vector<Polyhedron> faces() const;
  bool is_face_of(const Polyhedron& other) const;

  const std::string& key() const { return key_; }

  friend bool operator==(const Polyhedron& a, const Polyhedron& b) { return a.key_ == b.key_; }
  friend bool operator<(const Polyhedron& a, const Polyhedron& b);

 private:
  void canonicalize_from_vrep(const ConeGenerators& homog);
  void build_hrep();
  void build_key();

  std::size_t ambient_ = 0;
  int dim_ = -1;
  std::vector<RatVector> vertices_;
  std::vector<IntVector> rays_;
  std::vector<IntVector> lineality_;
  std::vector<LinearConstraint> facets_;
  std::vector<LinearConstraint> equations_;
  std::string key_;
};

/// A rational polyhedral cone (apex at the origin).
class Cone {
 public:
  Cone() = default;
  /// Throws DomainError if `p` is not a cone.
  explicit Cone(Polyhedron p);

  static Cone from_rays(std::size_t ambient, const std::vector<IntVector>& rays,
                        const std::vector<IntVector>& lineality = {});
  static Cone zero(std::size_t ambient);

  const Polyhedron& polyhedron() const { return poly_; }
  std::size_t ambient_dim() const { return poly_.ambient_dim(); }
  int dim() const { return poly_.dim(); }
  const std::vector<IntVector>& rays() const { return poly_.rays(); }
  const std::vector<IntVector>& lineality() const { return poly_.lineality(); }
  bool is_pointed() const { return poly_.lineality().empty(); }

  /// Facet inequalities followed by each equation as two opposite inequalities.
  std::vector<LinearConstraint> inequalities() const;

  bool contains(const RatVector& x) const { return poly_.contains(x); }
  bool contains(const IntVector& x) const { return poly_.contains(to_rational(x)); }
  Cone intersect(const Cone& other) const { return Cone(poly_.intersect(other.poly_)); }
  std::vector<Cone> faces() const;

  friend bool operator==(const Cone& a, const Cone& b) { return a.poly_ == b.poly_; }
  friend bool operator<(const Cone& a, const Cone& b) { return a.poly_ < b.poly_; }

 private:
  Polyhedron poly_;
};

/// Cone generated by `generators`, with both descriptions computed.
/// Throws DomainError("ambient dimension unsupported") above kMaxPolyhedralDim.
Cone dual_description(std::size_t ambient, const std::vector<IntVector>& generators);

/// Outward generator u_{σ/τ} for a codimension-one face τ of σ.
IntVector outward_generator(const Polyhedron& tau, const Polyhedron& sigma);
inline IntVector outward_generator(const Cone& tau, const Cone& sigma) {
  return outward_generator(tau.polyhedron(), sigma.polyhedron());
}

/// A fan: cones closed under taking faces, meeting pairwise in common faces.
class Fan {
 public:
  Fan() = default;
  /// Adds all faces of the given cones; throws if two cones meet outside a common face.
  static Fan from_cones(std::size_t ambient, const std::vector<Cone>& cones);

  std::size_t ambient_dim() const { return ambient_; }
  /// All cones sorted by dimension, then canonically.
  const std::vector<Cone>& cones() const { return cones_; }
  std::vector<Cone> maximal_cones() const;
  std::vector<Cone> cones_of_dim(int d) const;
  std::optional<std::size_t> index_of(const Cone& c) const;

  bool operator==(const Fan&) const = default;

 private:
  std::size_t ambient_ = 0;
  std::vector<Cone> cones_;
};

struct WeightedCell {
  Polyhedron cell;
  Integer weight;

  bool operator==(const WeightedCell&) const = default;
};

/// Pure p-dimensional rational polyhedral complex with integer weights on its
/// maximal cells. Zero-weight cells are dropped and repeated cells merged.
class WeightedComplex {
 public:
  WeightedComplex() = default;
  /// Throws DomainError on cells of the wrong dimension ("non-pure complex").
  WeightedComplex(std::size_t ambient, int dim, std::vector<WeightedCell> cells);

  std::size_t ambient_dim() const { return ambient_; }
  int dim() const { return dim_; }
  const std::vector<WeightedCell>& cells() const { return cells_; }
  bool empty() const { return cells_.empty(); }

  /// Pairwise intersections of cells are faces of both.
  bool is_proper() const;

  bool operator==(const WeightedComplex&) const = default;

 private:
  std::size_t ambient_ = 0;
  int dim_ = 0;
  std::vector<WeightedCell> cells_;
};

struct BalancingViolation {
  Polyhedron tau;
  /// Representative in Z^n of the nonzero class Σ w_σ u_{σ/τ} mod H_τ ∩ Z^n.
  IntVector residual;
};

struct BalancingReport {
  bool balanced = true;
  std::vector<BalancingViolation> violations;
};

BalancingReport check_balancing(const WeightedComplex& complex);

/// Fan of all pairwise intersections; its support is |a| ∩ |b|.
Fan common_refinement(const Fan& a, const Fan& b);

/// Sum of cycles on the refinement of their supports. Cells sharing an affine
/// span are subdivided so that weights add; transversal crossings of cells
/// with different spans are left unsubdivided.
WeightedComplex add_cycles(const WeightedComplex& a, const WeightedComplex& b);

/// Intersects every cell with the cones of `fan`, keeping full-dimensional
/// pieces with their original weight.
WeightedComplex refine(const WeightedComplex& complex, const Fan& fan);

/// Throws DomainError for cones with lineality.
bool is_unimodular(const Cone& cone);
bool is_unimodular(const Fan& fan);

/// |fan| = R^n, tested combinatorially: a full-dimensional cone exists, every
/// codimension-one cone lies in exactly two full-dimensional cones, and the
/// full-dimensional cones are connected through shared facets.
bool is_complete(const Fan& fan);

}  // namespace tropdyn
