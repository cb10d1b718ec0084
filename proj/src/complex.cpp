#include "tropdyn/polyhedra.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace tropdyn {

namespace {

std::string span_key(const Polyhedron& p) {
  std::string s = std::to_string(p.ambient_dim()) + ":";
  for (const auto& e : p.equations()) {
    for (const auto& x : e.normal) s += x.str() + ",";
    s += "=" + to_string(e.offset) + ";";
  }
  return s;
}

Polyhedron with_constraint(const Polyhedron& p, const LinearConstraint& c) {
  auto ineqs = p.facets();
  ineqs.push_back(c);
  return Polyhedron::from_constraints(p.ambient_dim(), ineqs, p.equations());
}

LinearConstraint flipped(const LinearConstraint& c) {
  IntVector n = c.normal;
  for (auto& x : n) x = -x;
  return {std::move(n), -c.offset};
}

// Splits `p` against `q` (same affine span, dimension d): the part inside q and
// the full-dimensional convex pieces of p \ q.
std::pair<Polyhedron, std::vector<Polyhedron>> split_against(const Polyhedron& p, const Polyhedron& q, int d) {
  std::vector<Polyhedron> outside;
  Polyhedron rest = p;
  for (const auto& f : q.facets()) {
    Polyhedron out = with_constraint(rest, flipped(f));
    if (out.dim() == d) outside.push_back(std::move(out));
    rest = with_constraint(rest, f);
    if (rest.dim() < d) break;
  }
  return {rest, outside};
}

struct Piece {
  Polyhedron cell;
  Integer weight;
};

// Inserts a weighted cell into a list of interior-disjoint pieces sharing its
// affine span, subdividing only where cells overlap.
void overlay_insert(std::vector<Piece>& pieces, const Polyhedron& cell, const Integer& weight, int d) {
  std::vector<Polyhedron> uncovered{cell};
  std::vector<Piece> next;
  for (auto& piece : pieces) {
    if (piece.cell.intersect(cell).dim() < d) {
      next.push_back(std::move(piece));
      continue;
    }
    auto [inside, outside] = split_against(piece.cell, cell, d);
    if (inside.dim() == d) next.push_back({inside, piece.weight + weight});
    for (auto& o : outside) next.push_back({std::move(o), piece.weight});

    std::vector<Polyhedron> remaining;
    for (auto& u : uncovered) {
      if (u.intersect(piece.cell).dim() < d) {
        remaining.push_back(std::move(u));
        continue;
      }
      auto [covered, rest] = split_against(u, piece.cell, d);
      for (auto& r : rest) remaining.push_back(std::move(r));
    }
    uncovered = std::move(remaining);
  }
  for (auto& u : uncovered) next.push_back({std::move(u), weight});
  pieces = std::move(next);
}

}  // namespace

Fan Fan::from_cones(std::size_t ambient, const std::vector<Cone>& cones) {
  for (std::size_t i = 0; i < cones.size(); ++i) {
    if (cones[i].ambient_dim() != ambient) throw DomainError("cone ambient dimension mismatch");
    for (std::size_t j = i + 1; j < cones.size(); ++j) {
      Polyhedron meet = cones[i].polyhedron().intersect(cones[j].polyhedron());
      if (!meet.is_face_of(cones[i].polyhedron()) || !meet.is_face_of(cones[j].polyhedron()))
        throw DomainError("cones do not meet in a common face");
    }
  }
  std::map<std::string, Cone> all;
  all.emplace(Cone::zero(ambient).polyhedron().key(), Cone::zero(ambient));
  for (const auto& c : cones)
    for (auto& f : c.faces()) all.emplace(f.polyhedron().key(), std::move(f));
  Fan fan;
  fan.ambient_ = ambient;
  for (auto& [k, c] : all) fan.cones_.push_back(std::move(c));
  std::sort(fan.cones_.begin(), fan.cones_.end());
  return fan;
}

std::vector<Cone> Fan::maximal_cones() const {
  std::set<std::string> non_maximal;
  for (const auto& c : cones_)
    for (const auto& f : c.polyhedron().facet_faces()) non_maximal.insert(f.key());
  std::vector<Cone> out;
  for (const auto& c : cones_)
    if (!non_maximal.count(c.polyhedron().key())) out.push_back(c);
  return out;
}

std::vector<Cone> Fan::cones_of_dim(int d) const {
  std::vector<Cone> out;
  for (const auto& c : cones_)
    if (c.dim() == d) out.push_back(c);
  return out;
}

std::optional<std::size_t> Fan::index_of(const Cone& c) const {
  auto it = std::lower_bound(cones_.begin(), cones_.end(), c);
  if (it == cones_.end() || !(*it == c)) return std::nullopt;
  return static_cast<std::size_t>(it - cones_.begin());
}

WeightedComplex::WeightedComplex(std::size_t ambient, int dim, std::vector<WeightedCell> cells)
    : ambient_(ambient), dim_(dim) {
  std::map<std::string, WeightedCell> merged;
  for (auto& c : cells) {
    if (c.cell.ambient_dim() != ambient) throw DomainError("cell ambient dimension mismatch");
    if (c.cell.dim() != dim)
      throw DomainError("non-pure complex: cell of dimension " + std::to_string(c.cell.dim()) + " in a " +
                        std::to_string(dim) + "-dimensional complex");
    auto [it, inserted] = merged.emplace(c.cell.key(), c);
    if (!inserted) it->second.weight += c.weight;
  }
  for (auto& [k, c] : merged)
    if (c.weight != 0) cells_.push_back(std::move(c));
  std::sort(cells_.begin(), cells_.end(), [](const WeightedCell& a, const WeightedCell& b) { return a.cell < b.cell; });
}

bool WeightedComplex::is_proper() const {
  for (std::size_t i = 0; i < cells_.size(); ++i)
    for (std::size_t j = i + 1; j < cells_.size(); ++j) {
      Polyhedron meet = cells_[i].cell.intersect(cells_[j].cell);
      if (!meet.is_face_of(cells_[i].cell) || !meet.is_face_of(cells_[j].cell)) return false;
    }
  return true;
}

BalancingReport check_balancing(const WeightedComplex& complex) {
  const int p = complex.dim();
  const std::size_t n = complex.ambient_dim();
  for (const auto& c : complex.cells())
    if (c.cell.dim() != p) throw DomainError("non-pure complex");

  struct FacetUse {
    Polyhedron facet;
    Integer weight;
    IntVector outward;
  };
  // Facets grouped by affine span. Balancing is evaluated on the overlay of
  // each group so that facets which only partially coincide still meet.
  std::map<std::string, std::vector<FacetUse>> groups;
  if (p >= 1) {
    for (const auto& c : complex.cells())
      for (auto& f : c.cell.facet_faces()) {
        IntVector u = outward_generator(f, c.cell);
        groups[span_key(f)].push_back({std::move(f), c.weight, std::move(u)});
      }
  }

  BalancingReport report;
  for (const auto& [key, uses] : groups) {
    std::vector<Piece> ridges;
    std::set<std::string> inserted;
    for (const auto& u : uses)
      if (inserted.insert(u.facet.key()).second) overlay_insert(ridges, u.facet, 0, p - 1);

    const auto lattice = saturate_and_complete(n, uses.front().facet.span_basis());
    for (const auto& ridge : ridges) {
      const RatVector x = ridge.cell.relative_interior_point();
      IntVector sum(lattice.quotient_rank());
      for (const auto& u : uses) {
        if (!u.facet.contains(x)) continue;
        auto q = lattice.quotient_coordinates(u.outward);
        for (std::size_t i = 0; i < q.size(); ++i) sum[i] += u.weight * q[i];
      }
      if (!is_zero(sum)) report.violations.push_back({ridge.cell, lattice.lift(sum)});
    }
  }
  std::sort(report.violations.begin(), report.violations.end(),
            [](const BalancingViolation& a, const BalancingViolation& b) { return a.tau < b.tau; });
  report.balanced = report.violations.empty();
  return report;
}

Fan common_refinement(const Fan& a, const Fan& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DomainError("fans live in different ambient dimensions");
  std::map<std::string, Cone> meets;
  for (const auto& x : a.maximal_cones())
    for (const auto& y : b.maximal_cones()) {
      Cone c = x.intersect(y);
      meets.emplace(c.polyhedron().key(), std::move(c));
    }
  std::vector<Cone> cones;
  for (auto& [k, c] : meets) cones.push_back(std::move(c));
  return Fan::from_cones(a.ambient_dim(), cones);
}

WeightedComplex add_cycles(const WeightedComplex& a, const WeightedComplex& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim())
    throw DomainError("dimension mismatch: cannot add cycles of different ambient or pure dimension");
  const int p = a.dim();
  std::map<std::string, std::vector<Piece>> groups;
  for (const auto* c : {&a, &b})
    for (const auto& cell : c->cells()) overlay_insert(groups[span_key(cell.cell)], cell.cell, cell.weight, p);

  std::vector<WeightedCell> cells;
  for (auto& [k, pieces] : groups)
    for (auto& piece : pieces) cells.push_back({std::move(piece.cell), std::move(piece.weight)});
  return WeightedComplex(a.ambient_dim(), p, std::move(cells));
}

WeightedComplex refine(const WeightedComplex& complex, const Fan& fan) {
  if (complex.ambient_dim() != fan.ambient_dim()) throw DomainError("ambient dimension mismatch");
  std::map<std::string, WeightedCell> pieces;
  const auto maximal = fan.maximal_cones();
  for (const auto& c : complex.cells())
    for (const auto& cone : maximal) {
      Polyhedron piece = c.cell.intersect(cone.polyhedron());
      if (piece.dim() == complex.dim()) pieces.emplace(piece.key(), WeightedCell{piece, c.weight});
    }
  std::vector<WeightedCell> cells;
  for (auto& [k, c] : pieces) cells.push_back(std::move(c));
  return WeightedComplex(complex.ambient_dim(), complex.dim(), std::move(cells));
}

bool is_unimodular(const Cone& cone) {
  if (!cone.is_pointed()) throw DomainError("unimodularity requires a pointed cone");
  const auto& rays = cone.rays();
  if (rays.empty()) return true;
  if (rank(cone.ambient_dim(), rays) != rays.size()) return false;
  auto snf = smith_normal_form(IntMatrix::from_columns(cone.ambient_dim(), rays));
  for (const auto& d : snf.invariant_factors())
    if (d != 1) return false;
  return true;
}

bool is_unimodular(const Fan& fan) {
  for (const auto& c : fan.maximal_cones())
    if (!is_unimodular(c)) return false;
  return true;
}

bool is_complete(const Fan& fan) {
  const int n = static_cast<int>(fan.ambient_dim());
  const auto full = fan.cones_of_dim(n);
  if (full.empty()) return false;
  if (n == 0) return true;

  std::map<std::string, std::vector<std::size_t>> owners;
  for (std::size_t i = 0; i < full.size(); ++i)
    for (const auto& f : full[i].polyhedron().facet_faces()) owners[f.key()].push_back(i);

  for (const auto& ridge : fan.cones_of_dim(n - 1)) {
    auto it = owners.find(ridge.polyhedron().key());
    if (it == owners.end() || it->second.size() != 2) return false;
  }

  std::vector<std::size_t> parent(full.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [key, idx] : owners)
    for (std::size_t k = 1; k < idx.size(); ++k) parent[find(idx[k])] = find(idx[0]);
  const std::size_t root = find(0);
  for (std::size_t i = 1; i < full.size(); ++i)
    if (find(i) != root) return false;
  return true;
}

}  // namespace tropdyn
