#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semiarc/field.hpp"
#include "semiarc/point_mask.hpp"

namespace semiarc {

using PointId = std::uint32_t;
using LineId = std::uint32_t;
using Triple = std::array<Elem, 3>;

enum class PlaneKind { GeneratedDesarguesian, Loaded };

/// Scales a nonzero triple so its last nonzero coordinate is 1.
Triple normalize(const FiniteField& field, Triple x);

/**
 * Projective plane of order q with points and lines indexed 0..q^2+q.
 *
 * Generated planes carry homogeneous coordinates. Index layout, for both
 * points and lines: (a, b, 1) -> a*q + b, (a, 1, 0) -> q^2 + a,
 * (1, 0, 0) -> q^2 + q. A point x lies on a line [u] iff u.x = 0.
 */
class Plane {
 public:
  unsigned order() const noexcept { return q_; }
  /// Number of points, which equals the number of lines.
  std::size_t size() const noexcept { return points_on_.size(); }
  PlaneKind kind() const noexcept { return kind_; }
  /// "pg:<q>" for generated planes, "file:<path>" for loaded ones.
  const std::string& ref() const noexcept { return ref_; }

  std::span<const PointId> points_on(LineId l) const { return points_on_[l]; }
  std::span<const LineId> lines_through(PointId p) const { return lines_through_[p]; }
  const PointMask& line_mask(LineId l) const { return line_masks_[l]; }
  bool incident(PointId p, LineId l) const { return line_masks_[l].test(p); }

  /// The line through two distinct points.
  LineId join(PointId a, PointId b) const;
  /// The common point of two distinct lines.
  PointId meet(LineId a, LineId b) const;

  bool has_coordinates() const noexcept { return field_.has_value(); }
  const FiniteField& field() const;
  const Triple& point_coords(PointId p) const { return point_coords_.at(p); }
  const Triple& line_coords(LineId l) const { return line_coords_.at(l); }
  PointId point_index(const Triple& x) const;
  LineId line_index(const Triple& u) const;

 private:
  friend std::shared_ptr<const Plane> build_pg2(const FiniteField& field);
  friend std::shared_ptr<const Plane> load_plane(std::istream& in, std::string ref);
  Plane() = default;
  void finish_incidence();
  std::size_t coord_index(const Triple& normalized) const;

  unsigned q_ = 0;
  PlaneKind kind_ = PlaneKind::Loaded;
  std::string ref_;
  std::vector<std::vector<PointId>> points_on_;
  std::vector<std::vector<LineId>> lines_through_;
  std::vector<PointMask> line_masks_;
  std::vector<LineId> join_;  // dense tables, empty for very large planes
  std::vector<PointId> meet_;
  std::optional<FiniteField> field_;
  std::vector<Triple> point_coords_;
  std::vector<Triple> line_coords_;
};

using PlanePtr = std::shared_ptr<const Plane>;

/// Desarguesian plane PG(2,q) over `field`.
PlanePtr build_pg2(const FiniteField& field);
PlanePtr build_pg2(unsigned q);

/**
 * Reads an incidence file: first a line `order q`, then q^2+q+1 lines of
 * q+1 space-separated 0-based point indices. `#` starts a comment.
 * Throws MalformedFile on syntax errors and AxiomViolation (naming a
 * witness) when the incidence is not a projective plane.
 */
PlanePtr load_plane(std::istream& in, std::string ref = "file:-");
PlanePtr load_plane_file(const std::string& path);
void write_plane(std::ostream& out, const Plane& plane);

/// Plane from a reference: "pg:<q>" or "file:<path>".
PlanePtr plane_from_ref(const std::string& ref);

/// Canonical subfield subplane PG(2, |sub|) inside a generated plane.
struct Subplane {
  unsigned order = 0;
  std::vector<PointId> points;                 // sorted
  std::vector<LineId> lines;                   // sorted plane lines carrying >= 2 subplane points
  std::vector<std::vector<PointId>> line_points;  // subplane points on each of `lines`
};

Subplane subplane_embed(const FiniteField& sub, const Plane& plane);
Subplane subplane_of_degree(const Plane& plane, unsigned d);

/// True when `points` is a subplane of the given order: the right size and
/// every line meets it in 0, 1 or order+1 points.
bool is_subplane(const Plane& plane, std::span<const PointId> points, unsigned order);

}  // namespace semiarc
