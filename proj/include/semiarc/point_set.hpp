#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "semiarc/plane.hpp"

namespace semiarc {

/**
 * Non-empty set of plane points with cached line intersection numbers.
 * Points are kept sorted and deduplicated. Immutable.
 */
class PointSet {
 public:
  PointSet(PlanePtr plane, std::vector<PointId> points);

  const Plane& plane() const noexcept { return *plane_; }
  const PlanePtr& plane_ptr() const noexcept { return plane_; }
  std::span<const PointId> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool contains(PointId p) const { return mask_.test(p); }
  const PointMask& mask() const noexcept { return mask_; }
  /// |l ∩ S|
  unsigned on_line(LineId l) const { return line_counts_[l]; }
  std::span<const unsigned> line_counts() const noexcept { return line_counts_; }

 private:
  PlanePtr plane_;
  std::vector<PointId> points_;
  PointMask mask_;
  std::vector<unsigned> line_counts_;
};

/// Tangent count of each point, in the order of `s.points()`.
std::vector<unsigned> tangent_counts(const PointSet& s);

struct SemiarcReport {
  std::optional<unsigned> t;            // set iff every point has t tangents
  std::vector<unsigned> tangent_counts; // aligned with the set's points
  std::vector<PointId> offending;       // points off the most common count

  bool is_semiarc() const noexcept { return t.has_value(); }
};

SemiarcReport classify_semiarc(const PointSet& s);

/// k -> number of lines meeting S in exactly k points, for k >= 1.
std::map<unsigned, unsigned> secant_spectrum(const PointSet& s);

/// The (q+1-t)-secants of a t-semiarc. Throws NotASemiarc if `t` is not the
/// set's tangent count.
std::vector<LineId> long_secants(const PointSet& s, unsigned t);

/// Two lines whose symmetric difference meets S in a V_t-configuration.
struct VtWitness {
  LineId l1 = 0;
  LineId l2 = 0;
  PointId vertex = 0;
  bool vertex_in_set = false;
  std::vector<PointId> removed1;  // l1 \ (S ∪ {vertex})
  std::vector<PointId> removed2;

  /// V-circle type: the vertex is not in S.
  bool is_open() const noexcept { return !vertex_in_set; }
};

/// All line pairs (l1 < l2) carrying a V_t-configuration of S.
std::vector<VtWitness> detect_vt(const PointSet& s, unsigned t);

struct RedeiReport {
  bool is_blocking = false;
  bool is_minimal = false;
  bool is_nontrivial = false;
  std::vector<LineId> redei_lines;  // only for non-trivial blocking sets
};

RedeiReport redei_analysis(const PointSet& s);

struct LineMeetingBound {
  std::size_t lines_meeting = 0;
  unsigned r = 0;
  std::int64_t bound = 0;
  bool holds = false;
};

/// Counts the lines meeting U and compares with 1 + rq + (|U|-r)(q+1-r),
/// where r is the number of lines through the external point p meeting U.
LineMeetingBound line_meeting_bound(const PointSet& u, PointId p);

/// S is exactly a V_t-configuration: 2(q-t) points on two lines, none at
/// their intersection, q-t on each.
bool is_bare_vt_configuration(const PointSet& s, unsigned t);

}  // namespace semiarc
