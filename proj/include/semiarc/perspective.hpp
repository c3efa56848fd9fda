#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semiarc/collineation.hpp"
#include "semiarc/field.hpp"
#include "semiarc/plane.hpp"

namespace semiarc {

/**
 * Coordinates on two lines l1, l2 meeting in P.
 *
 * With respect to the frame matrix M, leg 1 is {M(1,0,y)} and leg 2 is
 * {M(0,1,y)}, P = M(0,0,1). A point Q = M(-a,1,b) off both legs is the
 * centre of the perspectivity y -> a*y + b from leg 1 to leg 2.
 */
class PerspectiveFrame {
 public:
  /// l1: x1 = 0, l2: x0 = 0, P = (0,0,1), M = identity.
  static PerspectiveFrame pinned(PlanePtr plane);
  /// Frame on arbitrary distinct lines; the pinned frame when they are the
  /// pinned lines, otherwise M has columns (least point of l1 \ P,
  /// least point of l2 \ P, P).
  static PerspectiveFrame from_lines(PlanePtr plane, LineId l1, LineId l2);

  const Plane& plane() const { return *plane_; }
  const PlanePtr& plane_ptr() const { return plane_; }
  LineId l1() const { return l1_; }
  LineId l2() const { return l2_; }
  PointId vertex() const { return vertex_; }
  const Mat3& matrix() const { return m_; }

  PointId leg1_point(Elem y) const;
  PointId leg2_point(Elem y) const;
  /// Leg coordinate of a point on l_i \ P; nullopt otherwise.
  std::optional<Elem> leg1_coord(PointId p) const;
  std::optional<Elem> leg2_coord(PointId p) const;

  PointId centre_of(Elem a, Elem b) const;
  /// (a, b) for a point off both legs.
  std::optional<std::pair<Elem, Elem>> map_of(PointId q) const;

  /// Frame with matrix M*N (N expressed in the current coordinates).
  PerspectiveFrame rebased(const Mat3& n) const;

 private:
  PerspectiveFrame(PlanePtr plane, Mat3 m);

  PlanePtr plane_;
  Mat3 m_{};
  Mat3 m_inv_{};
  LineId l1_ = 0;
  LineId l2_ = 0;
  PointId vertex_ = 0;
};

/// G(A,B) = {y -> a*y + b : a in A, b in B} with its orbits on GF(q).
struct PerspectiveGroup {
  FiniteField field;
  MultSubgroup a;
  AddSubgroup b;
  unsigned n = 1;
  unsigned h = 0;
  unsigned d = 1;
  unsigned m = 0;
  /// orbits[0] is B; the others are sorted by least element.
  std::vector<std::vector<Elem>> orbits;
  std::vector<unsigned> orbit_of;  // element -> orbit index

  std::size_t order() const { return a.elements.size() * b.elements.size(); }
  bool contains(Elem mult, Elem shift) const { return a.contains(mult) && b.contains(shift); }
};

/**
 * Builds G(A,B) with |A| = n and B spanned by `basis` over GF(p^d).
 * Throws IncompatibleParameters when d does not divide r, when n does not
 * divide q-1, or when B is not invariant under A.
 */
PerspectiveGroup build_group(const FiniteField& field, unsigned n, unsigned d, std::span<const Elem> basis);

/// 1, g, ..., g^{h1-1}; independent over every GF(p^d) with h1 <= r/d.
std::vector<Elem> default_basis(const FiniteField& field, unsigned h1);

struct CentreSet {
  PerspectiveFrame frame;
  std::vector<PointId> x1;  // sorted
  std::vector<PointId> x2;
  std::vector<PointId> u;   // every centre of a perspectivity x1 -> x2
};

/// Brute-force centre set. Throws EmptyLeg or InvalidLeg.
CentreSet centres(const PerspectiveFrame& frame, std::vector<PointId> x1, std::vector<PointId> x2);

/// Centres {M(-a,1,b) : (a,b) in G}.
std::vector<PointId> structured_centres(const PerspectiveFrame& frame, const PerspectiveGroup& g);

/// Legs X_i = union over I of orbit images, plus the B-orbit when asked.
/// Orbit indices run over 1..m. Throws EmptySelection.
std::pair<std::vector<PointId>, std::vector<PointId>> perspective_sets_from_orbits(
    const PerspectiveFrame& frame, const PerspectiveGroup& g, const std::vector<unsigned>& orbit_indices,
    bool include_b);

struct RecoveredGroup {
  CentreSet centres;        // same sets, expressed in the aligned frame
  PerspectiveGroup group;   // maps of the centres are exactly G
};

/**
 * Finds a frame on the same two lines in which the maps induced by the
 * centres form G(A,B). Returns nullopt when U is empty.
 */
std::optional<RecoveredGroup> recover_group(const CentreSet& cs);

struct CentreClassification {
  int case_label = 0;  // 1..5
  std::size_t u_size = 0;
  std::map<unsigned, unsigned> profile;  // |l ∩ U| -> number of lines
  bool orbit_union = false;               // (d): legs are unions of orbits
  bool property_g = false;
  bool property_h = false;
  bool case_holds = false;  // the case's structural statement
  std::string failure;      // first failed check, empty when all hold

  bool verified() const { return orbit_union && property_g && property_h && case_holds; }
};

/**
 * Case 1..5 of the classification, with every structural claim checked by
 * brute force. `cs.frame` must be the frame in which G is expressed.
 * Throws InconsistentInput when U is empty or |U| != n p^h.
 */
CentreClassification classify_centres(const CentreSet& cs, const PerspectiveGroup& g);

}  // namespace semiarc
