#include "semiarc/perspective.hpp"

#include <algorithm>
#include <set>

#include "semiarc/errors.hpp"

namespace semiarc {

PerspectiveFrame::PerspectiveFrame(PlanePtr plane, Mat3 m) : plane_(std::move(plane)), m_(m) {
  const FiniteField& f = plane_->field();
  const auto inv = mat_inverse(f, m_);
  if (!inv) throw Error(ErrorKind::InconsistentInput, "singular frame matrix");
  m_inv_ = *inv;
  auto col = [&](int c) { return Triple{m_[c], m_[3 + c], m_[6 + c]}; };
  const PointId a1 = plane_->point_index(col(0));
  const PointId a2 = plane_->point_index(col(1));
  vertex_ = plane_->point_index(col(2));
  l1_ = plane_->join(a1, vertex_);
  l2_ = plane_->join(a2, vertex_);
}

PerspectiveFrame PerspectiveFrame::pinned(PlanePtr plane) {
  if (!plane || !plane->has_coordinates()) {
    throw Error(ErrorKind::UnsupportedPlaneKind, "perspective frames need a generated plane");
  }
  return PerspectiveFrame(std::move(plane), identity_matrix());
}

PerspectiveFrame PerspectiveFrame::from_lines(PlanePtr plane, LineId l1, LineId l2) {
  if (!plane || !plane->has_coordinates()) {
    throw Error(ErrorKind::UnsupportedPlaneKind, "perspective frames need a generated plane");
  }
  const std::size_t q = plane->order();
  if (l1 == l2 || l1 >= plane->size() || l2 >= plane->size()) {
    throw Error(ErrorKind::InvalidLeg, "frame needs two distinct lines");
  }
  if (l1 == q * q && l2 == q * q + q) return pinned(std::move(plane));
  const PointId p = plane->meet(l1, l2);
  auto least_other = [&](LineId l) {
    for (PointId x : plane->points_on(l)) {
      if (x != p) return x;
    }
    return p;
  };
  const Triple a = plane->point_coords(least_other(l1));
  const Triple b = plane->point_coords(least_other(l2));
  const Triple c = plane->point_coords(p);
  Mat3 m{a[0], b[0], c[0], a[1], b[1], c[1], a[2], b[2], c[2]};
  return PerspectiveFrame(std::move(plane), m);
}

PointId PerspectiveFrame::leg1_point(Elem y) const {
  return plane_->point_index(mat_apply(plane_->field(), m_, Triple{1, 0, y}));
}

PointId PerspectiveFrame::leg2_point(Elem y) const {
  return plane_->point_index(mat_apply(plane_->field(), m_, Triple{0, 1, y}));
}

std::optional<Elem> PerspectiveFrame::leg1_coord(PointId p) const {
  const FiniteField& f = plane_->field();
  const Triple c = mat_apply(f, m_inv_, plane_->point_coords(p));
  if (c[1] != 0 || c[0] == 0) return std::nullopt;
  return f.div(c[2], c[0]);
}

std::optional<Elem> PerspectiveFrame::leg2_coord(PointId p) const {
  const FiniteField& f = plane_->field();
  const Triple c = mat_apply(f, m_inv_, plane_->point_coords(p));
  if (c[0] != 0 || c[1] == 0) return std::nullopt;
  return f.div(c[2], c[1]);
}

PointId PerspectiveFrame::centre_of(Elem a, Elem b) const {
  const FiniteField& f = plane_->field();
  return plane_->point_index(mat_apply(f, m_, Triple{f.neg(a), 1, b}));
}

std::optional<std::pair<Elem, Elem>> PerspectiveFrame::map_of(PointId q) const {
  const FiniteField& f = plane_->field();
  const Triple c = mat_apply(f, m_inv_, plane_->point_coords(q));
  if (c[0] == 0 || c[1] == 0) return std::nullopt;
  return std::pair{f.neg(f.div(c[0], c[1])), f.div(c[2], c[1])};
}

PerspectiveFrame PerspectiveFrame::rebased(const Mat3& n) const {
  return PerspectiveFrame(plane_, mat_mul(plane_->field(), m_, n));
}

std::vector<Elem> default_basis(const FiniteField& field, unsigned h1) {
  std::vector<Elem> basis;
  for (unsigned i = 0; i < h1; ++i) basis.push_back(field.exp(i));
  return basis;
}

namespace {

PerspectiveGroup assemble_group(const FiniteField& field, MultSubgroup a, AddSubgroup b) {
  PerspectiveGroup g{field, std::move(a), std::move(b)};
  const unsigned q = field.order();
  g.n = g.a.n;
  g.h = g.b.h;
  g.d = g.b.d;
  g.orbit_of.assign(q, ~0u);
  g.orbits.push_back(g.b.elements);
  for (Elem y : g.b.elements) g.orbit_of[y] = 0;
  for (Elem y = 0; y < q; ++y) {
    if (g.orbit_of[y] != ~0u) continue;
    std::set<Elem> orbit;
    for (Elem m : g.a.elements) {
      for (Elem s : g.b.elements) orbit.insert(field.add(field.mul(m, y), s));
    }
    const auto idx = static_cast<unsigned>(g.orbits.size());
    for (Elem z : orbit) g.orbit_of[z] = idx;
    g.orbits.emplace_back(orbit.begin(), orbit.end());
  }
  g.m = static_cast<unsigned>(g.orbits.size() - 1);
  // m = (p^{r-h} - 1) / n
  std::uint64_t pr = 1;
  for (unsigned i = g.h; i < field.degree(); ++i) pr *= field.characteristic();
  if ((pr - 1) % g.n != 0 || (pr - 1) / g.n != g.m) {
    throw Error(ErrorKind::InconsistentInput, "orbit count disagrees with (p^(r-h)-1)/n");
  }
  return g;
}

}  // namespace

PerspectiveGroup build_group(const FiniteField& field, unsigned n, unsigned d, std::span<const Elem> basis) {
  if (d == 0 || field.degree() % d != 0) {
    throw Error(ErrorKind::IncompatibleParameters, "d = " + std::to_string(d) + " does not divide r = " +
                                                       std::to_string(field.degree()));
  }
  if (n == 0 || (field.order() - 1) % n != 0) {
    throw Error(ErrorKind::IncompatibleParameters, "n = " + std::to_string(n) + " does not divide q-1");
  }
  AddSubgroup b;
  try {
    b = add_subgroup(field, d, basis);
  } catch (const Error& e) {
    throw Error(ErrorKind::IncompatibleParameters, e.what());
  }
  MultSubgroup a = mult_subgroup(field, n);
  if (!b.invariant_under(field, a)) {
    throw Error(ErrorKind::IncompatibleParameters, "B is not invariant under A (n must divide p^d - 1)");
  }
  return assemble_group(field, std::move(a), std::move(b));
}

CentreSet centres(const PerspectiveFrame& frame, std::vector<PointId> x1, std::vector<PointId> x2) {
  if (x1.empty() || x2.empty()) throw Error(ErrorKind::EmptyLeg, "both legs must be non-empty");
  const Plane& plane = frame.plane();
  std::sort(x1.begin(), x1.end());
  x1.erase(std::unique(x1.begin(), x1.end()), x1.end());
  std::sort(x2.begin(), x2.end());
  x2.erase(std::unique(x2.begin(), x2.end()), x2.end());
  PointMask m1(plane.size()), m2(plane.size());
  for (PointId p : x1) {
    if (p >= plane.size() || !frame.leg1_coord(p)) throw Error(ErrorKind::InvalidLeg, "point not on l1 \\ P");
    m1.set(p);
  }
  for (PointId p : x2) {
    if (p >= plane.size() || !frame.leg2_coord(p)) throw Error(ErrorKind::InvalidLeg, "point not on l2 \\ P");
    m2.set(p);
  }
  CentreSet cs{frame, std::move(x1), std::move(x2), {}};
  const LineId l1 = frame.l1(), l2 = frame.l2();
  for (PointId q = 0; q < plane.size(); ++q) {
    if (plane.incident(q, l1) || plane.incident(q, l2)) continue;
    bool ok = true;
    for (LineId l : plane.lines_through(q)) {
      if (m1.test(plane.meet(l, l1)) != m2.test(plane.meet(l, l2))) {
        ok = false;
        break;
      }
    }
    if (ok) cs.u.push_back(q);
  }
  return cs;
}

std::vector<PointId> structured_centres(const PerspectiveFrame& frame, const PerspectiveGroup& g) {
  std::vector<PointId> out;
  for (Elem a : g.a.elements) {
    for (Elem b : g.b.elements) out.push_back(frame.centre_of(a, b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<std::vector<PointId>, std::vector<PointId>> perspective_sets_from_orbits(
    const PerspectiveFrame& frame, const PerspectiveGroup& g, const std::vector<unsigned>& orbit_indices,
    bool include_b) {
  if (orbit_indices.empty() && !include_b) throw Error(ErrorKind::EmptySelection, "no orbit selected");
  std::vector<unsigned> chosen = orbit_indices;
  for (unsigned j : chosen) {
    if (j == 0 || j > g.m) {
      throw Error(ErrorKind::EmptySelection, "orbit index " + std::to_string(j) + " outside 1.." + std::to_string(g.m));
    }
  }
  if (include_b) chosen.push_back(0);
  std::vector<PointId> x1, x2;
  for (unsigned j : chosen) {
    for (Elem y : g.orbits[j]) {
      x1.push_back(frame.leg1_point(y));
      x2.push_back(frame.leg2_point(y));
    }
  }
  std::sort(x1.begin(), x1.end());
  x1.erase(std::unique(x1.begin(), x1.end()), x1.end());
  std::sort(x2.begin(), x2.end());
  x2.erase(std::unique(x2.begin(), x2.end()), x2.end());
  return {x1, x2};
}

namespace {

unsigned least_degree_for(const FiniteField& f, unsigned n) {
  for (unsigned e = 1; e <= f.degree(); ++e) {
    if (f.degree() % e) continue;
    std::uint64_t pe = 1;
    for (unsigned i = 0; i < e; ++i) pe *= f.characteristic();
    if ((pe - 1) % n == 0) return e;
  }
  return f.degree();
}

}  // namespace

std::optional<RecoveredGroup> recover_group(const CentreSet& cs) {
  if (cs.u.empty()) return std::nullopt;
  const FiniteField& f = cs.frame.plane().field();
  // Re-base leg 2 by the map of the least centre, so the identity is induced.
  const auto [a0, b0] = *cs.frame.map_of(cs.u.front());
  const Elem ia0 = f.inv(a0);
  const Mat3 rebase{1, 0, 0, 0, ia0, 0, 0, f.mul(b0, ia0), 1};
  PerspectiveFrame frame = cs.frame.rebased(rebase);

  auto maps_of = [&](const PerspectiveFrame& fr) {
    std::set<std::pair<Elem, Elem>> h;
    for (PointId q : cs.u) h.insert(*fr.map_of(q));
    return h;
  };
  auto h = maps_of(frame);
  // Conjugate by a shift so that an element with generating multiplier fixes 0.
  std::set<Elem> mults;
  for (const auto& [a, b] : h) mults.insert(a);
  const auto n = static_cast<unsigned>(mults.size());
  if (n > 1) {
    for (const auto& [a, b] : h) {
      if (f.element_order(a) != n) continue;
      const Elem c = f.neg(f.div(b, f.sub(a, 1)));
      const Mat3 shift{1, 0, 0, 0, 1, 0, c, c, 1};
      frame = frame.rebased(shift);
      h = maps_of(frame);
      break;
    }
  }
  std::vector<Elem> translations;
  for (const auto& [a, b] : h) {
    if (a == 1) translations.push_back(b);
  }
  const auto b_sub = add_subgroup_from_elements(f, translations);
  MultSubgroup a_sub = mult_subgroup(f, n);
  std::optional<PerspectiveGroup> built;
  try {
    built = assemble_group(f, std::move(a_sub), b_sub);
  } catch (const Error&) {
    throw Error(ErrorKind::InconsistentInput, "centre maps do not form a group of type G(A,B)");
  }
  PerspectiveGroup& g = *built;
  if (b_sub.h == 0) g.d = least_degree_for(f, n);
  std::set<std::pair<Elem, Elem>> expect;
  for (Elem a : g.a.elements) {
    for (Elem b : g.b.elements) expect.insert({a, b});
  }
  if (expect != h) throw Error(ErrorKind::InconsistentInput, "centre maps do not form a group of type G(A,B)");
  CentreSet aligned{frame, cs.x1, cs.x2, cs.u};
  return RecoveredGroup{std::move(aligned), std::move(*built)};
}

namespace {

std::vector<Elem> leg_coords(const CentreSet& cs, bool first) {
  std::vector<Elem> out;
  for (PointId p : first ? cs.x1 : cs.x2) out.push_back(*(first ? cs.frame.leg1_coord(p) : cs.frame.leg2_coord(p)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CentreClassification classify_centres(const CentreSet& cs, const PerspectiveGroup& g) {
  if (cs.u.empty()) throw Error(ErrorKind::InconsistentInput, "empty centre set");
  if (cs.u.size() != g.order()) {
    throw Error(ErrorKind::InconsistentInput, "|U| = " + std::to_string(cs.u.size()) + " but n p^h = " +
                                                  std::to_string(g.order()));
  }
  const Plane& plane = cs.frame.plane();
  const PointId vp = cs.frame.vertex();
  const unsigned ph = static_cast<unsigned>(g.b.elements.size());
  CentreClassification out;
  out.u_size = cs.u.size();
  auto fail = [&](const std::string& why) {
    if (out.failure.empty()) out.failure = why;
  };

  PointMask um(plane.size());
  for (PointId q : cs.u) um.set(q);
  std::vector<unsigned> meet(plane.size());
  for (LineId l = 0; l < plane.size(); ++l) {
    meet[l] = static_cast<unsigned>(plane.line_mask(l).intersect_count(um));
    ++out.profile[meet[l]];
  }

  // (d) and (g)
  const auto c1 = leg_coords(cs, true), c2 = leg_coords(cs, false);
  std::vector<char> in1(g.field.order(), 0), in2(g.field.order(), 0);
  for (Elem y : c1) in1[y] = 1;
  for (Elem y : c2) in2[y] = 1;
  out.orbit_union = true;
  out.property_g = true;
  for (const auto& orbit : g.orbits) {
    const auto k1 = std::count_if(orbit.begin(), orbit.end(), [&](Elem y) { return in1[y]; });
    const auto k2 = std::count_if(orbit.begin(), orbit.end(), [&](Elem y) { return in2[y]; });
    const auto sz = static_cast<long>(orbit.size());
    if ((k1 != 0 && k1 != sz) || (k2 != 0 && k2 != sz)) out.orbit_union = false;
    if ((k1 == sz) != (k2 == sz)) out.property_g = false;
  }
  if (!out.orbit_union) fail("legs are not unions of orbits");
  if (!out.property_g) fail("orbit membership differs between the legs");

  // B^1, B^2
  PointMask b1(plane.size()), b2(plane.size());
  for (Elem y : g.b.elements) {
    b1.set(cs.frame.leg1_point(y));
    b2.set(cs.frame.leg2_point(y));
  }
  // (h)
  out.property_h = true;
  for (LineId l = 0; l < plane.size(); ++l) {
    if (meet[l] >= 2 && !plane.incident(vp, l)) {
      if (!plane.line_mask(l).intersects(b1) || !plane.line_mask(l).intersects(b2)) out.property_h = false;
    }
  }
  if (!out.property_h) fail("a line off P meeting U twice misses B^1 or B^2");

  const bool a_trivial = g.n == 1;
  const bool b_trivial = g.h == 0;
  const bool subfield_pair = !b_trivial && g.b.is_subfield(g.field) && g.n + 1 == ph;
  if (a_trivial && b_trivial) {
    out.case_label = 1;
    out.case_holds = cs.u.size() == 1;
    if (!out.case_holds) fail("case 1: U is not a singleton");
  } else if (subfield_pair) {
    out.case_label = 4;
    std::vector<PointId> pts(cs.u.begin(), cs.u.end());
    for (Elem y : g.b.elements) {
      pts.push_back(cs.frame.leg1_point(y));
      pts.push_back(cs.frame.leg2_point(y));
    }
    pts.push_back(vp);
    std::sort(pts.begin(), pts.end());
    out.case_holds = is_subplane(plane, pts, ph);
    if (!out.case_holds) fail("case 4: U with B^1, B^2, P is not a subplane");
  } else if (a_trivial) {
    out.case_label = 2;
    out.case_holds = false;
    for (LineId l : plane.lines_through(vp)) out.case_holds |= meet[l] == cs.u.size();
    if (!out.case_holds) fail("case 2: U is not on a line through P");
  } else if (b_trivial) {
    out.case_label = 3;
    out.case_holds = false;
    for (LineId l = 0; l < plane.size(); ++l) {
      if (meet[l] == cs.u.size() && !plane.incident(vp, l)) out.case_holds = true;
    }
    if (!out.case_holds) fail("case 3: U is not on a line missing P");
  } else {
    out.case_label = 5;
    out.case_holds = true;
    for (const auto& [k, c] : out.profile) {
      if (k != 0 && k != 1 && k != g.n && k != ph) {
        out.case_holds = false;
        fail("case 5: intersection number " + std::to_string(k) + " outside (0, 1, n, p^h)");
      }
    }
    unsigned long_lines = 0;
    for (LineId l = 0; l < plane.size(); ++l) {
      if (meet[l] == ph) {
        ++long_lines;
        if (!plane.incident(vp, l)) {
          out.case_holds = false;
          fail("case 5: a p^h-line misses P");
        }
      }
      if (meet[l] == g.n && (!plane.line_mask(l).intersects(b1) || !plane.line_mask(l).intersects(b2))) {
        out.case_holds = false;
        fail("case 5: an n-line misses B^1 or B^2");
      }
    }
    if (long_lines != g.n) {
      out.case_holds = false;
      fail("case 5: " + std::to_string(long_lines) + " lines meet U in p^h points, expected n");
    }
  }
  return out;
}

}  // namespace semiarc
