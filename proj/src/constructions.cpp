#include "semiarc/constructions.hpp"

#include <algorithm>
#include <set>

#include "semiarc/errors.hpp"

namespace semiarc {

std::string_view to_string(VClaim c) {
  switch (c) {
    case VClaim::Any: return "any";
    case VClaim::Open: return "open";
    case VClaim::Closed: return "closed";
    case VClaim::None: return "none";
    case VClaim::NotOpen: return "not-open";
  }
  return "any";
}

std::string_view to_string(ThmCase c) {
  switch (c) {
    case ThmCase::I_i: return "thm-I-i";
    case ThmCase::I_ii: return "thm-I-ii";
    case ThmCase::I_iii: return "thm-I-iii";
    case ThmCase::II_ii: return "thm-II-ii";
    case ThmCase::II_iii: return "thm-II-iii";
  }
  return "thm-I-i";
}

std::optional<ThmCase> thm_case_from_string(std::string_view s) {
  for (ThmCase c : {ThmCase::I_i, ThmCase::I_ii, ThmCase::I_iii, ThmCase::II_ii, ThmCase::II_iii}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::optional<QMinus2Kind> qm2_kind_from_string(std::string_view s) {
  if (s == "quadrangle") return QMinus2Kind::Quadrangle;
  if (s == "quadrilateral") return QMinus2Kind::Quadrilateral;
  if (s == "fano") return QMinus2Kind::Fano;
  return std::nullopt;
}

ConstructionCheck check_construction(const Construction& c) {
  ConstructionCheck out;
  const auto report = classify_semiarc(c.set);
  out.t = report.t;
  out.t_matches = report.t && *report.t == c.claimed_t;
  if (!out.t_matches) return out;
  bool on_lines = !c.lines.has_value();
  for (const auto& w : detect_vt(c.set, c.claimed_t)) {
    (w.vertex_in_set ? out.closed_witnesses : out.open_witnesses) += 1;
    if (c.lines) {
      const auto [a, b] = *c.lines;
      const bool same = (w.l1 == a && w.l2 == b) || (w.l1 == b && w.l2 == a);
      const bool right_type = (c.claimed_type == VClaim::Open) != w.vertex_in_set;
      if (same && right_type) on_lines = true;
    }
  }
  switch (c.claimed_type) {
    case VClaim::Any: out.type_matches = true; break;
    case VClaim::Open: out.type_matches = out.open_witnesses > 0 && on_lines; break;
    case VClaim::Closed: out.type_matches = out.closed_witnesses > 0 && on_lines; break;
    case VClaim::None: out.type_matches = out.open_witnesses == 0 && out.closed_witnesses == 0; break;
    case VClaim::NotOpen: out.type_matches = out.open_witnesses == 0; break;
  }
  return out;
}

namespace {

[[noreturn]] void violated(const std::string& rule) { throw Error(ErrorKind::CaseConstraintViolated, rule); }

std::vector<PointId> sorted_unique(std::vector<PointId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t out = 1;
  while (e--) out *= b;
  return out;
}

struct PinnedLines {
  LineId l1, l2;
  PointId p;
};

PinnedLines pinned_lines(const Plane& plane) {
  const std::size_t q = plane.order();
  return {static_cast<LineId>(q * q), static_cast<LineId>(q * q + q), 0};
}

}  // namespace

Construction projective_triangle(PlanePtr plane) {
  const FiniteField& f = plane->field();
  if (f.characteristic() == 2) throw Error(ErrorKind::EvenOrder, "projective triangle needs odd q");
  std::vector<PointId> pts;
  for (Elem c : f.nonzero_squares()) {
    pts.push_back(plane->point_index({c, 0, 1}));
    pts.push_back(plane->point_index({0, f.neg(c), 1}));
    pts.push_back(plane->point_index({c, 1, 0}));
  }
  for (Triple x : {Triple{1, 0, 0}, Triple{0, 1, 0}, Triple{0, 0, 1}}) pts.push_back(plane->point_index(x));
  const unsigned q = plane->order();
  Construction c{"projective-triangle", {{"q", q}}, PointSet(plane, pts), (q - 1) / 2, VClaim::Closed, std::nullopt};
  return c;
}

Construction vt_configuration(PlanePtr plane, LineId l1, LineId l2, unsigned t, std::vector<PointId> removed1,
                              std::vector<PointId> removed2) {
  const unsigned q = plane->order();
  if (l1 == l2 || l1 >= plane->size() || l2 >= plane->size()) {
    throw Error(ErrorKind::BadRemovalCount, "two distinct lines are needed");
  }
  if (t < 1 || t + 2 > q) {
    throw Error(ErrorKind::BadRemovalCount, "t = " + std::to_string(t) + " outside 1..q-2");
  }
  const PointId p = plane->meet(l1, l2);
  removed1 = sorted_unique(std::move(removed1));
  removed2 = sorted_unique(std::move(removed2));
  auto check = [&](const std::vector<PointId>& rem, LineId l) {
    if (rem.size() != t) {
      throw Error(ErrorKind::BadRemovalCount, "expected " + std::to_string(t) + " removed points per line");
    }
    for (PointId x : rem) {
      if (x >= plane->size() || x == p || !plane->incident(x, l)) {
        throw Error(ErrorKind::BadRemovalCount, "removed point " + std::to_string(x) + " is not on l \\ P");
      }
    }
  };
  check(removed1, l1);
  check(removed2, l2);
  std::vector<PointId> pts;
  for (LineId l : {l1, l2}) {
    const auto& rem = l == l1 ? removed1 : removed2;
    for (PointId x : plane->points_on(l)) {
      if (x != p && !std::binary_search(rem.begin(), rem.end(), x)) pts.push_back(x);
    }
  }
  nlohmann::json params{{"q", q}, {"t", t}, {"l1", l1}, {"l2", l2}, {"removed1", removed1}, {"removed2", removed2}};
  return Construction{"vt-config", std::move(params), PointSet(plane, pts), t, VClaim::Open, std::pair{l1, l2}};
}

Construction vt_configuration(PlanePtr plane, LineId l1, LineId l2, unsigned t) {
  if (l1 == l2 || l1 >= plane->size() || l2 >= plane->size()) {
    throw Error(ErrorKind::BadRemovalCount, "two distinct lines are needed");
  }
  const PointId p = plane->meet(l1, l2);
  std::vector<PointId> r1, r2;
  for (PointId x : plane->points_on(l1)) {
    if (x != p && r1.size() < t) r1.push_back(x);
  }
  for (PointId x : plane->points_on(l2)) {
    if (x != p && r2.size() < t) r2.push_back(x);
  }
  return vt_configuration(std::move(plane), l1, l2, t, std::move(r1), std::move(r2));
}

namespace {

Construction thm_type_one(PlanePtr plane, ThmCase which, const ThmParams& params) {
  const Plane& pl = *plane;
  const FiniteField& f = pl.field();
  const unsigned q = f.order();
  const auto g = build_group(f, params.n, params.d, default_basis(f, params.h1));
  const auto ph = static_cast<unsigned>(g.b.elements.size());
  std::vector<unsigned> orbits(params.orbits);
  std::sort(orbits.begin(), orbits.end());
  orbits.erase(std::unique(orbits.begin(), orbits.end()), orbits.end());
  const bool with_b = which == ThmCase::I_iii;
  if (!with_b && orbits.empty()) violated("I must be non-empty");
  if (with_b && orbits.size() >= g.m) violated("I must be a proper subset of {1..m}");
  if ((which == ThmCase::I_i || which == ThmCase::I_iii) && g.h == 0) violated("h >= 1 is required");
  if (which == ThmCase::I_ii && g.n < 2) violated("n >= 2 is required");

  const auto frame = PerspectiveFrame::pinned(plane);
  auto [x1, x2] = perspective_sets_from_orbits(frame, g, orbits, with_b);
  const auto cs = centres(frame, x1, x2);
  PointMask um(pl.size());
  for (PointId u : cs.u) um.set(u);
  const PointId vp = frame.vertex();
  auto u_on = [&](LineId l) { return static_cast<unsigned>(pl.line_mask(l).intersect_count(um)); };
  auto u_points = [&](LineId l) {
    std::vector<PointId> out;
    for (PointId x : pl.points_on(l)) {
      if (um.test(x)) out.push_back(x);
    }
    return out;
  };

  std::vector<PointId> x;
  if (params.x) {
    x = sorted_unique(*params.x);
    for (PointId p : x) {
      if (p >= pl.size() || !um.test(p)) violated("X must be a subset of U");
    }
  }
  if (which == ThmCase::I_i || which == ThmCase::I_ii) {
    const bool through_p = which == ThmCase::I_i;
    const unsigned want = through_p ? ph : g.n;
    if (params.x) {
      if (x.size() < 2 || x.size() > want) violated("|X| must lie in 2.." + std::to_string(want));
      const LineId l = pl.join(x[0], x[1]);
      for (PointId p : x) {
        if (!pl.incident(p, l)) violated("X must be collinear");
      }
      if (pl.incident(vp, l) != through_p) violated(through_p ? "X must lie on a line through P" : "X must lie on a line missing P");
      if (u_on(l) != want) violated("the line of X must meet U in " + std::to_string(want) + " points");
    } else {
      for (LineId l = 0; l < pl.size() && x.empty(); ++l) {
        if (pl.incident(vp, l) != through_p || l == frame.l1() || l == frame.l2()) continue;
        if (u_on(l) == want) {
          const auto up = u_points(l);
          x.assign(up.begin(), up.begin() + 2);
        }
      }
      if (x.empty()) violated("no line meets U in " + std::to_string(want) + " points");
    }
  } else {
    if (params.x) {
      if (x.size() < 2) violated("|X| >= 2 is required");
    } else {
      for (LineId l : pl.lines_through(vp)) {
        if (u_on(l) >= 2) {
          x = u_points(l);
          break;
        }
      }
      if (x.empty()) violated("no line through P meets U twice");
    }
    PointMask xm(pl.size());
    for (PointId p : x) xm.set(p);
    for (LineId l : pl.lines_through(vp)) {
      if (pl.line_mask(l).intersect_count(xm) == 1) violated("a line through P meets X in exactly one point");
    }
  }

  std::vector<PointId> pts = x1;
  pts.insert(pts.end(), x2.begin(), x2.end());
  pts.insert(pts.end(), x.begin(), x.end());
  nlohmann::json jp{{"q", q},           {"n", params.n}, {"d", params.d}, {"h1", params.h1},
                    {"orbits", orbits}, {"x", x},        {"m", g.m}};
  const auto t = static_cast<unsigned>(q - x1.size());
  return Construction{std::string(to_string(which)), std::move(jp), PointSet(plane, pts), t, VClaim::Open,
                      std::pair{frame.l1(), frame.l2()}};
}

}  // namespace

Construction build_thm_case(PlanePtr plane, ThmCase which, const ThmParams& params) {
  const Plane& pl = *plane;
  const FiniteField& f = pl.field();
  const unsigned q = f.order();
  if (which == ThmCase::I_i || which == ThmCase::I_ii || which == ThmCase::I_iii) {
    return thm_type_one(std::move(plane), which, params);
  }
  const auto [l1, l2, vp] = pinned_lines(pl);
  if (which == ThmCase::II_iii) {
    if (params.n == 0 || (q - 1) % params.n != 0) violated("n must divide q-1");
    if (params.n + 2 > q) violated("n <= q-2 is required");
    const auto a = mult_subgroup(f, params.n);
    std::vector<PointId> pts;
    for (Elem x : a.elements) {
      pts.push_back(pl.point_index({x, 0, 1}));
      pts.push_back(pl.point_index({0, f.neg(x), 1}));
      pts.push_back(pl.point_index({x, 1, 0}));
    }
    for (Triple x : {Triple{1, 0, 0}, Triple{0, 1, 0}, Triple{0, 0, 1}}) pts.push_back(pl.point_index(x));
    return Construction{"thm-II-iii", {{"q", q}, {"n", params.n}}, PointSet(plane, pts), q - 1 - params.n,
                        VClaim::Closed, std::nullopt};
  }
  // II-ii
  if (params.d == 0 || f.degree() % params.d != 0 || params.d >= f.degree()) {
    violated("the subplane degree must be a proper divisor of r");
  }
  const auto sub = subplane_of_degree(pl, params.d);
  auto in_sub = [&](PointId p) { return std::binary_search(sub.points.begin(), sub.points.end(), p); };
  std::vector<LineId> p_lines;
  for (std::size_t i = 0; i < sub.lines.size(); ++i) {
    const LineId l = sub.lines[i];
    if (l != l1 && l != l2 && pl.incident(vp, l)) p_lines.push_back(l);
  }
  std::vector<PointId> x;
  if (params.x) {
    x = sorted_unique(*params.x);
    for (PointId p : x) {
      if (p >= pl.size() || !in_sub(p) || pl.incident(p, l1) || pl.incident(p, l2)) {
        violated("X must lie in the subplane off l1 and l2");
      }
    }
  } else {
    for (LineId l : p_lines) {
      for (PointId p : pl.points_on(l)) {
        if (p != vp && in_sub(p)) {
          x.push_back(p);
          break;
        }
      }
    }
  }
  for (LineId l : p_lines) {
    if (std::none_of(x.begin(), x.end(), [&](PointId p) { return pl.incident(p, l); })) {
      violated("a subplane line through P misses X");
    }
  }
  std::vector<PointId> pts = x;
  for (LineId l : {l1, l2}) {
    for (PointId p : pl.points_on(l)) {
      if (in_sub(p)) pts.push_back(p);
    }
  }
  const auto s = static_cast<unsigned>(ipow(f.characteristic(), params.d));
  return Construction{"thm-II-ii", {{"q", q}, {"d", params.d}, {"x", x}}, PointSet(plane, pts), q - s,
                      VClaim::Closed, std::pair{l1, l2}};
}

Construction suetake(PlanePtr plane, const std::vector<Elem>& a_in) {
  const FiniteField& f = plane->field();
  const unsigned q = f.order();
  std::vector<Elem> a(a_in);
  std::sort(a.begin(), a.end());
  if (std::adjacent_find(a.begin(), a.end()) != a.end()) throw Error(ErrorKind::BadASet, "A has repeated elements");
  for (Elem x : a) {
    if (x == 0 || x >= q) throw Error(ErrorKind::BadASet, "A must be a subset of GF(q) \\ {0}");
    if (!std::binary_search(a.begin(), a.end(), f.neg(x))) {
      throw Error(ErrorKind::BadASet, "A != -A: " + std::to_string(f.neg(x)) + " is missing");
    }
  }
  if (a.size() < 2 || a.size() + 2 > q) throw Error(ErrorKind::BadASet, "need 2 <= |A| <= q-2");
  // |B| = 1 (possible only for even q) leaves a point with two tangents.
  if (a.size() + 3 > q) throw Error(ErrorKind::BadASet, "B = GF(q) \\ (A u {0}) needs at least two elements");
  std::vector<PointId> pts;
  for (Elem x = 1; x < q; ++x) {
    if (std::binary_search(a.begin(), a.end(), x)) {
      pts.push_back(plane->point_index({0, x, 1}));
    } else {
      pts.push_back(plane->point_index({x, 0, 1}));
    }
    pts.push_back(plane->point_index({x, x, 1}));
    if (x != 1) pts.push_back(plane->point_index({x, 1, 0}));
  }
  return Construction{"suetake", {{"q", q}, {"a", a}}, PointSet(plane, pts), 1, VClaim::NotOpen, std::nullopt};
}

Construction km_example(PlanePtr plane, unsigned which, const KmParams& params) {
  const Plane& pl = *plane;
  const FiniteField& f = pl.field();
  const unsigned q = f.order();
  if (which < 1 || which > 4) violated("KM family index must be 1..4");
  const auto& chain = params.chain;
  if (chain.size() < 2 || chain.back() != f.degree()) {
    throw Error(ErrorKind::ChainNotNested, "chain must have at least two members and end at r");
  }
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (chain[i] == 0 || chain[i + 1] % chain[i] != 0 || chain[i + 1] == chain[i]) {
      throw Error(ErrorKind::ChainNotNested, "subfield degrees must strictly increase by divisibility");
    }
  }
  const auto s = static_cast<unsigned>(chain.size() - 1);
  std::vector<unsigned> subset(params.subset);
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  for (unsigned j : subset) {
    if (j < 1 || j > s) violated("I must be a subset of {1.." + std::to_string(s) + "}");
  }
  if ((which == 1 || which == 2) && subset.empty()) violated("I must be non-empty");
  if (which == 3 && subset.size() == s) violated("I must be a proper subset");

  const auto [l1, l2, vp] = pinned_lines(pl);
  std::vector<Subplane> subs;
  for (unsigned d : chain) subs.push_back(subplane_of_degree(pl, d));
  auto in = [&](std::size_t j, PointId p) {
    return std::binary_search(subs[j].points.begin(), subs[j].points.end(), p);
  };
  auto layer = [&](std::size_t j) {
    std::vector<PointId> out;
    for (LineId l : {l1, l2}) {
      for (PointId p : pl.points_on(l)) {
        if (p == vp || !in(j, p)) continue;
        if (j > 0 && in(j - 1, p)) continue;
        out.push_back(p);
      }
    }
    return sorted_unique(out);
  };
  const unsigned r0 = subs[0].order;
  std::vector<LineId> p_lines, other_lines;
  for (LineId l : subs[0].lines) {
    if (l == l1 || l == l2) continue;
    (pl.incident(vp, l) ? p_lines : other_lines).push_back(l);
  }
  auto sub0_points_on = [&](LineId l, bool skip_legs) {
    std::vector<PointId> out;
    for (PointId p : pl.points_on(l)) {
      if (!in(0, p) || p == vp) continue;
      if (skip_legs && (pl.incident(p, l1) || pl.incident(p, l2))) continue;
      out.push_back(p);
    }
    return out;
  };

  std::vector<PointId> z;
  if (params.z) {
    z = sorted_unique(*params.z);
    for (PointId p : z) {
      if (p >= pl.size() || !in(0, p) || p == vp) violated("Z must lie in the smallest subplane");
    }
  }
  if (which == 1 || which == 2) {
    const auto& pool = which == 1 ? p_lines : other_lines;
    if (params.z) {
      if (z.size() < 2) violated("|Z| >= 2 is required");
      const LineId l = pl.join(z[0], z[1]);
      if (std::find(pool.begin(), pool.end(), l) == pool.end()) {
        violated(which == 1 ? "Z must lie on a subplane line through P" : "Z must lie on a subplane line missing P");
      }
      for (PointId p : z) {
        if (!pl.incident(p, l)) violated("Z must be collinear");
        if (which == 2 && (pl.incident(p, l1) || pl.incident(p, l2))) violated("Z must avoid l1 and l2");
      }
    } else {
      for (LineId l : pool) {
        const auto cand = sub0_points_on(l, true);
        if (cand.size() >= 2) {
          z.assign(cand.begin(), cand.begin() + 2);
          break;
        }
      }
      if (z.empty()) violated("no subplane line carries two admissible Z points");
    }
  } else {
    for (PointId p : z) {
      if (pl.incident(p, l1) || pl.incident(p, l2)) violated("Z must avoid l1 and l2");
    }
    if (!params.z) {
      if (which == 3) {
        const auto cand = sub0_points_on(p_lines.front(), true);
        z.assign(cand.begin(), cand.begin() + std::min<std::size_t>(2, cand.size()));
      } else {
        for (LineId l : p_lines) z.push_back(sub0_points_on(l, true).front());
        z = sorted_unique(z);
      }
    }
    PointMask zm(pl.size());
    for (PointId p : z) zm.set(p);
    for (LineId l : p_lines) {
      const auto k = pl.line_mask(l).intersect_count(zm);
      if (which == 3 && k == 1) violated("a subplane line through P meets Z in exactly one point");
      if (which == 4 && k == 0) violated("a subplane line through P misses Z");
    }
  }

  std::vector<PointId> pts = z;
  std::size_t half = 0;
  for (unsigned j : subset) {
    if (which == 4) break;
    const auto lay = layer(j);
    half += lay.size() / 2;
    pts.insert(pts.end(), lay.begin(), lay.end());
  }
  unsigned t = q - static_cast<unsigned>(half);
  if (which >= 3) {
    const auto lay = layer(0);
    pts.insert(pts.end(), lay.begin(), lay.end());
    t -= r0;
  }
  if (which == 4) pts.push_back(vp);
  nlohmann::json jp{{"q", q}, {"chain", chain}, {"subset", which == 4 ? std::vector<unsigned>{} : subset}, {"z", z}};
  return Construction{"km-" + std::to_string(which), std::move(jp), PointSet(plane, pts), t,
                      which == 4 ? VClaim::Closed : VClaim::Open, std::pair{l1, l2}};
}

Construction conic_example(PlanePtr plane, unsigned part, unsigned sub_degree) {
  const Plane& pl = *plane;
  const FiniteField& f = pl.field();
  const unsigned q = f.order();
  if (part != 1 && part != 2) violated("part must be 1 or 2");
  const auto s = static_cast<unsigned>(ipow(f.characteristic(), sub_degree));
  if (s <= 3) throw Error(ErrorKind::SubfieldTooSmall, "the subplane order must exceed 3");
  if (sub_degree == 0 || f.degree() % sub_degree != 0 || sub_degree == f.degree()) {
    throw Error(ErrorKind::NotASubfield, "GF(" + std::to_string(s) + ") is not a proper subfield of GF(" +
                                             std::to_string(q) + ")");
  }
  // For even s the tangents meet in the nucleus and both parts pick up a V_t.
  if (s % 2 == 0) violated("the conic construction needs odd s");
  const auto sub = subplane_of_degree(pl, sub_degree);
  auto in_sub = [&](PointId p) { return std::binary_search(sub.points.begin(), sub.points.end(), p); };
  std::vector<PointId> conic{pl.point_index({0, 1, 0})};
  for (Elem x : f.subfield(sub_degree)) conic.push_back(pl.point_index({x, f.mul(x, x), 1}));
  conic = sorted_unique(conic);
  PointMask cm(pl.size());
  for (PointId p : conic) cm.set(p);
  auto tangent = [&](PointId at) {
    for (LineId l : sub.lines) {
      if (pl.incident(at, l) && pl.line_mask(l).intersect_count(cm) == 1) return l;
    }
    violated("conic point without tangent");
  };
  const PointId q1 = pl.point_index({0, 0, 1});
  const PointId q2 = pl.point_index({1, 1, 1});
  const LineId l1 = tangent(q1);
  const LineId l2 = part == 1 ? tangent(q2) : pl.join(q1, q2);
  const PointId vp = pl.meet(l1, l2);

  std::optional<PointId> z;
  if (part == 1) {
    for (PointId c : pl.points_on(pl.join(q1, q2))) {
      if (!in_sub(c) || cm.test(c) || c == vp) continue;
      if (pl.line_mask(pl.join(vp, c)).intersect_count(cm) == 2) {
        z = c;
        break;
      }
    }
    if (!z) violated("no point Z on Q1Q2 with PZ a secant of the conic");
  } else {
    for (PointId c : pl.points_on(tangent(q2))) {
      if (in_sub(c) && !pl.incident(c, l1) && !pl.incident(c, l2)) {
        z = c;
        break;
      }
    }
    if (!z) violated("no admissible Z on the tangent at Q2");
  }
  std::vector<PointId> pts(conic.begin(), conic.end());
  pts.push_back(*z);
  for (LineId l : {l1, l2}) {
    for (PointId p : pl.points_on(l)) {
      if (in_sub(p)) pts.push_back(p);
    }
  }
  std::erase_if(pts, [&](PointId p) { return p == q2 || (part == 1 && p == vp); });
  nlohmann::json jp{{"q", q}, {"s", s}, {"part", part}, {"z", *z}, {"l1", l1}, {"l2", l2}};
  return Construction{"conic-" + std::to_string(part), std::move(jp), PointSet(plane, pts), q - s, VClaim::None,
                      std::pair{l1, l2}};
}

std::optional<std::vector<PointId>> find_fano_subplane(const Plane& plane) {
  const auto v = static_cast<PointId>(plane.size());
  for (PointId a = 0; a < v; ++a) {
    for (PointId b = a + 1; b < v; ++b) {
      const LineId ab = plane.join(a, b);
      for (PointId c = b + 1; c < v; ++c) {
        if (plane.incident(c, ab)) continue;
        const LineId ac = plane.join(a, c), bc = plane.join(b, c);
        for (PointId d = c + 1; d < v; ++d) {
          if (plane.incident(d, ab) || plane.incident(d, ac) || plane.incident(d, bc)) continue;
          const PointId d1 = plane.meet(ab, plane.join(c, d));
          const PointId d2 = plane.meet(ac, plane.join(b, d));
          const PointId d3 = plane.meet(plane.join(a, d), bc);
          if (plane.incident(d3, plane.join(d1, d2))) {
            return sorted_unique({a, b, c, d, d1, d2, d3});
          }
        }
      }
    }
  }
  return std::nullopt;
}

Construction q_minus_2_family(PlanePtr plane, QMinus2Kind kind) {
  const Plane& pl = *plane;
  const unsigned q = pl.order();
  std::vector<PointId> pts;
  std::string name;
  if (kind == QMinus2Kind::Quadrangle) {
    name = "qm2-quadrangle";
    std::vector<PointId> frame;
    auto rec = [&](auto&& self, PointId from) -> bool {
      if (frame.size() == 4) return true;
      for (PointId p = from; p < pl.size(); ++p) {
        frame.push_back(p);
        if (in_general_position(pl, frame) && self(self, p + 1)) return true;
        frame.pop_back();
      }
      return false;
    };
    rec(rec, 0);
    pts = frame;
  } else if (kind == QMinus2Kind::Quadrilateral) {
    name = "qm2-quadrilateral";
    // Least four lines with no three concurrent; their six meets.
    std::vector<LineId> lines;
    auto concurrent_free = [&]() {
      for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
          const PointId m = pl.meet(lines[i], lines[j]);
          for (std::size_t k = j + 1; k < lines.size(); ++k) {
            if (pl.incident(m, lines[k])) return false;
          }
        }
      }
      return true;
    };
    auto rec = [&](auto&& self, LineId from) -> bool {
      if (lines.size() == 4) return true;
      for (LineId l = from; l < pl.size(); ++l) {
        lines.push_back(l);
        if (concurrent_free() && self(self, l + 1)) return true;
        lines.pop_back();
      }
      return false;
    };
    rec(rec, 0);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) pts.push_back(pl.meet(lines[i], lines[j]));
    }
  } else {
    name = "qm2-fano";
    const auto fano = find_fano_subplane(pl);
    if (!fano) throw Error(ErrorKind::NoFanoSubplane, "no quadrangle of " + pl.ref() + " closes to a Fano subplane");
    pts = *fano;
  }
  return Construction{name, {{"plane", pl.ref()}}, PointSet(plane, pts), q - 2, VClaim::Any, std::nullopt};
}

}  // namespace semiarc
