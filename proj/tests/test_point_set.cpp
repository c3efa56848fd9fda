#include <algorithm>
#include <random>

#include "doctest.h"
#include "semiarc/errors.hpp"
#include "semiarc/point_set.hpp"

using namespace semiarc;

namespace {

std::vector<PointId> line_points(const Plane& plane, LineId l) {
  return {plane.points_on(l).begin(), plane.points_on(l).end()};
}

// Tangent count straight from the definition: lines l with l ∩ S = {p}.
unsigned oracle_tangents(const Plane& plane, const std::vector<PointId>& s, PointId p) {
  unsigned t = 0;
  for (LineId l = 0; l < plane.size(); ++l) {
    if (!plane.incident(p, l)) continue;
    bool alone = true;
    for (PointId x : s) alone &= x == p || !plane.incident(x, l);
    t += alone;
  }
  return t;
}

std::vector<PointId> triangle(const Plane& plane) {
  const auto& f = plane.field();
  std::vector<PointId> s;
  for (Elem c : f.nonzero_squares()) {
    s.push_back(plane.point_index({c, 0, 1}));
    s.push_back(plane.point_index({0, f.neg(c), 1}));
    s.push_back(plane.point_index({c, 1, 0}));
  }
  for (Triple x : {Triple{1, 0, 0}, Triple{0, 1, 0}, Triple{0, 0, 1}}) s.push_back(plane.point_index(x));
  return s;
}

std::vector<PointId> conic(const Plane& plane) {
  const auto& f = plane.field();
  std::vector<PointId> s{plane.point_index({0, 1, 0})};
  for (Elem x = 0; x < f.order(); ++x) s.push_back(plane.point_index({x, f.mul(x, x), 1}));
  return s;
}

}  // namespace

TEST_CASE("tangent counts of trivial sets") {
  const auto p3 = build_pg2(3);
  CHECK(tangent_counts(PointSet(p3, {5})) == std::vector<unsigned>{4});
  for (unsigned q : {3u, 4u, 5u}) {
    const auto plane = build_pg2(q);
    const std::vector<PointId> tri{plane->point_index({1, 0, 0}), plane->point_index({0, 1, 0}),
                                   plane->point_index({0, 0, 1})};
    const auto counts = tangent_counts(PointSet(plane, tri));
    CHECK(std::all_of(counts.begin(), counts.end(), [&](unsigned c) { return c == q - 1; }));
  }
}

TEST_CASE("tangent counts match the definition") {
  const auto plane = build_pg2(5);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    std::vector<PointId> s(plane->size());
    std::iota(s.begin(), s.end(), 0);
    std::shuffle(s.begin(), s.end(), rng);
    s.resize(1 + i % 12);
    const PointSet ps(plane, s);
    const auto counts = tangent_counts(ps);
    for (std::size_t k = 0; k < ps.size(); ++k) {
      CHECK(counts[k] == oracle_tangents(*plane, s, ps.points()[k]));
    }
  }
}

TEST_CASE("V_2-configuration in PG(2,5)") {
  const auto plane = build_pg2(5);
  // l1 = x2 = 0 (line 0), l2 = x1 = 0 (line 25); vertex (1,0,0)
  std::vector<PointId> s;
  const PointId vertex = plane->meet(0, 25);
  unsigned k1 = 0, k2 = 0;
  for (PointId p : plane->points_on(0)) {
    if (p != vertex && k1++ < 3) s.push_back(p);
  }
  for (PointId p : plane->points_on(25)) {
    if (p != vertex && k2++ < 3) s.push_back(p);
  }
  const PointSet ps(plane, s);
  const auto report = classify_semiarc(ps);
  REQUIRE(report.t);
  CHECK(*report.t == 2);
  const auto w = detect_vt(ps, 2);
  REQUIRE(w.size() == 1);
  CHECK(w[0].is_open());
  CHECK(w[0].removed1.size() == 2);
  CHECK(w[0].removed2.size() == 2);
  CHECK(is_bare_vt_configuration(ps, 2));
}

TEST_CASE("projective triangle analytics") {
  const auto plane = build_pg2(5);
  const PointSet ps(plane, triangle(*plane));
  CHECK(ps.size() == 9);
  const auto report = classify_semiarc(ps);
  REQUIRE(report.t);
  CHECK(*report.t == 2);
  CHECK(secant_spectrum(ps).at(4) == 3);
  CHECK(long_secants(ps, 2).size() == 3);
  const auto w = detect_vt(ps, 2);
  CHECK(w.size() == 3);
  for (const auto& x : w) CHECK(x.vertex_in_set);
  const auto redei = redei_analysis(ps);
  CHECK(redei.is_blocking);
  CHECK(redei.is_minimal);
  CHECK(redei.is_nontrivial);
  CHECK(redei.redei_lines == long_secants(ps, 2));
  try {
    long_secants(ps, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotASemiarc);
  }
}

TEST_CASE("conic in PG(2,5)") {
  const auto plane = build_pg2(5);
  const PointSet ps(plane, conic(*plane));
  const auto report = classify_semiarc(ps);
  REQUIRE(report.t);
  CHECK(*report.t == 1);
  // brute force: no line pair carries a V_1-configuration
  CHECK(detect_vt(ps, 1).empty());
}

TEST_CASE("line plus a point is not a semiarc") {
  const auto plane = build_pg2(4);
  auto s = line_points(*plane, 0);
  s.push_back(plane->point_index({0, 0, 1}));
  const auto report = classify_semiarc(PointSet(plane, s));
  CHECK_FALSE(report.is_semiarc());
  CHECK(report.offending.size() == 1);
}

TEST_CASE("secant spectrum double counts") {
  const auto plane = build_pg2(3);
  const PointSet line(plane, line_points(*plane, 4));
  const auto spectrum = secant_spectrum(line);
  CHECK(spectrum.at(4) == 1);
  CHECK(spectrum.at(1) == 12);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    std::vector<PointId> s;
    for (PointId p = 0; p < plane->size(); ++p) {
      if (rng() % 3 == 0) s.push_back(p);
    }
    if (s.empty()) continue;
    const PointSet ps(plane, s);
    unsigned sum = 0;
    for (auto [k, c] : secant_spectrum(ps)) sum += k * c;
    CHECK(sum == ps.size() * 4);
  }
}

TEST_CASE("Redei analysis") {
  const auto plane = build_pg2(3);
  const auto full = redei_analysis(PointSet(plane, line_points(*plane, 0)));
  CHECK(full.is_blocking);
  CHECK_FALSE(full.is_nontrivial);
  const std::vector<PointId> quad{plane->point_index({1, 0, 0}), plane->point_index({0, 1, 0}),
                                  plane->point_index({0, 0, 1}), plane->point_index({1, 1, 1})};
  const PointSet ps(plane, quad);
  // external line by brute force
  bool external = false;
  for (LineId l = 0; l < plane->size(); ++l) external |= ps.on_line(l) == 0;
  CHECK(external);
  CHECK_FALSE(redei_analysis(ps).is_blocking);
}

TEST_CASE("line meeting bound") {
  const auto plane = build_pg2(4);
  const unsigned q = 4;
  const PointSet one(plane, {7});
  auto b = line_meeting_bound(one, 0);
  CHECK(b.r == 1);
  CHECK(b.lines_meeting == q + 1);
  CHECK(b.bound == static_cast<std::int64_t>(q + 1));

  const PointSet line(plane, line_points(*plane, 0));
  PointId off = 0;
  while (line.contains(off)) ++off;
  b = line_meeting_bound(line, off);
  CHECK(b.r == q + 1);
  CHECK(b.lines_meeting == q * q + q + 1);
  CHECK(b.bound == static_cast<std::int64_t>(q * q + q + 1));

  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    std::vector<PointId> s(plane->size());
    std::iota(s.begin(), s.end(), 0);
    std::shuffle(s.begin(), s.end(), rng);
    const PointId p = s.back();
    s.resize(6);
    CHECK(line_meeting_bound(PointSet(plane, s), p).holds);
  }
  try {
    line_meeting_bound(one, 7);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PointInsideSet);
  }
}

TEST_CASE("point set validation") {
  const auto plane = build_pg2(2);
  try {
    PointSet(plane, {});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyPointSet);
  }
  try {
    PointSet(plane, {7});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidPoint);
  }
  CHECK(PointSet(plane, {3, 1, 3}).size() == 2);
}
