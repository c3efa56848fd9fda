#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "semiarc/errors.hpp"
#include "semiarc/plane.hpp"

using namespace semiarc;

namespace {

// Direct axiom oracle over all pairs.
void check_axioms(const Plane& plane) {
  const unsigned q = plane.order();
  const std::size_t v = plane.size();
  REQUIRE(v == q * q + q + 1);
  for (LineId l = 0; l < v; ++l) REQUIRE(plane.points_on(l).size() == q + 1);
  for (PointId p = 0; p < v; ++p) REQUIRE(plane.lines_through(p).size() == q + 1);
  for (PointId a = 0; a < v; ++a) {
    for (PointId b = a + 1; b < v; ++b) {
      unsigned common = 0;
      for (LineId l = 0; l < v; ++l) common += plane.incident(a, l) && plane.incident(b, l);
      REQUIRE(common == 1);
      const LineId j = plane.join(a, b);
      REQUIRE(plane.incident(a, j));
      REQUIRE(plane.incident(b, j));
    }
  }
  for (LineId a = 0; a < v; ++a) {
    for (LineId b = a + 1; b < v; ++b) {
      unsigned common = 0;
      for (PointId p : plane.points_on(a)) common += plane.incident(p, b);
      REQUIRE(common == 1);
      REQUIRE(plane.incident(plane.meet(a, b), a));
      REQUIRE(plane.incident(plane.meet(a, b), b));
    }
  }
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidPoint;
}

}  // namespace

TEST_CASE("PG(2,q) sizes and axioms") {
  CHECK(build_pg2(2)->size() == 7);
  CHECK(build_pg2(2)->points_on(0).size() == 3);
  CHECK(build_pg2(3)->size() == 13);
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) check_axioms(*build_pg2(q));
}

TEST_CASE("index layout and normalization") {
  const auto plane = build_pg2(5);
  const auto& f = plane->field();
  CHECK(plane->point_index({0, 0, 1}) == 0);
  CHECK(plane->point_index({2, 3, 1}) == 13);
  CHECK(plane->point_index({4, 1, 0}) == 29);
  CHECK(plane->point_index({1, 0, 0}) == 30);
  // scaling a triple does not move it
  for (PointId p = 0; p < plane->size(); ++p) {
    Triple x = plane->point_coords(p);
    for (auto& c : x) c = f.mul(c, 3);
    CHECK(plane->point_index(x) == p);
    CHECK(normalize(f, normalize(f, x)) == normalize(f, x));
  }
  CHECK(kind_of([&] { plane->point_index({0, 0, 0}); }) == ErrorKind::InvalidPoint);
}

TEST_CASE("incidence is the bilinear form and duality preserves it") {
  const auto plane = build_pg2(4);
  const auto& f = plane->field();
  for (PointId p = 0; p < plane->size(); ++p) {
    for (LineId l = 0; l < plane->size(); ++l) {
      const auto& x = plane->point_coords(p);
      const auto& u = plane->line_coords(l);
      const Elem s = f.add(f.add(f.mul(x[0], u[0]), f.mul(x[1], u[1])), f.mul(x[2], u[2]));
      CHECK(plane->incident(p, l) == (s == 0));
      // point p <-> line p
      CHECK(plane->incident(p, l) == plane->incident(static_cast<PointId>(l), static_cast<LineId>(p)));
    }
  }
}

TEST_CASE("load_plane round trip and validation") {
  const auto gen = build_pg2(2);
  std::stringstream ss;
  ss << "# Fano plane\n";
  write_plane(ss, *gen);
  const auto loaded = load_plane(ss, "file:fano");
  CHECK(loaded->kind() == PlaneKind::Loaded);
  CHECK(loaded->order() == 2);
  for (LineId l = 0; l < 7; ++l) {
    CHECK(std::vector<PointId>(loaded->points_on(l).begin(), loaded->points_on(l).end()) ==
          std::vector<PointId>(gen->points_on(l).begin(), gen->points_on(l).end()));
  }
  check_axioms(*loaded);
  CHECK(kind_of([&] { loaded->field(); }) == ErrorKind::UnsupportedPlaneKind);

  std::stringstream mixed("order 2\n0 1 2\n0 3 4 5\n0 5 6\n1 3 5\n1 4 6\n2 3 6\n2 4 5\n");
  CHECK(kind_of([&] { load_plane(mixed); }) == ErrorKind::AxiomViolation);
  std::stringstream bad_tok("order 2\n0 1 x\n");
  CHECK(kind_of([&] { load_plane(bad_tok); }) == ErrorKind::MalformedFile);
  std::stringstream no_header("0 1 2\n");
  CHECK(kind_of([&] { load_plane(no_header); }) == ErrorKind::MalformedFile);
  std::stringstream range("order 2\n0 1 9\n0 3 4\n0 5 6\n1 3 5\n1 4 6\n2 3 6\n2 4 5\n");
  CHECK(kind_of([&] { load_plane(range); }) == ErrorKind::MalformedFile);
  // two lines sharing two points
  std::stringstream twice("order 2\n0 1 2\n0 1 3\n0 5 6\n1 3 5\n1 4 6\n2 3 6\n2 4 5\n");
  CHECK(kind_of([&] { load_plane(twice); }) == ErrorKind::AxiomViolation);
}

TEST_CASE("plane references") {
  CHECK(plane_from_ref("pg:3")->size() == 13);
  CHECK(plane_from_ref("pg:3")->ref() == "pg:3");
  CHECK(kind_of([] { plane_from_ref("pg:x"); }) == ErrorKind::MalformedFile);
  CHECK(kind_of([] { plane_from_ref("pg:6"); }) == ErrorKind::NonPrimeCharacteristic);
  CHECK(kind_of([] { plane_from_ref("nope"); }) == ErrorKind::MalformedFile);
}

TEST_CASE("subfield subplanes") {
  const auto p4 = build_pg2(4);
  const auto fano = subplane_embed(make_field(2, 1), *p4);
  CHECK(fano.points.size() == 7);
  CHECK(fano.lines.size() == 7);
  CHECK(is_subplane(*p4, fano.points, 2));

  const auto p9 = build_pg2(9);
  const auto sub = subplane_embed(make_field(3, 1), *p9);
  CHECK(sub.points.size() == 13);
  CHECK(sub.lines.size() == 13);
  // each subplane line lies on exactly one plane line
  for (const auto& pts : sub.line_points) {
    REQUIRE(pts.size() == 4);
    unsigned carriers = 0;
    for (LineId l = 0; l < p9->size(); ++l) {
      bool all = true;
      for (PointId p : pts) all &= p9->incident(p, l);
      carriers += all;
    }
    CHECK(carriers == 1);
  }
  // induced structure is a plane of order 3
  for (std::size_t a = 0; a < sub.points.size(); ++a) {
    for (std::size_t b = a + 1; b < sub.points.size(); ++b) {
      unsigned common = 0;
      for (const auto& pts : sub.line_points) {
        common += std::count(pts.begin(), pts.end(), sub.points[a]) && std::count(pts.begin(), pts.end(), sub.points[b]);
      }
      CHECK(common == 1);
    }
  }
  CHECK(kind_of([&] { subplane_embed(make_field(3, 1), *p4); }) == ErrorKind::NotASubfield);
  CHECK_FALSE(is_subplane(*p4, std::vector<PointId>{0, 1, 2, 3, 4, 5, 6}, 2));
}
